#pragma once

// Independent reference implementations the real code is checked against.
// Everything here is deliberately naive: double loops, repeated deletion,
// textbook formulas. None of it shares code with the library.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// --- co-occurrence -------------------------------------------------------

// corpora are plain key lists per record
using Corpus = std::vector<std::vector<std::string>>;

struct CoocCell {
  std::map<std::pair<std::string, std::string>, long> pair_counts;  // a < b
  std::map<std::string, long> occurrences;
};

// per-record set semantics, brute-force pair enumeration
inline CoocCell brute_force_cooc(const Corpus& corpus) {
  CoocCell out;
  for (const auto& record : corpus) {
    std::set<std::string> keys(record.begin(), record.end());
    for (const auto& k : keys) ++out.occurrences[k];
    for (auto i = keys.begin(); i != keys.end(); ++i) {
      for (auto j = std::next(i); j != keys.end(); ++j) {
        ++out.pair_counts[{*i, *j}];
      }
    }
  }
  return out;
}

// cosine of two incidence columns of the record-key matrix
inline double incidence_cosine(const Corpus& corpus, const std::string& a, const std::string& b) {
  double dot = 0, na = 0, nb = 0;
  for (const auto& record : corpus) {
    std::set<std::string> keys(record.begin(), record.end());
    double va = keys.count(a) ? 1.0 : 0.0;
    double vb = keys.count(b) ? 1.0 : 0.0;
    dot += va * vb;
    na += va * va;
    nb += vb * vb;
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

inline Corpus random_corpus(std::mt19937& rng, int max_records = 50, int max_keys = 20) {
  std::uniform_int_distribution<int> n_records(1, max_records);
  std::uniform_int_distribution<int> n_keys(1, max_keys);
  int universe = n_keys(rng);
  std::uniform_int_distribution<int> pick(0, universe - 1);
  std::uniform_int_distribution<int> per_record(0, 6);
  Corpus corpus(static_cast<size_t>(n_records(rng)));
  for (auto& record : corpus) {
    int n = per_record(rng);
    for (int i = 0; i < n; ++i) record.push_back("K" + std::to_string(pick(rng)));
  }
  return corpus;
}

// --- graphs --------------------------------------------------------------

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // a < b
};

inline Graph random_graph(std::mt19937& rng, int max_nodes = 30, double edge_prob = 0.2) {
  std::uniform_int_distribution<int> n_nodes(1, max_nodes);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Graph g;
  g.n = n_nodes(rng);
  for (int a = 0; a < g.n; ++a) {
    for (int b = a + 1; b < g.n; ++b) {
      if (coin(rng) < edge_prob) g.edges.emplace_back(a, b);
    }
  }
  return g;
}

// k-core by repeated deletion, recomputing degrees from scratch each round
inline std::set<int> k_core_members(const Graph& g, int k) {
  std::set<int> alive;
  for (int i = 0; i < g.n; ++i) alive.insert(i);
  while (true) {
    std::map<int, int> degree;
    for (auto [a, b] : g.edges) {
      if (alive.count(a) && alive.count(b)) {
        ++degree[a];
        ++degree[b];
      }
    }
    std::set<int> next;
    for (int v : alive) {
      if (degree[v] >= k) next.insert(v);
    }
    if (next == alive) return alive;
    alive = std::move(next);
  }
}

// --- geometry ------------------------------------------------------------

// spherical law of cosines; same sphere, different formula than haversine
inline double great_circle_reference_km(double lat1, double lon1, double lat2, double lon2) {
  constexpr double R = 6371.0;
  constexpr double rad = 3.14159265358979323846 / 180.0;
  double p1 = lat1 * rad, p2 = lat2 * rad;
  double c = std::sin(p1) * std::sin(p2) + std::cos(p1) * std::cos(p2) * std::cos((lon2 - lon1) * rad);
  return R * std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace oracle
