#include "geosci/cooc.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

namespace geosci {

CoocMatrix::CoocMatrix(std::vector<std::string> keys) : keys_(std::move(keys)) {
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  data_.assign(keys_.size() * keys_.size(), 0);
}

long CoocMatrix::index_of(const std::string& key) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return -1;
  return static_cast<long>(it - keys_.begin());
}

void CoocMatrix::add(long i, long j, long v) {
  data_[static_cast<size_t>(i * size() + j)] += v;
  if (i != j) data_[static_cast<size_t>(j * size() + i)] += v;
}

namespace {

// per-record key counts under the chosen counting mode
std::map<std::string, long> record_counts(const std::vector<std::string>& keys,
                                          CountingMode mode) {
  std::map<std::string, long> counts;
  for (const auto& k : keys) {
    if (mode == CountingMode::record) {
      counts[k] = 1;
    } else {
      ++counts[k];
    }
  }
  return counts;
}

std::vector<std::string> all_keys(const std::vector<BibRecord>& records, const KeySetFn& keys_of) {
  std::set<std::string> keys;
  for (const auto& r : records) {
    for (auto& k : keys_of(r)) keys.insert(std::move(k));
  }
  return {keys.begin(), keys.end()};
}

void accumulate(CoocMatrix& m, const BibRecord& r, const KeySetFn& keys_of, CountingMode mode) {
  auto counts = record_counts(keys_of(r), mode);
  std::vector<std::pair<long, long>> idx;  // (matrix index, per-record count)
  idx.reserve(counts.size());
  for (const auto& [k, c] : counts) {
    long i = m.index_of(k);
    if (i >= 0) idx.emplace_back(i, c);
  }
  for (size_t u = 0; u < idx.size(); ++u) {
    m.add(idx[u].first, idx[u].first, idx[u].second);
    for (size_t v = u + 1; v < idx.size(); ++v) {
      m.add(idx[u].first, idx[v].first, idx[u].second * idx[v].second);
    }
  }
}

}  // namespace

OccurrenceTable build_occurrences(const std::vector<BibRecord>& records, const KeySetFn& keys_of,
                                  CountingMode mode) {
  OccurrenceTable table;
  for (const auto& r : records) {
    for (const auto& [k, c] : record_counts(keys_of(r), mode)) table.entries[k] += c;
  }
  return table;
}

CoocMatrix build_cooc(const std::vector<BibRecord>& records, const KeySetFn& keys_of,
                      CountingMode mode) {
  CoocMatrix m(all_keys(records, keys_of));
  for (const auto& r : records) accumulate(m, r, keys_of, mode);
  return m;
}

CoocMatrix build_cooc_parallel(const std::vector<BibRecord>& records, const KeySetFn& keys_of,
                               CountingMode mode, int threads) {
  if (threads < 2 || records.size() < 2) return build_cooc(records, keys_of, mode);
  CoocMatrix base(all_keys(records, keys_of));
  size_t n = static_cast<size_t>(threads);
  std::vector<CoocMatrix> parts(n, base);
  std::vector<std::thread> workers;
  size_t chunk = (records.size() + n - 1) / n;
  for (size_t t = 0; t < n; ++t) {
    workers.emplace_back([&, t]() {
      size_t lo = t * chunk;
      size_t hi = std::min(records.size(), lo + chunk);
      for (size_t i = lo; i < hi; ++i) accumulate(parts[t], records[i], keys_of, mode);
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& part : parts) {
    for (long i = 0; i < base.size(); ++i) {
      for (long j = i; j < base.size(); ++j) {
        if (long v = part.at(i, j); v != 0) base.add(i, j, v);
      }
    }
  }
  return base;
}

CoocMatrix apply_threshold(const CoocMatrix& m, ThresholdMode mode, double value) {
  double cutoff = value;
  if (mode == ThresholdMode::percent) {
    long max_occ = 0;
    for (long i = 0; i < m.size(); ++i) max_occ = std::max(max_occ, m.occurrence(i));
    cutoff = value / 100.0 * static_cast<double>(max_occ);
  }
  std::vector<long> kept;
  std::vector<std::string> kept_keys;
  for (long i = 0; i < m.size(); ++i) {
    if (static_cast<double>(m.occurrence(i)) >= cutoff) {
      kept.push_back(i);
      kept_keys.push_back(m.keys()[static_cast<size_t>(i)]);
    }
  }
  CoocMatrix out(kept_keys);
  for (size_t a = 0; a < kept.size(); ++a) {
    for (size_t b = a; b < kept.size(); ++b) {
      if (long v = m.at(kept[a], kept[b]); v != 0) {
        out.add(static_cast<long>(a), static_cast<long>(b), v);
      }
    }
  }
  return out;
}

SimilarityMatrix cosine_normalize(const CoocMatrix& m) {
  SimilarityMatrix s;
  s.keys = m.keys();
  long n = m.size();
  s.values.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      double ni = static_cast<double>(m.occurrence(i));
      double nj = static_cast<double>(m.occurrence(j));
      double v;
      if (i == j) {
        v = ni > 0 ? 1.0 : 0.0;
      } else if (ni > 0 && nj > 0) {
        v = static_cast<double>(m.at(i, j)) / std::sqrt(ni * nj);
      } else {
        v = 0.0;
      }
      s.values[static_cast<size_t>(i * n + j)] = v;
    }
  }
  return s;
}

}  // namespace geosci
