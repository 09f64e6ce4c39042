#include <benchmark/benchmark.h>

#include <random>

#include "geosci/cooc.hpp"
#include "geosci/kml.hpp"
#include "geosci/network.hpp"
#include "geosci/pajek.hpp"

using namespace geosci;

namespace {

std::vector<BibRecord> synthetic_corpus(int n_records, int universe, unsigned seed = 1) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(0, universe - 1);
  std::uniform_int_distribution<int> per_record(1, 6);
  std::vector<BibRecord> records(static_cast<size_t>(n_records));
  for (auto& r : records) {
    int n = per_record(rng);
    for (int i = 0; i < n; ++i) r.authors.push_back("KEY-" + std::to_string(pick(rng)));
  }
  return records;
}

KeySetFn key_fn() {
  return [](const BibRecord& r) { return r.authors; };
}

GeoNetwork synthetic_network(int n_nodes, double p, unsigned seed = 2) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coin(0, 1), lat(-89, 89), lon(-179, 179);
  GeoNetwork net;
  for (int i = 0; i < n_nodes; ++i) {
    net.nodes.push_back({"N" + std::to_string(i), {lat(rng), lon(rng)}, 1 + i % 17, 0});
  }
  for (int a = 0; a < n_nodes; ++a) {
    for (int b = a + 1; b < n_nodes; ++b) {
      if (coin(rng) < p) {
        net.links.push_back({a, b, 1 + (a + b) % 5});
        ++net.nodes[static_cast<size_t>(a)].degree;
        ++net.nodes[static_cast<size_t>(b)].degree;
      }
    }
  }
  return net;
}

}  // namespace

static void BM_BuildCooc(benchmark::State& state) {
  auto records = synthetic_corpus(static_cast<int>(state.range(0)), 400);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_cooc(records, key_fn()));
  }
}
BENCHMARK(BM_BuildCooc)->Arg(500)->Arg(2000);

static void BM_BuildCoocParallel(benchmark::State& state) {
  auto records = synthetic_corpus(2000, 400);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        build_cooc_parallel(records, key_fn(), CountingMode::record,
                            static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_BuildCoocParallel)->Arg(1)->Arg(4);

static void BM_CosineNormalize(benchmark::State& state) {
  auto records = synthetic_corpus(1000, static_cast<int>(state.range(0)));
  auto m = build_cooc(records, key_fn());
  for (auto _ : state) {
    benchmark::DoNotOptimize(cosine_normalize(m));
  }
}
BENCHMARK(BM_CosineNormalize)->Arg(100)->Arg(400);

static void BM_KCore(benchmark::State& state) {
  auto net = synthetic_network(static_cast<int>(state.range(0)), 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(k_core(net, 3));
  }
}
BENCHMARK(BM_KCore)->Arg(100)->Arg(500);

static void BM_KmlEarth(benchmark::State& state) {
  auto net = synthetic_network(static_cast<int>(state.range(0)), 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kml_earth(net));
  }
}
BENCHMARK(BM_KmlEarth)->Arg(400);

static void BM_PajekProject(benchmark::State& state) {
  auto net = synthetic_network(static_cast<int>(state.range(0)), 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pajek_project(net));
  }
}
BENCHMARK(BM_PajekProject)->Arg(400);

BENCHMARK_MAIN();
