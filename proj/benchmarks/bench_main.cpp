#include "logmap/enumeration.hpp"
#include "logmap/marked_graph.hpp"
#include "logmap/monoid.hpp"
#include "logmap/normal_form.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace logmap;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> dist(-9, 9);
  std::vector<Vector> rows(n, Vector(n));
  for (auto& r : rows)
    for (auto& x : r) x = dist(rng);
  return IntMatrix::from_rows(rows, n);
}

void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const IntMatrix a = random_matrix(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_SmithNormalForm)->DenseRange(2, 10, 2);

void BM_Saturate(benchmark::State& state) {
  const auto r = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> dist(0, 5);
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < r + 2; ++i) {
    Vector g(r);
    for (auto& x : g) x = dist(rng);
    g[i % r] += 1;
    gens.push_back(g);
  }
  const AffineMonoid n(r, gens);
  for (auto _ : state) benchmark::DoNotOptimize(saturate(n));
}
BENCHMARK(BM_Saturate)->DenseRange(2, 5, 1);

MarkedGraph chain(int length) {
  MarkedGraph g;
  g.vertices.push_back({"v0", true, {}});
  for (int i = 1; i <= length; ++i) {
    const std::string prev = "v" + std::to_string(i - 1), cur = "v" + std::to_string(i);
    g.vertices.push_back({cur, false, {}});
    g.edges.push_back({"a" + std::to_string(i), {prev, cur}, i % 3 + 1, Orientation{prev, cur}});
    g.edges.push_back({"b" + std::to_string(i), {prev, cur}, 2, Orientation{prev, cur}});
  }
  return g;
}

void BM_AssociatedMonoid(benchmark::State& state) {
  const MarkedGraph g = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(associated_monoid(g));
}
BENCHMARK(BM_AssociatedMonoid)->DenseRange(1, 4, 1);

void BM_Enumerate(benchmark::State& state) {
  DualGraphInput in;
  const int n = static_cast<int>(state.range(0));
  for (int i = 0; i < n; ++i) in.vertices.push_back({"v" + std::to_string(i), i == 0, i == 0 ? -4 : 0});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      in.edges.push_back({"e" + std::to_string(i) + std::to_string(j),
                          {"v" + std::to_string(i), "v" + std::to_string(j)}});
  in.legs.push_back({"p", "v" + std::to_string(n - 1), 4});
  EnumerationLimits limits;
  limits.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate(in, limits));
}
BENCHMARK(BM_Enumerate)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
