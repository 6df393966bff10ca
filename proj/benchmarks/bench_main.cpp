#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "infotop/decision.hpp"
#include "infotop/fixtures.hpp"
#include "infotop/lift.hpp"
#include "infotop/measure.hpp"
#include "infotop/metrics.hpp"

namespace {

using namespace infotop;

// Random two-axis measure on an n x n euclidean grid, fixed seed per size so
// runs are comparable.
DiscreteMeasure random_grid_measure(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) xs[i] = static_cast<double>(i) / n;
  for (int j = 0; j < n; ++j) ys[j] = static_cast<double>(j) / n;
  ProductSpace space({make_real_axis("X", xs), make_real_axis("Y", ys)});
  std::map<std::vector<int>, double> w;
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = unif(rng);
      w[{i, j}] = v;
      total += v;
    }
  for (auto& [t, v] : w) v /= total;
  return DiscreteMeasure(std::move(space), std::move(w));
}

// Random consistent (mu, nu) pair over (A, B) and (A, C): marginals of one
// random three-axis joint.
std::pair<DiscreteMeasure, DiscreteMeasure> random_consistent_pair(
    int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  std::vector<std::string> a_ids, b_ids, c_ids;
  for (int i = 0; i < n; ++i) {
    a_ids.push_back("a" + std::to_string(i));
    b_ids.push_back("b" + std::to_string(i));
    c_ids.push_back("c" + std::to_string(i));
  }
  ProductSpace space({make_discrete_axis("A", a_ids),
                      make_discrete_axis("B", b_ids),
                      make_discrete_axis("C", c_ids)});
  std::map<std::vector<int>, double> w;
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double v = unif(rng);
        w[{i, j, k}] = v;
        total += v;
      }
  for (auto& [t, v] : w) v /= total;
  DiscreteMeasure joint(std::move(space), std::move(w));
  return {marginal(joint, {"A", "B"}), marginal(joint, {"A", "C"})};
}

void BM_Wasserstein1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DiscreteMeasure mu = random_grid_measure(n, 7);
  const DiscreteMeasure nu = random_grid_measure(n, 11);
  for (auto _ : state)
    benchmark::DoNotOptimize(wasserstein1(mu, nu, {}).first);
  state.SetComplexityN(n * n);
}
BENCHMARK(BM_Wasserstein1)->Arg(4)->Arg(8)->Arg(16)->Complexity();

void BM_Prohorov(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DiscreteMeasure mu = random_grid_measure(n, 7);
  const DiscreteMeasure nu = random_grid_measure(n, 11);
  for (auto _ : state) benchmark::DoNotOptimize(prohorov(mu, nu));
}
BENCHMARK(BM_Prohorov)->Arg(4)->Arg(8);

void BM_TvDistance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DiscreteMeasure mu = random_grid_measure(n, 7);
  const DiscreteMeasure nu = random_grid_measure(n, 11);
  for (auto _ : state) benchmark::DoNotOptimize(tv_distance(mu, nu));
}
BENCHMARK(BM_TvDistance)->Arg(16)->Arg(64);

void BM_InfoRademacher(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const auto [mu_n, mu] = fixture_rademacher(1, K);
  for (auto _ : state) benchmark::DoNotOptimize(info_distance(mu_n, mu));
}
BENCHMARK(BM_InfoRademacher)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_PhiJoin(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto [mu, nu] = random_consistent_pair(n, 13);
  for (auto _ : state) benchmark::DoNotOptimize(phi(mu, nu));
}
BENCHMARK(BM_PhiJoin)->Arg(4)->Arg(8)->Arg(12);

void BM_Psi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DiscreteMeasure mu = random_grid_measure(n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(psi(mu).atoms().size());
}
BENCHMARK(BM_Psi)->Arg(8)->Arg(16)->Arg(32);

void BM_Solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::string> a_ids, b_ids, c_ids;
  for (int i = 0; i < n; ++i) {
    a_ids.push_back("a" + std::to_string(i));
    b_ids.push_back("b" + std::to_string(i));
    c_ids.push_back("c" + std::to_string(i));
  }
  ProductSpace space({make_discrete_axis("A", a_ids),
                      make_discrete_axis("B", b_ids)});
  std::map<std::vector<int>, double> w;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[{i, j}] = 1.0 / (n * n);
  DecisionProblem p{DiscreteMeasure(std::move(space), std::move(w)),
                    make_discrete_axis("D", c_ids),
                    {}};
  for (const auto& a : a_ids)
    for (const auto& b : b_ids)
      for (const auto& c : c_ids) p.cost[{a, b, c}] = unif(rng);
  const SolveMethod method =
      state.range(1) == 0 ? SolveMethod::Decompose : SolveMethod::Lp;
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_randomized(p, method).value);
}
BENCHMARK(BM_Solve)->Args({8, 0})->Args({8, 1})->Args({16, 0});

}  // namespace

BENCHMARK_MAIN();
