#include <benchmark/benchmark.h>

#include <random>

#include "klorentz/klorentz.hpp"

namespace {

using namespace klorentz;

Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  }
  return (a + a.transpose()) / 2;
}

void BM_Spectral(benchmark::State& state) {
  const Eigen::MatrixXd q = random_symmetric(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(spectral(q));
}
BENCHMARK(BM_Spectral)->Arg(3)->Arg(6)->Arg(10)->Arg(21);

QuadraticForm lorentz_form(std::size_t n) {
  RatMatrix q = RatMatrix::identity(n);
  for (std::size_t i = 1; i < n; ++i) q(i, i) = -1;
  return QuadraticForm(q);
}

void BM_QuadOrthantDualMap(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  // All-ones matrix minus a small identity: one positive eigenvalue, entrywise positive.
  RatMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q(i, j) = i == j ? Rational(1, 2) : Rational(1);
  }
  const QuadraticForm form(q);
  const Cone k = Cone::orthant(n);
  for (auto _ : state) benchmark::DoNotOptimize(quad_is_lorentzian(form, k));
}
BENCHMARK(BM_QuadOrthantDualMap)->Arg(3)->Arg(6);

void BM_QuadSocPaths(benchmark::State& state) {
  const auto path = static_cast<PositivityPath>(state.range(0));
  CheckPlan plan;
  plan.positivity = path;
  plan.samples = 500;
  const QuadraticForm q = lorentz_form(4);
  const Cone k = Cone::second_order(4);
  for (auto _ : state) benchmark::DoNotOptimize(quad_is_lorentzian(q, k, plan));
  state.SetLabel(std::string(to_string(path)));
}
BENCHMARK(BM_QuadSocPaths)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_SocCertificate(benchmark::State& state) {
  const QuadraticForm q = lorentz_form(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(quad_soc_certificate(q));
}
BENCHMARK(BM_SocCertificate)->Arg(3)->Arg(5);

// (x1 + x2)(x1 + x3)(x2 + x3) is Lorentzian, so every sample is evaluated.
void BM_SampledCubic(benchmark::State& state) {
  const Polynomial f = parse_polynomial("x1^2*x2 + x1^2*x3 + x1*x2^2 + 2*x1*x2*x3 + x1*x3^2 + x2^2*x3 + x2*x3^2");
  CheckPlan plan;
  plan.samples = static_cast<std::size_t>(state.range(0));
  const Cone k = Cone::orthant(3);
  for (auto _ : state) benchmark::DoNotOptimize(is_lorentzian_sampled(f, k, plan));
}
BENCHMARK(BM_SampledCubic)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Phi(benchmark::State& state) {
  const SymQuadratic r = r_form(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(phi(r));
}
BENCHMARK(BM_Phi)->Arg(2)->Arg(4)->Arg(6);

void BM_CanonicalPreimage(benchmark::State& state) {
  const Polynomial p = parse_polynomial("x1^4 + x2^4 + x3^4 + x1^2*x2^2 - x1*x2*x3^2 + x1^3*x3");
  for (auto _ : state) benchmark::DoNotOptimize(canonical_preimage(p));
}
BENCHMARK(BM_CanonicalPreimage);

void BM_QuarticOracleExact(benchmark::State& state) {
  const Polynomial p = parse_polynomial("x1^4 - 4*x1^2*x2^2 + 4*x2^4");
  for (auto _ : state) benchmark::DoNotOptimize(quartic_nonneg_oracle(p));
}
BENCHMARK(BM_QuarticOracleExact);

}  // namespace

BENCHMARK_MAIN();
