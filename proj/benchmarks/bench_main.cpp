#include "ineqcert/certify.hpp"
#include "ineqcert/expr.hpp"
#include "ineqcert/quad.hpp"
#include "ineqcert/remez.hpp"

#include <benchmark/benchmark.h>

using namespace ineqcert;

namespace {

void BM_Kurepa(benchmark::State& state) {
  const Precision p(static_cast<int>(state.range(0)));
  PrecisionScope scope(p);
  const Real x("0.37");
  for (auto _ : state) benchmark::DoNotOptimize(quad::kurepa(x, p).value);
}
BENCHMARK(BM_Kurepa)->Arg(30)->Arg(50)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_KurepaDerivative(benchmark::State& state) {
  const Precision p(50);
  PrecisionScope scope(p);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(quad::kurepa_derivative(Real("0.5"), order, p).value);
}
BENCHMARK(BM_KurepaDerivative)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_MinimaxArcsin(benchmark::State& state) {
  const Precision p(50);
  PrecisionScope scope(p);
  const Expression e = parse("x*arcsin(x/2)");
  RealFunction g = [&](const Real& x) { return evaluate(e, x, p); };
  MinimaxSettings settings;
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(minimax(g, 0, 1, degree, settings, p).delta_hat);
}
BENCHMARK(BM_MinimaxArcsin)->DenseRange(1, 6)->Unit(benchmark::kMillisecond);

void BM_CertifyPositive(benchmark::State& state) {
  const Precision p(50);
  PrecisionScope scope(p);
  const std::vector<Real> mono{Real("1e-3"), 0, 1, 0, Real("0.5")};
  const Polynomial poly = Polynomial::from_monomial(mono, -1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify_positive(poly, Real("1e-4"), Real("1.000001"), p).global_min_bound);
  }
}
BENCHMARK(BM_CertifyPositive)->Unit(benchmark::kMillisecond);

void BM_ProveArcsinCorrected(benchmark::State& state) {
  const Precision p(50);
  PrecisionScope scope(p);
  const Expression f = parse(
      "(pi*(2-sqrt(2))/(pi-2*sqrt(2)))*(sqrt(1+x)-sqrt(1-x)) / "
      "((sqrt(2)*(4-pi)/(pi-2*sqrt(2))) + sqrt(1+x) + sqrt(1-x)) - arcsin(x)");
  ProofSettings settings;
  settings.precision = p;
  for (auto _ : state) {
    benchmark::DoNotOptimize(prove_inequality(f, 0, 1, 3, Real("0.5"), 7, settings).verdict);
  }
}
BENCHMARK(BM_ProveArcsinCorrected)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
