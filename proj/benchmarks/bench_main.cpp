#include <random>

#include <benchmark/benchmark.h>

#include "dispent/casimir_ee.hpp"
#include "dispent/gaussian_core.hpp"
#include "dispent/lattice_oracle.hpp"
#include "dispent/mode_spectrum.hpp"
#include "dispent/scattering.hpp"
#include "dispent/spectral_contour.hpp"

using namespace dispent;

namespace {

ChainSpec two_body_chain(int N) {
  ChainSpec s;
  s.N = N;
  for (int i = N / 8; i < N / 8 + 3; ++i) s.body_sites_A.push_back(i);
  for (int i = N / 2; i < N / 2 + 3; ++i) s.body_sites_B.push_back(i);
  return s;
}

void BM_SymplecticSpectrum(benchmark::State& state) {
  const ChainSpec s = two_body_chain(static_cast<int>(state.range(0)));
  const CovarianceMatrix field = reduce_to_field(ground_state_covariance(s), s);
  for (auto _ : state) benchmark::DoNotOptimize(symplectic_spectrum(field));
}
BENCHMARK(BM_SymplecticSpectrum)->Arg(16)->Arg(64)->Arg(128);

void BM_GroundStateCovariance(benchmark::State& state) {
  const ChainSpec s = two_body_chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ground_state_covariance(s));
}
BENCHMARK(BM_GroundStateCovariance)->Arg(16)->Arg(64);

void BM_ModeRecord(benchmark::State& state) {
  const double k = std::pow(10.0, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mode_record(Lorentz{1.0, 1.0, 0.5}, k));
}
BENCHMARK(BM_ModeRecord)->Arg(-3)->Arg(0)->Arg(3);

void BM_EntropyDensity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(entropy_density(Lorentz{0.1, 1.0, 0.1}, 1e4, 3));
}
BENCHMARK(BM_EntropyDensity)->Unit(benchmark::kMillisecond);

void BM_CasimirJ(benchmark::State& state) {
  const double X = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(casimir_J(X));
}
BENCHMARK(BM_CasimirJ)->Arg(10)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_TOperatorBox(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  const BodyGrid b = make_box({0, 0, 0}, {1, 1, 1}, h, Lorentz{1.0, 1.0, 0.2});
  state.counters["points"] = static_cast<double>(b.points.size());
  for (auto _ : state) benchmark::DoNotOptimize(t_operator(b, 0.7));
}
BENCHMARK(BM_TOperatorBox)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ContourVsDirect(benchmark::State& state) {
  const GammaTriple t = gamma_triple_from_chain(two_body_chain(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(sR_contour(t, 1.0));
}
BENCHMARK(BM_ContourVsDirect)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_SpectralDirect(benchmark::State& state) {
  const GammaTriple t = gamma_triple_from_chain(two_body_chain(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(sR_spectral(t, 1.0));
}
BENCHMARK(BM_SpectralDirect)->Arg(16)->Arg(24);

}  // namespace

BENCHMARK_MAIN();
