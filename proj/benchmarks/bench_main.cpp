#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "optoconj/drive_design.hpp"
#include "optoconj/ensemble.hpp"
#include "optoconj/generator.hpp"
#include "optoconj/qubit_readout.hpp"
#include "optoconj/response.hpp"
#include "optoconj/spectral.hpp"

using namespace optoconj;

namespace {

const ReadoutSetup& setup() {
  static const ReadoutSetup s = make_readout_setup(validate_config(reference_config()));
  return s;
}

void BM_Design(benchmark::State& state) {
  const ValidatedConfig v = validate_config(reference_config());
  for (auto _ : state) benchmark::DoNotOptimize(design_coupling(v));
}
BENCHMARK(BM_Design);

void BM_PositionSpectrum(benchmark::State& state) {
  const ReadoutSetup& s = setup();
  const ResponseSet rs = make_response_set(s.cfg, s.C);
  const std::vector<double> w = UniformGrid::parse("0:3:" + std::to_string(state.range(0))).points();
  for (auto _ : state) benchmark::DoNotOptimize(position_spectrum(0, rs, s.cfg.force, s.noise, w));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PositionSpectrum)->Arg(601)->Arg(6001);

void BM_TemperatureCurve(benchmark::State& state) {
  std::vector<double> T;
  for (int i = 0; i < 61; ++i) T.push_back(1e-3 * std::pow(1e5, i / 60.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        temperature_vs_force_temperature(setup(), CouplingKind::PhaseConjugate, T));
  }
}
BENCHMARK(BM_TemperatureCurve);

void BM_MonteCarlo(benchmark::State& state) {
  const ValidatedConfig v = validate_config(reference_config());
  const CouplingDesign d = design_coupling(v);
  const Generator g = to_natural_frame(build_rwa_generator(apply_design(v.config(), d), d));
  EnsembleOptions opt;
  opt.threads = 1;
  const auto n_traj = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(monte_carlo_ensemble(g, n_traj, {0.0, 100.0}, 0.1, 1, opt));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 1000);
}
BENCHMARK(BM_MonteCarlo)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Welch(benchmark::State& state) {
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(0.37 * static_cast<double>(i));
  for (auto _ : state) benchmark::DoNotOptimize(welch_psd(x, 0.1, 1024));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Welch)->Arg(1 << 14)->Arg(1 << 18);

}  // namespace
BENCHMARK_MAIN();
