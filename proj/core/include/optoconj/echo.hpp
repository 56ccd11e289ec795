#pragma once

// Phase-conjugate echo: free evolution of the per-mode rotating-frame
// amplitudes B_j = e^{i Omega_j t} b_j under classical forces, with a
// conjugating swap at t = 0.

#include <array>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "optoconj/model.hpp"

namespace optoconj {

using ModePair = std::array<cplx, 2>;

// Mode j (0-based) is read out after the swap; k = 1 - j is the mode whose
// conjugate it inherits. The echo condition is Omega_k t1 = Omega_j t2 = tau.
struct EchoPlan {
  double t1 = 0.0;
  double t2 = 0.0;
  double tau = 0.0;
  int readout = 0;
  // Covariance of complex Gaussian noise added at the swap, E[n n^dagger].
  std::optional<Eigen::Matrix2cd> swap_noise;
};

EchoPlan make_echo_plan(const std::array<double, 2>& Omega, double tau, int readout = 0);

// Throws PlanMismatch when the echo condition is off by more than 1e-12 relative.
void check_echo_plan(const std::array<double, 2>& Omega, const EchoPlan& plan);

struct ForceSignal {
  std::array<std::function<double(double)>, 2> F{[](double) { return 0.0; },
                                                 [](double) { return 0.0; }};
};

// Instantaneous swap (B1, B2) -> (B2*, B1*) plus optional noise. rng may be
// null only when no noise is requested.
ModePair phase_conjugate_swap(const ModePair& state,
                              const std::optional<Eigen::Matrix2cd>& swap_noise = std::nullopt,
                              std::mt19937_64* rng = nullptr);

// The same map realized by a conjugating pulse dB1/dt = C B2*, dB2*/dt = -C B1
// of duration pi / (2C), followed by a sign flip of mode 2. Forces are
// neglected during the pulse.
ModePair finite_conjugate_swap(const ModePair& state, double C, std::size_t steps = 2000);

struct EchoOptions {
  double dt = 1e-3;
  bool finite_swap = false;
  double swap_coupling = 0.025;
  std::uint64_t seed = 0;  // used only with swap noise
};

struct EchoResult {
  ModePair initial{};     // B(-t1)
  ModePair before_swap{}; // B(0-)
  ModePair final_state{}; // B(t2)
  // residual[m] = B_m(t2) - conj(B_{1-m}(-t1)); the echo cancels it for the readout mode
  ModePair residual{};
  std::vector<double> t;                 // 0 .. t2
  std::vector<ModePair> residual_trace;  // residual vs. time after the swap
};

EchoResult echo_protocol(const ValidatedConfig& cfg, const EchoPlan& plan,
                         const ForceSignal& forces, const ModePair& initial = {},
                         const EchoOptions& opt = {});

// Ramp family F_m(t) = a_m (1 + bandwidth * t).
struct RampFamily {
  std::array<double, 2> amplitude{0.0, 0.0};
};

ForceSignal ramp_forces(const RampFamily& fam, double bandwidth);

struct EchoSweepPoint {
  double bandwidth = 0.0;
  double residual = 0.0;  // |residual| of the readout mode
};

std::vector<EchoSweepPoint> echo_residual_sweep(const ValidatedConfig& cfg, const EchoPlan& plan,
                                                const RampFamily& fam,
                                                const std::vector<double>& bandwidths,
                                                const EchoOptions& opt = {});

}  // namespace optoconj
