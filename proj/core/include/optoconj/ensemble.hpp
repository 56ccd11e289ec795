#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "optoconj/drive_design.hpp"
#include "optoconj/generator.hpp"
#include "optoconj/integrators.hpp"
#include "optoconj/model.hpp"
#include "optoconj/spectral.hpp"

namespace optoconj {

struct EnsembleOptions {
  std::size_t record_every = 1;
  double burn_in = 0.0;  // discarded before recording starts
  // Classical force realization; requires gen.force. The force spectrum used
  // is the symmetrized (S_F(w) + S_F(-w)) / 2.
  std::optional<ForceModel> force;
  std::optional<Eigen::VectorXcd> initial;  // default: zero mean, no initial spread
  unsigned threads = 0;                     // 0: hardware concurrency
  double step_fraction = 0.05;
};

struct TrajectoryEnsemble {
  std::size_t n_traj = 0;
  std::vector<double> t;
  // states[traj][step] is a dim-vector.
  std::vector<std::vector<Eigen::VectorXcd>> states;
  std::uint64_t master_seed = 0;
  // Per-trajectory seed material: seed_seq{lo32(master), hi32(master), index}.
  std::vector<std::uint64_t> stream_ids;
  std::vector<PositionReadout> positions;

  std::vector<double> position(std::size_t traj, int mode) const;
  Eigen::VectorXcd mean(std::size_t step) const;
  Eigen::VectorXcd mean_stderr(std::size_t step) const;  // per component, |.| of complex stderr
  // Sample <v v^dagger> over the ensemble at a recorded step.
  Eigen::MatrixXcd second_moment(std::size_t step) const;
};

// Classical stochastic realization with complex Gaussian increments. Time
// independent generators step with the exact propagator and exact step noise
// covariance; time-dependent ones with Euler-Maruyama. Throws StepTooLarge,
// NonPSDDiffusion, InvalidParameter (n_traj < 2, doubled phase space).
TrajectoryEnsemble monte_carlo_ensemble(const Generator& gen, std::size_t n_traj,
                                        const TimeWindow& window, double dt, std::uint64_t seed,
                                        const EnsembleOptions& opt = {});

struct WelchParams {
  std::size_t segment_length = 1024;
  double correlation_time = 0.0;  // WindowTooShort when segment < 10 correlation times
};

// Welch spectrum of x_j(t) per trajectory, averaged over trajectories; the
// standard error comes from the spread between trajectories.
SpectralFunction periodogram_spectrum(const TrajectoryEnsemble& ens, int mode,
                                      const WelchParams& welch);

// Synthesizes a real stationary Gaussian process of length n with two-sided
// spectrum S(w) (only S(w) + S(-w) matters) by random-phase FFT.
std::vector<double> synthesize_force(const ForceModel& fm, std::size_t n, double dt,
                                     std::uint64_t seed, std::uint64_t stream);

// Slowest relaxation time 1 / min |Re(eigenvalue)| of the drift at t = 0.
double correlation_time(const Generator& gen);

struct SpectrumRun {
  std::size_t n_traj = 256;
  double dt = 0.1;
  std::size_t segment_length = 2048;
  std::size_t segments = 15;  // 50%-overlapping Welch segments per trajectory
  double burn_in = 200.0;
  unsigned threads = 0;
  double step_fraction = 0.2;  // dt * max frequency bound; the propagator is exact
};

// Monte Carlo estimate of S_xx for mode `mode` of the reduced model (phase
// conjugate or exchange) with the configured force and intrinsic noise. The
// classical simulation reproduces the symmetrized spectrum (S(w) + S(-w)) / 2.
SpectralFunction simulated_position_spectrum(const SystemConfig& cfg, const CouplingDesign& design,
                                             CouplingKind kind, int mode, std::uint64_t seed,
                                             const SpectrumRun& run = {});

}  // namespace optoconj
