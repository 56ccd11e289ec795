#pragma once

// Linear stochastic models dv/dt = A(t) v + d(t) + n(t) with white noise
// <n_i(t) n_k^dagger(t')> = P_ik(t) delta(t - t') and
// <n_k^dagger(t') n_i(t)> = Q_ik(t) delta(t - t').
// A, d, P and Q are finite Fourier sums sum_m X_m exp(i nu_m t).

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "optoconj/drive_design.hpp"
#include "optoconj/model.hpp"

namespace optoconj {

struct MatrixTerm {
  double frequency = 0.0;
  Eigen::MatrixXcd matrix;
};

struct VectorTerm {
  double frequency = 0.0;
  Eigen::VectorXcd vector;
};

// Classical force entering component i as coefficient_i exp(i nu_i t) F(t).
struct ForceCoupling {
  Eigen::VectorXcd coefficient;
  Eigen::VectorXd frequency;
};

// How to read the position of mechanical mode j off the state vector:
// x_j = 2 Re(exp(-i frame t) v_index).
struct PositionReadout {
  int index = 0;
  double frame = 0.0;
};

struct Generator {
  std::vector<std::string> labels;
  std::vector<MatrixTerm> drift_terms;
  std::vector<VectorTerm> drive_terms;
  std::vector<MatrixTerm> P_terms;
  std::vector<MatrixTerm> Q_terms;
  // Pairs (i, i') with v_i' = v_i^dagger (doubled phase space).
  std::vector<std::pair<int, int>> conjugate_pairs;
  std::vector<PositionReadout> positions;  // one per mechanical mode
  // Frame frequencies w_i (v_i -> exp(i w_i t) v_i) in which the model is
  // expected to become time independent; empty when there is none.
  std::vector<double> natural_frame;
  std::optional<ForceCoupling> force;

  int dim() const { return static_cast<int>(labels.size()); }
  bool time_dependent() const;
  // Largest oscillation frequency present: Fourier frequencies and the
  // imaginary parts of the static diagonal.
  double max_frequency() const;

  Eigen::MatrixXcd drift(double t) const;
  Eigen::VectorXcd drive(double t) const;
  Eigen::MatrixXcd P(double t) const;
  Eigen::MatrixXcd Q(double t) const;
  // Noise covariance of a classical simulation: (P + Q) / 2.
  Eigen::MatrixXcd diffusion(double t) const;
};

struct FullModelOptions {
  bool include_drive = true;  // classical radiation-pressure term
  bool include_noise = true;
};

// Linearized cavity + two mechanical modes over (a, a+, b1, b1+, b2, b2+),
// cavity in the frame of omega_c, mechanics in the lab frame with bare
// frequencies omega_j and damping gamma_j.
Generator build_full_generator(const ValidatedConfig& cfg, const MeanField& mf,
                               const FullModelOptions& opt = {});

struct ReducedModelOptions {
  bool thermal_noise = true;
  bool cavity_noise = true;
  // true: off-diagonals (C1+, (C2+)^*) as designed; false: phase-absorbed (C, -C).
  bool raw_constants = false;
  bool attach_force = false;  // couple the classical force as i F(t) to both modes
};

// Two-mode reduced model over (b1, b2+), lab frame with explicit
// exp(-+i (Omega1 + Omega2) t) on the off-diagonals.
// Throws RegimeUnavailable unless the design is in the phase-conjugation regime.
Generator build_rwa_generator(const SystemConfig& cfg, const CouplingDesign& design,
                              const ReducedModelOptions& opt = {});

// Excitation-exchange counterpart over (b1, b2) with the same |C|.
Generator build_linear_generator(const SystemConfig& cfg, const CouplingDesign& design,
                                 const ReducedModelOptions& opt = {});

// v_i -> exp(i w_i t) v_i. Fourier terms are regrouped; frequencies within
// 1e-12 of each other (relative to the largest) merge and near-zero ones snap to 0.
Generator rotating_frame(const Generator& gen, const std::vector<double>& w);

// rotating_frame(gen, gen.natural_frame).
Generator to_natural_frame(const Generator& gen);

}  // namespace optoconj
