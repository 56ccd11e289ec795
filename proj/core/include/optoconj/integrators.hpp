#pragma once

#include <vector>

#include <Eigen/Dense>

#include "optoconj/generator.hpp"

namespace optoconj {

struct TimeWindow {
  double t0 = 0.0;
  double t1 = 0.0;
};

struct MomentTrajectory {
  std::vector<double> t;
  std::vector<Eigen::VectorXcd> mean;
};

// Second moments S1 = <v v^dagger> and S2_ik = <v_k^dagger v_i>.
// S1 - S2 is the commutator matrix <[v_i, v_k^dagger]>.
struct CovarianceTrajectory {
  std::vector<double> t;
  std::vector<Eigen::MatrixXcd> S1;
  std::vector<Eigen::MatrixXcd> S2;

  Eigen::MatrixXcd commutator(std::size_t step) const { return S1[step] - S2[step]; }
};

struct IntegratorOptions {
  std::size_t record_every = 1;
  double step_fraction = 0.05;  // dt <= step_fraction / max_frequency for RK4
};

// Time-independent generators are propagated exactly with the matrix
// exponential; time-dependent ones with classical RK4 under the step limit
// (StepTooLarge otherwise).
MomentTrajectory integrate_first_moments(const Generator& gen, const Eigen::VectorXcd& initial,
                                         const TimeWindow& window, double dt,
                                         const IntegratorOptions& opt = {});

// Throws NonPSDDiffusion when (P + Q)/2 is not positive semidefinite.
CovarianceTrajectory integrate_covariance(const Generator& gen, const Eigen::MatrixXcd& S1_0,
                                          const Eigen::MatrixXcd& S2_0, const TimeWindow& window,
                                          double dt, const IntegratorOptions& opt = {});

// Vacuum-like initial moments: S1 = diag(1 for annihilators, 0 for creators) of
// the commutator structure, S2 = 0 where appropriate.
struct InitialMoments {
  Eigen::MatrixXcd S1;
  Eigen::MatrixXcd S2;
};
InitialMoments ground_state_moments(const Generator& gen);

// Checks Hermiticity and positive semidefiniteness of (P + Q)/2 at time t.
void require_psd_diffusion(const Generator& gen, double t);

// int_0^dt e^{A s} M e^{A^dagger s} ds for constant A, M (Van Loan).
Eigen::MatrixXcd integrated_covariance(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& M,
                                       double dt);

}  // namespace optoconj
