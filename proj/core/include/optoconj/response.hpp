#pragma once

// Frequency-domain response of the coupled-mode equations.
//
// Spectra follow S_AB(w) = int dt e^{i w t} <A(t) B(0)>: positive frequencies
// describe absorption by the oscillator bath (qubit emission), negative ones
// emission into the qubit. Mode indices are 0 (conjugate mode) and 1 (direct
// mode).

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "optoconj/drive_design.hpp"
#include "optoconj/model.hpp"
#include "optoconj/spectral.hpp"

namespace optoconj {

struct ResponseSet {
  std::array<double, 2> Gamma{};
  std::array<double, 2> Omega{};
  double C = 0.0;
  CouplingKind coupling = CouplingKind::PhaseConjugate;

  // Frequency offset of the two cross channels of mode j: Omega1 + Omega2 for
  // phase conjugation, Omega_k - Omega_j for excitation exchange.
  double channel_shift(int j) const;
};

ResponseSet make_response_set(const SystemConfig& cfg, double C,
                              CouplingKind coupling = CouplingKind::PhaseConjugate);

cplx cavity_lorentzian_L(double C, double gamma, double omega);
cplx response_R(int j, double omega, const ResponseSet& rs);

struct Susceptibility {
  cplx chi;
  cplx chi_c;
};
Susceptibility susceptibilities(int j, double omega, const ResponseSet& rs);

// x_j(w) = chi F(w) + chi_c(w) F(w + S) + chi_c^*(-w) F(w - S), S = Omega1 + Omega2.
cplx position_response(int j, double omega, const ResponseSet& rs, const SpectralFunction& F);

// --- force model --------------------------------------------------------------

double force_envelope(const ForceModel& fm, double omega);
double force_spectral_density(const ForceModel& fm, double omega);
SpectralFunction force_spectrum(const ForceModel& fm, const std::vector<double>& grid);

// --- intrinsic noise ----------------------------------------------------------

// Thermal bath plus cavity-mediated (zeta) noise of the reduced model, as white
// noise in the per-mode rotating frames. Diffusion matrices refer to the state
// vector (B1, B2^dagger) for phase conjugation and (B1, B2) for exchange.
struct IntrinsicNoise {
  std::array<double, 2> gamma{};
  std::array<double, 2> n_bath{};
  std::array<double, 2> g{};
  std::array<cplx, 2> alpha{};
  std::array<double, 2> Delta{};
  std::array<double, 2> Omega{};
  double kappa = 1.0;
  bool thermal = true;
  bool cavity = true;
  // exp(i (theta1 + theta2)) of the phase absorption; multiplies the
  // (B1, B2^dagger) cross-correlations so they match the absorbed drift.
  cplx cross_phase{1.0, 0.0};

  // <zeta zeta^dagger> + gamma (n + 1) sampled at w (emission side).
  double emission(int j, double omega) const;
  // <zeta^dagger zeta> + gamma n sampled at w (absorption side).
  double absorption(int j, double omega) const;

  // P_ik = <n_i n_k^dagger>, Q_ik = <n_k^dagger n_i> in the rotating frame.
  Eigen::Matrix2cd P(CouplingKind kind) const;
  Eigen::Matrix2cd Q(CouplingKind kind) const;
};

// cross_phase is taken from the design's phase rotations.
IntrinsicNoise make_intrinsic_noise(const SystemConfig& cfg, const CouplingDesign& design);

struct NoiseSidebands {
  SpectralFunction emission;
  SpectralFunction absorption;
};
std::array<NoiseSidebands, 2> intrinsic_noise_spectra(const ValidatedConfig& cfg,
                                                      const CouplingDesign& design,
                                                      const std::vector<double>& grid);

// Rotating-frame drift over (B1, B2^dagger) or (B1, B2).
Eigen::Matrix2cd reduced_drift(const ResponseSet& rs);

// Intrinsic contribution to S_xx,j(w) from white noise P, Q through the reduced drift.
double intrinsic_position_spectrum(int j, double omega, const ResponseSet& rs,
                                   const Eigen::Matrix2cd& P, const Eigen::Matrix2cd& Q);

// --- position spectra ---------------------------------------------------------

// The three stationary force channels of S_xx,j(w): frequency at which S_F is
// sampled and its non-negative weight.
struct ForceChannel {
  double shift;   // S_F evaluated at w + shift
  double weight;  // |susceptibility|^2, zero when the force does not reach it
};
std::array<ForceChannel, 3> force_channels(int j, double omega, const ResponseSet& rs,
                                           ForceTarget target);

// Full delta-rule expansion of <x(w) x(w')> with <F(w)F(w')> = delta(w + w') S_F(w):
// entry m is the coefficient of S_F(w + shift_m) summed over the three partner
// channels (w' = -w - shift_m - shift_n). Terms with shift_m + shift_n != 0 are
// cyclostationary; the time-averaged spectrum keeps only the matched pairs.
struct ExpansionTerm {
  double shift;
  cplx coefficient;
  cplx stationary_part;
};
std::array<ExpansionTerm, 3> spectrum_expansion(int j, double omega, const ResponseSet& rs);

struct PositionSpectrumOptions {
  bool include_force = true;
  bool include_intrinsic = true;
};

double position_spectral_density(int j, double omega, const ResponseSet& rs,
                                 const ForceModel& fm, const IntrinsicNoise& noise,
                                 const PositionSpectrumOptions& opt = {});

SpectralFunction position_spectrum(int j, const ResponseSet& rs, const ForceModel& fm,
                                   const IntrinsicNoise& noise, const std::vector<double>& grid,
                                   const PositionSpectrumOptions& opt = {});

}  // namespace optoconj
