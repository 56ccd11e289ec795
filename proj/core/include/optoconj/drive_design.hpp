#pragma once

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "optoconj/model.hpp"

namespace optoconj {

struct MeanField {
  std::array<cplx, 2> alpha{};
  std::array<double, 2> omega_L{};

  // alpha(t) = sum_j alpha_j exp(-i omega_Lj t), lab frame.
  cplx at(double t) const;
};

cplx mean_field_amplitude(cplx eta, double kappa, double Delta);
MeanField mean_field(const SystemConfig& cfg);

// Drive frequencies for pure phase conjugation, ordered (omega_L1, omega_L2).
// omega_L2 is computed as omega_L1 + (Omega1 + Omega2), so the beat note is the
// mode sum up to a single rounding of the addition.
std::pair<double, double> select_drive_frequencies(double Omega1, double Omega2, double omega_c,
                                                   double kappa, Branch branch);

// The same design expressed as detunings (Delta1, Delta2) = omega_c - omega_L.
// Evaluated without reference to omega_c, so they carry no cancellation error.
std::pair<double, double> design_detunings(double Omega1, double Omega2, double kappa,
                                           Branch branch);

struct CouplingInputs {
  std::array<cplx, 2> alpha{};
  std::array<double, 2> g{};
  std::array<double, 2> Delta{};
  std::array<double, 2> Omega{};
  double kappa = 0.0;
};

// (C1+, (C2+)^*)
std::pair<cplx, cplx> coupling_constants(const CouplingInputs& in);

cplx coupling_product(cplx C1_plus, cplx C2_plus_conj);

// -4 |alpha1 alpha2 g1 g2|^2 |(O1-O2)^2 - k^2| / (k^2 (O1-O2)^2)
double coupling_product_closed_form(const std::array<cplx, 2>& alpha,
                                    const std::array<double, 2>& g, double Omega1,
                                    double Omega2, double kappa);

enum class RegimeKind { PhaseConjugation, ParametricAmplification, Mixed };

struct Regime {
  RegimeKind kind = RegimeKind::Mixed;
  std::array<cplx, 2> eigenvalues{};  // +sqrt(product), -sqrt(product)
};

const char* to_string(RegimeKind k);

// Degenerate when |product| <= tol * scale.
Regime classify_regime(cplx product, double tol, double scale = 1.0);

struct PhaseAbsorption {
  double C = 0.0;
  // b_j -> exp(i theta_j) b_j
  std::array<double, 2> phase_rotations{};
  // Off-diagonal entries of the rotating-frame drift over (b1, b2^dagger) after
  // the rotations: (C, -|C2+|) in the phase-conjugation regime.
  cplx upper{};
  cplx lower{};
  double asymmetry_ratio = 1.0;  // |C2+| / |C1+|
};

PhaseAbsorption absorb_phases(cplx C1_plus, cplx C2_plus_conj);

// Off-diagonals of the (b1, b2^dagger) drift after b_j -> exp(i theta_j) b_j.
std::pair<cplx, cplx> rotate_couplings(cplx C1_plus, cplx C2_plus_conj,
                                       const std::array<double, 2>& theta);

struct CouplingDesign {
  std::array<double, 2> omega_L{};
  std::array<double, 2> Delta{};
  Branch branch = Branch::Plus;
  std::array<cplx, 2> alpha{};
  cplx C1_plus{};
  cplx C2_plus_conj{};
  cplx product{};
  Regime regime;
  double C = 0.0;
  std::array<double, 2> phase_rotations{};
  double asymmetry_ratio = 1.0;
  double eta_scale = 1.0;  // factor applied to both pump amplitudes
  std::vector<std::string> warnings;
};

// Full pipeline: drive frequencies (when requested), mean fields, optional
// rescaling of |eta| to reach design.C_target, coupling constants, regime and
// phase absorption. Throws RegimeUnavailable / DegenerateProduct.
CouplingDesign design_coupling(const ValidatedConfig& cfg);

// Copy of cfg with drive frequencies and pump amplitudes taken from the design.
SystemConfig apply_design(const SystemConfig& cfg, const CouplingDesign& design);

// Optical spring and cold damping of a mode in the two-tone field, adiabatic
// cavity: sigma_j = sum_l g_j^2 |alpha_l|^2 [1/(k/2 - i(D_l + W)) - 1/(k/2 + i(D_l - W))],
// with Omega_j = omega_j - Im sigma_j(Omega_j), Gamma_j = gamma_j - 2 Re sigma_j(Omega_j).
cplx mechanical_self_energy(double g, const std::array<cplx, 2>& alpha,
                            const std::array<double, 2>& Delta, double kappa, double Omega);

// Iterates drive selection and self-energy until the effective frequencies
// are self-consistent (pump amplitudes held fixed). Returns the updated config
// with effective[] and drives[] filled in.
SystemConfig derive_effective_modes(const SystemConfig& cfg, int max_iter = 200,
                                    double tol = 1e-14);

}  // namespace optoconj
