#pragma once

// Physical parameters of the two-mode optomechanical system, in natural units
// (hbar = k_B = 1). Every other part of the library consumes a ValidatedConfig.

#include <array>
#include <complex>
#include <limits>
#include <optional>

namespace optoconj {

using cplx = std::complex<double>;

struct CavityParams {
  double omega_c = 50.0;  // cavity frequency
  double kappa = 0.1;     // energy decay rate
};

struct MechMode {
  double omega = 1.0;   // bare frequency
  double gamma = 0.1;   // intrinsic damping
  double g = 0.01;      // single-photon optomechanical coupling
  double n_bath = 0.0;  // thermal occupation of the mechanical bath
};

// Renormalized frequency and damping (optical spring and cold damping included).
struct EffectiveMode {
  double Omega = 1.0;
  double Gamma = 0.1;
};

struct DriveTone {
  cplx eta{0.0, 0.0};  // pump amplitude
  double omega_L = 0.0;
  double Delta = 0.0;  // omega_c - omega_L, cached

  static DriveTone make(cplx eta, double omega_L, double omega_c) {
    return DriveTone{eta, omega_L, omega_c - omega_L};
  }
};

struct QubitParams {
  double A = 1.0;             // coupling to x_1
  double Gamma_decay = 0.01;  // intrinsic upper-to-lower decay
  double omega_q = 1.0;       // transition frequency, Omega_1 unless overridden
};

enum class Branch { Plus = 1, Minus = -1 };

enum class CouplingKind { PhaseConjugate, Linear };

// Which mechanical equations the external force enters.
enum class ForceTarget { Both, Mode1, Mode2 };

// How the overall scale of S_F depends on T_eff.
//  Fixed:   S_F = S0 exp(w/2T) E(w)
//  Thermal: S_F = S0 E(w) exp(w/2T) (|w|/2) / sinh(|w|/2|T|) = S0 E(w) w (n(w) + 1),
//           linear in T when hot and zero-point limited when cold.
enum class ForceNormalization { Fixed, Thermal };

struct ForceModel {
  double T_eff = 1.0;
  double sigma_F = 0.05;
  double omega_0 = 1.5;
  double S0 = 1.0;
  ForceTarget target = ForceTarget::Both;
  ForceNormalization normalization = ForceNormalization::Thermal;
};

struct DesignOptions {
  bool phase_conjugation = true;         // request the phase-conjugating drive design
  bool select_drive_frequencies = true;  // overwrite drives[].omega_L from the resonance design
  Branch branch = Branch::Plus;
  std::optional<double> C_target;  // rescale |eta| so that |C1+| hits this value
  double regime_tol = 1e-9;
};

struct SystemConfig {
  CavityParams cavity;
  std::array<MechMode, 2> modes{};
  std::array<EffectiveMode, 2> effective{};
  std::array<DriveTone, 2> drives{};
  QubitParams qubit;
  ForceModel force;
  DesignOptions design;
};

class ValidatedConfig {
 public:
  const SystemConfig& config() const noexcept { return cfg_; }
  const SystemConfig* operator->() const noexcept { return &cfg_; }

  // |Omega1 - Omega2| > kappa
  bool separation_ok() const noexcept { return separation_ok_; }

 private:
  friend ValidatedConfig validate_config(const SystemConfig&);
  ValidatedConfig(SystemConfig cfg, bool separation_ok)
      : cfg_(std::move(cfg)), separation_ok_(separation_ok) {}

  SystemConfig cfg_;
  bool separation_ok_;
};

// Checks every type invariant. Throws InvalidParameter naming the field and the
// violated bound, or RegimeUnavailable when a phase-conjugation design is
// requested but |Omega1 - Omega2| <= kappa.
ValidatedConfig validate_config(const SystemConfig& cfg);

// Divides every frequency and rate by `reference`. Dimensionless quantities
// (occupations, mean-field amplitudes) are untouched; spectral densities of x
// scale with time, so S0 and A are rescaled to keep A^2 S_xx a rate.
SystemConfig natural_units_normalize(const SystemConfig& cfg, double reference);

// Parameter set of the published temperature curves: Omega = (1, 1.5),
// gamma = 0.1, C = 0.025. Values the figures leave open (kappa, g, omega_c,
// qubit and force scales) are fixed to documented defaults here.
SystemConfig reference_config();

}  // namespace optoconj
