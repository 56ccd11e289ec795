#include "optoconj/model.hpp"

#include <cmath>
#include <string>

#include "optoconj/errors.hpp"

namespace optoconj {

namespace {

void require(bool ok, const std::string& field, const std::string& bound) {
  if (!ok) throw InvalidParameter(field, bound);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

ValidatedConfig validate_config(const SystemConfig& cfg) {
  require(finite(cfg.cavity.kappa) && cfg.cavity.kappa > 0, "cavity.kappa", "must be > 0");
  require(finite(cfg.cavity.omega_c) && cfg.cavity.omega_c > 0, "cavity.omega_c", "must be > 0");

  for (int j = 0; j < 2; ++j) {
    const std::string m = "modes[" + std::to_string(j) + "]";
    const auto& mode = cfg.modes[j];
    require(finite(mode.omega) && mode.omega > 0, m + ".omega", "must be > 0");
    require(finite(mode.gamma) && mode.gamma >= 0, m + ".gamma", "must be >= 0");
    require(finite(mode.g), m + ".g", "must be finite");
    require(finite(mode.n_bath) && mode.n_bath >= 0, m + ".n_bath", "must be >= 0");

    const std::string e = "effective[" + std::to_string(j) + "]";
    require(finite(cfg.effective[j].Omega) && cfg.effective[j].Omega > 0, e + ".Omega",
            "must be > 0");
    require(finite(cfg.effective[j].Gamma) && cfg.effective[j].Gamma >= 0, e + ".Gamma",
            "must be >= 0");

    const std::string d = "drives[" + std::to_string(j) + "]";
    const auto& drive = cfg.drives[j];
    require(finite(drive.eta.real()) && finite(drive.eta.imag()), d + ".eta", "must be finite");
    require(finite(drive.omega_L), d + ".omega_L", "must be finite");
    require(drive.Delta == cfg.cavity.omega_c - drive.omega_L, d + ".Delta",
            "must equal omega_c - omega_L");
  }

  require(finite(cfg.qubit.A) && cfg.qubit.A >= 0, "qubit.A", "must be >= 0");
  require(finite(cfg.qubit.Gamma_decay) && cfg.qubit.Gamma_decay >= 0, "qubit.Gamma_decay",
          "must be >= 0");
  require(finite(cfg.qubit.omega_q) && cfg.qubit.omega_q > 0, "qubit.omega_q", "must be > 0");

  require(!std::isnan(cfg.force.T_eff) && cfg.force.T_eff != 0, "force.T_eff", "must be nonzero");
  require(finite(cfg.force.sigma_F) && cfg.force.sigma_F > 0, "force.sigma_F", "must be > 0");
  require(finite(cfg.force.omega_0) && cfg.force.omega_0 >= 0, "force.omega_0", "must be >= 0");
  require(finite(cfg.force.S0) && cfg.force.S0 >= 0, "force.S0", "must be >= 0");

  require(cfg.design.regime_tol > 0, "design.regime_tol", "must be > 0");
  if (cfg.design.C_target) {
    require(finite(*cfg.design.C_target) && *cfg.design.C_target > 0, "design.C_target",
            "must be > 0");
  }

  const double split = std::abs(cfg.effective[0].Omega - cfg.effective[1].Omega);
  const bool separation_ok = split > cfg.cavity.kappa;
  if (cfg.design.phase_conjugation && !separation_ok) {
    throw RegimeUnavailable("phase conjugation requires |Omega1 - Omega2| > kappa (|Omega1 - Omega2| = " +
                            std::to_string(split) + ", kappa = " +
                            std::to_string(cfg.cavity.kappa) + ")");
  }
  return ValidatedConfig(cfg, separation_ok);
}

SystemConfig natural_units_normalize(const SystemConfig& cfg, double reference) {
  if (!(reference > 0) || !std::isfinite(reference)) {
    throw InvalidParameter("reference", "must be > 0");
  }
  if (reference == 1.0) return cfg;

  const double s = 1.0 / reference;
  SystemConfig out = cfg;
  out.cavity.omega_c *= s;
  out.cavity.kappa *= s;
  for (int j = 0; j < 2; ++j) {
    out.modes[j].omega *= s;
    out.modes[j].gamma *= s;
    out.modes[j].g *= s;
    out.effective[j].Omega *= s;
    out.effective[j].Gamma *= s;
    out.drives[j].eta *= s;
    out.drives[j].omega_L *= s;
    out.drives[j].Delta = out.cavity.omega_c - out.drives[j].omega_L;
  }
  out.qubit.A *= s;
  out.qubit.Gamma_decay *= s;
  out.qubit.omega_q *= s;
  out.force.T_eff *= s;
  out.force.sigma_F *= s;
  out.force.omega_0 *= s;
  out.force.S0 *= s;
  if (out.design.C_target) *out.design.C_target *= s;
  return out;
}

SystemConfig reference_config() {
  SystemConfig cfg;
  cfg.cavity = CavityParams{50.0, 0.1};
  cfg.modes = {MechMode{1.0, 0.1, 0.01, 0.0}, MechMode{1.5, 0.1, 0.01, 0.0}};
  cfg.effective = {EffectiveMode{1.0, 0.1}, EffectiveMode{1.5, 0.1}};
  cfg.drives = {DriveTone::make({1.0, 0.0}, cfg.cavity.omega_c, cfg.cavity.omega_c),
                DriveTone::make({1.0, 0.0}, cfg.cavity.omega_c, cfg.cavity.omega_c)};
  cfg.qubit = QubitParams{1.0, 0.01, 1.0};
  cfg.force = ForceModel{};
  cfg.force.omega_0 = 1.5;
  cfg.force.S0 = 100.0;
  cfg.design.C_target = 0.025;
  return cfg;
}

}  // namespace optoconj
