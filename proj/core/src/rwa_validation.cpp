#include "optoconj/rwa_validation.hpp"

#include <algorithm>
#include <cmath>

#include "optoconj/errors.hpp"
#include "optoconj/generator.hpp"
#include "optoconj/integrators.hpp"

namespace optoconj {

namespace {

// No pump: the reduced model is a pair of free damped rotators at the bare
// parameters and C = 0. The window spans span_Ct / Gamma_max instead.
RwaValidationResult validate_undriven(const ValidatedConfig& cfg, const RwaValidationOptions& opt) {
  const SystemConfig& c = cfg.config();
  FullModelOptions fopt;
  fopt.include_drive = false;
  fopt.include_noise = false;
  const Generator full = build_full_generator(cfg, mean_field(c), fopt);
  const double rate = std::max({c.modes[0].gamma, c.modes[1].gamma, 1e-3});
  const double T = opt.span_Ct / rate;
  const double dt = opt.dt > 0 ? opt.dt : 0.02 / full.max_frequency();
  const auto steps = static_cast<std::size_t>(std::ceil(T / dt));
  IntegratorOptions iopt;
  iopt.record_every = std::max<std::size_t>(1, steps / (opt.samples - 1));
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(6);
  v(2) = 1.0;
  v(3) = 1.0;
  const auto tf = integrate_first_moments(full, v, {0.0, static_cast<double>(steps) * dt}, dt, iopt);

  RwaValidationResult r;
  r.derived = c;
  r.t = tf.t;
  const cplx z1(-c.modes[0].gamma / 2.0, -c.modes[0].omega);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t s = 0; s < tf.t.size(); ++s) {
    const std::array<cplx, 2> bf{tf.mean[s](2), tf.mean[s](4)};
    const std::array<cplx, 2> br{std::exp(z1 * tf.t[s]), 0.0};
    r.full.push_back(bf);
    r.rwa.push_back(br);
    for (int j = 0; j < 2; ++j) {
      num += std::norm(bf[j] - br[j]);
      den += std::norm(bf[j]);
    }
  }
  r.rms_deviation = std::sqrt(num / den);
  return r;
}

}  // namespace

RwaValidationResult validate_rwa(const ValidatedConfig& cfg, const RwaValidationOptions& opt) {
  if (!(opt.span_Ct > 0)) throw InvalidParameter("span_Ct", "must be > 0");
  if (opt.samples < 2) throw InvalidParameter("samples", "must be >= 2");

  const bool undriven = std::abs(cfg->drives[0].eta) == 0.0 && std::abs(cfg->drives[1].eta) == 0.0;
  if (undriven) return validate_undriven(cfg, opt);

  const CouplingDesign first = design_coupling(cfg);
  SystemConfig derived = derive_effective_modes(apply_design(cfg.config(), first));
  derived.design.select_drive_frequencies = false;
  derived.design.C_target.reset();
  const ValidatedConfig vd = validate_config(derived);
  const CouplingDesign design = design_coupling(vd);

  ReducedModelOptions ropt;
  ropt.thermal_noise = false;
  ropt.cavity_noise = false;
  ropt.raw_constants = true;
  const Generator rwa = build_rwa_generator(derived, design, ropt);

  SystemConfig full_cfg = derived;
  full_cfg.drives[1] = DriveTone::make(derived.drives[1].eta,
                                       derived.drives[1].omega_L + opt.beat_detuning,
                                       derived.cavity.omega_c);
  const ValidatedConfig vfull = validate_config(full_cfg);
  FullModelOptions fopt;
  fopt.include_drive = false;
  fopt.include_noise = false;
  const Generator full = build_full_generator(vfull, mean_field(full_cfg), fopt);

  const double C = design.C;
  if (!(C > 0)) throw DegenerateProduct("validate_rwa needs C > 0");
  const double T = opt.span_Ct / C;
  const double fmax = std::max(full.max_frequency(), rwa.max_frequency());
  double dt = opt.dt > 0 ? opt.dt : 0.02 / fmax;
  auto steps = static_cast<std::size_t>(std::ceil(T / dt));
  const std::size_t every = std::max<std::size_t>(1, steps / (opt.samples - 1));
  steps = every * (steps / every + (steps % every ? 1 : 0));
  dt = T / static_cast<double>(steps);

  IntegratorOptions iopt;
  iopt.record_every = every;
  Eigen::VectorXcd v_full = Eigen::VectorXcd::Zero(6);
  v_full(2) = 1.0;
  v_full(3) = 1.0;
  // Cavity starts slaved to b1 = 1, as the reduced model assumes; starting
  // from a = 0 adds an initial slip of order |self-energy| / kappa.
  {
    const MeanField mf = mean_field(full_cfg);
    const double k2 = full_cfg.cavity.kappa / 2.0;
    const double W = derived.effective[0].Omega;
    cplx a0{};
    for (int l = 0; l < 2; ++l) {
      const double D = full_cfg.drives[l].Delta;
      a0 += -cplx(0.0, 1.0) * full_cfg.modes[0].g * mf.alpha[l] *
            (1.0 / cplx(k2, D - W) + 1.0 / cplx(k2, D + W));
    }
    v_full(0) = a0;
    v_full(1) = std::conj(a0);
  }
  Eigen::VectorXcd v_rwa = Eigen::VectorXcd::Zero(2);
  v_rwa(0) = 1.0;
  const auto tf = integrate_first_moments(full, v_full, {0.0, T}, dt, iopt);
  const auto tr = integrate_first_moments(rwa, v_rwa, {0.0, T}, dt, iopt);

  RwaValidationResult r;
  r.C = C;
  r.ratio = C / std::abs(derived.effective[0].Omega - derived.effective[1].Omega);
  r.design = design;
  r.derived = derived;
  r.t = tf.t;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t s = 0; s < tf.t.size(); ++s) {
    const std::array<cplx, 2> bf{tf.mean[s](2), tf.mean[s](4)};
    const std::array<cplx, 2> br{tr.mean[s](0), std::conj(tr.mean[s](1))};
    r.full.push_back(bf);
    r.rwa.push_back(br);
    for (int j = 0; j < 2; ++j) {
      num += std::norm(bf[j] - br[j]);
      den += std::norm(bf[j]);
    }
  }
  r.rms_deviation = std::sqrt(num / den);
  return r;
}

}  // namespace optoconj
