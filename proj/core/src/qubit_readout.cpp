#include "optoconj/qubit_readout.hpp"

#include <cmath>
#include <limits>

#include "optoconj/errors.hpp"

namespace optoconj {

QubitRates golden_rule_rates(double A, double Sxx_at_minus_Omega1, double Sxx_at_plus_Omega1,
                             double decay) {
  if (!(Sxx_at_minus_Omega1 >= 0)) throw InvalidParameter("Sxx(-Omega1)", "must be >= 0");
  if (!(Sxx_at_plus_Omega1 >= 0)) throw InvalidParameter("Sxx(+Omega1)", "must be >= 0");
  if (!(decay >= 0)) throw InvalidParameter("decay", "must be >= 0");
  const double a2 = A * A;
  return QubitRates{a2 * Sxx_at_minus_Omega1, a2 * Sxx_at_plus_Omega1, decay};
}

QubitState steady_state(const QubitRates& r, double omega_q) {
  const double total = r.rate_up + r.rate_down + r.decay;
  if (!(total > 0)) throw Undefined("qubit steady state undefined: all rates vanish");
  QubitState s;
  s.p_e = r.rate_up / total;
  s.p_g = (r.rate_down + r.decay) / total;
  if (r.rate_up == 0.0) {
    s.T_qubit = 0.0;
    return s;
  }
  // p_g / p_e = (down + decay) / up avoids the cancellation in 1 - p_e.
  const double ratio = (r.rate_down + r.decay) / r.rate_up;
  if (ratio == 1.0) {
    s.T_qubit = std::numeric_limits<double>::infinity();
    s.kind = TemperatureKind::PlusInfinity;
    return s;
  }
  s.T_qubit = omega_q / std::log(ratio);
  return s;
}

ReadoutSetup make_readout_setup(const ValidatedConfig& cfg) {
  ReadoutSetup s;
  s.design = design_coupling(cfg);
  s.cfg = apply_design(cfg.config(), s.design);
  s.noise = make_intrinsic_noise(s.cfg, s.design);
  s.C = s.design.C;
  return s;
}

QubitState qubit_state_for(const ReadoutSetup& setup, CouplingKind kind, const ForceModel& fm) {
  const ResponseSet rs = make_response_set(setup.cfg, setup.C, kind);
  const double wq = setup.cfg.qubit.omega_q;
  const double s_minus = position_spectral_density(0, -wq, rs, fm, setup.noise);
  const double s_plus = position_spectral_density(0, +wq, rs, fm, setup.noise);
  const QubitRates r = golden_rule_rates(setup.cfg.qubit.A, s_minus, s_plus,
                                         setup.cfg.qubit.Gamma_decay);
  return steady_state(r, wq);
}

namespace {

std::vector<CurvePoint> sweep(const ReadoutSetup& setup, CouplingKind kind,
                              const std::vector<double>& xs, double ForceModel::*field) {
  std::vector<CurvePoint> out(xs.size());
  const ResponseSet rs = make_response_set(setup.cfg, setup.C, kind);
  const double wq = setup.cfg.qubit.omega_q;
  // The intrinsic part does not depend on the force; evaluate it once.
  PositionSpectrumOptions only_noise{false, true};
  PositionSpectrumOptions only_force{true, false};
  const ForceModel& base = setup.cfg.force;
  const double n_minus = position_spectral_density(0, -wq, rs, base, setup.noise, only_noise);
  const double n_plus = position_spectral_density(0, +wq, rs, base, setup.noise, only_noise);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ForceModel fm = base;
    fm.*field = xs[i];
    const double s_minus =
        n_minus + position_spectral_density(0, -wq, rs, fm, setup.noise, only_force);
    const double s_plus =
        n_plus + position_spectral_density(0, +wq, rs, fm, setup.noise, only_force);
    out[i].x = xs[i];
    out[i].rates = golden_rule_rates(setup.cfg.qubit.A, s_minus, s_plus,
                                     setup.cfg.qubit.Gamma_decay);
    out[i].state = steady_state(out[i].rates, wq);
  }
  return out;
}

}  // namespace

std::vector<CurvePoint> temperature_vs_force_temperature(const ReadoutSetup& setup,
                                                         CouplingKind kind,
                                                         const std::vector<double>& T_eff) {
  return sweep(setup, kind, T_eff, &ForceModel::T_eff);
}

std::vector<CurvePoint> temperature_vs_width(const ReadoutSetup& setup, CouplingKind kind,
                                             const std::vector<double>& sigma_F) {
  return sweep(setup, kind, sigma_F, &ForceModel::sigma_F);
}

double asymptotic_slope(const std::vector<double>& x, const std::vector<double>& y,
                        double x_min) {
  if (x.size() != y.size()) throw InvalidParameter("slope", "x and y sizes differ");
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < x_min || !std::isfinite(y[i])) continue;
    n += 1;
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (n < 2 || den == 0.0) throw InvalidParameter("slope", "need two distinct points");
  return (n * sxy - sx * sy) / den;
}

}  // namespace optoconj
