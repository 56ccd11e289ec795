#include "optoconj/response.hpp"

#include <cmath>
#include <limits>

#include "optoconj/errors.hpp"

namespace optoconj {

namespace {

constexpr cplx I{0.0, 1.0};

void check_mode(int j) {
  if (j != 0 && j != 1) throw InvalidParameter("mode", "must be 0 or 1");
}

// log(sinh(x)) for x > 0 without overflow.
double log_sinh(double x) {
  if (x > 20.0) return x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x));
}

bool reaches_direct(ForceTarget t, int j) {
  return t == ForceTarget::Both || (j == 0 ? t == ForceTarget::Mode1 : t == ForceTarget::Mode2);
}

bool reaches_cross(ForceTarget t, int j) {
  return t == ForceTarget::Both || (j == 0 ? t == ForceTarget::Mode2 : t == ForceTarget::Mode1);
}

// Whether state-vector slot j holds b_j (true) or b_j^dagger (false).
bool holds_annihilator(CouplingKind kind, int j) {
  return j == 0 || kind == CouplingKind::Linear;
}

}  // namespace

double ResponseSet::channel_shift(int j) const {
  check_mode(j);
  if (coupling == CouplingKind::PhaseConjugate) return Omega[0] + Omega[1];
  return Omega[1 - j] - Omega[j];
}

ResponseSet make_response_set(const SystemConfig& cfg, double C, CouplingKind coupling) {
  ResponseSet rs;
  rs.Gamma = {cfg.effective[0].Gamma, cfg.effective[1].Gamma};
  rs.Omega = {cfg.effective[0].Omega, cfg.effective[1].Omega};
  rs.C = C;
  rs.coupling = coupling;
  return rs;
}

cplx cavity_lorentzian_L(double C, double gamma, double omega) {
  if (gamma == 0.0 && omega == 0.0) throw SingularPoint("L(gamma, omega) at gamma = 0", 0.0);
  return C / cplx(gamma / 2.0, omega);
}

cplx response_R(int j, double omega, const ResponseSet& rs) {
  check_mode(j);
  const int k = 1 - j;
  const double w = omega + rs.Omega[j];
  const cplx free_part(rs.Gamma[j] / 2.0, w);
  cplx denom;
  if (rs.Gamma[k] == 0.0 && w == 0.0) {
    if (rs.C != 0.0) throw SingularPoint("R_j: cavity Lorentzian pole", -rs.Omega[j]);
    denom = free_part;
  } else {
    denom = free_part + rs.C * cavity_lorentzian_L(rs.C, rs.Gamma[k], w);
  }
  if (denom == cplx(0.0, 0.0)) throw SingularPoint("R_j pole", omega);
  return 1.0 / denom;
}

Susceptibility susceptibilities(int j, double omega, const ResponseSet& rs) {
  const int k = 1 - j;
  const cplx Rp = response_R(j, omega, rs);
  const cplx Rm = response_R(j, -omega, rs);
  Susceptibility s;
  s.chi = I * (Rp - std::conj(Rm));
  const double w = omega + rs.Omega[j];
  if (rs.C == 0.0) {
    s.chi_c = 0.0;
  } else {
    s.chi_c = -I * Rp * cavity_lorentzian_L(rs.C, rs.Gamma[k], w);
  }
  return s;
}

cplx position_response(int j, double omega, const ResponseSet& rs, const SpectralFunction& F) {
  const double S = rs.Omega[0] + rs.Omega[1];
  const Susceptibility sp = susceptibilities(j, omega, rs);
  const Susceptibility sm = susceptibilities(j, -omega, rs);
  return sp.chi * F.at(omega) + sp.chi_c * F.at(omega + S) + std::conj(sm.chi_c) * F.at(omega - S);
}

double force_envelope(const ForceModel& fm, double omega) {
  const double s2 = 2.0 * fm.sigma_F * fm.sigma_F;
  const double a = omega - fm.omega_0;
  const double b = omega + fm.omega_0;
  return std::exp(-a * a / s2) + std::exp(-b * b / s2);
}

double force_spectral_density(const ForceModel& fm, double omega) {
  if (!(fm.sigma_F > 0)) throw InvalidParameter("force.sigma_F", "must be > 0");
  if (std::isnan(fm.T_eff) || fm.T_eff == 0.0) {
    throw InvalidParameter("force.T_eff", "must be nonzero");
  }
  const double env = force_envelope(fm, omega);
  if (env == 0.0 || fm.S0 == 0.0) return 0.0;
  const bool infinite = std::isinf(fm.T_eff);
  if (fm.normalization == ForceNormalization::Fixed) {
    const double boltz = infinite ? 0.0 : omega / (2.0 * fm.T_eff);
    return fm.S0 * env * std::exp(boltz);
  }
  if (infinite) {
    throw InvalidParameter("force.T_eff", "infinite temperature needs fixed normalization");
  }
  // exp(w/2T) (|w|/2) / sinh(|w|/2|T|): omega (n(omega) + 1) of a bosonic bath,
  // combined in log space so that T -> 0 does not overflow.
  const double T = fm.T_eff;
  const double x = std::abs(omega) / (2.0 * std::abs(T));
  double log_factor;
  if (x < 1e-8) {
    log_factor = std::log(std::abs(T)) + omega / (2.0 * T);
  } else {
    log_factor = omega / (2.0 * T) + std::log(std::abs(omega) / 2.0) - log_sinh(x);
  }
  return fm.S0 * env * std::exp(log_factor);
}

SpectralFunction force_spectrum(const ForceModel& fm, const std::vector<double>& grid) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = force_spectral_density(fm, grid[i]);
  return SpectralFunction(grid, v, "force^2 * time", "force model");
}

double IntrinsicNoise::emission(int j, double omega) const {
  check_mode(j);
  double v = thermal ? gamma[j] * (n_bath[j] + 1.0) : 0.0;
  if (cavity) {
    const double k2 = kappa * kappa / 4.0;
    double s = 0.0;
    for (int m = 0; m < 2; ++m) {
      const double d = omega - Delta[m];
      s += std::norm(alpha[m]) * kappa / (k2 + d * d);
    }
    v += g[j] * g[j] * s;
  }
  return v;
}

double IntrinsicNoise::absorption(int j, double omega) const {
  check_mode(j);
  double v = thermal ? gamma[j] * n_bath[j] : 0.0;
  if (cavity) {
    const double k2 = kappa * kappa / 4.0;
    double s = 0.0;
    for (int m = 0; m < 2; ++m) {
      const double d = omega + Delta[m];
      s += std::norm(alpha[m]) * kappa / (k2 + d * d);
    }
    v += g[j] * g[j] * s;
  }
  return v;
}

Eigen::Matrix2cd IntrinsicNoise::P(CouplingKind kind) const {
  Eigen::Matrix2cd p = Eigen::Matrix2cd::Zero();
  p(0, 0) = emission(0, Omega[0]);
  if (kind == CouplingKind::Linear) {
    p(1, 1) = emission(1, Omega[1]);
    return p;
  }
  p(1, 1) = absorption(1, Omega[1]);
  if (cavity) {
    const cplx G = g[0] * g[1] * std::conj(alpha[0]) * alpha[1];
    const double u = Delta[0] - Omega[0];
    const cplx X = -G * kappa / (kappa * kappa / 4.0 + u * u) * cross_phase;
    p(0, 1) = X;
    p(1, 0) = std::conj(X);
  }
  return p;
}

Eigen::Matrix2cd IntrinsicNoise::Q(CouplingKind kind) const {
  Eigen::Matrix2cd q = Eigen::Matrix2cd::Zero();
  q(0, 0) = absorption(0, Omega[0]);
  if (kind == CouplingKind::Linear) {
    q(1, 1) = absorption(1, Omega[1]);
    return q;
  }
  q(1, 1) = emission(1, Omega[1]);
  if (cavity) {
    const cplx G = g[0] * g[1] * std::conj(alpha[0]) * alpha[1];
    const double w = Delta[0] - Omega[1];
    const cplx Y = -G * kappa / (kappa * kappa / 4.0 + w * w) * cross_phase;
    q(0, 1) = Y;
    q(1, 0) = std::conj(Y);
  }
  return q;
}

IntrinsicNoise make_intrinsic_noise(const SystemConfig& cfg, const CouplingDesign& design) {
  IntrinsicNoise n;
  for (int j = 0; j < 2; ++j) {
    n.gamma[j] = cfg.modes[j].gamma;
    n.n_bath[j] = cfg.modes[j].n_bath;
    n.g[j] = cfg.modes[j].g;
    n.alpha[j] = design.alpha[j];
    n.Delta[j] = design.Delta[j];
    n.Omega[j] = cfg.effective[j].Omega;
  }
  n.kappa = cfg.cavity.kappa;
  n.cross_phase = std::exp(I * (design.phase_rotations[0] + design.phase_rotations[1]));
  return n;
}

std::array<NoiseSidebands, 2> intrinsic_noise_spectra(const ValidatedConfig& cfg,
                                                      const CouplingDesign& design,
                                                      const std::vector<double>& grid) {
  const IntrinsicNoise n = make_intrinsic_noise(cfg.config(), design);
  std::array<NoiseSidebands, 2> out;
  for (int j = 0; j < 2; ++j) {
    std::vector<double> e(grid.size()), a(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      e[i] = n.emission(j, grid[i]);
      a[i] = n.absorption(j, grid[i]);
    }
    out[j].emission = SpectralFunction(grid, e, "1/time", "emission side");
    out[j].absorption = SpectralFunction(grid, a, "1/time", "absorption side");
  }
  return out;
}

Eigen::Matrix2cd reduced_drift(const ResponseSet& rs) {
  Eigen::Matrix2cd A;
  A(0, 0) = -rs.Gamma[0] / 2.0;
  A(1, 1) = -rs.Gamma[1] / 2.0;
  if (rs.coupling == CouplingKind::PhaseConjugate) {
    A(0, 1) = rs.C;
    A(1, 0) = -rs.C;
  } else {
    A(0, 1) = -I * rs.C;
    A(1, 0) = -I * rs.C;
  }
  return A;
}

double intrinsic_position_spectrum(int j, double omega, const ResponseSet& rs,
                                   const Eigen::Matrix2cd& P, const Eigen::Matrix2cd& Q) {
  check_mode(j);
  const Eigen::Matrix2cd A = reduced_drift(rs);
  const Eigen::Matrix2cd Id = Eigen::Matrix2cd::Identity();
  auto H = [&](double nu) -> Eigen::Matrix2cd { return (-I * nu * Id - A).inverse(); };
  auto Ht = [&](double nu) -> Eigen::Matrix2cd {
    return (-I * nu * Id - A.conjugate()).inverse();
  };
  const double W = rs.Omega[j];
  const bool annihilator = holds_annihilator(rs.coupling, j);
  const double nu_p = annihilator ? omega - W : omega + W;
  const double nu_q = annihilator ? omega + W : omega - W;
  const Eigen::Matrix2cd hp = H(nu_p);
  const Eigen::Matrix2cd hq = Ht(nu_q);
  const cplx sp = (hp * P * hp.adjoint())(j, j);
  const cplx sq = (hq * Q.transpose() * hq.adjoint())(j, j);
  return (sp + sq).real();
}

std::array<ForceChannel, 3> force_channels(int j, double omega, const ResponseSet& rs,
                                           ForceTarget target) {
  const Susceptibility sp = susceptibilities(j, omega, rs);
  const Susceptibility sm = susceptibilities(j, -omega, rs);
  const double shift = rs.channel_shift(j);
  const double direct = reaches_direct(target, j) ? 1.0 : 0.0;
  const double cross = reaches_cross(target, j) ? 1.0 : 0.0;
  std::array<ForceChannel, 3> ch{};
  ch[0] = {0.0, direct * std::norm(sp.chi)};
  if (rs.coupling == CouplingKind::PhaseConjugate) {
    ch[1] = {+shift, cross * std::norm(sp.chi_c)};
    ch[2] = {-shift, cross * std::norm(sm.chi_c)};
  } else {
    ch[1] = {+shift, cross * std::norm(sm.chi_c)};
    ch[2] = {-shift, cross * std::norm(sp.chi_c)};
  }
  return ch;
}

std::array<ExpansionTerm, 3> spectrum_expansion(int j, double omega, const ResponseSet& rs) {
  if (rs.coupling != CouplingKind::PhaseConjugate) {
    throw InvalidParameter("coupling", "expansion is defined for phase conjugation");
  }
  const double S = rs.Omega[0] + rs.Omega[1];
  const std::array<double, 3> shift = {0.0, S, -S};
  auto coeff = [&](int m, double w) -> cplx {
    switch (m) {
      case 0:
        return susceptibilities(j, w, rs).chi;
      case 1:
        return susceptibilities(j, w, rs).chi_c;
      default:
        return std::conj(susceptibilities(j, -w, rs).chi_c);
    }
  };
  std::array<ExpansionTerm, 3> out{};
  for (int m = 0; m < 3; ++m) {
    out[m].shift = shift[m];
    const cplx cm = coeff(m, omega);
    for (int n = 0; n < 3; ++n) {
      const double partner = -omega - shift[m] - shift[n];
      const cplx term = cm * coeff(n, partner);
      out[m].coefficient += term;
      if (shift[m] + shift[n] == 0.0) out[m].stationary_part += term;
    }
  }
  return out;
}

double position_spectral_density(int j, double omega, const ResponseSet& rs,
                                 const ForceModel& fm, const IntrinsicNoise& noise,
                                 const PositionSpectrumOptions& opt) {
  double s = 0.0;
  if (opt.include_force) {
    for (const auto& ch : force_channels(j, omega, rs, fm.target)) {
      if (ch.weight != 0.0) s += ch.weight * force_spectral_density(fm, omega + ch.shift);
    }
  }
  if (opt.include_intrinsic) {
    s += intrinsic_position_spectrum(j, omega, rs, noise.P(rs.coupling), noise.Q(rs.coupling));
  }
  return s;
}

SpectralFunction position_spectrum(int j, const ResponseSet& rs, const ForceModel& fm,
                                   const IntrinsicNoise& noise, const std::vector<double>& grid,
                                   const PositionSpectrumOptions& opt) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    v[i] = position_spectral_density(j, grid[i], rs, fm, noise, opt);
  }
  return SpectralFunction(grid, v, "length^2 * time", "stationary position spectrum");
}

}  // namespace optoconj
