#include "optoconj/drive_design.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <numbers>
#include <sstream>

#include "optoconj/errors.hpp"

namespace optoconj {

namespace {

constexpr cplx I{0.0, 1.0};

}  // namespace

cplx MeanField::at(double t) const {
  return alpha[0] * std::exp(-I * omega_L[0] * t) + alpha[1] * std::exp(-I * omega_L[1] * t);
}

std::pair<double, double> design_detunings(double Omega1, double Omega2, double kappa,
                                           Branch branch) {
  const double split = Omega1 - Omega2;
  const double disc = split * split - kappa * kappa;
  if (!(std::abs(split) > kappa) || !(disc > 0)) {
    throw RegimeUnavailable("pure phase conjugation needs |Omega1 - Omega2| > kappa");
  }
  const double s = branch == Branch::Plus ? 1.0 : -1.0;
  const double half_sum = (Omega1 + Omega2) / 2.0;
  const double root = s * std::sqrt(disc) / 2.0;
  return {half_sum - root, -half_sum - root};
}

cplx mean_field_amplitude(cplx eta, double kappa, double Delta) {
  if (!(kappa > 0)) throw InvalidParameter("kappa", "must be > 0");
  return -I * eta / cplx(kappa / 2.0, Delta);
}

MeanField mean_field(const SystemConfig& cfg) {
  MeanField mf;
  for (int j = 0; j < 2; ++j) {
    mf.alpha[j] = mean_field_amplitude(cfg.drives[j].eta, cfg.cavity.kappa, cfg.drives[j].Delta);
    mf.omega_L[j] = cfg.drives[j].omega_L;
  }
  return mf;
}

std::pair<double, double> select_drive_frequencies(double Omega1, double Omega2, double omega_c,
                                                   double kappa, Branch branch) {
  const double split = Omega1 - Omega2;
  const double disc = split * split - kappa * kappa;
  if (!(std::abs(split) > kappa) || !(disc > 0)) {
    throw RegimeUnavailable("pure phase conjugation needs |Omega1 - Omega2| > kappa");
  }
  const double s = branch == Branch::Plus ? 1.0 : -1.0;
  const double sum = Omega1 + Omega2;
  const double wL1 = omega_c - sum / 2.0 + s * std::sqrt(disc) / 2.0;
  return {wL1, wL1 + sum};
}

std::pair<cplx, cplx> coupling_constants(const CouplingInputs& in) {
  if (!(in.kappa > 0)) throw InvalidParameter("kappa", "must be > 0");
  const double k2 = in.kappa / 2.0;
  const auto& a = in.alpha;
  const auto& D = in.Delta;
  const auto& W = in.Omega;
  const double gg = in.g[0] * in.g[1];
  const double Dsum = D[0] + D[1];
  const cplx c1 = I * std::conj(a[0]) * a[1] * gg * Dsum /
                  (cplx(k2, -(D[0] - W[1])) * cplx(k2, D[1] + W[1]));
  const cplx c2c = -I * a[0] * std::conj(a[1]) * gg * Dsum /
                   (cplx(k2, D[0] - W[0]) * cplx(k2, -(D[1] + W[0])));
  return {c1, c2c};
}

cplx coupling_product(cplx C1_plus, cplx C2_plus_conj) { return C1_plus * C2_plus_conj; }

double coupling_product_closed_form(const std::array<cplx, 2>& alpha,
                                    const std::array<double, 2>& g, double Omega1,
                                    double Omega2, double kappa) {
  const double amp = std::abs(alpha[0] * alpha[1]) * std::abs(g[0] * g[1]);
  const double split2 = (Omega1 - Omega2) * (Omega1 - Omega2);
  return -4.0 * amp * amp * std::abs(split2 - kappa * kappa) / (kappa * kappa * split2);
}

const char* to_string(RegimeKind k) {
  switch (k) {
    case RegimeKind::PhaseConjugation:
      return "PhaseConjugation";
    case RegimeKind::ParametricAmplification:
      return "ParametricAmplification";
    case RegimeKind::Mixed:
      return "Mixed";
  }
  return "Mixed";
}

Regime classify_regime(cplx product, double tol, double scale) {
  if (!(tol > 0)) throw InvalidParameter("tol", "must be > 0");
  const double mag = std::abs(product);
  if (mag <= tol * scale) {
    std::ostringstream os;
    os.precision(17);
    os << "coupling product " << mag << " below tolerance; regime undefined";
    throw DegenerateProduct(os.str());
  }
  Regime r;
  const cplx root = std::sqrt(product);
  r.eigenvalues = {root, -root};
  const bool real_like = std::abs(product.imag()) <= tol * mag;
  if (real_like && product.real() < 0) {
    r.kind = RegimeKind::PhaseConjugation;
  } else if (real_like && product.real() > 0) {
    r.kind = RegimeKind::ParametricAmplification;
  } else {
    r.kind = RegimeKind::Mixed;
  }
  return r;
}

std::pair<cplx, cplx> rotate_couplings(cplx C1_plus, cplx C2_plus_conj,
                                       const std::array<double, 2>& theta) {
  // With b_j' = e^{i theta_j} b_j the b1 equation gains e^{i(theta1 + theta2)} on
  // its b2^dagger coefficient and the b2^dagger equation the conjugate factor.
  const cplx ph = std::exp(I * (theta[0] + theta[1]));
  return {C1_plus * ph, C2_plus_conj * std::conj(ph)};
}

PhaseAbsorption absorb_phases(cplx C1_plus, cplx C2_plus_conj) {
  const double m1 = std::abs(C1_plus);
  const double m2 = std::abs(C2_plus_conj);
  if (m1 == 0.0 || m2 == 0.0) throw DegenerateProduct("zero coupling; nothing to absorb");
  PhaseAbsorption out;
  out.C = m1;
  out.phase_rotations = {-std::arg(C1_plus), 0.0};
  out.lower = rotate_couplings(C1_plus, C2_plus_conj, out.phase_rotations).second;
  // exp(-i arg z) z can leave a rounding-level imaginary part; C is real by construction.
  out.upper = cplx(m1, 0.0);
  out.asymmetry_ratio = m2 / m1;
  return out;
}

CouplingDesign design_coupling(const ValidatedConfig& vcfg) {
  const SystemConfig& cfg = vcfg.config();
  CouplingDesign d;
  d.branch = cfg.design.branch;
  const double O1 = cfg.effective[0].Omega;
  const double O2 = cfg.effective[1].Omega;

  if (cfg.design.select_drive_frequencies) {
    auto [w1, w2] = select_drive_frequencies(O1, O2, cfg.cavity.omega_c, cfg.cavity.kappa,
                                             cfg.design.branch);
    d.omega_L = {w1, w2};
    auto [D1, D2] = design_detunings(O1, O2, cfg.cavity.kappa, cfg.design.branch);
    d.Delta = {D1, D2};
  } else {
    d.omega_L = {cfg.drives[0].omega_L, cfg.drives[1].omega_L};
    d.Delta = {cfg.drives[0].Delta, cfg.drives[1].Delta};
  }

  std::array<cplx, 2> eta = {cfg.drives[0].eta, cfg.drives[1].eta};
  CouplingInputs in;
  in.g = {cfg.modes[0].g, cfg.modes[1].g};
  in.Delta = d.Delta;
  in.Omega = {O1, O2};
  in.kappa = cfg.cavity.kappa;
  auto evaluate = [&] {
    for (int j = 0; j < 2; ++j) in.alpha[j] = mean_field_amplitude(eta[j], in.kappa, in.Delta[j]);
    return coupling_constants(in);
  };
  auto [c1, c2c] = evaluate();

  if (cfg.design.C_target) {
    const double m1 = std::abs(c1);
    if (m1 == 0.0) throw DegenerateProduct("cannot rescale drives: |C1+| vanishes");
    // C1+ is bilinear in the two pump amplitudes.
    d.eta_scale = std::sqrt(*cfg.design.C_target / m1);
    for (auto& e : eta) e *= d.eta_scale;
    std::tie(c1, c2c) = evaluate();
  }

  d.alpha = in.alpha;
  d.C1_plus = c1;
  d.C2_plus_conj = c2c;
  d.product = coupling_product(c1, c2c);
  const double scale = std::max(std::norm(c1), std::norm(c2c));
  d.regime = classify_regime(d.product, cfg.design.regime_tol, scale > 0 ? scale : 1.0);

  if (d.regime.kind == RegimeKind::PhaseConjugation) {
    const PhaseAbsorption pa = absorb_phases(c1, c2c);
    d.C = pa.C;
    d.phase_rotations = pa.phase_rotations;
    d.asymmetry_ratio = pa.asymmetry_ratio;
    if (std::abs(pa.asymmetry_ratio - 1.0) > 1e-6) {
      d.warnings.push_back("|C2+| / |C1+| = " + std::to_string(pa.asymmetry_ratio) +
                           "; single-C coupled-mode form is approximate");
    }
  } else {
    d.C = std::abs(c1);
    d.asymmetry_ratio = std::abs(c1) > 0 ? std::abs(c2c) / std::abs(c1) : 0.0;
    d.warnings.push_back(std::string("regime is ") + to_string(d.regime.kind));
  }
  return d;
}

SystemConfig apply_design(const SystemConfig& cfg, const CouplingDesign& design) {
  SystemConfig out = cfg;
  for (int j = 0; j < 2; ++j) {
    out.drives[j] = DriveTone::make(cfg.drives[j].eta * design.eta_scale, design.omega_L[j],
                                    cfg.cavity.omega_c);
  }
  out.design.C_target.reset();
  out.design.select_drive_frequencies = false;
  return out;
}

cplx mechanical_self_energy(double g, const std::array<cplx, 2>& alpha,
                            const std::array<double, 2>& Delta, double kappa, double Omega) {
  const double k2 = kappa / 2.0;
  cplx s{};
  for (int l = 0; l < 2; ++l) {
    s += std::norm(alpha[l]) *
         (1.0 / cplx(k2, -(Delta[l] + Omega)) - 1.0 / cplx(k2, Delta[l] - Omega));
  }
  return g * g * s;
}

SystemConfig derive_effective_modes(const SystemConfig& cfg, int max_iter, double tol) {
  SystemConfig out = cfg;
  const double kappa = cfg.cavity.kappa;
  std::array<double, 2> W = {cfg.modes[0].omega, cfg.modes[1].omega};
  for (int it = 0; it < max_iter; ++it) {
    auto [w1, w2] =
        select_drive_frequencies(W[0], W[1], cfg.cavity.omega_c, kappa, cfg.design.branch);
    const std::array<double, 2> D = {cfg.cavity.omega_c - w1, cfg.cavity.omega_c - w2};
    std::array<cplx, 2> alpha{};
    for (int j = 0; j < 2; ++j) alpha[j] = mean_field_amplitude(cfg.drives[j].eta, kappa, D[j]);

    std::array<double, 2> Wn{};
    std::array<double, 2> Gn{};
    for (int j = 0; j < 2; ++j) {
      const cplx sigma = mechanical_self_energy(cfg.modes[j].g, alpha, D, kappa, W[j]);
      Wn[j] = cfg.modes[j].omega - sigma.imag();
      Gn[j] = cfg.modes[j].gamma - 2.0 * sigma.real();
    }
    const double change = std::max(std::abs(Wn[0] - W[0]), std::abs(Wn[1] - W[1]));
    W = Wn;
    out.drives[0] = DriveTone::make(cfg.drives[0].eta, w1, cfg.cavity.omega_c);
    out.drives[1] = DriveTone::make(cfg.drives[1].eta, w2, cfg.cavity.omega_c);
    out.effective[0] = EffectiveMode{Wn[0], Gn[0]};
    out.effective[1] = EffectiveMode{Wn[1], Gn[1]};
    if (change <= tol * std::max(W[0], W[1])) break;
  }
  // Final drive frequencies consistent with the converged frequencies.
  auto [w1, w2] = select_drive_frequencies(out.effective[0].Omega, out.effective[1].Omega,
                                           cfg.cavity.omega_c, kappa, cfg.design.branch);
  out.drives[0] = DriveTone::make(cfg.drives[0].eta, w1, cfg.cavity.omega_c);
  out.drives[1] = DriveTone::make(cfg.drives[1].eta, w2, cfg.cavity.omega_c);
  for (int j = 0; j < 2; ++j) {
    if (!(out.effective[j].Gamma >= 0)) {
      throw InvalidParameter("effective[" + std::to_string(j) + "].Gamma",
                             "drive makes the mode unstable (negative damping)");
    }
  }
  return out;
}

}  // namespace optoconj
