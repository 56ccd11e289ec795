#include "optoconj/generator.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "optoconj/errors.hpp"
#include "optoconj/response.hpp"

namespace optoconj {

namespace {

constexpr cplx I{0.0, 1.0};

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

Mat sum_terms(const std::vector<MatrixTerm>& terms, int n, double t) {
  Mat m = Mat::Zero(n, n);
  for (const auto& term : terms) {
    m += term.frequency == 0.0 ? term.matrix : (term.matrix * std::exp(I * term.frequency * t)).eval();
  }
  return m;
}

// Accumulates matrix entries by frequency, merging frequencies that agree to
// a relative tolerance.
class TermCollector {
 public:
  TermCollector(int rows, int cols, double scale) : rows_(rows), cols_(cols), scale_(scale) {}

  void add(double freq, int i, int k, cplx v) {
    if (v == cplx(0.0, 0.0)) return;
    const double tol = 1e-12 * std::max(scale_, 1.0);
    if (std::abs(freq) <= tol) freq = 0.0;
    for (auto& [f, m] : terms_) {
      if (std::abs(f - freq) <= tol) {
        m(i, k) += v;
        return;
      }
    }
    terms_.emplace_back(freq, Mat::Zero(rows_, cols_));
    terms_.back().second(i, k) += v;
  }

  std::vector<MatrixTerm> matrices() const {
    std::vector<MatrixTerm> out;
    for (const auto& [f, m] : terms_) out.push_back(MatrixTerm{f, m});
    std::sort(out.begin(), out.end(),
              [](const MatrixTerm& a, const MatrixTerm& b) { return a.frequency < b.frequency; });
    return out;
  }

  std::vector<VectorTerm> vectors() const {
    std::vector<VectorTerm> out;
    for (const auto& [f, m] : terms_) out.push_back(VectorTerm{f, m.col(0)});
    std::sort(out.begin(), out.end(),
              [](const VectorTerm& a, const VectorTerm& b) { return a.frequency < b.frequency; });
    return out;
  }

 private:
  int rows_, cols_;
  double scale_;
  std::vector<std::pair<double, Mat>> terms_;
};

MatrixTerm static_term(const Mat& m) { return MatrixTerm{0.0, m}; }

double frequency_scale(const Generator& g, const std::vector<double>& w) {
  double s = 0.0;
  for (const auto& t : g.drift_terms) s = std::max(s, std::abs(t.frequency));
  for (double x : w) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace

bool Generator::time_dependent() const {
  auto any_osc = [](const auto& terms) {
    return std::any_of(terms.begin(), terms.end(), [](const auto& t) { return t.frequency != 0.0; });
  };
  return any_osc(drift_terms) || any_osc(drive_terms) || any_osc(P_terms) || any_osc(Q_terms) ||
         (force && (force->frequency.array() != 0.0).any());
}

double Generator::max_frequency() const {
  double f = 0.0;
  for (const auto& t : drift_terms) {
    f = std::max(f, std::abs(t.frequency));
    if (t.frequency == 0.0) {
      for (int i = 0; i < t.matrix.rows(); ++i) f = std::max(f, std::abs(t.matrix(i, i).imag()));
    }
  }
  for (const auto& t : drive_terms) f = std::max(f, std::abs(t.frequency));
  for (const auto& t : P_terms) f = std::max(f, std::abs(t.frequency));
  for (const auto& t : Q_terms) f = std::max(f, std::abs(t.frequency));
  if (force) f = std::max(f, force->frequency.cwiseAbs().maxCoeff());
  return f;
}

Mat Generator::drift(double t) const { return sum_terms(drift_terms, dim(), t); }

Vec Generator::drive(double t) const {
  Vec v = Vec::Zero(dim());
  for (const auto& term : drive_terms) v += term.vector * std::exp(I * term.frequency * t);
  return v;
}

Mat Generator::P(double t) const { return sum_terms(P_terms, dim(), t); }
Mat Generator::Q(double t) const { return sum_terms(Q_terms, dim(), t); }
Mat Generator::diffusion(double t) const { return 0.5 * (P(t) + Q(t)); }

Generator build_full_generator(const ValidatedConfig& vcfg, const MeanField& mf,
                               const FullModelOptions& opt) {
  const SystemConfig& cfg = vcfg.config();
  const double kappa = cfg.cavity.kappa;
  const std::array<double, 2> D = {cfg.cavity.omega_c - mf.omega_L[0],
                                   cfg.cavity.omega_c - mf.omega_L[1]};
  Generator g;
  g.labels = {"a", "a+", "b1", "b1+", "b2", "b2+"};
  g.conjugate_pairs = {{0, 1}, {2, 3}, {4, 5}};
  g.positions = {PositionReadout{2, 0.0}, PositionReadout{4, 0.0}};

  double scale = std::max(std::abs(D[0]), std::abs(D[1]));
  TermCollector drift(6, 6, scale);
  drift.add(0.0, 0, 0, -kappa / 2.0);
  drift.add(0.0, 1, 1, -kappa / 2.0);
  for (int j = 0; j < 2; ++j) {
    const int b = 2 + 2 * j;
    const int bd = b + 1;
    const double w = cfg.modes[j].omega;
    const double gm = cfg.modes[j].gamma;
    const double gj = cfg.modes[j].g;
    drift.add(0.0, b, b, cplx(-gm / 2.0, -w));
    drift.add(0.0, bd, bd, cplx(-gm / 2.0, w));
    for (int l = 0; l < 2; ++l) {
      const cplx al = mf.alpha[l];
      // cavity driven by x_j through alpha'(t) = sum_l alpha_l e^{i Delta_l t}
      drift.add(D[l], 0, b, -I * gj * al);
      drift.add(D[l], 0, bd, -I * gj * al);
      drift.add(-D[l], 1, b, I * gj * std::conj(al));
      drift.add(-D[l], 1, bd, I * gj * std::conj(al));
      // radiation pressure on b_j: -i g (alpha'^* a + alpha' a^dagger)
      drift.add(-D[l], b, 0, -I * gj * std::conj(al));
      drift.add(D[l], b, 1, -I * gj * al);
      drift.add(-D[l], bd, 0, I * gj * std::conj(al));
      drift.add(D[l], bd, 1, I * gj * al);
    }
  }
  g.drift_terms = drift.matrices();

  if (opt.include_drive) {
    TermCollector drive(6, 1, scale);
    for (int j = 0; j < 2; ++j) {
      const int b = 2 + 2 * j;
      const double gj = cfg.modes[j].g;
      for (int l = 0; l < 2; ++l) {
        for (int m = 0; m < 2; ++m) {
          const cplx amp = mf.alpha[l] * std::conj(mf.alpha[m]);
          drive.add(D[l] - D[m], b, 0, -I * gj * amp);
          drive.add(D[l] - D[m], b + 1, 0, I * gj * amp);
        }
      }
    }
    g.drive_terms = drive.vectors();
  }

  Mat P = Mat::Zero(6, 6);
  Mat Q = Mat::Zero(6, 6);
  if (opt.include_noise) {
    P(0, 0) = kappa;
    Q(1, 1) = kappa;
    for (int j = 0; j < 2; ++j) {
      const int b = 2 + 2 * j;
      const double gm = cfg.modes[j].gamma;
      const double n = cfg.modes[j].n_bath;
      P(b, b) = gm * (n + 1.0);
      P(b + 1, b + 1) = gm * n;
      Q(b, b) = gm * n;
      Q(b + 1, b + 1) = gm * (n + 1.0);
    }
  }
  g.P_terms = {static_term(P)};
  g.Q_terms = {static_term(Q)};
  return g;
}

namespace {

IntrinsicNoise reduced_noise(const SystemConfig& cfg, const CouplingDesign& design,
                             const ReducedModelOptions& opt) {
  IntrinsicNoise n = make_intrinsic_noise(cfg, design);
  n.thermal = opt.thermal_noise;
  n.cavity = opt.cavity_noise;
  if (opt.raw_constants) n.cross_phase = 1.0;
  return n;
}

// Rotating-frame P or Q to lab-frame Fourier terms, given frame frequencies w.
std::vector<MatrixTerm> to_lab(const Eigen::Matrix2cd& m, const std::array<double, 2>& w,
                               double scale) {
  TermCollector c(2, 2, scale);
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) c.add(-(w[i] - w[k]), i, k, m(i, k));
  }
  auto terms = c.matrices();
  if (terms.empty()) terms.push_back(static_term(Mat::Zero(2, 2)));
  return terms;
}

}  // namespace

Generator build_rwa_generator(const SystemConfig& cfg, const CouplingDesign& design,
                              const ReducedModelOptions& opt) {
  if (design.regime.kind != RegimeKind::PhaseConjugation) {
    throw RegimeUnavailable(std::string("reduced phase-conjugate model needs the ") +
                            "PhaseConjugation regime, design is " +
                            to_string(design.regime.kind));
  }
  const double O1 = cfg.effective[0].Omega;
  const double O2 = cfg.effective[1].Omega;
  const double G1 = cfg.effective[0].Gamma;
  const double G2 = cfg.effective[1].Gamma;
  const double S = O1 + O2;

  cplx upper = design.C1_plus;
  cplx lower = design.C2_plus_conj;
  if (!opt.raw_constants) {
    auto rotated = rotate_couplings(design.C1_plus, design.C2_plus_conj, design.phase_rotations);
    upper = cplx(design.C, 0.0);
    lower = rotated.second;
  }

  Generator g;
  g.labels = {"b1", "b2+"};
  g.positions = {PositionReadout{0, 0.0}, PositionReadout{1, 0.0}};
  g.natural_frame = {O1, -O2};
  TermCollector drift(2, 2, S);
  drift.add(0.0, 0, 0, cplx(-G1 / 2.0, -O1));
  drift.add(0.0, 1, 1, cplx(-G2 / 2.0, O2));
  drift.add(-S, 0, 1, upper);
  drift.add(S, 1, 0, lower);
  g.drift_terms = drift.matrices();

  const IntrinsicNoise n = reduced_noise(cfg, design, opt);
  const Eigen::Matrix2cd P = n.P(CouplingKind::PhaseConjugate);
  const Eigen::Matrix2cd Q = n.Q(CouplingKind::PhaseConjugate);
  g.P_terms = to_lab(P, {O1, -O2}, S);
  g.Q_terms = to_lab(Q, {O1, -O2}, S);

  if (opt.attach_force) {
    ForceCoupling fc;
    fc.coefficient = Eigen::Vector2cd(I, -I);
    fc.frequency = Eigen::Vector2d(0.0, 0.0);
    g.force = fc;
  }
  return g;
}

Generator build_linear_generator(const SystemConfig& cfg, const CouplingDesign& design,
                                 const ReducedModelOptions& opt) {
  const double O1 = cfg.effective[0].Omega;
  const double O2 = cfg.effective[1].Omega;
  const double G1 = cfg.effective[0].Gamma;
  const double G2 = cfg.effective[1].Gamma;
  const double C = design.C;

  Generator g;
  g.labels = {"b1", "b2"};
  g.positions = {PositionReadout{0, 0.0}, PositionReadout{1, 0.0}};
  g.natural_frame = {O1, O2};
  TermCollector drift(2, 2, std::max(O1, O2));
  drift.add(0.0, 0, 0, cplx(-G1 / 2.0, -O1));
  drift.add(0.0, 1, 1, cplx(-G2 / 2.0, -O2));
  drift.add(O2 - O1, 0, 1, -I * C);
  drift.add(O1 - O2, 1, 0, -I * C);
  g.drift_terms = drift.matrices();

  const IntrinsicNoise n = reduced_noise(cfg, design, opt);
  g.P_terms = {static_term(n.P(CouplingKind::Linear))};
  g.Q_terms = {static_term(n.Q(CouplingKind::Linear))};

  if (opt.attach_force) {
    ForceCoupling fc;
    fc.coefficient = Eigen::Vector2cd(I, I);
    fc.frequency = Eigen::Vector2d(0.0, 0.0);
    g.force = fc;
  }
  return g;
}

Generator rotating_frame(const Generator& gen, const std::vector<double>& w) {
  const int n = gen.dim();
  if (static_cast<int>(w.size()) != n) {
    throw InvalidParameter("frame", "one frequency per state component required");
  }
  const double scale = frequency_scale(gen, w);
  Generator out = gen;

  TermCollector drift(n, n, scale);
  for (int i = 0; i < n; ++i) drift.add(0.0, i, i, I * w[i]);
  for (const auto& t : gen.drift_terms) {
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) drift.add(t.frequency + w[i] - w[k], i, k, t.matrix(i, k));
  }
  out.drift_terms = drift.matrices();

  TermCollector drive(n, 1, scale);
  for (const auto& t : gen.drive_terms) {
    for (int i = 0; i < n; ++i) drive.add(t.frequency + w[i], i, 0, t.vector(i));
  }
  out.drive_terms = drive.vectors();

  auto rotate_noise = [&](const std::vector<MatrixTerm>& terms) {
    TermCollector c(n, n, scale);
    for (const auto& t : terms) {
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) c.add(t.frequency + w[i] - w[k], i, k, t.matrix(i, k));
    }
    auto r = c.matrices();
    if (r.empty()) r.push_back(static_term(Mat::Zero(n, n)));
    return r;
  };
  out.P_terms = rotate_noise(gen.P_terms);
  out.Q_terms = rotate_noise(gen.Q_terms);

  if (gen.force) {
    out.force = gen.force;
    for (int i = 0; i < n; ++i) out.force->frequency(i) = gen.force->frequency(i) + w[i];
  }
  for (auto& p : out.positions) p.frame += w[p.index];

  out.conjugate_pairs.clear();
  for (auto [i, k] : gen.conjugate_pairs) {
    if (w[i] == -w[k]) out.conjugate_pairs.emplace_back(i, k);
  }
  out.natural_frame.clear();
  if (!gen.natural_frame.empty()) {
    out.natural_frame.resize(n);
    for (int i = 0; i < n; ++i) out.natural_frame[i] = gen.natural_frame[i] - w[i];
  }
  return out;
}

Generator to_natural_frame(const Generator& gen) {
  if (gen.natural_frame.empty()) {
    throw InvalidParameter("frame", "generator has no natural rotating frame");
  }
  return rotating_frame(gen, gen.natural_frame);
}

}  // namespace optoconj
