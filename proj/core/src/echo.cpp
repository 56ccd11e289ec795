#include "optoconj/echo.hpp"

#include <cmath>
#include <numbers>

#include "optoconj/errors.hpp"

namespace optoconj {

namespace {

constexpr cplx I{0.0, 1.0};

void check_mode(int m) {
  if (m != 0 && m != 1) throw InvalidParameter("readout", "must be mode 0 or 1");
}

// RK4 step of dB/dt = -i e^{i Omega t} F(t). The right side does not depend on
// B, so this is Simpson's rule per step.
cplx advance(cplx B, double Omega, const std::function<double(double)>& F, double t0, double t1,
             double dt_max, std::vector<double>* t_out = nullptr,
             std::vector<cplx>* B_out = nullptr) {
  const double span = t1 - t0;
  if (span <= 0) return B;
  const auto n = static_cast<std::size_t>(std::ceil(span / dt_max));
  const double h = span / static_cast<double>(n);
  auto f = [&](double t) { return -I * std::exp(I * Omega * t) * F(t); };
  for (std::size_t s = 0; s < n; ++s) {
    const double a = t0 + static_cast<double>(s) * h;
    const double b = (s + 1 == n) ? t1 : a + h;
    B += (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    if (t_out) {
      t_out->push_back(b);
      B_out->push_back(B);
    }
  }
  return B;
}

}  // namespace

EchoPlan make_echo_plan(const std::array<double, 2>& Omega, double tau, int readout) {
  check_mode(readout);
  if (!(tau > 0)) throw InvalidParameter("tau", "must be > 0");
  if (!(Omega[0] > 0) || !(Omega[1] > 0)) throw InvalidParameter("Omega", "must be > 0");
  const int k = 1 - readout;
  EchoPlan p;
  p.tau = tau;
  p.readout = readout;
  p.t1 = tau / Omega[k];
  p.t2 = tau / Omega[readout];
  return p;
}

void check_echo_plan(const std::array<double, 2>& Omega, const EchoPlan& plan) {
  check_mode(plan.readout);
  const int j = plan.readout;
  const int k = 1 - j;
  const double tol = 1e-12 * std::abs(plan.tau);
  const double e1 = Omega[k] * plan.t1 - plan.tau;
  const double e2 = Omega[j] * plan.t2 - plan.tau;
  if (!(plan.tau > 0) || std::abs(e1) > tol || std::abs(e2) > tol) {
    throw PlanMismatch("echo condition violated: Omega_k t1 - tau = " + std::to_string(e1) +
                       ", Omega_j t2 - tau = " + std::to_string(e2));
  }
}

ModePair phase_conjugate_swap(const ModePair& state,
                              const std::optional<Eigen::Matrix2cd>& swap_noise,
                              std::mt19937_64* rng) {
  ModePair out{std::conj(state[1]), std::conj(state[0])};
  if (swap_noise) {
    if (!rng) throw InvalidParameter("rng", "required when swap noise is requested");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(
        0.5 * (*swap_noise + swap_noise->adjoint()));
    if (es.eigenvalues().minCoeff() < -1e-14 * swap_noise->cwiseAbs().maxCoeff()) {
      throw InvalidParameter("swap_noise", "covariance must be positive semidefinite");
    }
    const Eigen::Matrix2cd L =
        es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    Eigen::Vector2cd z;
    for (int i = 0; i < 2; ++i) {
      const double re = nd(*rng);
      const double im = nd(*rng);
      z(i) = cplx(re, im);
    }
    const Eigen::Vector2cd n = L * z;
    out[0] += n(0);
    out[1] += n(1);
  }
  return out;
}

ModePair finite_conjugate_swap(const ModePair& state, double C, std::size_t steps) {
  if (!(C > 0)) throw InvalidParameter("swap_coupling", "must be > 0");
  if (steps == 0) throw InvalidParameter("steps", "must be > 0");
  const double T = std::numbers::pi / (2.0 * C);
  const double h = T / static_cast<double>(steps);
  Eigen::Vector2cd v(state[0], std::conj(state[1]));  // (B1, B2*)
  Eigen::Matrix2cd A;
  A << 0.0, C, -C, 0.0;
  for (std::size_t s = 0; s < steps; ++s) {
    const Eigen::Vector2cd k1 = A * v;
    const Eigen::Vector2cd k2 = A * (v + h / 2 * k1);
    const Eigen::Vector2cd k3 = A * (v + h / 2 * k2);
    const Eigen::Vector2cd k4 = A * (v + h * k3);
    v += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return {v(0), -std::conj(v(1))};
}

EchoResult echo_protocol(const ValidatedConfig& cfg, const EchoPlan& plan,
                         const ForceSignal& forces, const ModePair& initial,
                         const EchoOptions& opt) {
  const std::array<double, 2> Omega{cfg->effective[0].Omega, cfg->effective[1].Omega};
  check_echo_plan(Omega, plan);
  if (!(opt.dt > 0)) throw InvalidParameter("dt", "must be > 0");
  for (int m = 0; m < 2; ++m) {
    if (!forces.F[m]) throw InvalidParameter("forces", "force function missing");
  }

  EchoResult r;
  r.initial = initial;
  for (int m = 0; m < 2; ++m) {
    r.before_swap[m] = advance(initial[m], Omega[m], forces.F[m], -plan.t1, 0.0, opt.dt);
  }

  std::mt19937_64 rng(opt.seed);
  ModePair swapped;
  if (opt.finite_swap) {
    swapped = finite_conjugate_swap(r.before_swap, opt.swap_coupling);
    if (plan.swap_noise) {
      // noise enters the same way as for the instantaneous swap
      ModePair zero{};
      const ModePair n = phase_conjugate_swap(zero, plan.swap_noise, &rng);
      swapped[0] += n[0];
      swapped[1] += n[1];
    }
  } else {
    swapped = phase_conjugate_swap(r.before_swap, plan.swap_noise, &rng);
  }

  const ModePair reference{std::conj(initial[1]), std::conj(initial[0])};
  std::array<std::vector<double>, 2> ts;
  std::array<std::vector<cplx>, 2> Bs;
  for (int m = 0; m < 2; ++m) {
    ts[m].push_back(0.0);
    Bs[m].push_back(swapped[m]);
    r.final_state[m] =
        advance(swapped[m], Omega[m], forces.F[m], 0.0, plan.t2, opt.dt, &ts[m], &Bs[m]);
    r.residual[m] = r.final_state[m] - reference[m];
  }
  // Both modes share the same step grid on [0, t2].
  r.t = ts[0];
  r.residual_trace.resize(r.t.size());
  for (std::size_t s = 0; s < r.t.size(); ++s) {
    r.residual_trace[s] = {Bs[0][s] - reference[0], Bs[1][s] - reference[1]};
  }
  return r;
}

ForceSignal ramp_forces(const RampFamily& fam, double bandwidth) {
  ForceSignal f;
  for (int m = 0; m < 2; ++m) {
    const double a = fam.amplitude[m];
    f.F[m] = [a, bandwidth](double t) { return a * (1.0 + bandwidth * t); };
  }
  return f;
}

std::vector<EchoSweepPoint> echo_residual_sweep(const ValidatedConfig& cfg, const EchoPlan& plan,
                                                const RampFamily& fam,
                                                const std::vector<double>& bandwidths,
                                                const EchoOptions& opt) {
  std::vector<EchoSweepPoint> out;
  out.reserve(bandwidths.size());
  for (double b : bandwidths) {
    if (!(b >= 0)) throw InvalidParameter("bandwidth", "must be >= 0");
    const EchoResult r = echo_protocol(cfg, plan, ramp_forces(fam, b), {}, opt);
    out.push_back({b, std::abs(r.residual[plan.readout])});
  }
  return out;
}

}  // namespace optoconj
