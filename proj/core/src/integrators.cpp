#include "optoconj/integrators.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "optoconj/errors.hpp"

namespace optoconj {

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

std::size_t step_count(const TimeWindow& w, double dt) {
  if (!(dt > 0)) throw InvalidParameter("dt", "must be > 0");
  if (!(w.t1 >= w.t0)) throw InvalidParameter("window", "t1 must be >= t0");
  const double n = std::round((w.t1 - w.t0) / dt);
  return static_cast<std::size_t>(n);
}

void check_step(const Generator& gen, double dt, const IntegratorOptions& opt) {
  if (!gen.time_dependent()) return;
  const double f = gen.max_frequency();
  if (f > 0 && dt > opt.step_fraction / f) throw StepTooLarge(dt, opt.step_fraction / f);
}

bool is_creator(const std::string& label) { return !label.empty() && label.back() == '+'; }

}  // namespace

Mat integrated_covariance(const Mat& A, const Mat& M, double dt) {
  const Eigen::Index n = A.rows();
  Mat F = Mat::Zero(2 * n, 2 * n);
  F.topLeftCorner(n, n) = -A * dt;
  F.topRightCorner(n, n) = M * dt;
  F.bottomRightCorner(n, n) = A.adjoint() * dt;
  const Mat G = F.exp();
  const Mat out = G.bottomRightCorner(n, n).adjoint() * G.topRightCorner(n, n);
  return 0.5 * (out + out.adjoint());
}

void require_psd_diffusion(const Generator& gen, double t) {
  const Mat D = gen.diffusion(t);
  const double scale = std::max(D.cwiseAbs().maxCoeff(), 1e-300);
  if ((D - D.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw NonPSDDiffusion("diffusion matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (D + D.adjoint()));
  const double lo = es.eigenvalues().minCoeff();
  if (lo < -1e-12 * scale) {
    throw NonPSDDiffusion("diffusion matrix has negative eigenvalue " + std::to_string(lo));
  }
}

MomentTrajectory integrate_first_moments(const Generator& gen, const Vec& initial,
                                         const TimeWindow& window, double dt,
                                         const IntegratorOptions& opt) {
  const int n = gen.dim();
  if (initial.size() != n) throw InvalidParameter("initial", "dimension mismatch");
  const std::size_t steps = step_count(window, dt);
  const std::size_t every = std::max<std::size_t>(1, opt.record_every);
  check_step(gen, dt, opt);

  MomentTrajectory tr;
  Vec v = initial;
  tr.t.push_back(window.t0);
  tr.mean.push_back(v);

  if (!gen.time_dependent()) {
    // Augmented exponential carries the constant drive exactly.
    Mat aug = Mat::Zero(n + 1, n + 1);
    aug.topLeftCorner(n, n) = gen.drift(0.0);
    aug.topRightCorner(n, 1) = gen.drive(0.0);
    const Mat prop = (aug * dt).exp();
    const Mat Phi = prop.topLeftCorner(n, n);
    const Vec kick = prop.topRightCorner(n, 1);
    for (std::size_t s = 1; s <= steps; ++s) {
      v = Phi * v + kick;
      if (s % every == 0 || s == steps) {
        tr.t.push_back(window.t0 + static_cast<double>(s) * dt);
        tr.mean.push_back(v);
      }
    }
    return tr;
  }

  auto f = [&](double t, const Vec& x) -> Vec { return gen.drift(t) * x + gen.drive(t); };
  for (std::size_t s = 1; s <= steps; ++s) {
    const double t = window.t0 + static_cast<double>(s - 1) * dt;
    const Vec k1 = f(t, v);
    const Vec k2 = f(t + dt / 2, v + dt / 2 * k1);
    const Vec k3 = f(t + dt / 2, v + dt / 2 * k2);
    const Vec k4 = f(t + dt, v + dt * k3);
    v += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (s % every == 0 || s == steps) {
      tr.t.push_back(window.t0 + static_cast<double>(s) * dt);
      tr.mean.push_back(v);
    }
  }
  return tr;
}

CovarianceTrajectory integrate_covariance(const Generator& gen, const Mat& S1_0, const Mat& S2_0,
                                          const TimeWindow& window, double dt,
                                          const IntegratorOptions& opt) {
  const int n = gen.dim();
  if (S1_0.rows() != n || S1_0.cols() != n || S2_0.rows() != n || S2_0.cols() != n) {
    throw InvalidParameter("initial covariance", "dimension mismatch");
  }
  const std::size_t steps = step_count(window, dt);
  const std::size_t every = std::max<std::size_t>(1, opt.record_every);
  check_step(gen, dt, opt);
  require_psd_diffusion(gen, window.t0);

  CovarianceTrajectory tr;
  Mat S1 = S1_0;
  Mat S2 = S2_0;
  tr.t.push_back(window.t0);
  tr.S1.push_back(S1);
  tr.S2.push_back(S2);

  if (!gen.time_dependent()) {
    const Mat A = gen.drift(0.0);
    const Mat Phi = (A * dt).exp();
    const Mat N1 = integrated_covariance(A, gen.P(0.0), dt);
    const Mat N2 = integrated_covariance(A, gen.Q(0.0), dt);
    for (std::size_t s = 1; s <= steps; ++s) {
      S1 = Phi * S1 * Phi.adjoint() + N1;
      S2 = Phi * S2 * Phi.adjoint() + N2;
      if (s % every == 0 || s == steps) {
        tr.t.push_back(window.t0 + static_cast<double>(s) * dt);
        tr.S1.push_back(S1);
        tr.S2.push_back(S2);
      }
    }
    return tr;
  }

  auto lyap = [&](double t, const Mat& S, const Mat& D) -> Mat {
    const Mat A = gen.drift(t);
    return A * S + S * A.adjoint() + D;
  };
  for (std::size_t s = 1; s <= steps; ++s) {
    const double t = window.t0 + static_cast<double>(s - 1) * dt;
    const Mat P0 = gen.P(t), Ph = gen.P(t + dt / 2), P1 = gen.P(t + dt);
    const Mat Q0 = gen.Q(t), Qh = gen.Q(t + dt / 2), Q1 = gen.Q(t + dt);
    auto rk4 = [&](Mat& S, const Mat& D0, const Mat& Dh, const Mat& D1) {
      const Mat k1 = lyap(t, S, D0);
      const Mat k2 = lyap(t + dt / 2, S + dt / 2 * k1, Dh);
      const Mat k3 = lyap(t + dt / 2, S + dt / 2 * k2, Dh);
      const Mat k4 = lyap(t + dt, S + dt * k3, D1);
      S += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };
    rk4(S1, P0, Ph, P1);
    rk4(S2, Q0, Qh, Q1);
    if (s % every == 0 || s == steps) {
      tr.t.push_back(window.t0 + static_cast<double>(s) * dt);
      tr.S1.push_back(S1);
      tr.S2.push_back(S2);
    }
  }
  return tr;
}

InitialMoments ground_state_moments(const Generator& gen) {
  const int n = gen.dim();
  InitialMoments m{Mat::Zero(n, n), Mat::Zero(n, n)};
  for (int i = 0; i < n; ++i) {
    if (is_creator(gen.labels[i])) {
      m.S2(i, i) = 1.0;
    } else {
      m.S1(i, i) = 1.0;
    }
  }
  return m;
}

}  // namespace optoconj
