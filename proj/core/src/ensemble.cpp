#include "optoconj/ensemble.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include <unsupported/Eigen/MatrixFunctions>

#include "optoconj/errors.hpp"
#include "optoconj/response.hpp"

namespace optoconj {

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
constexpr cplx I{0.0, 1.0};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::mt19937_64 make_stream(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master & 0xffffffffu),
                    static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index & 0xffffffffu),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

// Circular complex standard normal: E|z|^2 = 1.
Vec complex_normal(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  Vec z(n);
  for (int i = 0; i < n; ++i) {
    const double re = nd(rng);
    const double im = nd(rng);
    z(i) = cplx(re, im);
  }
  return z;
}

// Lower factor L with L L^dagger = M for Hermitian PSD M (eigen-decomposition,
// so singular directions are handled).
Mat psd_factor(const Mat& M) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (M + M.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal();
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  unsigned hw = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  hw = static_cast<unsigned>(std::min<std::size_t>(hw, n));
  if (hw <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mutex;
  for (unsigned w = 0; w < hw; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(err_mutex);
          if (!err) err = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

std::vector<double> synthesize_force(const ForceModel& fm, std::size_t n, double dt,
                                     std::uint64_t seed, std::uint64_t stream) {
  if (n < 4) throw InvalidParameter("force length", "must be >= 4");
  auto rng = make_stream(seed, stream);
  std::normal_distribution<double> nd(0.0, 1.0);
  const std::size_t nout = n / 2 + 1;
  const double dw = 2.0 * std::numbers::pi / (static_cast<double>(n) * dt);

  fftw_complex* spec = fftw_alloc_complex(nout);
  double* out = fftw_alloc_real(n);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec, out, FFTW_ESTIMATE);
  }
  for (std::size_t k = 0; k < nout; ++k) {
    const double w = dw * static_cast<double>(k);
    const double s =
        0.5 * (force_spectral_density(fm, w) + force_spectral_density(fm, -w));
    const double var = s * dw / (2.0 * std::numbers::pi);
    const double a = nd(rng);
    const double b = nd(rng);
    if (k == 0 || (n % 2 == 0 && k == n / 2)) {
      spec[k][0] = std::sqrt(var) * a;
      spec[k][1] = 0.0;
    } else {
      // E|X_k|^2 = var split over real and imaginary parts.
      spec[k][0] = std::sqrt(var / 2.0) * a;
      spec[k][1] = std::sqrt(var / 2.0) * b;
    }
  }
  fftw_execute(plan);
  std::vector<double> f(out, out + n);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(spec);
  fftw_free(out);
  return f;
}

std::vector<double> TrajectoryEnsemble::position(std::size_t traj, int mode) const {
  if (mode < 0 || mode >= static_cast<int>(positions.size())) {
    throw InvalidParameter("mode", "no such mechanical mode");
  }
  const auto& pr = positions[static_cast<std::size_t>(mode)];
  const auto& tr = states.at(traj);
  std::vector<double> x(tr.size());
  for (std::size_t s = 0; s < tr.size(); ++s) {
    x[s] = 2.0 * (std::exp(-I * pr.frame * t[s]) * tr[s](pr.index)).real();
  }
  return x;
}

Vec TrajectoryEnsemble::mean(std::size_t step) const {
  Vec m = Vec::Zero(states.front()[step].size());
  for (const auto& tr : states) m += tr[step];
  return m / static_cast<double>(states.size());
}

Vec TrajectoryEnsemble::mean_stderr(std::size_t step) const {
  const Vec m = mean(step);
  Eigen::VectorXd var = Eigen::VectorXd::Zero(m.size());
  for (const auto& tr : states) var += (tr[step] - m).cwiseAbs2();
  const double n = static_cast<double>(states.size());
  var /= (n - 1.0);
  return (var / n).cwiseSqrt().cast<cplx>();
}

Mat TrajectoryEnsemble::second_moment(std::size_t step) const {
  const Eigen::Index d = states.front()[step].size();
  Mat m = Mat::Zero(d, d);
  for (const auto& tr : states) m += tr[step] * tr[step].adjoint();
  return m / static_cast<double>(states.size());
}

TrajectoryEnsemble monte_carlo_ensemble(const Generator& gen, std::size_t n_traj,
                                        const TimeWindow& window, double dt, std::uint64_t seed,
                                        const EnsembleOptions& opt) {
  if (n_traj < 2) throw InvalidParameter("n_traj", "must be >= 2");
  if (!gen.conjugate_pairs.empty()) {
    throw InvalidParameter("generator", "Monte Carlo needs a reduced (non-doubled) state vector");
  }
  if (!(dt > 0)) throw InvalidParameter("dt", "must be > 0");
  if (opt.force && !gen.force) {
    throw InvalidParameter("force", "generator has no force coupling attached");
  }
  const bool td = gen.time_dependent();
  if (td) {
    const double f = gen.max_frequency();
    if (f > 0 && dt > opt.step_fraction / f) throw StepTooLarge(dt, opt.step_fraction / f);
  }
  require_psd_diffusion(gen, window.t0);

  const int d = gen.dim();
  const std::size_t burn = static_cast<std::size_t>(std::round(opt.burn_in / dt));
  const std::size_t steps =
      static_cast<std::size_t>(std::round((window.t1 - window.t0) / dt));
  const std::size_t every = std::max<std::size_t>(1, opt.record_every);
  const std::size_t total = burn + steps;
  const double t_start = window.t0 - static_cast<double>(burn) * dt;

  TrajectoryEnsemble ens;
  ens.n_traj = n_traj;
  ens.master_seed = seed;
  ens.positions = gen.positions;
  for (std::size_t s = 0; s <= steps; s += every) {
    ens.t.push_back(window.t0 + static_cast<double>(s) * dt);
  }
  ens.states.resize(n_traj);
  ens.stream_ids.resize(n_traj);

  // Exact one-step propagator and step noise for the time-independent case.
  Mat Phi, L, A0;
  Vec kick;
  if (!td) {
    A0 = gen.drift(0.0);
    Mat aug = Mat::Zero(d + 1, d + 1);
    aug.topLeftCorner(d, d) = A0;
    aug.topRightCorner(d, 1) = gen.drive(0.0);
    const Mat prop = (aug * dt).exp();
    Phi = prop.topLeftCorner(d, d);
    kick = prop.topRightCorner(d, 1);
    L = psd_factor(integrated_covariance(A0, gen.diffusion(0.0), dt));
  }

  parallel_for(n_traj, opt.threads, [&](std::size_t traj) {
    ens.stream_ids[traj] = traj;
    auto rng = make_stream(seed, traj);
    std::vector<double> F;
    if (opt.force) {
      // stream offset keeps force and noise draws independent
      F = synthesize_force(*opt.force, total + 1, dt, seed, (std::uint64_t{1} << 63) | traj);
    }
    auto force_vec = [&](std::size_t idx) -> Vec {
      const double t = t_start + static_cast<double>(idx) * dt;
      Vec u(d);
      for (int i = 0; i < d; ++i) {
        u(i) = gen.force->coefficient(i) * std::exp(I * gen.force->frequency(i) * t) * F[idx];
      }
      return u;
    };

    Vec v = opt.initial ? *opt.initial : Vec::Zero(d);
    auto& out = ens.states[traj];
    out.reserve(steps / every + 1);
    if (burn == 0) out.push_back(v);
    for (std::size_t s = 1; s <= total; ++s) {
      const double t = t_start + static_cast<double>(s - 1) * dt;
      if (!td) {
        Vec next = Phi * v + kick + L * complex_normal(rng, d);
        if (!F.empty()) next += 0.5 * dt * (Phi * force_vec(s - 1) + force_vec(s));
        v = next;
      } else {
        const Vec z = complex_normal(rng, d);
        Vec dv = (gen.drift(t) * v + gen.drive(t)) * dt +
                 psd_factor(gen.diffusion(t)) * z * std::sqrt(dt);
        if (!F.empty()) dv += force_vec(s - 1) * dt;
        v += dv;
      }
      if (s >= burn && (s - burn) % every == 0) out.push_back(v);
    }
  });
  return ens;
}

SpectralFunction periodogram_spectrum(const TrajectoryEnsemble& ens, int mode,
                                      const WelchParams& welch) {
  if (ens.t.size() < 2) throw WindowTooShort("ensemble has fewer than two samples");
  const double dt = ens.t[1] - ens.t[0];
  const double seg_time = static_cast<double>(welch.segment_length) * dt;
  if (welch.correlation_time > 0 && seg_time < 10.0 * welch.correlation_time) {
    throw WindowTooShort("Welch segment of " + std::to_string(seg_time) +
                         " time units is shorter than 10 correlation times (" +
                         std::to_string(10.0 * welch.correlation_time) + ")");
  }
  std::vector<double> sum, sum_sq, omega;
  for (std::size_t tr = 0; tr < ens.states.size(); ++tr) {
    const WelchEstimate e = welch_psd(ens.position(tr, mode), dt, welch.segment_length);
    if (sum.empty()) {
      sum.assign(e.psd.size(), 0.0);
      sum_sq.assign(e.psd.size(), 0.0);
      omega = e.omega;
    }
    for (std::size_t k = 0; k < e.psd.size(); ++k) {
      sum[k] += e.psd[k];
      sum_sq[k] += e.psd[k] * e.psd[k];
    }
  }
  const double n = static_cast<double>(ens.states.size());
  std::vector<double> mean(sum.size()), se(sum.size());
  for (std::size_t k = 0; k < sum.size(); ++k) {
    mean[k] = sum[k] / n;
    const double var = std::max(0.0, (sum_sq[k] - n * mean[k] * mean[k]) / (n - 1.0));
    se[k] = std::sqrt(var / n);
  }
  SpectralFunction out(omega, mean, "length^2 * time", "Welch periodogram");
  out.set_stderr(std::move(se));
  return out;
}

double correlation_time(const Generator& gen) {
  Eigen::ComplexEigenSolver<Mat> es(gen.drift(0.0));
  double slowest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    slowest = std::min(slowest, std::abs(es.eigenvalues()(i).real()));
  }
  if (!(slowest > 0)) return std::numeric_limits<double>::infinity();
  return 1.0 / slowest;
}

SpectralFunction simulated_position_spectrum(const SystemConfig& cfg, const CouplingDesign& design,
                                             CouplingKind kind, int mode, std::uint64_t seed,
                                             const SpectrumRun& run) {
  ReducedModelOptions ropt;
  ropt.attach_force = true;
  Generator gen = kind == CouplingKind::PhaseConjugate ? build_rwa_generator(cfg, design, ropt)
                                                       : build_linear_generator(cfg, design, ropt);
  gen = to_natural_frame(gen);
  if (cfg.force.target == ForceTarget::Mode1) gen.force->coefficient(1) = 0.0;
  if (cfg.force.target == ForceTarget::Mode2) gen.force->coefficient(0) = 0.0;

  EnsembleOptions opt;
  opt.burn_in = run.burn_in;
  opt.force = cfg.force;
  opt.threads = run.threads;
  opt.step_fraction = run.step_fraction;
  const double length =
      static_cast<double>(run.segment_length * (run.segments + 1) / 2) * run.dt;
  const TrajectoryEnsemble ens =
      monte_carlo_ensemble(gen, run.n_traj, {0.0, length - run.dt}, run.dt, seed, opt);
  WelchParams wp;
  wp.segment_length = run.segment_length;
  wp.correlation_time = std::max(correlation_time(gen), 1.0 / cfg.force.sigma_F);
  return periodogram_spectrum(ens, mode, wp);
}

}  // namespace optoconj
