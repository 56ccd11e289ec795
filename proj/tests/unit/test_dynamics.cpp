#include <doctest.h>

#include <cmath>
#include <numbers>

#include "optoconj/ensemble.hpp"
#include "optoconj/errors.hpp"
#include "optoconj/generator.hpp"
#include "optoconj/integrators.hpp"
#include "optoconj/response.hpp"
#include "optoconj/rwa_validation.hpp"

using namespace optoconj;

namespace {

struct Designed {
  SystemConfig cfg;
  CouplingDesign design;
};

Designed reference_design(double gamma = 0.1) {
  SystemConfig c = reference_config();
  for (int j = 0; j < 2; ++j) {
    c.modes[j].gamma = gamma;
    c.effective[j].Gamma = gamma;
  }
  const ValidatedConfig v = validate_config(c);
  Designed d;
  d.design = design_coupling(v);
  d.cfg = apply_design(v.config(), d.design);
  return d;
}

Eigen::VectorXcd vec2(cplx a, cplx b) {
  Eigen::VectorXcd v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("full generator without optomechanical coupling is block diagonal") {
  SystemConfig c = reference_config();
  c.modes[0].g = 0.0;
  c.modes[1].g = 0.0;
  const ValidatedConfig v = validate_config(c);
  MeanField mf;
  mf.alpha = {cplx(2.0, 1.0), cplx(-1.0, 0.5)};
  mf.omega_L = {48.0, 51.5};
  const Generator g = build_full_generator(v, mf);
  REQUIRE(g.dim() == 6);
  for (double t : {0.0, 0.3, 1.7}) {
    const Eigen::MatrixXcd A = g.drift(t);
    for (int i = 0; i < 6; ++i) {
      for (int k = 0; k < 6; ++k) {
        const bool same_block = (i < 2 && k < 2) || i == k;
        if (!same_block) CHECK(A(i, k) == cplx(0.0, 0.0));
      }
    }
    CHECK(A(0, 0) == cplx(-c.cavity.kappa / 2.0, 0.0));
    CHECK(A(2, 2) == cplx(-c.modes[0].gamma / 2.0, -c.modes[0].omega));
    CHECK(A(5, 5) == cplx(-c.modes[1].gamma / 2.0, c.modes[1].omega));
  }
}

TEST_CASE("full generator without intracavity field has no beat terms") {
  const ValidatedConfig v = validate_config(reference_config());
  MeanField mf;
  mf.omega_L = {48.0, 51.5};
  const Generator g = build_full_generator(v, mf);
  CHECK_FALSE(g.time_dependent());
  const Eigen::MatrixXcd A = g.drift(0.0);
  CHECK((g.drift(1.234) - A).norm() == 0.0);
  CHECK(A.block(0, 2, 2, 4).norm() == 0.0);
  CHECK(A.block(2, 0, 4, 2).norm() == 0.0);
  CHECK(g.drive(0.7).norm() == 0.0);
}

TEST_CASE("full generator of the reference design is stable") {
  const Designed d = reference_design();
  const ValidatedConfig v = validate_config(d.cfg);
  const Generator g = build_full_generator(v, mean_field(d.cfg), {false, false});
  CHECK(g.time_dependent());
  for (double t = 0.0; t < 3.0; t += 0.37) {
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(g.drift(t));
    for (int i = 0; i < 6; ++i) CHECK(es.eigenvalues()[i].real() <= 1e-12);
  }
  // Conjugation symmetry of the doubled phase space.
  const Eigen::MatrixXcd A = g.drift(0.41);
  for (auto [i, ip] : g.conjugate_pairs) {
    for (auto [k, kp] : g.conjugate_pairs) {
      CHECK(std::abs(A(ip, kp) - std::conj(A(i, k))) <= 1e-15);
      CHECK(std::abs(A(ip, k) - std::conj(A(i, kp))) <= 1e-15);
    }
  }
  // Mean amplitudes relax.
  Eigen::VectorXcd x0 = Eigen::VectorXcd::Zero(6);
  x0(2) = 1.0;
  x0(3) = 1.0;
  const MomentTrajectory tr = integrate_first_moments(g, x0, {0.0, 40.0}, 5e-4, {1000});
  CHECK(std::abs(tr.mean.back()(2)) < std::exp(-0.05 * 40.0) * 1.2);
}

TEST_CASE("step limit for time dependent generators") {
  const Designed d = reference_design();
  const Generator g = build_full_generator(validate_config(d.cfg), mean_field(d.cfg));
  CHECK_THROWS_AS(integrate_first_moments(g, Eigen::VectorXcd::Zero(6), {0.0, 1.0}, 0.1),
                  StepTooLarge);
}

TEST_CASE("reduced model frames and eigenvalues") {
  const Designed d = reference_design(0.0);
  const Generator lab = build_rwa_generator(d.cfg, d.design);
  CHECK(lab.time_dependent());
  const Generator g = to_natural_frame(lab);
  CHECK_FALSE(g.time_dependent());
  const Eigen::MatrixXcd A = g.drift(0.0);
  CHECK(std::abs(A(0, 1) - d.design.C) <= 1e-15);
  CHECK(std::abs(A(1, 0) + d.design.C * d.design.asymmetry_ratio) <= 1e-15);
  CHECK(std::abs(A(0, 0)) <= 1e-15);
  CHECK(std::abs(A(1, 1)) <= 1e-15);
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A);
  const double C = d.design.C;
  const double root = C * std::sqrt(d.design.asymmetry_ratio);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(es.eigenvalues()[i].real()) <= 1e-15);
    CHECK(std::abs(std::abs(es.eigenvalues()[i].imag()) - root) <= 1e-15);
  }

  CouplingDesign off = d.design;
  off.C = 0.0;
  off.C1_plus = 0.0;
  off.C2_plus_conj = 0.0;
  const Eigen::MatrixXcd Z = build_rwa_generator(d.cfg, off, {true, false}).drift(0.3);
  CHECK(Z(0, 1) == cplx(0.0, 0.0));
  CHECK(Z(1, 0) == cplx(0.0, 0.0));
  CHECK(Z(0, 0) == cplx(0.0, -d.cfg.effective[0].Omega));

  CouplingDesign wrong = d.design;
  wrong.regime.kind = RegimeKind::ParametricAmplification;
  CHECK_THROWS_AS(build_rwa_generator(d.cfg, wrong), RegimeUnavailable);
}

TEST_CASE("mean amplitudes of the lossless reduced model") {
  const Designed d = reference_design(0.0);
  const double C = d.design.C;
  const double T = std::numbers::pi / (2.0 * C);

  CouplingDesign off = d.design;
  off.C = 0.0;
  off.C1_plus = 0.0;
  off.C2_plus_conj = 0.0;
  const Generator free = to_natural_frame(build_rwa_generator(d.cfg, off));
  const auto f = integrate_first_moments(free, vec2({0.6, 0.8}, {0.0, -0.3}), {0.0, T}, 0.5);
  for (const auto& m : f.mean) {
    CHECK(std::abs(m(0)) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(m(1)) == doctest::Approx(0.3).epsilon(1e-13));
  }

  // Symmetric coupling: b1(t) = cos(Ct) b1(0) + sin(Ct) b2+(0), b2+(t) = -sin(Ct) b1(0) + ...
  ReducedModelOptions sym;
  const Generator g = to_natural_frame(build_rwa_generator(d.cfg, d.design, sym));
  const auto tr = integrate_first_moments(g, vec2(1.0, 0.0), {0.0, T}, T / 200.0);
  const Eigen::VectorXcd end = tr.mean.back();
  const double r = d.design.asymmetry_ratio;
  CHECK(std::abs(r - 1.0) <= 1e-6);
  CHECK(std::abs(end(0)) <= 1e-6);
  CHECK(std::abs(end(1)) == doctest::Approx(1.0).epsilon(1e-6));
  // Equal moduli at Ct = pi / 4.
  const auto q = integrate_first_moments(g, vec2(1.0, 0.0), {0.0, T / 2.0}, T / 100.0);
  CHECK(std::abs(q.mean.back()(0)) == doctest::Approx(std::abs(q.mean.back()(1))).epsilon(1e-6));
}

TEST_CASE("commutators") {
  // Undamped, noiseless full model: unitary evolution.
  const Designed d = reference_design();
  Generator g = build_full_generator(validate_config(d.cfg), mean_field(d.cfg), {false, false});
  for (auto& term : g.drift_terms) {
    if (term.frequency != 0.0) continue;
    for (int i = 0; i < g.dim(); ++i) term.matrix(i, i) = cplx(0.0, term.matrix(i, i).imag());
  }
  const InitialMoments m = ground_state_moments(g);
  const auto tr = integrate_covariance(g, m.S1, m.S2, {0.0, 20.0}, 2e-4, {500});
  double worst = 0.0;
  for (std::size_t s = 0; s < tr.t.size(); ++s) {
    const Eigen::MatrixXcd K = tr.commutator(s);
    for (int i = 0; i < g.dim(); ++i) {
      const double expect = g.labels[i].back() == '+' ? -1.0 : 1.0;
      worst = std::max(worst, std::abs(K(i, i) - expect));
    }
  }
  CHECK(worst <= 1e-10);

  // Reduced model: the cavity-mediated noise is what keeps [b, b+] = 1, given
  // dampings that include the optical cold damping.
  SystemConfig rc = reference_config();
  rc.cavity.kappa = 0.4;
  const RwaValidationResult r0 = validate_rwa(validate_config(rc));
  const Designed r{r0.derived, r0.design};
  std::array<double, 2> drift{};
  for (bool cav : {false, true}) {
    ReducedModelOptions o;
    o.cavity_noise = cav;
    o.raw_constants = true;
    const Generator h = to_natural_frame(build_rwa_generator(r.cfg, r.design, o));
    const InitialMoments hm = ground_state_moments(h);
    const auto ht = integrate_covariance(h, hm.S1, hm.S2, {0.0, 100.0}, 0.05);
    double w = 0.0;
    for (std::size_t s = 0; s < ht.t.size(); ++s) {
      const Eigen::MatrixXcd K = ht.commutator(s);
      w = std::max({w, std::abs(K(0, 0) - 1.0), std::abs(K(1, 1) + 1.0)});
    }
    drift[cav ? 1 : 0] = w;
  }
  CHECK(drift[0] > 1e-3);
  CHECK(drift[1] <= 1e-6);
}

TEST_CASE("non positive diffusion is rejected") {
  const Designed d = reference_design();
  Generator g = to_natural_frame(build_rwa_generator(d.cfg, d.design));
  g.P_terms = {MatrixTerm{0.0, Eigen::MatrixXcd::Identity(2, 2) * -1.0}};
  const InitialMoments m = ground_state_moments(g);
  CHECK_THROWS_AS(integrate_covariance(g, m.S1, m.S2, {0.0, 1.0}, 0.1), NonPSDDiffusion);
}

TEST_CASE("Monte Carlo ensembles") {
  const Designed d = reference_design();
  const Generator g = to_natural_frame(build_rwa_generator(d.cfg, d.design));
  const TimeWindow win{0.0, 30.0};
  EnsembleOptions opt;
  opt.initial = vec2({1.0, 0.5}, {0.0, 0.0});
  opt.record_every = 50;

  SUBCASE("without noise every trajectory is the mean") {
    ReducedModelOptions quiet;
    quiet.thermal_noise = false;
    quiet.cavity_noise = false;
    const Generator q = to_natural_frame(build_rwa_generator(d.cfg, d.design, quiet));
    const TrajectoryEnsemble ens = monte_carlo_ensemble(q, 4, win, 0.1, 1, opt);
    const auto det = integrate_first_moments(q, *opt.initial, win, 0.1, {50});
    REQUIRE(ens.t.size() == det.t.size());
    for (std::size_t tr = 0; tr < 4; ++tr) {
      for (std::size_t s = 0; s < det.t.size(); ++s) {
        CHECK((ens.states[tr][s] - det.mean[s]).norm() <= 1e-12);
      }
    }
  }

  SUBCASE("ensemble mean and second moment against the deterministic equations") {
    const std::size_t n = 400;
    const TrajectoryEnsemble ens = monte_carlo_ensemble(g, n, win, 0.1, 2024, opt);
    const auto det = integrate_first_moments(g, *opt.initial, win, 0.1, {50});
    const Eigen::MatrixXcd x0 = *opt.initial * opt.initial->adjoint();
    const auto cov = integrate_covariance(g, x0, x0, win, 0.1, {50});
    for (std::size_t s = 1; s < det.t.size(); ++s) {
      const Eigen::VectorXcd m = ens.mean(s);
      const Eigen::VectorXcd se = ens.mean_stderr(s);
      for (int i = 0; i < 2; ++i) CHECK(std::abs(m(i) - det.mean[s](i)) <= 4.0 * std::abs(se(i)));
    }

    // The classical second moment evolves with the symmetrized diffusion, i.e.
    // as the average of the two quantum orderings.
    const std::size_t last = det.t.size() - 1;
    for (std::size_t s : {last / 3, 2 * last / 3, last}) {
      const Eigen::MatrixXcd M = ens.second_moment(s);
      const Eigen::MatrixXcd sym = 0.5 * (cov.S1[s] + cov.S2[s]);
      for (int i = 0; i < 2; ++i) {
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t tr = 0; tr < n; ++tr) {
          const double v = std::norm(ens.states[tr][s](i));
          sum += v;
          sum2 += v * v;
        }
        const double mean = sum / n;
        const double se = std::sqrt((sum2 / n - mean * mean) / (n - 1));
        CHECK(std::abs(M(i, i).real() - mean) <= 1e-12 * mean);
        CHECK(std::abs(sym(i, i).real() - mean) <= 3.0 * se);
      }
    }
  }

  SUBCASE("seeded reproducibility") {
    const TrajectoryEnsemble a = monte_carlo_ensemble(g, 3, win, 0.1, 7, opt);
    const TrajectoryEnsemble b = monte_carlo_ensemble(g, 3, win, 0.1, 7, opt);
    const TrajectoryEnsemble c = monte_carlo_ensemble(g, 3, win, 0.1, 8, opt);
    bool same = true, differs = false;
    for (std::size_t tr = 0; tr < 3; ++tr) {
      for (std::size_t s = 0; s < a.t.size(); ++s) {
        same = same && a.states[tr][s] == b.states[tr][s];
        differs = differs || a.states[tr][s] != c.states[tr][s];
      }
    }
    CHECK(same);
    CHECK(differs);
    CHECK(a.master_seed == 7);
    CHECK(a.stream_ids.size() == 3);
  }

  CHECK_THROWS_AS(monte_carlo_ensemble(g, 1, win, 0.1, 1, opt), InvalidParameter);
}

TEST_CASE("Welch window must cover the correlation time") {
  const Designed d = reference_design();
  const Generator g = to_natural_frame(build_rwa_generator(d.cfg, d.design));
  const TrajectoryEnsemble ens = monte_carlo_ensemble(g, 2, {0.0, 50.0}, 0.1, 3);
  WelchParams wp;
  wp.segment_length = 64;
  wp.correlation_time = correlation_time(g);
  CHECK(wp.correlation_time > 1.0);
  CHECK_THROWS_AS(periodogram_spectrum(ens, 0, wp), WindowTooShort);
}

TEST_CASE("periodogram of a thermally driven mode is its Lorentzian") {
  // Weak coupling, no external force: mode 1 sees only its own bath.
  SystemConfig c = reference_config();
  c.design.C_target = 1e-6;
  c.force.S0 = 0.0;
  c.modes[0].n_bath = 2.0;
  const ValidatedConfig v = validate_config(c);
  const CouplingDesign des = design_coupling(v);
  const SystemConfig cfg = apply_design(v.config(), des);

  const SpectralFunction mc =
      simulated_position_spectrum(cfg, des, CouplingKind::PhaseConjugate, 0, 99);

  // Classical noise (P + Q) / 2 = gamma (n + 1/2) through a Lorentzian of width Gamma.
  const double gm = cfg.modes[0].gamma, G = cfg.effective[0].Gamma, O = cfg.effective[0].Omega;
  const double n = cfg.modes[0].n_bath;
  const auto lorentz = [&](double w) {
    const double h = G / 2.0;
    return gm * (n + 0.5) / (h * h + (w - O) * (w - O)) +
           gm * (n + 0.5) / (h * h + (w + O) * (w + O));
  };
  const auto& se = mc.stderr_values().value();
  double worst = 0.0;
  for (std::size_t k = 0; k < mc.size(); ++k) {
    const double w = mc.omega()[k];
    if (std::abs(w - O) > 0.1) continue;
    worst = std::max(worst, std::abs(mc.values()[k].real() / lorentz(w) - 1.0));
    CHECK(se[k] > 0.0);
  }
  CHECK(worst <= 0.10);

  // Nothing is transferred to the other mode's frequency.
  const double w2 = cfg.effective[1].Omega;
  std::size_t k2 = 0;
  for (std::size_t k = 0; k < mc.size(); ++k) {
    if (std::abs(mc.omega()[k] - w2) < std::abs(mc.omega()[k2] - w2)) k2 = k;
  }
  CHECK(mc.values()[k2].real() == doctest::Approx(lorentz(mc.omega()[k2])).epsilon(0.25));
}
