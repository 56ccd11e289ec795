// Acceptance checks 1-8. Prints one PASS/FAIL line per criterion and exits
// nonzero when any of them fails. `acceptance N` runs only criterion N.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "optoconj/drive_design.hpp"
#include "optoconj/echo.hpp"
#include "optoconj/ensemble.hpp"
#include "optoconj/generator.hpp"
#include "optoconj/integrators.hpp"
#include "optoconj/qubit_readout.hpp"
#include "optoconj/response.hpp"
#include "optoconj/rwa_validation.hpp"
#include "support/oracles.hpp"

using namespace optoconj;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// --- 1 --------------------------------------------------------------------------

Outcome coupling_identity() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_lib = 0.0, worst_oracle = 0.0, worst_imag = 0.0;
  bool negative = true;
  for (int n = 0; n < 1000; ++n) {
    SystemConfig c = reference_config();
    c.cavity.kappa = 0.01 + 0.5 * u(rng);
    c.cavity.omega_c = 20.0 + 80.0 * u(rng);
    const double O1 = 0.5 + 2.5 * u(rng);
    const double sep = c.cavity.kappa * (1.05 + 10.0 * u(rng));
    const double O2 = u(rng) < 0.5 ? O1 + sep : std::max(0.05, O1 - sep);
    if (std::abs(O1 - O2) <= c.cavity.kappa) {
      --n;
      continue;
    }
    c.effective[0].Omega = c.modes[0].omega = O1;
    c.effective[1].Omega = c.modes[1].omega = O2;
    for (int j = 0; j < 2; ++j) {
      c.modes[j].g = 1e-3 + 0.05 * u(rng);
      c.drives[j] = DriveTone::make(std::polar(0.1 + 10.0 * u(rng), 2.0 * std::numbers::pi * u(rng)),
                                    c.cavity.omega_c, c.cavity.omega_c);
    }
    c.design.branch = u(rng) < 0.5 ? Branch::Plus : Branch::Minus;
    c.design.C_target.reset();

    const CouplingDesign d = design_coupling(validate_config(c));
    const std::array<double, 2> g = {c.modes[0].g, c.modes[1].g};
    const double closed = coupling_product_closed_form(d.alpha, g, O1, O2, c.cavity.kappa);
    const double scale = std::abs(closed);
    worst_lib = std::max(worst_lib, std::abs(d.product - closed) / scale);

    const auto o = oracle::coupling_ld(d.alpha, g, d.Delta, O1, O2, c.cavity.kappa);
    const long double ref = oracle::closed_form_ld(d.alpha, g, O1, O2, c.cavity.kappa);
    const auto prod = o.c1 * o.c2c;
    worst_oracle = std::max(worst_oracle,
                            static_cast<double>(std::abs(prod - oracle::lcplx(ref, 0)) / std::abs(ref)));
    worst_imag = std::max(worst_imag, std::abs(d.product.imag()) / scale);
    negative = negative && d.product.real() < 0 && d.regime.kind == RegimeKind::PhaseConjugation;
  }
  Outcome r;
  r.pass = worst_lib <= 1e-12 && worst_oracle <= 1e-12 && negative;
  r.detail = fmt("max rel error %.2e (long-double oracle %.2e), max |Im|/|C1C2| %.2e, real-negative %s",
                 worst_lib, worst_oracle, worst_imag, negative ? "yes" : "no");
  return r;
}

// --- 2 --------------------------------------------------------------------------

Outcome fig1_structure() {
  const ReadoutSetup s = make_readout_setup(validate_config(reference_config()));
  std::vector<double> T;
  for (int i = 0; i <= 60; ++i) T.push_back(std::pow(10.0, -3.0 + 5.0 * i / 60.0));
  std::vector<double> pc, lin;
  for (const auto& p : temperature_vs_force_temperature(s, CouplingKind::PhaseConjugate, T))
    pc.push_back(p.state.T_qubit);
  for (const auto& p : temperature_vs_force_temperature(s, CouplingKind::Linear, T))
    lin.push_back(p.state.T_qubit);
  const double sp = asymptotic_slope(T, pc, 10.0);
  const double sl = asymptotic_slope(T, lin, 10.0);
  const auto low = temperature_vs_force_temperature(s, CouplingKind::PhaseConjugate,
                                                    {0.001, 0.002, 0.005, 0.01});
  bool plateau = true;
  double worst = 0.0;
  for (std::size_t i = 0; i < low.size(); ++i) {
    const double v = low[i].state.T_qubit;
    plateau = plateau && std::isfinite(v) && v < 0;
    if (i > 0) {
      const double prev = low[i - 1].state.T_qubit;
      worst = std::max(worst, std::abs(v - prev) / std::abs(v));
    }
  }
  plateau = plateau && worst <= 0.05;
  Outcome r;
  r.pass = sp >= -1.1 && sp <= -0.9 && sl >= 0.9 && sl <= 1.1 && plateau;
  r.detail = fmt("slope pc %.4f (want -1 +- 0.1), linear %.4f (want 1 +- 0.1), plateau %.4f, "
                 "successive change %.1e",
                 sp, sl, low.back().state.T_qubit, worst);
  return r;
}

// --- 3 --------------------------------------------------------------------------

Outcome fig2_structure() {
  SystemConfig c = reference_config();
  c.force.T_eff = 10.0;
  const ReadoutSetup s = make_readout_setup(validate_config(c));
  const double split = std::abs(c.effective[0].Omega - c.effective[1].Omega);
  std::vector<double> sigma;
  for (int i = 0; i <= 60; ++i) sigma.push_back(0.005 * std::pow(1000.0, i / 60.0));
  const auto pc = temperature_vs_width(s, CouplingKind::PhaseConjugate, sigma);
  const auto lin = temperature_vs_width(s, CouplingKind::Linear, sigma);
  double worst = 0.0;
  bool sign = true, finite = true;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const double v = pc[i].state.T_qubit;
    finite = finite && std::isfinite(v) && std::isfinite(lin[i].state.T_qubit);
    if (sigma[i] <= 0.1 * split) worst = std::max(worst, std::abs(v + c.force.T_eff) / c.force.T_eff);
    if (sigma[i] >= 3.0 * split) sign = sign && v > 0;
  }
  Outcome r;
  r.pass = worst <= 0.1 && sign && finite;
  r.detail = fmt("narrow band |T_pc + T_eff|/T_eff <= %.3f (want <= 0.1, T_pc = %.3f at T_eff = 10), "
                 "wide-band sign %s, finite %s",
                 worst, pc.front().state.T_qubit, sign ? "ok" : "wrong", finite ? "yes" : "no");
  return r;
}

// --- 4 --------------------------------------------------------------------------

Outcome spectral_oracle() {
  const ReadoutSetup s = make_readout_setup(validate_config(reference_config()));
  const ResponseSet rs = make_response_set(s.cfg, s.C, CouplingKind::PhaseConjugate);
  const ForceModel& fm = s.cfg.force;

  // Force part against the transfer-matrix solution.
  oracle::CoupledPair pair{s.cfg.effective[0].Omega, s.cfg.effective[1].Omega,
                           s.cfg.effective[0].Gamma, s.cfg.effective[1].Gamma, s.C, true};
  const auto SF = [&](double w) { return force_spectral_density(fm, w); };
  double transfer_err = 0.0;
  for (double w = -4.0; w <= 4.0; w += 0.01) {
    const double lib = position_spectral_density(0, w, rs, fm, s.noise, {true, false});
    const double ref = oracle::force_position_spectrum(pair, 0, w, SF);
    transfer_err = std::max(transfer_err, std::abs(lib - ref) / std::max(ref, 1e-300));
  }

  // Monte Carlo against the expected Welch estimate of the analytic spectrum.
  SpectrumRun run;
  run.n_traj = 256;
  const SpectralFunction mc =
      simulated_position_spectrum(s.cfg, s.design, CouplingKind::PhaseConjugate, 0, 4242, run);
  const auto S_sym = [&](double w) {
    return 0.5 * (position_spectral_density(0, w, rs, fm, s.noise) +
                  position_spectral_density(0, -w, rs, fm, s.noise));
  };
  const auto R = oracle::autocorrelation(S_sym, 10.0, 100000, run.dt, run.segment_length);
  const oracle::ExpectedWelch expect(run.segment_length, run.dt);
  const std::size_t nb = std::min<std::size_t>(mc.omega().size(), 200);  // up to w ~ 6
  std::vector<double> e(nb);
  for (std::size_t k = 0; k < nb; ++k) e[k] = expect(R, k);
  const double emax = *std::max_element(e.begin() + 1, e.end());
  const auto se = mc.stderr_values().value();
  const auto mv = mc.real_values();
  int peaks = 0;
  double worst_z = 0.0;
  std::string where;
  for (std::size_t k = 2; k + 1 < nb; ++k) {
    if (!(e[k] >= e[k - 1] && e[k] >= e[k + 1] && e[k] >= 0.01 * emax)) continue;
    ++peaks;
    for (std::size_t q = k - 1; q <= k + 1; ++q) {
      const double z = std::abs(mv[q] - e[q]) / se[q];
      if (z > worst_z) {
        worst_z = z;
        where = fmt("%.3f", mc.omega()[q]);
      }
    }
  }

  // S_F(-Omega2) weight in S_xx,1(Omega1), with and without coupling.
  const double O1 = s.cfg.effective[0].Omega, O2 = s.cfg.effective[1].Omega;
  auto weight_at_minus_O2 = [&](double C) {
    const ResponseSet r = make_response_set(s.cfg, C, CouplingKind::PhaseConjugate);
    double wsum = 0.0;
    for (const auto& ch : force_channels(0, O1, r, ForceTarget::Both)) {
      if (std::abs(O1 + ch.shift + O2) < 1e-12) wsum += ch.weight;
    }
    return wsum;
  };
  const double w_on = weight_at_minus_O2(s.C);
  const double w_off = weight_at_minus_O2(0.0);

  Outcome r;
  r.pass = transfer_err <= 1e-9 && peaks > 0 && worst_z <= 3.0 && w_on > 0 && w_off == 0.0;
  r.detail = fmt("transfer-matrix rel err %.1e; %d resolved peaks, worst |MC - expected| = %.2f "
                 "stderr (w = %s); S_F(-O2) weight %.3e (C > 0), %.1e (C = 0)",
                 transfer_err, peaks, worst_z, where.c_str(), w_on, w_off);
  return r;
}

// --- 5 --------------------------------------------------------------------------

Outcome rwa_validation() {
  std::string detail;
  bool pass = true;
  for (double target : {0.005, 0.0235}) {
    SystemConfig c = reference_config();
    c.cavity.kappa = 0.4;
    c.design.C_target = target;
    const ValidatedConfig v = validate_config(c);
    const RwaValidationResult on = validate_rwa(v);
    RwaValidationOptions det;
    det.beat_detuning = 5.0 * on.C;
    const RwaValidationResult off = validate_rwa(v, det);
    const bool ok = on.ratio <= 0.05 && on.rms_deviation <= 0.02 &&
                    off.rms_deviation > on.rms_deviation;
    pass = pass && ok;
    detail += fmt("C/dO %.4f: rms %.4f (want <= 0.02), detuned %.4f; ", on.ratio,
                  on.rms_deviation, off.rms_deviation);
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

// --- 6 --------------------------------------------------------------------------

double commutator_drift(const CovarianceTrajectory& tr, const Generator& g) {
  double w = 0.0;
  for (std::size_t s = 0; s < tr.t.size(); ++s) {
    const auto K = tr.commutator(s);
    for (int i = 0; i < g.dim(); ++i) {
      const bool dagger = g.labels[i].back() == '+';
      w = std::max(w, std::abs(K(i, i) - (dagger ? -1.0 : 1.0)));
    }
  }
  return w;
}

Outcome commutators() {
  SystemConfig c = reference_config();
  c.cavity.kappa = 0.4;
  const RwaValidationResult base = validate_rwa(validate_config(c));
  const SystemConfig& d = base.derived;
  const double T = std::numbers::pi / base.design.C;

  std::array<double, 2> full{};
  std::size_t idx = 0;
  for (double dt : {0.01, 0.005}) {
    const Generator g = build_full_generator(validate_config(d), mean_field(d), {false, true});
    const InitialMoments m = ground_state_moments(g);
    const auto tr = integrate_covariance(g, m.S1, m.S2, {0.0, T}, dt, {100});
    full[idx++] = commutator_drift(tr, g);
  }
  std::array<double, 2> reduced{};
  for (bool cav : {false, true}) {
    ReducedModelOptions o;
    o.raw_constants = true;
    o.cavity_noise = cav;
    const Generator g = to_natural_frame(build_rwa_generator(d, base.design, o));
    const InitialMoments m = ground_state_moments(g);
    const auto tr = integrate_covariance(g, m.S1, m.S2, {0.0, T}, 0.05);
    reduced[cav ? 1 : 0] = commutator_drift(tr, g);
  }
  Outcome r;
  r.pass = full[0] <= 1e-6 && full[1] <= 1e-6 && reduced[0] > 1e-3 && reduced[1] <= 1e-6;
  r.detail = fmt("full model drift %.1e (dt 0.01), %.1e (dt 0.005); reduced without cavity "
                 "noise %.3f, with %.1e",
                 full[0], full[1], reduced[0], reduced[1]);
  return r;
}

// --- 7 --------------------------------------------------------------------------

Outcome echo() {
  const ValidatedConfig v = validate_config(reference_config());
  const std::array<double, 2> Om = {v->effective[0].Omega, v->effective[1].Omega};
  const double tau = 10.0;
  bool pass = true;
  std::string detail;
  for (int j : {0, 1}) {
    const int k = 1 - j;
    const EchoPlan plan = make_echo_plan(Om, tau, j);
    const ModePair init = {cplx(0.3, 0.2), cplx(-0.1, 0.5)};

    const EchoResult zero = echo_protocol(v, plan, ForceSignal{}, init);
    const double r0 = std::max(std::abs(zero.residual[0]), std::abs(zero.residual[1]));

    const double f = 0.02;
    ForceSignal stat;
    stat.F = {[&](double) { return f * Om[0]; }, [&](double) { return f * Om[1]; }};
    const EchoResult st = echo_protocol(v, plan, stat, init);
    const double rs = std::abs(st.residual[j]) / (f * tau);

    const RampFamily fam{{f * Om[0], f * Om[1]}};
    const double b = 0.3;
    const ForceSignal ramp = ramp_forces(fam, b);
    const EchoResult rp = echo_protocol(v, plan, ramp, init);
    const cplx ref = oracle::echo_bracket(
        [&](double t) { return fam.amplitude[k] * (1.0 + b * t); },
        [&](double t) { return fam.amplitude[j] * (1.0 + b * t); }, Om[k], Om[j], tau);
    const double rq = std::abs(rp.residual[j] - ref) / std::abs(ref);

    std::vector<double> bw;
    for (int i = 0; i <= 10; ++i) bw.push_back(0.1 * i);
    const auto sweep = echo_residual_sweep(v, plan, fam, bw);
    bool mono = true;
    for (std::size_t i = 1; i < sweep.size(); ++i) mono = mono && sweep[i].residual >= sweep[i - 1].residual;

    pass = pass && r0 < 1e-12 && rs <= 1e-8 && rq <= 1e-6 && mono;
    detail += fmt("readout %d: zero %.1e, static %.1e, ramp vs quadrature %.1e, monotone %s; ",
                  j + 1, r0, rs, rq, mono ? "yes" : "no");
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

// --- 8 --------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "optoconj");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return optoconj::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "optoconj_acceptance";
  fs::remove_all(root);
  const std::vector<std::vector<std::string>> runs = {
      {"design"},
      {"fig1"},
      {"fig2"},
      {"spectrum", "--mc", "16", "--seed", "11", "--grid", "0:3:301"},
      {"validate-rwa", "--span", "1"},
      {"echo", "--grid", "0:1:5"},
  };
  bool pass = true;
  int files = 0;
  std::string bad;
  for (const auto& args : runs) {
    const std::string& sub = args.front();
    const fs::path a = root / (sub + "_a"), b = root / (sub + "_b"), c = root / (sub + "_c");
    auto with_out = [&](const fs::path& dir) {
      auto v = args;
      v.push_back("--out");
      v.push_back(dir.string());
      return v;
    };
    int rc = cli(with_out(a));
    rc |= cli(with_out(b));
    rc |= cli({"rerun", (a / (sub + ".manifest.json")).string(), "--out", c.string()});
    if (rc != 0) {
      pass = false;
      bad += sub + " (exit code) ";
      continue;
    }
    for (const auto& e : fs::directory_iterator(a)) {
      if (e.path().extension() != ".csv") continue;
      ++files;
      const std::string ref = slurp(e.path());
      const auto name = e.path().filename();
      if (ref.empty() || ref != slurp(b / name) || ref != slurp(c / name)) {
        pass = false;
        bad += sub + "/" + name.string() + " ";
      }
    }
  }
  fs::remove_all(root);
  pass = pass && files >= 7;
  return {pass, fmt("%d CSV files compared across repeat and manifest replay%s%s", files,
                    bad.empty() ? "" : "; differing: ", bad.c_str())};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"coupling product identity", coupling_identity},
      {"qubit temperature vs force temperature", fig1_structure},
      {"qubit temperature vs force bandwidth", fig2_structure},
      {"analytic spectrum vs Monte Carlo", spectral_oracle},
      {"full model vs reduced model", rwa_validation},
      {"commutator preservation", commutators},
      {"echo protocol", echo},
      {"determinism", determinism},
  };
  const double budget[] = {1.0, 10.0, 30.0, 120.0, 60.0, 60.0, 30.0, 120.0};
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget[i]) {
      o.pass = false;
      o.detail += fmt("; over the %.0f s budget", budget[i]);
    }
    std::printf("criterion %zu [%s] %s: %s (%.2f s)\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
