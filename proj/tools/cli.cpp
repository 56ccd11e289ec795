#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "optoconj/config_io.hpp"
#include "optoconj/csv.hpp"
#include "optoconj/drive_design.hpp"
#include "optoconj/echo.hpp"
#include "optoconj/ensemble.hpp"
#include "optoconj/errors.hpp"
#include "optoconj/model.hpp"
#include "optoconj/qubit_readout.hpp"
#include "optoconj/response.hpp"
#include "optoconj/rwa_validation.hpp"
#include "optoconj/spectral.hpp"

namespace optoconj::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct Common {
  std::string config;
  std::string out = ".";
  std::uint64_t seed = 0;
  std::string grid;
  std::string log_grid;
  std::string coupling = "pc";
  std::string branch;
};

struct Extra {
  int mode = 1;
  std::size_t mc = 0;
  double mc_dt = 0.1;
  std::size_t segment = 2048;
  double detune = 5.0;
  double span = M_PI;
  double tau = 10.0;
  int readout = 1;
  double t1 = 0.0;
  double t2 = 0.0;
  double amplitude = 0.01;
  double bandwidth = 0.1;
  double echo_dt = 1e-3;
  bool finite_swap = false;
  std::string manifest;
};

// Everything one subcommand needs after parsing.
struct Run {
  std::string name;
  Common common;
  Extra extra;
  std::map<std::string, std::string> overrides;
  SystemConfig cfg;
  RunManifest manifest;
  std::ostream* out = nullptr;

  fs::path path(const std::string& file) const { return fs::path(common.out) / file; }

  void write_csv(const CsvTable& t, const std::string& file) {
    t.write(path(file).string());
    manifest.outputs.push_back(file);
  }
  void result(const std::string& key, const json& value) { manifest.extra_json[key] = value.dump(); }
};

std::vector<double> log_points(const UniformGrid& g) {
  if (!(g.start > 0) || !(g.stop > 0)) throw InvalidParameter("log-grid", "bounds must be > 0");
  UniformGrid e{std::log10(g.start), std::log10(g.stop), g.n};
  std::vector<double> p = e.points();
  for (auto& x : p) x = std::pow(10.0, x);
  // Keep the requested endpoints exact.
  p.front() = g.start;
  if (p.size() > 1) p.back() = g.stop;
  return p;
}

std::vector<double> sweep_points(const Common& c, const std::string& default_log) {
  if (!c.grid.empty() && !c.log_grid.empty()) {
    throw InvalidParameter("grid", "--grid and --log-grid are exclusive");
  }
  if (!c.grid.empty()) return UniformGrid::parse(c.grid).points();
  return log_points(UniformGrid::parse(c.log_grid.empty() ? default_log : c.log_grid));
}

CouplingKind coupling_kind(const std::string& s) {
  if (s == "pc") return CouplingKind::PhaseConjugate;
  if (s == "linear") return CouplingKind::Linear;
  throw InvalidParameter("coupling", "expected pc or linear");
}

// Design for a run that needs the phase-conjugation regime.
ReadoutSetup pc_setup(const Run& r) {
  const ValidatedConfig v = validate_config(r.cfg);
  ReadoutSetup s = make_readout_setup(v);
  if (r.cfg.design.phase_conjugation && s.design.regime.kind != RegimeKind::PhaseConjugation) {
    throw RegimeUnavailable(std::string("design landed in the ") +
                            to_string(s.design.regime.kind) + " regime");
  }
  return s;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

// --- subcommands --------------------------------------------------------------

int cmd_design(Run& r) {
  const ValidatedConfig v = validate_config(r.cfg);
  const CouplingDesign d = design_coupling(v);
  json j;
  j["omega_L"] = {d.omega_L[0], d.omega_L[1]};
  j["Delta"] = {d.Delta[0], d.Delta[1]};
  j["branch"] = d.branch == Branch::Plus ? "plus" : "minus";
  j["alpha"] = {cplx_json(d.alpha[0]), cplx_json(d.alpha[1])};
  j["C1_plus"] = cplx_json(d.C1_plus);
  j["C2_plus_conj"] = cplx_json(d.C2_plus_conj);
  j["product"] = cplx_json(d.product);
  j["regime"] = to_string(d.regime.kind);
  j["C"] = d.C;
  j["phase_rotations"] = {d.phase_rotations[0], d.phase_rotations[1]};
  j["asymmetry_ratio"] = d.asymmetry_ratio;
  j["eta_scale"] = d.eta_scale;
  j["warnings"] = d.warnings;

  std::ofstream f(r.path("design.json"), std::ios::binary | std::ios::trunc);
  f << j.dump(2) << '\n';
  if (!f) throw InvalidParameter("out", "cannot write design.json");
  r.manifest.outputs.push_back("design.json");
  r.result("design", j);

  auto& o = *r.out;
  o.precision(17);
  o << "omega_L1      " << d.omega_L[0] << "\n"
    << "omega_L2      " << d.omega_L[1] << "\n"
    << "C1+           " << d.C1_plus << "\n"
    << "(C2+)*        " << d.C2_plus_conj << "\n"
    << "product       " << d.product << "\n"
    << "regime        " << to_string(d.regime.kind) << "\n"
    << "C             " << d.C << "\n";
  for (const auto& w : d.warnings) o << "warning: " << w << "\n";

  if (r.cfg.design.phase_conjugation && d.regime.kind != RegimeKind::PhaseConjugation) {
    throw RegimeUnavailable(std::string("requested phase conjugation, got ") +
                            to_string(d.regime.kind));
  }
  return Ok;
}

int cmd_fig1(Run& r) {
  const ReadoutSetup s = pc_setup(r);
  const std::vector<double> T = sweep_points(r.common, "0.001:100:61");
  const auto pc = temperature_vs_force_temperature(s, CouplingKind::PhaseConjugate, T);
  const auto lin = temperature_vs_force_temperature(s, CouplingKind::Linear, T);

  CsvTable t({"T_eff", "T_qubit_pc", "T_qubit_linear"});
  std::vector<double> y_pc, y_lin;
  for (std::size_t i = 0; i < T.size(); ++i) {
    y_pc.push_back(pc[i].state.T_qubit);
    y_lin.push_back(lin[i].state.T_qubit);
    t.add_row({T[i], y_pc.back(), y_lin.back()});
  }
  r.write_csv(t, "fig1.csv");

  const double slope_pc = asymptotic_slope(T, y_pc, 10.0);
  const double slope_lin = asymptotic_slope(T, y_lin, 10.0);
  const auto plateau = temperature_vs_force_temperature(s, CouplingKind::PhaseConjugate,
                                                        {0.001, 0.01});
  const double p_lo = plateau[0].state.T_qubit;
  const double p_hi = plateau[1].state.T_qubit;
  const double rel = std::abs(p_hi - p_lo) / std::abs(p_hi);

  r.result("slope_pc", slope_pc);
  r.result("slope_linear", slope_lin);
  r.result("plateau", json{{"T_qubit_pc_0.001", p_lo}, {"T_qubit_pc_0.01", p_hi},
                           {"relative_change", rel}});
  r.result("pass", json{{"slope_pc", slope_pc >= -1.1 && slope_pc <= -0.9},
                        {"slope_linear", slope_lin >= 0.9 && slope_lin <= 1.1},
                        {"plateau", p_hi < 0 && std::isfinite(p_hi) && rel <= 0.05}});
  *r.out << "slope_pc " << slope_pc << "  slope_linear " << slope_lin << "  plateau "
         << p_hi << " (relative change " << rel << ")\n";
  return Ok;
}

int cmd_fig2(Run& r) {
  const ReadoutSetup s = pc_setup(r);
  const std::vector<double> sigma = sweep_points(r.common, "0.005:5:61");
  const auto pc = temperature_vs_width(s, CouplingKind::PhaseConjugate, sigma);
  const auto lin = temperature_vs_width(s, CouplingKind::Linear, sigma);

  CsvTable t({"sigma_F", "T_qubit_pc", "T_qubit_linear"});
  std::vector<double> all;
  const double T_eff = s.cfg.force.T_eff;
  const double split = std::abs(s.cfg.effective[0].Omega - s.cfg.effective[1].Omega);
  double worst_narrow = 0.0;
  bool wide_sign = true;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const double a = pc[i].state.T_qubit;
    const double b = lin[i].state.T_qubit;
    t.add_row({sigma[i], a, b});
    all.push_back(a);
    all.push_back(b);
    if (sigma[i] <= 0.1 * split) {
      worst_narrow = std::max(worst_narrow, std::abs(a + T_eff) / std::abs(T_eff));
    }
    if (sigma[i] >= 3.0 * split && !(std::signbit(a) == std::signbit(T_eff) && a != 0)) {
      wide_sign = false;
    }
  }
  r.write_csv(t, "fig2.csv");
  const bool finite = all_finite(all);
  if (!finite) throw Error("non-finite qubit temperature in the width sweep");

  r.result("T_eff", T_eff);
  r.result("narrow_relative_error", worst_narrow);
  r.result("pass", json{{"narrow_minus_T_eff", worst_narrow <= 0.1},
                        {"wide_sign_matches", wide_sign},
                        {"finite", finite}});
  *r.out << "narrow-band |T_pc + T_eff| / |T_eff| <= " << worst_narrow
         << "  wide-band sign matches: " << (wide_sign ? "yes" : "no") << "\n";
  return Ok;
}

int cmd_spectrum(Run& r) {
  const ReadoutSetup s = pc_setup(r);
  const CouplingKind kind = coupling_kind(r.common.coupling);
  const int j = r.extra.mode - 1;
  const std::vector<double> w =
      UniformGrid::parse(r.common.grid.empty() ? "0:3:601" : r.common.grid).points();
  std::vector<double> mw(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) mw[w.size() - 1 - i] = -w[i];

  const ResponseSet rs = make_response_set(s.cfg, s.C, kind);
  const SpectralFunction S = position_spectrum(j, rs, s.cfg.force, s.noise, w);
  const SpectralFunction Sm = position_spectrum(j, rs, s.cfg.force, s.noise, mw);
  const std::vector<double> sp = S.real_values();
  const std::vector<double> sm = Sm.real_values();

  CsvTable t({"omega", "S_xx", "S_xx_sym"});
  for (std::size_t i = 0; i < w.size(); ++i) t.add_row({w[i], sp[i], 0.5 * (sp[i] + sm[w.size() - 1 - i])});
  r.write_csv(t, "spectrum.csv");

  if (r.extra.mc > 0) {
    SpectrumRun run;
    run.n_traj = r.extra.mc;
    run.dt = r.extra.mc_dt;
    run.segment_length = r.extra.segment;
    const SpectralFunction mc =
        simulated_position_spectrum(s.cfg, s.design, kind, j, r.common.seed, run);
    const std::vector<double> mv = mc.real_values();
    const std::vector<double> me = mc.stderr_values().value_or(std::vector<double>(mv.size(), 0.0));
    const double wmax = w.empty() ? 0.0 : std::max(std::abs(w.front()), std::abs(w.back()));
    CsvTable m({"omega", "S_mc", "S_mc_stderr", "S_xx_sym"});
    for (std::size_t i = 0; i < mc.omega().size(); ++i) {
      const double x = mc.omega()[i];
      if (x > wmax) break;
      const double sym = 0.5 * (position_spectral_density(j, x, rs, s.cfg.force, s.noise) +
                                position_spectral_density(j, -x, rs, s.cfg.force, s.noise));
      m.add_row({x, mv[i], me[i], sym});
    }
    r.write_csv(m, "spectrum_mc.csv");
    r.result("mc_trajectories", r.extra.mc);
  }
  return Ok;
}

int cmd_validate_rwa(Run& r) {
  const ValidatedConfig v = validate_config(r.cfg);
  RwaValidationOptions opt;
  opt.span_Ct = r.extra.span;
  const RwaValidationResult res = validate_rwa(v, opt);
  if (r.cfg.design.phase_conjugation && res.C > 0 &&
      res.design.regime.kind != RegimeKind::PhaseConjugation) {
    throw RegimeUnavailable(std::string("design landed in the ") +
                            to_string(res.design.regime.kind) + " regime");
  }
  RwaValidationOptions det = opt;
  det.beat_detuning = r.extra.detune * res.C;
  const RwaValidationResult off = validate_rwa(v, det);

  CsvTable t({"t", "b1_full_re", "b1_full_im", "b2_full_re", "b2_full_im", "b1_rwa_re",
              "b1_rwa_im", "b2_rwa_re", "b2_rwa_im"});
  for (std::size_t i = 0; i < res.t.size(); ++i) {
    const auto& f = res.full[i];
    const auto& w = res.rwa[i];
    t.add_row({res.t[i], f[0].real(), f[0].imag(), f[1].real(), f[1].imag(), w[0].real(),
               w[0].imag(), w[1].real(), w[1].imag()});
  }
  r.write_csv(t, "rwa.csv");

  const bool pass = res.rms_deviation <= 0.02;
  r.result("C", res.C);
  r.result("ratio", res.ratio);
  r.result("rms_deviation", res.rms_deviation);
  r.result("rms_deviation_detuned", off.rms_deviation);
  r.result("detuning", det.beat_detuning);
  r.result("pass", json{{"within_2_percent", pass},
                        {"detuning_increases_deviation", off.rms_deviation > res.rms_deviation}});
  *r.out << "C/|dOmega| " << res.ratio << "  rms " << res.rms_deviation << "  detuned rms "
         << off.rms_deviation << "  " << (pass ? "PASS" : "FAIL") << "\n";
  return Ok;
}

int cmd_echo(Run& r) {
  const ValidatedConfig v = validate_config(r.cfg);
  const std::array<double, 2> Om = {r.cfg.effective[0].Omega, r.cfg.effective[1].Omega};
  if (r.extra.readout != 1 && r.extra.readout != 2) {
    throw InvalidParameter("readout", "must be 1 or 2");
  }
  EchoPlan plan = make_echo_plan(Om, r.extra.tau, r.extra.readout - 1);
  if (r.extra.t1 > 0) plan.t1 = r.extra.t1;
  if (r.extra.t2 > 0) plan.t2 = r.extra.t2;
  check_echo_plan(Om, plan);

  EchoOptions opt;
  opt.dt = r.extra.echo_dt;
  opt.finite_swap = r.extra.finite_swap;
  opt.seed = r.common.seed;
  // Matched family: a_m / Omega_m is the same for both modes.
  RampFamily fam{{r.extra.amplitude * Om[0], r.extra.amplitude * Om[1]}};

  const EchoResult res = echo_protocol(v, plan, ramp_forces(fam, r.extra.bandwidth), {}, opt);
  CsvTable t({"t", "residual1_re", "residual1_im", "residual2_re", "residual2_im",
              "residual1_abs", "residual2_abs"});
  for (std::size_t i = 0; i < res.t.size(); ++i) {
    const auto& z = res.residual_trace[i];
    t.add_row({res.t[i], z[0].real(), z[0].imag(), z[1].real(), z[1].imag(), std::abs(z[0]),
               std::abs(z[1])});
  }
  r.write_csv(t, "echo_trace.csv");

  const std::vector<double> bw =
      UniformGrid::parse(r.common.grid.empty() ? "0:1:11" : r.common.grid).points();
  const auto sweep = echo_residual_sweep(v, plan, fam, bw, opt);
  CsvTable s({"bandwidth", "residual"});
  bool monotone = true;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    s.add_row({sweep[i].bandwidth, sweep[i].residual});
    if (i > 0 && sweep[i].residual < sweep[i - 1].residual) monotone = false;
  }
  r.write_csv(s, "echo_sweep.csv");

  r.result("plan", json{{"t1", plan.t1}, {"t2", plan.t2}, {"tau", plan.tau},
                        {"readout", plan.readout + 1}});
  r.result("residual", json{std::abs(res.residual[0]), std::abs(res.residual[1])});
  r.result("sweep_monotone", monotone);
  *r.out << "residual |mode1| " << std::abs(res.residual[0]) << "  |mode2| "
         << std::abs(res.residual[1]) << "  sweep monotone: " << (monotone ? "yes" : "no")
         << "\n";
  return Ok;
}

const std::map<std::string, std::function<int(Run&)>>& commands() {
  static const std::map<std::string, std::function<int(Run&)>> m = {
      {"design", cmd_design}, {"fig1", cmd_fig1},         {"fig2", cmd_fig2},
      {"spectrum", cmd_spectrum}, {"validate-rwa", cmd_validate_rwa}, {"echo", cmd_echo}};
  return m;
}

// Flags that take no value; replayed bare by `rerun`.
bool is_flag(const std::string& name) { return name == "--finite-swap"; }

int execute(Run& r) {
  const auto t0 = std::chrono::steady_clock::now();
  if (r.common.config.empty()) {
    r.cfg = reference_config();
  } else {
    r.cfg = load_config(r.common.config);
  }
  if (!r.common.branch.empty()) {
    if (r.common.branch == "plus") {
      r.cfg.design.branch = Branch::Plus;
    } else if (r.common.branch == "minus") {
      r.cfg.design.branch = Branch::Minus;
    } else {
      throw InvalidParameter("branch", "expected plus or minus");
    }
  }
  coupling_kind(r.common.coupling);
  fs::create_directories(r.common.out);

  r.manifest.subcommand = r.name;
  r.manifest.config_json = config_to_json(r.cfg);
  r.manifest.seed = r.common.seed;
  r.manifest.overrides = r.overrides;

  int code = Ok;
  try {
    code = commands().at(r.name)(r);
  } catch (...) {
    // Still leave a manifest behind so the failing run can be replayed.
    r.manifest.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.manifest.write(r.path(r.name + ".manifest.json").string());
    throw;
  }
  r.manifest.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.manifest.write(r.path(r.name + ".manifest.json").string());
  return code;
}

void add_common(CLI::App* sub, Common& c, bool sweep) {
  sub->add_option("--config", c.config, "JSON config (default: built-in reference)");
  sub->add_option("--out", c.out, "output directory")->capture_default_str();
  sub->add_option("--seed", c.seed, "master RNG seed")->capture_default_str();
  sub->add_option("--grid", c.grid, "linear grid start:stop:n");
  if (sweep) sub->add_option("--log-grid", c.log_grid, "log-spaced grid start:stop:n");
  sub->add_option("--coupling", c.coupling, "pc or linear")->capture_default_str();
  sub->add_option("--branch", c.branch, "drive-frequency branch: plus or minus");
}

// Rebuilds the argument list of a previous run from its manifest. The
// embedded config is written next to the new outputs.
std::vector<std::string> replay_args(const std::string& manifest_path, const std::string& out) {
  std::ifstream f(manifest_path);
  if (!f) throw InvalidParameter("manifest", "cannot read " + manifest_path);
  json m;
  try {
    m = json::parse(f);
  } catch (const json::exception& e) {
    throw InvalidParameter("manifest", e.what());
  }
  if (!m.contains("subcommand") || !m.contains("config")) {
    throw InvalidParameter("manifest", "missing subcommand or config");
  }
  const std::string sub = m["subcommand"].get<std::string>();
  fs::create_directories(out);
  const fs::path cfg_path = fs::path(out) / (sub + ".config.json");
  {
    std::ofstream c(cfg_path, std::ios::binary | std::ios::trunc);
    c << m["config"].dump(2) << '\n';
  }
  std::vector<std::string> args = {"optoconj", sub, "--config", cfg_path.string(), "--out", out,
                                   "--seed", std::to_string(m.value("seed", std::uint64_t{0}))};
  if (m.contains("overrides")) {
    for (const auto& [k, v] : m["overrides"].items()) {
      if (k == "--config" || k == "--out" || k == "--seed") continue;
      args.push_back(k);
      if (!is_flag(k)) args.push_back(v.get<std::string>());
    }
  }
  return args;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-conjugate optomechanics: drive design, qubit readout, spectra, echo"};
  app.require_subcommand(1);
  Common common;
  Extra extra;

  auto* design = app.add_subcommand("design", "drive frequencies, couplings and regime");
  add_common(design, common, false);

  auto* fig1 = app.add_subcommand("fig1", "qubit temperature vs force temperature");
  add_common(fig1, common, true);

  auto* fig2 = app.add_subcommand("fig2", "qubit temperature vs force bandwidth");
  add_common(fig2, common, true);

  auto* spectrum = app.add_subcommand("spectrum", "position spectrum, optional Monte Carlo");
  add_common(spectrum, common, false);
  spectrum->add_option("--mode", extra.mode, "mode 1 or 2")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  spectrum->add_option("--mc", extra.mc, "Monte Carlo trajectories (0: none)");
  spectrum->add_option("--mc-dt", extra.mc_dt, "Monte Carlo time step")->capture_default_str();
  spectrum->add_option("--segment", extra.segment, "Welch segment length")->capture_default_str();

  auto* rwa = app.add_subcommand("validate-rwa", "full linearized vs reduced coupled-mode model");
  add_common(rwa, common, false);
  rwa->add_option("--detune", extra.detune, "beat-note detuning in units of C")
      ->capture_default_str();
  rwa->add_option("--span", extra.span, "window length C*t")->capture_default_str();

  auto* echo = app.add_subcommand("echo", "phase-conjugate echo residuals");
  add_common(echo, common, false);
  echo->add_option("--tau", extra.tau, "echo phase Omega_k t1 = Omega_j t2")
      ->capture_default_str();
  echo->add_option("--readout", extra.readout, "mode read out after the swap")
      ->capture_default_str();
  echo->add_option("--t1", extra.t1, "override the pre-swap time");
  echo->add_option("--t2", extra.t2, "override the post-swap time");
  echo->add_option("--amplitude", extra.amplitude, "force scale a_m / Omega_m")
      ->capture_default_str();
  echo->add_option("--bandwidth", extra.bandwidth, "ramp rate of the traced run")
      ->capture_default_str();
  echo->add_option("--dt", extra.echo_dt, "integration step")->capture_default_str();
  echo->add_flag("--finite-swap", extra.finite_swap, "swap by finite-time coupled evolution");

  auto* rerun = app.add_subcommand("rerun", "replay a run from its manifest");
  rerun->add_option("manifest", extra.manifest, "manifest JSON")->required();
  rerun->add_option("--out", common.out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : BadInput;
  }

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen == rerun) {
    const std::vector<std::string> args = replay_args(extra.manifest, common.out);
    std::vector<const char*> ptrs;
    for (const auto& a : args) ptrs.push_back(a.c_str());
    return dispatch(static_cast<int>(ptrs.size()), ptrs.data(), out, err);
  }

  Run r;
  r.name = chosen->get_name();
  r.common = common;
  r.extra = extra;
  r.out = &out;
  for (const CLI::Option* o : chosen->get_options()) {
    if (o->count() == 0 || o->get_name() == "--help") continue;
    const std::string name = o->get_name();
    if (name == "--out" || name == "--config") continue;
    std::string v;
    for (const auto& s : o->results()) v += (v.empty() ? "" : ",") + s;
    r.overrides[name] = v;
  }
  return execute(r);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(argc, argv, out, err);
  } catch (const InvalidParameter& e) {
    err << "invalid parameter '" << e.field() << "': " << e.bound() << "\n";
    return BadInput;
  } catch (const GridMiss& e) {
    err << "error: " << e.what() << "\n";
    return BadInput;
  } catch (const RegimeUnavailable& e) {
    err << "regime unavailable: " << e.what() << "\n";
    return NoRegime;
  } catch (const DegenerateProduct& e) {
    err << "regime unavailable: " << e.what() << "\n";
    return NoRegime;
  } catch (const PlanMismatch& e) {
    err << "echo plan mismatch: " << e.what() << "\n";
    return BadPlan;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return Failure;
  }
}

}  // namespace optoconj::cli
