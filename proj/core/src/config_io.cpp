#include "optoconj/config_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "optoconj/errors.hpp"

namespace optoconj {

namespace {

using nlohmann::json;

const json* child(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw InvalidParameter(path, "must be an object");
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double number(const json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw InvalidParameter(field, "must be a number");
}

void read_number(const json& obj, const char* key, const std::string& path, double& out) {
  if (const json* v = child(obj, key, path)) out = number(*v, path + "." + key);
}

void read_bool(const json& obj, const char* key, const std::string& path, bool& out) {
  if (const json* v = child(obj, key, path)) {
    if (!v->is_boolean()) throw InvalidParameter(path + "." + key, "must be true or false");
    out = v->get<bool>();
  }
}

cplx complex_value(const json& v, const std::string& field) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw InvalidParameter(field, "must be a number or [re, im]");
}

const json& pair_array(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2) throw InvalidParameter(field, "must be an array of two entries");
  return v;
}

json number_out(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

}  // namespace

SystemConfig config_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidParameter("config", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw InvalidParameter("config", "top level must be an object");

  SystemConfig cfg = reference_config();
  if (const json* u = child(root, "units", "config")) {
    if (!u->is_string() || u->get<std::string>() != "natural") {
      throw InvalidParameter("units", "only \"natural\" is supported");
    }
  }
  if (const json* c = child(root, "cavity", "config")) {
    read_number(*c, "omega_c", "cavity", cfg.cavity.omega_c);
    read_number(*c, "kappa", "cavity", cfg.cavity.kappa);
  }
  if (const json* m = child(root, "modes", "config")) {
    pair_array(*m, "modes");
    for (std::size_t i = 0; i < 2; ++i) {
      const std::string p = "modes[" + std::to_string(i) + "]";
      read_number((*m)[i], "omega", p, cfg.modes[i].omega);
      read_number((*m)[i], "gamma", p, cfg.modes[i].gamma);
      read_number((*m)[i], "g", p, cfg.modes[i].g);
      read_number((*m)[i], "n_bath", p, cfg.modes[i].n_bath);
    }
  }
  if (const json* e = child(root, "effective", "config")) {
    pair_array(*e, "effective");
    for (std::size_t i = 0; i < 2; ++i) {
      const std::string p = "effective[" + std::to_string(i) + "]";
      read_number((*e)[i], "Omega", p, cfg.effective[i].Omega);
      read_number((*e)[i], "Gamma", p, cfg.effective[i].Gamma);
    }
  }
  for (auto& d : cfg.drives) d.omega_L = cfg.cavity.omega_c;
  if (const json* d = child(root, "drives", "config")) {
    pair_array(*d, "drives");
    for (std::size_t i = 0; i < 2; ++i) {
      const std::string p = "drives[" + std::to_string(i) + "]";
      if (const json* eta = child((*d)[i], "eta", p)) {
        cfg.drives[i].eta = complex_value(*eta, p + ".eta");
      }
      read_number((*d)[i], "omega_L", p, cfg.drives[i].omega_L);
      if (child((*d)[i], "Delta", p)) {
        throw InvalidParameter(p + ".Delta", "is derived from omega_c - omega_L; do not set it");
      }
    }
  }
  for (auto& d : cfg.drives) d = DriveTone::make(d.eta, d.omega_L, cfg.cavity.omega_c);

  cfg.qubit.omega_q = cfg.effective[0].Omega;
  if (const json* q = child(root, "qubit", "config")) {
    read_number(*q, "A", "qubit", cfg.qubit.A);
    read_number(*q, "Gamma_decay", "qubit", cfg.qubit.Gamma_decay);
    read_number(*q, "omega_q", "qubit", cfg.qubit.omega_q);
  }
  if (const json* f = child(root, "force", "config")) {
    read_number(*f, "T_eff", "force", cfg.force.T_eff);
    read_number(*f, "sigma_F", "force", cfg.force.sigma_F);
    read_number(*f, "omega_0", "force", cfg.force.omega_0);
    read_number(*f, "S0", "force", cfg.force.S0);
    if (const json* t = child(*f, "target", "force")) {
      const std::string s = t->is_string() ? t->get<std::string>() : "";
      if (s == "both") cfg.force.target = ForceTarget::Both;
      else if (s == "mode1") cfg.force.target = ForceTarget::Mode1;
      else if (s == "mode2") cfg.force.target = ForceTarget::Mode2;
      else throw InvalidParameter("force.target", "must be \"both\", \"mode1\" or \"mode2\"");
    }
    if (const json* n = child(*f, "normalization", "force")) {
      const std::string s = n->is_string() ? n->get<std::string>() : "";
      if (s == "thermal") cfg.force.normalization = ForceNormalization::Thermal;
      else if (s == "fixed") cfg.force.normalization = ForceNormalization::Fixed;
      else throw InvalidParameter("force.normalization", "must be \"thermal\" or \"fixed\"");
    }
  }
  if (const json* d = child(root, "design", "config")) {
    read_bool(*d, "phase_conjugation", "design", cfg.design.phase_conjugation);
    read_bool(*d, "select_drive_frequencies", "design", cfg.design.select_drive_frequencies);
    if (const json* b = child(*d, "branch", "design")) {
      const std::string s = b->is_string() ? b->get<std::string>() : "";
      if (s == "plus") cfg.design.branch = Branch::Plus;
      else if (s == "minus") cfg.design.branch = Branch::Minus;
      else throw InvalidParameter("design.branch", "must be \"plus\" or \"minus\"");
    }
    if (const json* c = child(*d, "C_target", "design")) {
      if (c->is_null()) cfg.design.C_target.reset();
      else cfg.design.C_target = number(*c, "design.C_target");
    }
    read_number(*d, "regime_tol", "design", cfg.design.regime_tol);
  }
  return cfg;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("config", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

std::string config_to_json(const SystemConfig& cfg) {
  json root;
  root["units"] = "natural";
  root["cavity"] = {{"omega_c", cfg.cavity.omega_c}, {"kappa", cfg.cavity.kappa}};
  root["modes"] = json::array();
  root["effective"] = json::array();
  root["drives"] = json::array();
  for (int i = 0; i < 2; ++i) {
    const auto& m = cfg.modes[i];
    root["modes"].push_back(
        {{"omega", m.omega}, {"gamma", m.gamma}, {"g", m.g}, {"n_bath", m.n_bath}});
    root["effective"].push_back(
        {{"Omega", cfg.effective[i].Omega}, {"Gamma", cfg.effective[i].Gamma}});
    const auto& d = cfg.drives[i];
    root["drives"].push_back(
        {{"eta", {d.eta.real(), d.eta.imag()}}, {"omega_L", d.omega_L}});
  }
  root["qubit"] = {{"A", cfg.qubit.A},
                   {"Gamma_decay", cfg.qubit.Gamma_decay},
                   {"omega_q", cfg.qubit.omega_q}};
  const auto& f = cfg.force;
  const char* target = f.target == ForceTarget::Both    ? "both"
                       : f.target == ForceTarget::Mode1 ? "mode1"
                                                        : "mode2";
  root["force"] = {{"T_eff", number_out(f.T_eff)},
                   {"sigma_F", f.sigma_F},
                   {"omega_0", f.omega_0},
                   {"S0", f.S0},
                   {"target", target},
                   {"normalization",
                    f.normalization == ForceNormalization::Thermal ? "thermal" : "fixed"}};
  const auto& d = cfg.design;
  root["design"] = {{"phase_conjugation", d.phase_conjugation},
                    {"select_drive_frequencies", d.select_drive_frequencies},
                    {"branch", d.branch == Branch::Plus ? "plus" : "minus"},
                    {"C_target", d.C_target ? json(*d.C_target) : json(nullptr)},
                    {"regime_tol", d.regime_tol}};
  return root.dump(2);
}

}  // namespace optoconj
