#pragma once

// JSON ingestion of SystemConfig. Field names follow the C++ structs:
//
//   { "units": "natural",
//     "cavity":    {"omega_c": 50, "kappa": 0.1},
//     "modes":     [{"omega", "gamma", "g", "n_bath"}, {...}],
//     "effective": [{"Omega", "Gamma"}, {...}],
//     "drives":    [{"eta": [re, im], "omega_L"}, {...}],
//     "qubit":     {"A", "Gamma_decay", "omega_q"},
//     "force":     {"T_eff", "sigma_F", "omega_0", "S0",
//                   "target": "both" | "mode1" | "mode2",
//                   "normalization": "thermal" | "fixed"},
//     "design":    {"phase_conjugation", "select_drive_frequencies",
//                   "branch": "plus" | "minus", "C_target", "regime_tol"} }
//
// Missing fields keep the values of reference_config(); qubit.omega_q defaults
// to effective[0].Omega. T_eff also accepts "inf" and "-inf".

#include <string>

#include "optoconj/model.hpp"

namespace optoconj {

// Throws InvalidParameter naming the offending field on malformed input.
SystemConfig config_from_json(const std::string& text);
SystemConfig load_config(const std::string& path);

std::string config_to_json(const SystemConfig& cfg);

}  // namespace optoconj
