#pragma once

#include <vector>

#include "optoconj/model.hpp"
#include "optoconj/response.hpp"

namespace optoconj {

struct QubitRates {
  double rate_up = 0.0;    // g -> e
  double rate_down = 0.0;  // e -> g, spectrum part only
  double decay = 0.0;      // intrinsic e -> g
};

enum class TemperatureKind { Finite, PlusInfinity, MinusInfinity };

struct QubitState {
  double p_e = 0.0;
  double p_g = 1.0;
  // Signed temperature. Finite also covers +0 (rate_up = 0). For p_e = p_g the
  // kind is PlusInfinity and T_qubit holds +inf.
  double T_qubit = 0.0;
  TemperatureKind kind = TemperatureKind::Finite;
};

QubitRates golden_rule_rates(double A, double Sxx_at_minus_Omega1, double Sxx_at_plus_Omega1,
                             double decay);

// Throws Undefined when every rate vanishes.
QubitState steady_state(const QubitRates& rates, double omega_q);

struct CurvePoint {
  double x = 0.0;
  QubitRates rates;
  QubitState state;
};

// Everything needed to evaluate S_xx,1(+-omega_q) for a sweep: the validated
// config, the drive design (for the cavity noise) and the two response sets.
struct ReadoutSetup {
  SystemConfig cfg;
  CouplingDesign design;
  IntrinsicNoise noise;
  double C = 0.0;
};

ReadoutSetup make_readout_setup(const ValidatedConfig& cfg);

QubitState qubit_state_for(const ReadoutSetup& setup, CouplingKind kind, const ForceModel& fm);

std::vector<CurvePoint> temperature_vs_force_temperature(const ReadoutSetup& setup,
                                                         CouplingKind kind,
                                                         const std::vector<double>& T_eff);

std::vector<CurvePoint> temperature_vs_width(const ReadoutSetup& setup, CouplingKind kind,
                                             const std::vector<double>& sigma_F);

// Least-squares slope of y against x over the points with x >= x_min.
double asymptotic_slope(const std::vector<double>& x, const std::vector<double>& y, double x_min);

}  // namespace optoconj
