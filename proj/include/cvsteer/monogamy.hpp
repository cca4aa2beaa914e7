#pragma once

#include "cvsteer/gains.hpp"
#include "cvsteer/phase_space.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace cvsteer {

inline constexpr double monogamy_slack = 1e-9;
inline constexpr double saturation_tol = 1e-6;

struct MonogamyReport {
  std::string relation;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = true;
  bool saturated = false;
  std::vector<GainSet> gains;
  std::map<std::string, double> extras;
};

// Thrown when a theorem fails on a simulated state.
struct MonogamyViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct SteeringParts {
  GainSet k_l;
  GainSet k_m;
  GainSet k_lm;
};

// optimize = false uses minimum-variance gains without a search.
SteeringParts steering_parts(const GaussianState& state, int k, int l, int m, bool optimize = true);

// S_k|l S_k|m >= 1
MonogamyReport steering_monogamy_base(const SteeringParts& parts, bool simulated = true);
// S_k|l S_k|m >= max{1, S_k|lm^2}
MonogamyReport steering_monogamy(const SteeringParts& parts, bool simulated = true);
MonogamyReport steering_monogamy(const GaussianState& state, int k, int l, int m, bool optimize = true);

// B_kl + B_km >= 1 and B_kl + B_km >= max{1, S_k|lm}
std::vector<MonogamyReport> entanglement_monogamy_dgcz(const GaussianState& state, int k, int l, int m,
                                                       double s_k_lm, bool simulated = true);
std::vector<MonogamyReport> entanglement_monogamy_dgcz(const GaussianState& state, int k = 0, int l = 1, int m = 2);

// S_kl S_km >= max{1, S_k|lm^2} / ((1 + h_kl g_kl)(1 + h_km g_km))
MonogamyReport entanglement_monogamy_general(const GaussianState& state, int k, int l, int m, double s_k_lm,
                                             bool simulated = true);
MonogamyReport entanglement_monogamy_general(const GaussianState& state, int k, int l, int m);

struct GaussianSteering {
  double value = 0.0;
  bool steering = false;
};

GaussianSteering gaussian_steering_mapping(double s);

nlohmann::json to_json(const MonogamyReport& rep);

}  // namespace cvsteer
