#include "cvsteer/monogamy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cvsteer/criteria.hpp"

namespace cvsteer {

namespace {

void check_triple(int n, int k, int l, int m) {
  if (k == l || k == m || l == m) throw std::invalid_argument("monogamy needs three distinct modes");
  for (int i : {k, l, m})
    if (i < 0 || i >= n) throw std::invalid_argument("mode index out of range");
}

MonogamyReport finish(MonogamyReport rep, bool simulated) {
  rep.satisfied = rep.lhs >= rep.rhs - monogamy_slack;
  rep.saturated = std::abs(rep.lhs - rep.rhs) < saturation_tol;
  if (!rep.satisfied && simulated)
    throw MonogamyViolation(rep.relation + " violated: lhs " + std::to_string(rep.lhs) + " < rhs " +
                            std::to_string(rep.rhs));
  return rep;
}

}  // namespace

SteeringParts steering_parts(const GaussianState& state, int k, int l, int m, bool optimize) {
  check_triple(state.n_modes, k, l, m);
  std::vector<int> lm = {l, m};
  std::sort(lm.begin(), lm.end());
  auto solve = [&](std::vector<int> steerers) {
    return optimize ? optimize_steering_gains(state, {k}, steerers) : minimum_variance_gains(state, {k}, steerers);
  };
  return {solve({l}), solve({m}), solve(lm)};
}

MonogamyReport steering_monogamy_base(const SteeringParts& p, bool simulated) {
  MonogamyReport rep;
  rep.relation = "monogamy-1";
  rep.lhs = p.k_l.value * p.k_m.value;
  rep.rhs = 1.0;
  rep.gains = {p.k_l, p.k_m};
  return finish(rep, simulated);
}

MonogamyReport steering_monogamy(const SteeringParts& p, bool simulated) {
  MonogamyReport rep;
  rep.relation = "monogamy-full";
  rep.lhs = p.k_l.value * p.k_m.value;
  rep.rhs = std::max(1.0, p.k_lm.value * p.k_lm.value);
  rep.gains = {p.k_l, p.k_m, p.k_lm};
  rep.extras["S_k|l"] = p.k_l.value;
  rep.extras["S_k|m"] = p.k_m.value;
  rep.extras["S_k|lm"] = p.k_lm.value;
  return finish(rep, simulated);
}

MonogamyReport steering_monogamy(const GaussianState& state, int k, int l, int m, bool optimize) {
  return steering_monogamy(steering_parts(state, k, l, m, optimize));
}

std::vector<MonogamyReport> entanglement_monogamy_dgcz(const GaussianState& state, int k, int l, int m,
                                                       double s_k_lm, bool simulated) {
  check_triple(state.n_modes, k, l, m);
  double bkl = dgcz_value(state, k, l), bkm = dgcz_value(state, k, m);
  MonogamyReport base;
  base.relation = "mong-ent";
  base.lhs = bkl + bkm;
  base.rhs = 1.0;
  base.extras = {{"B_kl", bkl}, {"B_km", bkm}};
  MonogamyReport full = base;
  full.relation = "mono1";
  full.rhs = std::max(1.0, s_k_lm);
  full.extras["S_k|lm"] = s_k_lm;
  return {finish(base, simulated), finish(full, simulated)};
}

std::vector<MonogamyReport> entanglement_monogamy_dgcz(const GaussianState& state, int k, int l, int m) {
  std::vector<int> lm = {l, m};
  std::sort(lm.begin(), lm.end());
  double s = optimize_steering_gains(state, {k}, lm).value;
  return entanglement_monogamy_dgcz(state, k, l, m, s);
}

MonogamyReport entanglement_monogamy_general(const GaussianState& state, int k, int l, int m, double s_k_lm,
                                             bool simulated) {
  check_triple(state.n_modes, k, l, m);
  PairGains kl = giovannetti(state, k, l), km = giovannetti(state, k, m);
  PairGains lk = giovannetti(state, l, k), mk = giovannetti(state, m, k);
  MonogamyReport rep;
  rep.relation = "mono2";
  rep.lhs = kl.value * km.value;
  rep.rhs = std::max(1.0, s_k_lm * s_k_lm) / ((1.0 + kl.h * kl.g) * (1.0 + km.h * km.g));
  rep.extras = {{"S_kl", kl.value}, {"S_km", km.value}, {"S_lk", lk.value}, {"S_mk", mk.value},
                {"h_kl", kl.h},     {"g_kl", kl.g},     {"h_km", km.h},     {"g_km", km.g},
                {"h_kl*h_lk", kl.h * lk.h},             {"g_kl*g_lk", kl.g * lk.g},
                {"S_k|lm", s_k_lm}};
  return finish(rep, simulated);
}

MonogamyReport entanglement_monogamy_general(const GaussianState& state, int k, int l, int m) {
  std::vector<int> lm = {l, m};
  std::sort(lm.begin(), lm.end());
  double s = optimize_steering_gains(state, {k}, lm).value;
  return entanglement_monogamy_general(state, k, l, m, s);
}

GaussianSteering gaussian_steering_mapping(double s) {
  if (!(s > 0.0)) throw std::domain_error("steering parameter must be positive");
  if (s >= 1.0) return {0.0, false};
  return {-0.5 * std::log(s), true};
}

nlohmann::json to_json(const MonogamyReport& rep) {
  nlohmann::json gains = nlohmann::json::array();
  for (const GainSet& gs : rep.gains) gains.push_back(to_json(gs));
  return {{"relation", rep.relation}, {"lhs", rep.lhs},       {"rhs", rep.rhs},    {"satisfied", rep.satisfied},
          {"saturated", rep.saturated}, {"gains", gains},     {"extras", rep.extras}};
}

}  // namespace cvsteer
