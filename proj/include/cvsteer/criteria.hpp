#pragma once

#include "cvsteer/gains.hpp"
#include "cvsteer/phase_space.hpp"
#include "cvsteer/quad_forms.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cvsteer {

inline constexpr double simulated_eps = 1e-9;

struct BoundTerm {
  std::string label;
  double value = 0.0;
};

struct SubResult {
  std::string label;
  double value = 0.0;
  double bound = 0.0;
  bool violated = false;
};

struct CriterionReport {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  std::vector<BoundTerm> bound_terms;
  bool violated = false;
  std::vector<std::string> implications;  // flags established when violated
  std::vector<GainSet> gains_used;
  std::vector<SubResult> details;
};

enum class Flag { undetermined, detected, not_detected };

// Keys: "steering[A|B]" (A steered by B), "two-way[A|B]", "full-inseparable",
// "full-two-way", "genuine-def1", "genuine-def2", "genuine-def3", "epr-paradox[k]".
struct SteeringClass {
  std::map<std::string, Flag> flags;

  Flag get(const std::string& key) const;
  bool has(const std::string& key) const { return get(key) == Flag::detected; }
  void mark(const std::string& key, bool detected);
  void raise(const std::string& key);
};

void enforce_lattice(SteeringClass& cls);
bool lattice_consistent(const SteeringClass& cls);

bool strictly_below(double value, double bound, double eps);

std::pair<double, double> directional_bounds(const QuadratureForm& u, const QuadratureForm& v, const Bipartition& part);

CriterionReport criterion1(const GaussianState& state, const QuadratureForm& u, const QuadratureForm& v,
                           double eps = simulated_eps);
CriterionReport criterion2(const GaussianState& state, const QuadratureForm& u, const QuadratureForm& v,
                           double eps = simulated_eps);

// u = x1 + h * sum_{i>1} x_i, v = p1 + g * sum_{i>1} p_i for any n >= 2.
QuadratureForm symmetric_u(int n, double h);
QuadratureForm symmetric_v(int n, double g);
double criterion1b_bound(int n, double h, double g);
CriterionReport criterion1b(const GaussianState& state, double h, double g, double eps = simulated_eps);

CriterionReport criterion3(const GaussianState& state, const std::vector<GainSet>& per_mode, double eps = simulated_eps);

struct VlfQuantities {
  double S[3] = {0, 0, 0};
  double B[3] = {0, 0, 0};
  double g[3] = {1, 1, 1};
};

VlfQuantities vlf_quantities(const GaussianState& state, double g1 = 1.0, double g2 = 1.0, double g3 = 1.0);

CriterionReport criterion4(const double S[3], double eps = simulated_eps);
CriterionReport criterion4b(const double B[3], double eps = simulated_eps);
CriterionReport criterion5(const double S[3], double eps = simulated_eps);
CriterionReport criterion5b(const double B[3], double eps = simulated_eps);
// Pairwise variants need g1 = g2 = g3 = 1; absent entries are NaN.
CriterionReport criterion5c(const double S[3], const double g[3], double eps = simulated_eps);
CriterionReport criterion6c(const double B[3], const double g[3], double eps = simulated_eps);
CriterionReport criterion7(const double S[3], const double g[3], double eps = simulated_eps);
CriterionReport criterion7b(const double B[3], const double g[3], double eps = simulated_eps);

// Sum of the two cluster-pattern variance sums against 2.
CriterionReport cluster_vlf(double b1, double b2, double eps = simulated_eps);
std::pair<double, double> cluster_vlf_quantities(const GaussianState& state);

CriterionReport epr_paradox(const GaussianState& state, const GainSet& gains, double eps = simulated_eps);

double dgcz_value(const GaussianState& state, int i, int j);
double product_witness_value(const GaussianState& state, int i, int j);

struct PairGains {
  double value = 0.0;
  double h = 0.0;
  double g = 0.0;
};

// Minimum of d(x_k - h x_l) d(p_k + g p_l) / (1 + h g) over gains with 1 + h g > 0.
PairGains giovannetti(const GaussianState& state, int k, int l);

CriterionReport dgcz(const GaussianState& state, int i, int j, double eps = simulated_eps);
CriterionReport giovannetti_report(const GaussianState& state, int i, int j, double eps = simulated_eps);
CriterionReport product_witness(const GaussianState& state, int i, int j, double eps = simulated_eps);
CriterionReport genuine_entanglement(const GaussianState& state, double h, double g, double eps = simulated_eps);

enum class Strategy { analytic, optimize };

struct ClassifyResult {
  SteeringClass cls;
  std::vector<CriterionReport> reports;
};

// Optimizes each direction of every bipartition, then tries the genuine criteria.
ClassifyResult classify(const GaussianState& state, Strategy strategy = Strategy::optimize,
                        const std::vector<GainSet>& analytic = {}, double eps = simulated_eps);

nlohmann::json to_json(const GainSet& gs);
nlohmann::json to_json(const CriterionReport& report);
nlohmann::json to_json(const SteeringClass& cls);
std::string flag_name(Flag f);

}  // namespace cvsteer
