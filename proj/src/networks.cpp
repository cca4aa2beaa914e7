#include "cvsteer/networks.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cvsteer {

namespace {

void check_n(int n, int lo) {
  if (n < lo) throw std::invalid_argument("too few modes for this family");
}

}  // namespace

Family parse_family(const std::string& name) {
  if (name == "epr") return Family::epr;
  if (name == "ss") return Family::ss;
  if (name == "ghz") return Family::ghz;
  if (name == "ghz-asym") return Family::ghz_asym;
  if (name == "cluster") return Family::cluster;
  throw std::invalid_argument("unknown family: " + name);
}

std::string family_name(Family f) {
  switch (f) {
    case Family::epr: return "epr";
    case Family::ss: return "ss";
    case Family::ghz: return "ghz";
    case Family::ghz_asym: return "ghz-asym";
    case Family::cluster: return "cluster";
  }
  return "?";
}

SymplecticOp network_op(const NetworkSpec& spec) {
  int n = spec.n_modes;
  if (n < 1) throw std::invalid_argument("spec needs at least one mode");
  if (static_cast<int>(spec.inputs.size()) != n) throw std::invalid_argument("spec needs one input per mode");
  if (!spec.output_phases.empty() && static_cast<int>(spec.output_phases.size()) != n)
    throw std::invalid_argument("output phases must be empty or one per mode");
  SymplecticOp op = identity_op(n);
  for (int m = 0; m < n; ++m) {
    const Input& in = spec.inputs[m];
    if (in.axis) op = compose(op, squeezer(n, m, in.r, *in.axis));
    else if (in.r != 0.0) throw std::invalid_argument("vacuum input with nonzero squeezing");
  }
  for (const Splitter& s : spec.splitters) op = compose(op, beam_splitter(n, s.mode_a, s.mode_b, s.R));
  for (int m = 0; m < static_cast<int>(spec.output_phases.size()); ++m)
    if (spec.output_phases[m] != 0.0) op = compose(op, phase_shift(n, m, spec.output_phases[m]));
  return op;
}

GaussianState build(const NetworkSpec& spec) { return apply(vacuum(spec.n_modes), network_op(spec)); }

std::vector<Splitter> ladder(int n, double R1) {
  std::vector<Splitter> out{{0, 1, R1}};
  for (int k = 1; k <= n - 2; ++k) out.push_back({k, k + 1, 1.0 / (n - k)});
  return out;
}

NetworkSpec epr_spec(int n, double r, double R1) {
  check_n(n, 2);
  NetworkSpec s{n, std::vector<Input>(n), ladder(n, R1), {}};
  s.inputs[0] = {r, Axis::p_squeezed};
  s.inputs[1] = {r, Axis::x_squeezed};
  return s;
}

NetworkSpec ss_spec(int n, double r, double R1) {
  check_n(n, 2);
  NetworkSpec s{n, std::vector<Input>(n), ladder(n, R1), {}};
  s.inputs[0] = {r, Axis::p_squeezed};
  return s;
}

NetworkSpec ghz_spec(int n, double r_first, double r_rest) {
  check_n(n, 2);
  NetworkSpec s{n, std::vector<Input>(n), {}, {}};
  s.inputs[0] = {r_first, Axis::p_squeezed};
  for (int m = 1; m < n; ++m) s.inputs[m] = {r_rest, Axis::x_squeezed};
  for (int k = 0; k <= n - 2; ++k) s.splitters.push_back({k, k + 1, 1.0 / (n - k)});
  return s;
}

NetworkSpec cluster3_spec(double r, double R1, double R2) {
  NetworkSpec s{3, std::vector<Input>(3), {{0, 1, R1}, {1, 2, R2}}, {}};
  s.inputs[0] = {r, Axis::x_squeezed};
  s.inputs[1] = {r, Axis::p_squeezed};
  s.inputs[2] = {r, Axis::x_squeezed};
  s.output_phases = {std::numbers::pi / 2, 0.0, -std::numbers::pi / 2};
  return s;
}

GaussianState cv_epr(int n, double r, double R1) { return build(epr_spec(n, r, R1)); }
GaussianState cv_ss(int n, double r, double R1) { return build(ss_spec(n, r, R1)); }
GaussianState cv_ghz(int n, double r) { return build(ghz_spec(n, r, r)); }
GaussianState cv_ghz_asym(int n, double r2) { return build(ghz_spec(n, ghz_partner_squeezing(n, r2), r2)); }
GaussianState cluster3(double r, double R1, double R2) { return build(cluster3_spec(r, R1, R2)); }

double ghz_partner_squeezing(int n, double r2) {
  check_n(n, 2);
  if (!(r2 > 0.0)) throw std::invalid_argument("asymmetric GHZ needs r2 > 0");
  double a = (n - 1) * std::sinh(2.0 * r2);
  return 0.5 * std::log(a * (std::sqrt(1.0 + 1.0 / (a * a)) + 1.0));
}

GaussianState make_state(Family f, int n, double r) {
  switch (f) {
    case Family::epr: return cv_epr(n, r);
    case Family::ss: return cv_ss(n, r);
    case Family::ghz: return cv_ghz(n, r);
    case Family::ghz_asym: return cv_ghz_asym(n, r);
    case Family::cluster:
      if (n != 3) throw std::invalid_argument("cluster family is tripartite only");
      return cluster3(r);
  }
  throw std::invalid_argument("unknown family");
}

nlohmann::json spec_to_json(const NetworkSpec& spec) {
  nlohmann::json inputs = nlohmann::json::array();
  for (const Input& in : spec.inputs) {
    if (!in.axis) inputs.push_back({{"axis", "vacuum"}});
    else inputs.push_back({{"r", in.r}, {"axis", *in.axis == Axis::x_squeezed ? "x" : "p"}});
  }
  nlohmann::json splitters = nlohmann::json::array();
  for (const Splitter& s : spec.splitters) splitters.push_back({{"a", s.mode_a}, {"b", s.mode_b}, {"R", s.R}});
  nlohmann::json doc{{"n_modes", spec.n_modes}, {"inputs", inputs}, {"splitters", splitters}};
  if (!spec.output_phases.empty()) doc["output_phases"] = spec.output_phases;
  return doc;
}

NetworkSpec spec_from_json(const nlohmann::json& doc) {
  NetworkSpec s;
  try {
    s.n_modes = doc.at("n_modes").get<int>();
    for (const auto& in : doc.at("inputs")) {
      std::string axis = in.at("axis").get<std::string>();
      if (axis == "vacuum") s.inputs.push_back({});
      else if (axis == "x") s.inputs.push_back({in.at("r").get<double>(), Axis::x_squeezed});
      else if (axis == "p") s.inputs.push_back({in.at("r").get<double>(), Axis::p_squeezed});
      else throw std::invalid_argument("input axis must be x, p or vacuum");
    }
    if (doc.contains("splitters"))
      for (const auto& sp : doc.at("splitters"))
        s.splitters.push_back({sp.at("a").get<int>(), sp.at("b").get<int>(), sp.at("R").get<double>()});
    if (doc.contains("output_phases")) s.output_phases = doc.at("output_phases").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed network spec: ") + e.what());
  }
  network_op(s);
  return s;
}

}  // namespace cvsteer
