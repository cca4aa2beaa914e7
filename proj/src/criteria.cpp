#include "cvsteer/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cvsteer/parallel.hpp"

namespace cvsteer {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

bool unit_gains(const double g[3]) {
  for (int i = 0; i < 3; ++i)
    if (std::abs(g[i] - 1.0) > 1e-12) return false;
  return true;
}

void check_triple(const double t[3]) {
  for (int i = 0; i < 3; ++i)
    if (t[i] < 0.0) throw std::invalid_argument("variance quantities must be nonnegative");
}

const char* roman[3] = {"I", "II", "III"};

// Picks the sub-result closest to violation as the headline value.
void headline(CriterionReport& rep) {
  double best = std::numeric_limits<double>::infinity();
  for (const SubResult& d : rep.details) {
    double ratio = d.value / d.bound;
    if (ratio < best) {
      best = ratio;
      rep.value = d.value;
      rep.bound = d.bound;
    }
  }
  rep.violated = std::any_of(rep.details.begin(), rep.details.end(), [](const SubResult& d) { return d.violated; });
}

CriterionReport pairwise(const std::string& name, const double t[3], double pair_bound, double triple_bound,
                         std::vector<std::string> implications, double eps) {
  CriterionReport rep;
  rep.name = name;
  rep.implications = std::move(implications);
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      if (std::isnan(t[a]) || std::isnan(t[b])) continue;
      double s = t[a] + t[b];
      rep.details.push_back({std::string(roman[a]) + "+" + roman[b], s, pair_bound, strictly_below(s, pair_bound, eps)});
    }
  if (triple_bound > 0.0 && !std::isnan(t[0]) && !std::isnan(t[1]) && !std::isnan(t[2])) {
    double s = t[0] + t[1] + t[2];
    rep.details.push_back({"I+II+III", s, triple_bound, strictly_below(s, triple_bound, eps)});
  }
  rep.bound_terms.push_back({"pair", pair_bound});
  if (triple_bound > 0.0) rep.bound_terms.push_back({"triple", triple_bound});
  if (rep.details.empty()) {
    rep.value = nan_v;
    rep.bound = pair_bound;
    return rep;
  }
  headline(rep);
  return rep;
}

CriterionReport two_of_three(const std::string& name, const double t[3], double bound, double eps) {
  CriterionReport rep;
  rep.name = name;
  rep.bound = bound;
  rep.bound_terms.push_back({"each", bound});
  rep.implications = {"full-two-way"};
  std::vector<double> present;
  for (int i = 0; i < 3; ++i) {
    if (std::isnan(t[i])) continue;
    present.push_back(t[i]);
    rep.details.push_back({roman[i], t[i], bound, strictly_below(t[i], bound, eps)});
  }
  std::sort(present.begin(), present.end());
  rep.value = present.size() >= 2 ? present[1] : nan_v;
  rep.violated = present.size() >= 2 && strictly_below(present[1], bound, eps);
  return rep;
}

CriterionReport sum_of_three(const std::string& name, const double t[3], double bound, double eps) {
  CriterionReport rep;
  rep.name = name;
  rep.bound = bound;
  rep.bound_terms.push_back({"sum", bound});
  rep.implications = {"genuine-def1"};
  rep.value = t[0] + t[1] + t[2];
  rep.violated = !std::isnan(rep.value) && strictly_below(rep.value, bound, eps);
  return rep;
}

}  // namespace

Flag SteeringClass::get(const std::string& key) const {
  auto it = flags.find(key);
  return it == flags.end() ? Flag::undetermined : it->second;
}

void SteeringClass::mark(const std::string& key, bool detected) {
  if (detected) flags[key] = Flag::detected;
  else if (get(key) != Flag::detected) flags[key] = Flag::not_detected;
}

void SteeringClass::raise(const std::string& key) { flags[key] = Flag::detected; }

namespace {

const std::pair<const char*, const char*> lattice_edges[] = {
    {"genuine-def3", "genuine-def1"},     {"genuine-def1", "full-two-way"},
    {"genuine-def1", "genuine-def2"},     {"genuine-def2", "full-inseparable"},
    {"full-two-way", "full-inseparable"},
};

}  // namespace

void enforce_lattice(SteeringClass& cls) {
  for (int pass = 0; pass < 4; ++pass)
    for (const auto& [from, to] : lattice_edges)
      if (cls.has(from)) cls.raise(to);
}

bool lattice_consistent(const SteeringClass& cls) {
  for (const auto& [from, to] : lattice_edges)
    if (cls.has(from) && !cls.has(to)) return false;
  return true;
}

bool strictly_below(double value, double bound, double eps) { return value < bound - eps; }

std::pair<double, double> directional_bounds(const QuadratureForm& u, const QuadratureForm& v, const Bipartition& part) {
  return {uncertainty_bound(u, v, part.side_a), uncertainty_bound(u, v, part.side_b)};
}

CriterionReport criterion1(const GaussianState& state, const QuadratureForm& u, const QuadratureForm& v, double eps) {
  CriterionReport rep;
  rep.name = "criterion1";
  rep.value = steering_product(state, u, v);
  rep.bound = std::numeric_limits<double>::infinity();
  for (const Bipartition& p : enumerate_bipartitions(state.n_modes)) {
    auto [ca, cb] = directional_bounds(u, v, p);
    rep.bound_terms.push_back({"C[" + mode_label(p.side_a) + "]", ca});
    rep.bound_terms.push_back({"C[" + mode_label(p.side_b) + "]", cb});
    rep.bound = std::min({rep.bound, ca, cb});
  }
  rep.violated = strictly_below(rep.value, rep.bound, eps);
  rep.implications = {"genuine-def1", "full-two-way"};
  return rep;
}

CriterionReport criterion2(const GaussianState& state, const QuadratureForm& u, const QuadratureForm& v, double eps) {
  CriterionReport rep;
  rep.name = "criterion2";
  rep.value = steering_product(state, u, v);
  rep.bound = std::numeric_limits<double>::infinity();
  for (const Bipartition& p : enumerate_bipartitions(state.n_modes)) {
    auto [ca, cb] = directional_bounds(u, v, p);
    rep.bound_terms.push_back({"max[" + p.label() + "]", std::max(ca, cb)});
    rep.bound = std::min(rep.bound, std::max(ca, cb));
  }
  rep.violated = strictly_below(rep.value, rep.bound, eps);
  rep.implications = {"full-inseparable", "genuine-def2"};
  return rep;
}

QuadratureForm symmetric_u(int n, double h) {
  std::vector<double> c(n, h);
  c[0] = 1.0;
  return x_form(c);
}

QuadratureForm symmetric_v(int n, double g) {
  std::vector<double> c(n, g);
  c[0] = 1.0;
  return p_form(c);
}

double criterion1b_bound(int n, double h, double g) {
  if (n < 2) throw std::invalid_argument("criterion1b needs at least two modes");
  double gh = g * h;
  double bound = std::numeric_limits<double>::infinity();
  for (int a = 0; a <= n - 2; ++a) bound = std::min({bound, std::abs(1.0 + a * gh), std::abs((n - 1 - a) * gh)});
  return bound;
}

CriterionReport criterion1b(const GaussianState& state, double h, double g, double eps) {
  const int n = state.n_modes;
  CriterionReport rep;
  rep.name = "criterion1b";
  rep.value = steering_product(state, symmetric_u(n, h), symmetric_v(n, g));
  for (int a = 0; a <= n - 2; ++a) {
    rep.bound_terms.push_back({"with1+" + std::to_string(a), std::abs(1.0 + a * g * h)});
    rep.bound_terms.push_back({"without1:" + std::to_string(n - 1 - a), std::abs((n - 1 - a) * g * h)});
  }
  rep.bound = criterion1b_bound(n, h, g);
  rep.violated = strictly_below(rep.value, rep.bound, eps);
  rep.implications = {"genuine-def1", "full-two-way"};
  GainSet gs = blank_gains(n, {0}, [&] {
    std::vector<int> rest;
    for (int m = 1; m < n; ++m) rest.push_back(m);
    return rest;
  }());
  gs.h.assign(n, h);
  gs.g.assign(n, g);
  gs.h[0] = gs.g[0] = 1.0;
  gs.value = rep.value;
  rep.gains_used.push_back(gs);
  return rep;
}

CriterionReport criterion3(const GaussianState& state, const std::vector<GainSet>& per_mode, double eps) {
  if (state.n_modes != 3 || per_mode.size() != 3) throw std::invalid_argument("criterion3 is tripartite");
  CriterionReport rep;
  rep.name = "criterion3";
  rep.bound = 1.0;
  rep.bound_terms.push_back({"unit", 1.0});
  for (const GainSet& gs : per_mode) {
    if (gs.steered.size() != 1 || gs.steerers.size() != 2) throw std::invalid_argument("criterion3 needs k|lm gains");
    double s = steering_product(state, gs.u(), gs.v());
    double ck = uncertainty_bound(gs.u(), gs.v(), gs.steered);
    double clm = uncertainty_bound(gs.u(), gs.v(), gs.steerers);
    rep.bound_terms.push_back({"C[" + mode_label(gs.steered) + "]", ck});
    rep.bound_terms.push_back({"C[" + mode_label(gs.steerers) + "]", clm});
    rep.bound = std::min({rep.bound, ck, clm});
    rep.details.push_back({"S[" + gs.label() + "]", s, std::nan(""), false});
    rep.value += s;
    rep.gains_used.push_back(gs);
  }
  rep.violated = strictly_below(rep.value, rep.bound, eps);
  rep.implications = {"genuine-def1"};
  return rep;
}

VlfQuantities vlf_quantities(const GaussianState& state, double g1, double g2, double g3) {
  if (state.n_modes != 3) throw std::invalid_argument("van Loock-Furusawa quantities are tripartite");
  VlfQuantities q;
  q.g[0] = g1;
  q.g[1] = g2;
  q.g[2] = g3;
  const std::vector<double> xs[3] = {{1, -1, 0}, {0, 1, -1}, {1, 0, -1}};
  const std::vector<double> ps[3] = {{1, 1, g3}, {g1, 1, 1}, {1, g2, 1}};
  for (int i = 0; i < 3; ++i) {
    double vx = variance_of(state, x_form(xs[i]));
    double vp = variance_of(state, p_form(ps[i]));
    q.B[i] = vx + vp;
    q.S[i] = std::sqrt(vx * vp);
  }
  return q;
}

CriterionReport criterion4(const double S[3], double eps) {
  check_triple(S);
  return two_of_three("criterion4", S, 1.0, eps);
}

CriterionReport criterion4b(const double B[3], double eps) {
  check_triple(B);
  return two_of_three("criterion4b", B, 2.0, eps);
}

CriterionReport criterion5(const double S[3], double eps) {
  check_triple(S);
  return sum_of_three("criterion5", S, 2.0, eps);
}

CriterionReport criterion5b(const double B[3], double eps) {
  check_triple(B);
  return sum_of_three("criterion5b", B, 4.0, eps);
}

CriterionReport criterion5c(const double S[3], const double g[3], double eps) {
  if (!unit_gains(g)) throw std::invalid_argument("criterion5c requires g1 = g2 = g3 = 1");
  check_triple(S);
  return pairwise("criterion5c", S, 1.0, 0.0, {"genuine-def1"}, eps);
}

CriterionReport criterion6c(const double B[3], const double g[3], double eps) {
  if (!unit_gains(g)) throw std::invalid_argument("criterion6c requires g1 = g2 = g3 = 1");
  check_triple(B);
  return pairwise("criterion6c", B, 2.0, 0.0, {"genuine-def1"}, eps);
}

CriterionReport criterion7(const double S[3], const double g[3], double eps) {
  if (!unit_gains(g)) throw std::invalid_argument("criterion7 requires g1 = g2 = g3 = 1");
  check_triple(S);
  return pairwise("criterion7", S, 1.0, 2.0, {"genuine-def3", "genuine-def1"}, eps);
}

CriterionReport criterion7b(const double B[3], const double g[3], double eps) {
  if (!unit_gains(g)) throw std::invalid_argument("criterion7b requires g1 = g2 = g3 = 1");
  check_triple(B);
  return pairwise("criterion7b", B, 2.0, 4.0, {"genuine-def3", "genuine-def1"}, eps);
}

CriterionReport cluster_vlf(double b1, double b2, double eps) {
  if (b1 < 0.0 || b2 < 0.0) throw std::invalid_argument("variance quantities must be nonnegative");
  CriterionReport rep;
  rep.name = "cluster-vlf";
  rep.value = b1 + b2;
  rep.bound = 2.0;
  rep.bound_terms.push_back({"pair", 2.0});
  rep.details = {{"B'I", b1, std::nan(""), false}, {"B'II", b2, std::nan(""), false}};
  rep.violated = strictly_below(rep.value, rep.bound, eps);
  rep.implications = {"genuine-def1", "genuine-def3"};
  return rep;
}

std::pair<double, double> cluster_vlf_quantities(const GaussianState& state) {
  if (state.n_modes != 3) throw std::invalid_argument("cluster quantities are tripartite");
  auto var = [&](std::vector<double> cx, std::vector<double> cp) {
    QuadratureForm f;
    for (int i = 0; i < 3; ++i) {
      if (cx[i] != 0.0) f.terms.push_back({cx[i], phase_x});
      else f.terms.push_back({cp[i], phase_p});
    }
    return variance_of(state, f);
  };
  double a = var({0, -1, 0}, {1, 0, 0});   // p1 - x2
  double b = var({-1, 0, -1}, {0, 1, 0});  // p2 - x1 - x3
  double c = var({0, -1, 0}, {0, 0, 1});   // p3 - x2
  return {a + b, c + b};
}

CriterionReport epr_paradox(const GaussianState& state, const GainSet& gains, double eps) {
  CriterionReport rep;
  rep.name = "epr-paradox";
  rep.value = steering_value(state, gains);
  rep.bound = 1.0;
  rep.bound_terms.push_back({"heisenberg", 1.0});
  rep.violated = strictly_below(rep.value, rep.bound, eps);
  rep.implications = {"steering[" + gains.label() + "]"};
  if (gains.steered.size() == 1) rep.implications.push_back("epr-paradox[" + mode_label(gains.steered) + "]");
  rep.gains_used.push_back(gains);
  return rep;
}

double dgcz_value(const GaussianState& state, int i, int j) {
  std::vector<double> cx(state.n_modes, 0.0), cp(state.n_modes, 0.0);
  cx[i] = 1.0;
  cx[j] = -1.0;
  cp[i] = 1.0;
  cp[j] = 1.0;
  return 0.25 * (variance_of(state, x_form(cx)) + variance_of(state, p_form(cp)));
}

double product_witness_value(const GaussianState& state, int i, int j) {
  std::vector<double> cx(state.n_modes, 0.0), cp(state.n_modes, 0.0);
  cx[i] = 1.0;
  cx[j] = -1.0;
  cp[i] = 1.0;
  cp[j] = 1.0;
  return steering_product(state, x_form(cx), p_form(cp));
}

PairGains giovannetti(const GaussianState& state, int k, int l) {
  const int n = state.n_modes;
  if (k == l || k < 0 || l < 0 || k >= n || l >= n) throw std::invalid_argument("invalid mode pair");
  auto value = [&](double h, double g) {
    if (1.0 + h * g <= 0.0) return std::numeric_limits<double>::infinity();
    std::vector<double> cx(n, 0.0), cp(n, 0.0);
    cx[k] = 1.0;
    cx[l] = -h;
    cp[k] = 1.0;
    cp[l] = g;
    return steering_product(state, x_form(cx), p_form(cp)) / (1.0 + h * g);
  };
  const Matrix& c = state.cov;
  double h_reg = c(2 * k, 2 * l) / c(2 * l, 2 * l);
  double g_reg = -c(2 * k + 1, 2 * l + 1) / c(2 * l + 1, 2 * l + 1);
  std::vector<std::pair<double, double>> seeds = {{h_reg, g_reg}, {1, 1}, {0.5, 0.5}, {2, 2}, {-0.5, -0.5}};
  PairGains best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  auto obj = [&](const Vector& z) { return value(z(0), z(1)); };
  for (auto [h0, g0] : seeds) {
    if (!std::isfinite(value(h0, g0))) continue;
    Vector z0(2);
    z0 << h0, g0;
    NelderMeadResult r = nelder_mead(obj, z0, {1e-10, 100000, 0.05});
    if (r.f < best.value) best = {r.f, r.x(0), r.x(1)};
  }
  return best;
}

CriterionReport dgcz(const GaussianState& state, int i, int j, double eps) {
  CriterionReport rep;
  rep.name = "dgcz";
  rep.value = dgcz_value(state, i, j);
  rep.bound = 1.0;
  rep.violated = strictly_below(rep.value, rep.bound, eps);
  rep.implications = {"entangled[" + mode_label({i, j}) + "]"};
  return rep;
}

CriterionReport giovannetti_report(const GaussianState& state, int i, int j, double eps) {
  PairGains pg = giovannetti(state, i, j);
  CriterionReport rep;
  rep.name = "giovannetti";
  rep.value = pg.value;
  rep.bound = 1.0;
  rep.violated = strictly_below(rep.value, rep.bound, eps);
  rep.implications = {"entangled[" + mode_label({i, j}) + "]"};
  GainSet gs = blank_gains(state.n_modes, {i}, {j});
  gs.h[i] = gs.g[i] = 1.0;
  gs.h[j] = -pg.h;
  gs.g[j] = pg.g;
  gs.provenance = "optimized";
  gs.value = pg.value;
  rep.gains_used.push_back(gs);
  return rep;
}

CriterionReport product_witness(const GaussianState& state, int i, int j, double eps) {
  CriterionReport rep;
  rep.name = "product-witness";
  rep.value = product_witness_value(state, i, j);
  rep.bound = 2.0;
  rep.violated = strictly_below(rep.value, rep.bound, eps);
  rep.implications = {"entangled[" + mode_label({i, j}) + "]"};
  return rep;
}

CriterionReport genuine_entanglement(const GaussianState& state, double h, double g, double eps) {
  const int n = state.n_modes;
  CriterionReport rep;
  rep.name = "genuine-entanglement";
  rep.value = steering_product(state, symmetric_u(n, h), symmetric_v(n, g));
  rep.bound = 1.0 / (n - 1);
  rep.violated = strictly_below(rep.value, rep.bound, eps);
  rep.implications = {"genuine-entanglement"};
  return rep;
}

ClassifyResult classify(const GaussianState& state, Strategy strategy, const std::vector<GainSet>& analytic,
                        double eps) {
  const int n = state.n_modes;
  std::vector<Bipartition> parts = enumerate_bipartitions(n);
  struct Direction {
    std::vector<int> steered, steerers;
  };
  std::vector<Direction> dirs;
  for (const Bipartition& p : parts) {
    dirs.push_back({p.side_a, p.side_b});
    dirs.push_back({p.side_b, p.side_a});
  }

  std::vector<std::optional<GainSet>> found = map_parallel(dirs.size(), [&](std::size_t i) -> std::optional<GainSet> {
    if (strategy == Strategy::optimize) return optimize_steering_gains(state, dirs[i].steered, dirs[i].steerers);
    for (const GainSet& gs : analytic)
      if (gs.steered == dirs[i].steered && gs.steerers == dirs[i].steerers) {
        GainSet out = gs;
        out.value = steering_value(state, gs);
        return out;
      }
    return std::nullopt;
  });

  ClassifyResult res;
  SteeringClass& cls = res.cls;
  bool all_known = true, all_one = true, all_two = true;
  std::vector<GainSet> singles(n);
  std::vector<bool> have_single(n, false);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const std::optional<GainSet>& ab = found[2 * p];
    const std::optional<GainSet>& ba = found[2 * p + 1];
    bool s_ab = false, s_ba = false;
    for (const std::optional<GainSet>* gs : {&ab, &ba}) {
      if (!*gs) continue;
      CriterionReport rep = epr_paradox(state, **gs, eps);
      for (const std::string& key : rep.implications) cls.mark(key, rep.violated);
      (gs == &ab ? s_ab : s_ba) = rep.violated;
      if ((*gs)->steered.size() == 1) {
        singles[(*gs)->steered[0]] = **gs;
        have_single[(*gs)->steered[0]] = true;
      }
      res.reports.push_back(std::move(rep));
    }
    if (!ab || !ba) all_known = false;
    if (ab && ba) cls.mark("two-way[" + parts[p].label() + "]", s_ab && s_ba);
    if (!(s_ab || s_ba)) all_one = false;
    if (!(s_ab && s_ba)) all_two = false;
  }
  if (all_known || all_one) cls.mark("full-inseparable", all_one);
  if (all_known || all_two) cls.mark("full-two-way", all_two);

  if (have_single[0]) {
    CriterionReport c1 = criterion1(state, singles[0].u(), singles[0].v(), eps);
    CriterionReport c2 = criterion2(state, singles[0].u(), singles[0].v(), eps);
    if (c1.violated) cls.raise("genuine-def1");
    if (c2.violated) cls.raise("genuine-def2");
    res.reports.push_back(std::move(c1));
    res.reports.push_back(std::move(c2));
  }
  if (n == 3) {
    if (have_single[0] && have_single[1] && have_single[2]) {
      CriterionReport c3 = criterion3(state, singles, eps);
      if (c3.violated) cls.raise("genuine-def1");
      res.reports.push_back(std::move(c3));
    }
    VlfQuantities q = vlf_quantities(state);
    CriterionReport c7 = criterion7(q.S, q.g, eps);
    if (c7.violated) cls.raise("genuine-def3");
    res.reports.push_back(std::move(c7));
    CriterionReport c7b = criterion7b(q.B, q.g, eps);
    if (c7b.violated) cls.raise("genuine-def3");
    res.reports.push_back(std::move(c7b));
  }
  enforce_lattice(cls);
  return res;
}

std::string flag_name(Flag f) {
  switch (f) {
    case Flag::detected: return "detected";
    case Flag::not_detected: return "not-detected";
    case Flag::undetermined: return "undetermined";
  }
  return "?";
}

nlohmann::json to_json(const GainSet& gs) {
  nlohmann::json h = nlohmann::json::object(), g = nlohmann::json::object();
  for (int m = 0; m < gs.n_modes(); ++m) {
    if (gs.h[m] != 0.0) h[std::to_string(m + 1)] = gs.h[m];
    if (gs.g[m] != 0.0) g[std::to_string(m + 1)] = gs.g[m];
  }
  nlohmann::json doc{{"target", gs.label()}, {"h", h}, {"g", g}, {"provenance", gs.provenance}};
  if (!std::isnan(gs.value)) doc["value"] = gs.value;
  return doc;
}

nlohmann::json to_json(const CriterionReport& rep) {
  nlohmann::json terms = nlohmann::json::array();
  for (const BoundTerm& t : rep.bound_terms) terms.push_back({{"label", t.label}, {"value", t.value}});
  nlohmann::json details = nlohmann::json::array();
  for (const SubResult& d : rep.details) {
    nlohmann::json j{{"label", d.label}, {"value", d.value}, {"violated", d.violated}};
    if (!std::isnan(d.bound)) j["bound"] = d.bound;
    details.push_back(j);
  }
  nlohmann::json gains = nlohmann::json::array();
  for (const GainSet& gs : rep.gains_used) gains.push_back(to_json(gs));
  nlohmann::json doc{{"name", rep.name},          {"bound", rep.bound},     {"bound_terms", terms},
                     {"violated", rep.violated}, {"implication", rep.implications},
                     {"gains_used", gains},      {"details", details}};
  doc["value"] = std::isnan(rep.value) ? nlohmann::json(nullptr) : nlohmann::json(rep.value);
  return doc;
}

nlohmann::json to_json(const SteeringClass& cls) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [key, flag] : cls.flags) doc[key] = flag_name(flag);
  return doc;
}

}  // namespace cvsteer
