#include "cvsteer/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cvsteer/parallel.hpp"

namespace cvsteer {

std::vector<double> r_grid(double start, double stop, int points) {
  if (points < 1) throw std::invalid_argument("grid needs at least one point");
  if (points == 1) return {start};
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) out[i] = start + (stop - start) * i / (points - 1);
  return out;
}

std::pair<double, double> symmetric_gains(Family f, int n, double r) {
  double scale = 1.0 / std::sqrt(n - 1.0);
  switch (f) {
    case Family::epr: {
      auto [gx, gp] = epr_gains(r);
      return {-gx * scale, gp * scale};
    }
    case Family::ss: {
      auto [gx, gp] = ss_gains(r);
      return {-gx * scale, gp * scale};
    }
    case Family::ghz: return ghz_gains_symmetric(n, r);
    case Family::ghz_asym:
      if (r == 0.0) return {0.0, 0.0};  // limit of vanishing squeezing
      return ghz_gains_asymmetric(n, r);
    case Family::cluster: break;
  }
  throw std::invalid_argument("family has no symmetric gain shape");
}

double symmetric_steering(Family f, int n, double r) {
  auto [h, g] = symmetric_gains(f, n, r);
  GaussianState s = make_state(f, n, r);
  return steering_product(s, symmetric_u(n, h), symmetric_v(n, g));
}

double closed_form_steering(Family f, int n, double r) {
  switch (f) {
    case Family::epr: return 1.0 / std::cosh(2.0 * r);
    case Family::ss: return 1.0 / std::cosh(r);
    case Family::ghz: {
      double s = std::sinh(2.0 * r);
      return n / std::sqrt(n * n + 4.0 * (n - 1) * s * s);
    }
    case Family::ghz_asym: {
      double s = std::sinh(2.0 * r);
      return n / (std::sqrt((n - 1.0) * (n - 1.0) * s * s + 1.0) + (n - 1) * std::cosh(2.0 * r));
    }
    case Family::cluster: return std::sqrt(6.0) * std::exp(-2.0 * r);
  }
  throw std::invalid_argument("unknown family");
}

std::vector<GainSet> cluster_gain_sets() {
  std::vector<GainSet> out;
  for (int k = 0; k < 3; ++k) {
    std::vector<int> rest;
    for (int m = 0; m < 3; ++m)
      if (m != k) rest.push_back(m);
    GainSet gs = blank_gains(3, {k}, rest);
    gs.h = {-1.0, 1.0, -1.0};
    gs.u_phase = {phase_x, phase_p, phase_x};
    gs.v_phase = {phase_p, phase_x, phase_p};
    gs.g = k == 2 ? std::vector<double>{0.0, -1.0, 1.0} : std::vector<double>{1.0, -1.0, 0.0};
    out.push_back(gs);
  }
  return out;
}

GainSet reversed(const GainSet& gs) {
  GainSet out = gs;
  std::swap(out.steered, out.steerers);
  return out;
}

CriterionReport evaluate_criterion(Family f, int n, const std::string& criterion, double r) {
  GaussianState s = make_state(f, n, r);
  if (criterion == "criterion1b") {
    auto [h, g] = symmetric_gains(f, n, r);
    return criterion1b(s, h, g);
  }
  if (criterion == "criterion1" || criterion == "criterion2") {
    auto [h, g] = symmetric_gains(f, n, r);
    return criterion == "criterion1" ? criterion1(s, symmetric_u(n, h), symmetric_v(n, g))
                                     : criterion2(s, symmetric_u(n, h), symmetric_v(n, g));
  }
  if (criterion == "genuine-entanglement") {
    auto [h, g] = symmetric_gains(f, n, r);
    return genuine_entanglement(s, h, g);
  }
  if (criterion == "criterion3") {
    if (n != 3) throw std::invalid_argument("criterion3 is tripartite");
    if (f == Family::cluster) return criterion3(s, cluster_gain_sets());
    std::vector<GainSet> sets;
    for (int k = 0; k < 3; ++k) {
      std::vector<int> rest;
      for (int m = 0; m < 3; ++m)
        if (m != k) rest.push_back(m);
      sets.push_back(optimize_steering_gains(s, {k}, rest));
    }
    return criterion3(s, sets);
  }
  if (criterion == "two-way") {
    if (f != Family::cluster) throw std::invalid_argument("two-way sweep uses the cluster forms");
    CriterionReport rep;
    rep.name = "two-way";
    rep.bound = 1.0;
    rep.implications = {"full-two-way"};
    rep.violated = true;
    for (const GainSet& gs : cluster_gain_sets())
      for (const GainSet& d : {gs, reversed(gs)}) {
        double v = steering_value(s, d);
        bool hit = strictly_below(v, 1.0, simulated_eps);
        rep.details.push_back({d.label(), v, 1.0, hit});
        rep.value = std::max(rep.value, v);
        rep.violated = rep.violated && hit;
        rep.gains_used.push_back(d);
      }
    return rep;
  }
  if (criterion == "criterion4" || criterion == "criterion5" || criterion == "criterion7" ||
      criterion == "criterion4b" || criterion == "criterion5b" || criterion == "criterion7b") {
    VlfQuantities q = vlf_quantities(s);
    if (criterion == "criterion4") return criterion4(q.S);
    if (criterion == "criterion5") return criterion5(q.S);
    if (criterion == "criterion7") return criterion7(q.S, q.g);
    if (criterion == "criterion4b") return criterion4b(q.B);
    if (criterion == "criterion5b") return criterion5b(q.B);
    return criterion7b(q.B, q.g);
  }
  if (criterion == "epr-paradox") {
    std::vector<int> rest;
    for (int m = 1; m < n; ++m) rest.push_back(m);
    return epr_paradox(s, optimize_steering_gains(s, {0}, rest));
  }
  throw std::invalid_argument("unknown criterion: " + criterion);
}

bool flag_at(Family f, int n, const std::string& criterion, double r) {
  return evaluate_criterion(f, n, criterion, r).violated;
}

Threshold bisect_threshold(const std::function<bool(double)>& flag, double lo, double hi, double tol, int max_iter) {
  if (flag(lo)) throw std::runtime_error("flag already holds at the lower end of the bracket");
  if (!flag(hi)) throw std::runtime_error("flag does not hold at the upper end of the bracket");
  Threshold t;
  while (hi - lo > tol && t.iterations < max_iter) {
    double mid = 0.5 * (lo + hi);
    (flag(mid) ? hi : lo) = mid;
    ++t.iterations;
  }
  t.r = 0.5 * (lo + hi);
  return t;
}

GaussianState table_state(Family f, double r) {
  switch (f) {
    case Family::epr: return cv_epr(3, r);
    case Family::ss: return cv_ss(3, r, ss_table_R1);
    case Family::ghz: return cv_ghz(3, r);
    case Family::ghz_asym: return cv_ghz_asym(3, r);
    case Family::cluster: break;
  }
  throw std::invalid_argument("no gain table for this family");
}

std::vector<std::string> table_header(const std::string& table) {
  if (table == "fixed") return {"h", "g"};
  if (table == "1-23") return {"h2[1|23]", "g2[1|23]", "h3[1|23]", "g3[1|23]", "h1[2|13]", "g1[2|13]", "h3[2|13]", "g3[2|13]"};
  if (table == "23-1") return {"h2[23|1]", "g2[23|1]", "h3[23|1]", "g3[23|1]", "h1[13|2]", "g1[13|2]", "h3[13|2]", "g3[13|2]"};
  throw std::invalid_argument("unknown table: " + table);
}

std::vector<double> table_row(Family f, const std::string& table, double r) {
  if (table == "fixed") {
    if (f != Family::ghz && f != Family::ghz_asym) throw std::invalid_argument("fixed-gain tables are GHZ only");
    auto [h, g] = symmetric_gains(f, 3, r);
    return {h, g};
  }
  GaussianState s = table_state(f, r);
  struct Dir {
    std::vector<int> steered, steerers;
    int a, b;
  };
  std::vector<Dir> dirs;
  if (table == "1-23") dirs = {{{0}, {1, 2}, 1, 2}, {{1}, {0, 2}, 0, 2}};
  else if (table == "23-1") dirs = {{{1, 2}, {0}, 1, 2}, {{0, 2}, {1}, 0, 2}};
  else throw std::invalid_argument("unknown table: " + table);
  std::vector<double> row;
  for (const Dir& d : dirs) {
    GainSet gs = optimize_steering_gains(s, d.steered, d.steerers);
    row.insert(row.end(), {gs.h[d.a], gs.g[d.a], gs.h[d.b], gs.g[d.b]});
  }
  return row;
}

std::vector<double> sweep_steering(Family f, int n, const std::vector<double>& grid, bool parallel) {
  return map_indices(grid.size(), parallel, [&](std::size_t i) { return symmetric_steering(f, n, grid[i]); });
}

std::vector<double> sweep_optimized(Family f, const std::vector<double>& grid, bool parallel) {
  return map_indices(grid.size(), parallel, [&](std::size_t i) {
    return optimize_steering_gains(table_state(f, grid[i]), {1, 2}, {0}).value;
  });
}

}  // namespace cvsteer
