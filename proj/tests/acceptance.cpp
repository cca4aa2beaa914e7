// Acceptance checks, one per criterion. Usage: acceptance [1-7]
#include "cvsteer/certify.hpp"
#include "cvsteer/criteria.hpp"
#include "cvsteer/monogamy.hpp"
#include "cvsteer/networks.hpp"
#include "cvsteer/parallel.hpp"
#include "cvsteer/sweeps.hpp"

#include "oracles.hpp"
#include "reference_tables.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

using namespace cvsteer;

namespace {

constexpr double closed_form_tol = 1e-9;
constexpr double table_tol = 0.005;
constexpr double monogamy_slack_floor = -1e-9;
constexpr double saturation_band = 1e-4;
constexpr double b12_target = 0.625, b12_band = 0.01;
constexpr double large_n_tol = 0.01;

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> notes;

  void note(const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    notes.emplace_back(buf);
  }
};

Outcome closed_forms() {
  Outcome o;
  double worst = 0.0;
  for (int n : {2, 3, 5, 10})
    for (double r : r_grid()) {
      worst = std::max({worst, std::abs(symmetric_steering(Family::epr, n, r) - oracle::epr_steering(r)),
                        std::abs(symmetric_steering(Family::ss, n, r) - oracle::ss_steering(r)),
                        std::abs(symmetric_steering(Family::ghz, n, r) - oracle::ghz_steering(n, r))});
    }
  o.pass = worst < closed_form_tol;
  o.note("max |S - closed form| = %.3g over N in {2,3,5,10}, 101 r values", worst);
  o.summary = "closed-form steering equality";
  return o;
}

Outcome thresholds() {
  Outcome o;
  o.summary = "squeezing thresholds";
  auto check = [&](const char* what, double got, double want, double tol) {
    bool ok = std::abs(got - want) <= tol;
    o.pass = o.pass && ok;
    o.note("%-40s r = %.4f (want %.3f +- %.3f) %s", what, got, want, tol, ok ? "ok" : "MISS");
  };
  auto bisect = [](Family f, const char* criterion) {
    return bisect_threshold([&](double r) { return flag_at(f, 3, criterion, r); }, 0.05, 2.5).r;
  };
  check("EPR genuine (criterion1b)", bisect(Family::epr, "criterion1b"), 0.76, 0.01);
  check("SS genuine (criterion1b)", bisect(Family::ss, "criterion1b"), 1.53, 0.01);
  check("GHZ genuine (criterion1b)", bisect(Family::ghz, "criterion1b"), 0.80, 0.02);
  double r2 = bisect(Family::ghz_asym, "criterion1b");
  check("asymmetric GHZ r2", r2, 0.633, 0.01);
  check("asymmetric GHZ r1", ghz_partner_squeezing(3, r2), 0.95, 0.01);
  check("cluster two-way, all bipartitions", bisect(Family::cluster, "two-way"), 0.44, 0.01);
  check("cluster genuine (criterion3)", bisect(Family::cluster, "criterion3"), 1.00, 0.01);
  return o;
}

Outcome tables() {
  Outcome o;
  o.summary = "optimal-gain table reproduction";
  int entries = 0, misses = 0;
  for (const ReferenceTable& t : reference_tables()) {
    std::vector<std::vector<double>> rows =
        map_indices(t.rows.size(), true, [&](std::size_t i) { return table_row(t.family, t.kind, t.rows[i].r); });
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      for (std::size_t c = 0; c < t.rows[i].entries.size(); ++c) {
        ++entries;
        double want = t.rows[i].entries[c], got = rows[i][c];
        if (std::abs(got - want) > table_tol) {
          ++misses;
          o.note("%-16s r=%.2f %-10s got %+.4f want %+.2f", t.name.c_str(), t.rows[i].r,
                 table_header(t.kind)[c].c_str(), got, want);
        }
      }
  }
  o.pass = misses == 0;
  o.note("%d of %d entries outside +-%.3f", misses, entries, table_tol);
  return o;
}

Outcome experiments() {
  Outcome o;
  o.summary = "experimental certification verdicts";
  auto status = [](const char* file, const char* flag) {
    Certificate c = certify(load_measurements_file(std::string(CVSTEER_DATA_DIR) + "/" + file));
    return c.cls.get(flag);
  };
  auto evidence = [](const char* file, const char* flag) {
    Certificate c = certify(load_measurements_file(std::string(CVSTEER_DATA_DIR) + "/" + file));
    auto it = c.evidence.find(flag);
    return it == c.evidence.end() || it->second.empty() ? std::string() : it->second.front().criterion;
  };
  auto check = [&](const char* what, bool ok) {
    o.pass = o.pass && ok;
    o.note("%-55s %s", what, ok ? "ok" : "MISS");
  };
  check("2012 EPR: full-two-way detected",
        status("armstrong2012_epr.json", "full-two-way") == Flag::detected);
  check("2012 EPR: full-two-way evidence is criterion4b",
        evidence("armstrong2012_epr.json", "full-two-way") == "criterion4b");
  check("2015: full-inseparable detected", status("armstrong2015_epr.json", "full-inseparable") == Flag::detected);
  check("2015: full-two-way not detected", status("armstrong2015_epr.json", "full-two-way") == Flag::not_detected);
  check("2015: 13|2 steering not detected", status("armstrong2015_epr.json", "steering[13|2]") == Flag::not_detected);
  check("2012 cluster: genuine-def1 detected", status("armstrong2012_cluster.json", "genuine-def1") == Flag::detected);
  check("2012 cluster: genuine-def3 detected", status("armstrong2012_cluster.json", "genuine-def3") == Flag::detected);
  check("2012 cluster: evidence is the cluster pair rule",
        evidence("armstrong2012_cluster.json", "genuine-def3") == "cluster-vlf");
  return o;
}

Outcome monogamy() {
  Outcome o;
  o.summary = "monogamy suite";
  struct Row {
    double worst_slack = 1e300, worst_saturation = 0.0;
    int symmetric_floor = 0;
    std::string error;
  };
  const Family families[] = {Family::epr, Family::ss, Family::ghz};
  std::vector<double> grid = r_grid();
  double worst_slack = 1e300, ghz_saturation = 0.0;
  int floor_misses = 0;
  for (Family f : families) {
    std::vector<Row> rows = map_indices(grid.size(), true, [&](std::size_t i) {
      Row row;
      GaussianState s = make_state(f, 3, grid[i]);
      for (int k = 0; k < 3; ++k) {
        int l = (k + 1) % 3, m = (k + 2) % 3;
        try {
          SteeringParts parts = steering_parts(s, k, l, m);
          std::vector<MonogamyReport> reps = {steering_monogamy_base(parts, false), steering_monogamy(parts, false)};
          for (const MonogamyReport& r : entanglement_monogamy_dgcz(s, k, l, m, parts.k_lm.value, false))
            reps.push_back(r);
          reps.push_back(entanglement_monogamy_general(s, k, l, m, parts.k_lm.value, false));
          for (const MonogamyReport& r : reps) row.worst_slack = std::min(row.worst_slack, r.lhs - r.rhs);
          if (f == Family::ghz)
            row.worst_saturation = std::max(row.worst_saturation, std::abs(parts.k_l.value * parts.k_m.value - 1.0));
          if (std::abs(parts.k_l.value - parts.k_m.value) < 1e-9 &&
              std::min(parts.k_l.value, parts.k_m.value) < 1.0 - 1e-9)
            ++row.symmetric_floor;
        } catch (const std::exception& e) {
          row.error = e.what();
        }
      }
      return row;
    });
    for (const Row& r : rows) {
      worst_slack = std::min(worst_slack, r.worst_slack);
      ghz_saturation = std::max(ghz_saturation, r.worst_saturation);
      floor_misses += r.symmetric_floor;
      if (!r.error.empty()) {
        o.pass = false;
        o.note("error: %s", r.error.c_str());
      }
    }
  }
  bool slack_ok = worst_slack >= monogamy_slack_floor;
  bool sat_ok = ghz_saturation <= saturation_band;
  o.note("worst lhs - rhs over five relations, 3 families, 101 r: %.3g %s", worst_slack, slack_ok ? "ok" : "MISS");
  o.note("GHZ max |S_k|l S_k|m - 1| over k and r: %.3g %s", ghz_saturation, sat_ok ? "ok" : "MISS");
  o.note("symmetric-mode floor misses: %d %s", floor_misses, floor_misses == 0 ? "ok" : "MISS");

  double b_half = dgcz_value(cv_ss(3, 2.5, 0.5), 0, 1), b_half13 = dgcz_value(cv_ss(3, 2.5, 0.5), 0, 2);
  double b_third = dgcz_value(cv_ss(3, 2.5, 1.0 / 3.0), 0, 1), b_third13 = dgcz_value(cv_ss(3, 2.5, 1.0 / 3.0), 0, 2);
  bool b_ok = std::abs(b_half - b12_target) <= b12_band && std::abs(b_half - b_half13) < 1e-9;
  o.note("SS r=2.5 R1=1/2: B12 = %.4f, B13 = %.4f (want %.3f +- %.2f) %s", b_half, b_half13, b12_target, b12_band,
         b_ok ? "ok" : "MISS");
  o.note("SS r=2.5 R1=1/3 (diagnostic): B12 = %.4f, B13 = %.4f", b_third, b_third13);
  o.pass = o.pass && slack_ok && sat_ok && floor_misses == 0 && b_ok;
  return o;
}

Outcome properties() {
  Outcome o;
  o.summary = "property suite over 1000 random networks";
  oracle::PropertyTally t = oracle::run_property_suite(1000, 20261019);
  o.note("symplectic %d, construction %d, physical %d, product-sum %d, lattice %d, grid-oracle %d", t.symplectic,
         t.construction, t.physical, t.product_sum, t.lattice, t.grid);
  o.note("largest optimizer excess over the 0.01 grid: %.3g (tolerance %.0e)", t.worst_grid_gap, oracle::grid_tolerance);
  for (const std::string& f : t.failures) o.note("%s", f.c_str());
  o.pass = t.specs == 1000 && t.violations() == 0;
  return o;
}

Outcome large_n() {
  Outcome o;
  o.summary = "asymmetric GHZ large-N limit";
  for (double r2 : {0.5, 1.0}) {
    double s = symmetric_steering(Family::ghz_asym, 100, r2);
    double gap = std::abs(s - std::exp(-2 * r2));
    o.pass = o.pass && gap < large_n_tol;
    o.note("N=100 r2=%.1f: S = %.5f, exp(-2 r2) = %.5f, gap %.4f", r2, s, std::exp(-2 * r2), gap);
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> checks = {closed_forms, thresholds, tables,  experiments,
                                                        monogamy,     properties, large_n};
  std::vector<int> which;
  if (argc > 1) {
    int i = std::atoi(argv[1]);
    if (i < 1 || i > static_cast<int>(checks.size())) {
      std::fprintf(stderr, "usage: acceptance [1-%zu]\n", checks.size());
      return 2;
    }
    which.push_back(i);
  } else {
    for (int i = 1; i <= static_cast<int>(checks.size()); ++i) which.push_back(i);
  }
  int failed = 0;
  for (int i : which) {
    Outcome o;
    try {
      o = checks[i - 1]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("threw: ") + e.what();
    }
    std::printf("criterion %d: %s  %s\n", i, o.pass ? "PASS" : "FAIL", o.summary.c_str());
    for (const std::string& n : o.notes) std::printf("    %s\n", n.c_str());
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
