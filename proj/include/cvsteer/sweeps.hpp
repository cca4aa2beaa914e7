#pragma once

#include "cvsteer/criteria.hpp"
#include "cvsteer/gains.hpp"
#include "cvsteer/networks.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace cvsteer {

std::vector<double> r_grid(double start = 0.0, double stop = 2.5, int points = 101);

// Gains of the symmetric forms u = x1 + h sum x, v = p1 + g sum p.
std::pair<double, double> symmetric_gains(Family f, int n, double r);
double symmetric_steering(Family f, int n, double r);
double closed_form_steering(Family f, int n, double r);

// Per-k gain sets of the cluster forms, steered side {k}.
std::vector<GainSet> cluster_gain_sets();
GainSet reversed(const GainSet& gs);

// Criterion names accepted by threshold and criteria sweeps.
bool flag_at(Family f, int n, const std::string& criterion, double r);
CriterionReport evaluate_criterion(Family f, int n, const std::string& criterion, double r);

struct Threshold {
  double r = 0.0;
  int iterations = 0;
};

Threshold bisect_threshold(const std::function<bool(double)>& flag, double lo, double hi, double tol = 1e-3,
                           int max_iter = 60);

// Appendix-style table rows: "fixed" gives (h, g); "1-23" and "23-1" give two
// bipartitions of (h, g, h, g) each.
std::vector<double> table_row(Family f, const std::string& table, double r);
std::vector<std::string> table_header(const std::string& table);

// Reflectivity used for the single-squeezer tables.
inline constexpr double ss_table_R1 = 1.0 / 3.0;

GaussianState table_state(Family f, double r);

std::vector<double> sweep_steering(Family f, int n, const std::vector<double>& grid, bool parallel);
std::vector<double> sweep_optimized(Family f, const std::vector<double>& grid, bool parallel);

}  // namespace cvsteer
