#pragma once

#include "cvsteer/nelder_mead.hpp"
#include "cvsteer/phase_space.hpp"
#include "cvsteer/quad_forms.hpp"

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cvsteer {

// u = sum h_i q_i(u_phase_i), v = sum g_i q_i(v_phase_i); the value divides
// the product by the uncertainty bound of the steered side.
struct GainSet {
  std::vector<int> steered;
  std::vector<int> steerers;
  std::vector<double> h;
  std::vector<double> g;
  std::vector<double> u_phase;
  std::vector<double> v_phase;
  std::string provenance = "analytic";
  double value = std::numeric_limits<double>::quiet_NaN();

  int n_modes() const { return static_cast<int>(h.size()); }
  QuadratureForm u() const;
  QuadratureForm v() const;
  std::string label() const;
};

// x quadratures in u and p quadratures in v, all gains zero.
GainSet blank_gains(int n, std::vector<int> steered, std::vector<int> steerers);

double steering_value(const GaussianState& state, const GainSet& gains);

std::pair<double, double> epr_gains(double r, double R1 = 0.5);
std::pair<double, double> ss_gains(double r, double R1 = 0.5);
std::pair<double, double> ghz_gains(int n, double in_var_x1, double in_var_x2, double in_var_p1, double in_var_p2);
std::pair<double, double> ghz_gains_symmetric(int n, double r);
std::pair<double, double> ghz_gains_asymmetric(int n, double r2);

struct OptimizeOptions {
  std::vector<double> u_phases;  // empty: x on every mode
  std::vector<double> v_phases;  // empty: p on every mode
  std::optional<GainSet> seed;
  NelderMeadOptions nm;
  bool guard = true;
};

// The first mode of the smaller side carries unit gains (ties: first steered mode).
int pinned_mode(const std::vector<int>& steered, const std::vector<int>& steerers);

// Least-squares gains with the pinned mode at 1; exact for a single steered mode.
GainSet minimum_variance_gains(const GaussianState& state, const std::vector<int>& steered,
                               const std::vector<int>& steerers);

// Minimum over every v gain for fixed u gains, in closed form.
double profile_over_v(const GaussianState& state, const GainSet& gains);

GainSet optimize_steering_gains(const GaussianState& state, const std::vector<int>& steered,
                                const std::vector<int>& steerers, const OptimizeOptions& opts = {});

}  // namespace cvsteer
