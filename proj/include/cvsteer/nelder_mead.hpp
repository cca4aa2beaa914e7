#pragma once

#include <Eigen/Dense>

#include <functional>

namespace cvsteer {

struct NelderMeadOptions {
  double tol = 1e-6;
  long max_calls = 1000000;
  double edge = 0.05;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double f = 0.0;
  long calls = 0;
  bool converged = false;
};

// Reflection 1, expansion 2, contraction 0.5, shrink 0.5. Stops when both the
// spread of simplex values and the simplex extent fall to tol. +inf counts as
// worst; NaN aborts with std::runtime_error.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& opts = {});

}  // namespace cvsteer
