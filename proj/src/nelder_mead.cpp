#include "cvsteer/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvsteer {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& opts) {
  const int n = static_cast<int>(x0.size());
  long calls = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++calls;
    double f = objective(x);
    if (std::isnan(f)) throw std::runtime_error("objective returned NaN after " + std::to_string(calls) + " calls");
    return f;
  };

  if (n == 0) {
    double f = eval(x0);
    return {x0, f, calls, true};
  }

  std::vector<Eigen::VectorXd> pts(n + 1, x0);
  std::vector<double> fs(n + 1);
  fs[0] = eval(x0);
  if (!std::isfinite(fs[0])) throw std::runtime_error("objective not finite at the starting point");
  for (int i = 0; i < n; ++i) {
    pts[i + 1](i) += opts.edge;
    fs[i + 1] = eval(pts[i + 1]);
  }

  std::vector<int> order(n + 1);
  bool converged = false;
  while (calls < opts.max_calls) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    std::vector<Eigen::VectorXd> sp(n + 1);
    std::vector<double> sf(n + 1);
    for (int i = 0; i <= n; ++i) {
      sp[i] = pts[order[i]];
      sf[i] = fs[order[i]];
    }
    pts.swap(sp);
    fs.swap(sf);

    double spread = 0.0, extent = 0.0;
    for (int i = 1; i <= n; ++i) {
      spread = std::max(spread, std::abs(fs[i] - fs[0]));
      extent = std::max(extent, (pts[i] - pts[0]).cwiseAbs().maxCoeff());
    }
    if (std::isfinite(fs[n]) && spread <= opts.tol && extent <= opts.tol) {
      converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += pts[i];
    centroid /= n;

    Eigen::VectorXd xr = centroid + (centroid - pts[n]);
    double fr = eval(xr);
    if (fr < fs[0]) {
      Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[n]);
      double fe = eval(xe);
      if (fe < fr) {
        pts[n] = xe;
        fs[n] = fe;
      } else {
        pts[n] = xr;
        fs[n] = fr;
      }
      continue;
    }
    if (fr < fs[n - 1]) {
      pts[n] = xr;
      fs[n] = fr;
      continue;
    }
    bool outside = fr < fs[n];
    Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                                 : Eigen::VectorXd(centroid + 0.5 * (pts[n] - centroid));
    double fc = eval(xc);
    if (outside ? fc <= fr : fc < fs[n]) {
      pts[n] = xc;
      fs[n] = fc;
      continue;
    }
    for (int i = 1; i <= n; ++i) {
      pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
      fs[i] = eval(pts[i]);
    }
  }

  int best = static_cast<int>(std::min_element(fs.begin(), fs.end()) - fs.begin());
  return {pts[best], fs[best], calls, converged};
}

}  // namespace cvsteer
