#include "cvsteer/quad_forms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cvsteer {

std::string mode_label(const std::vector<int>& modes) {
  bool wide = std::any_of(modes.begin(), modes.end(), [](int m) { return m >= 9; });
  std::string s;
  for (int m : modes) {
    if (wide && !s.empty()) s += ",";
    s += std::to_string(m + 1);
  }
  return s;
}

std::string Bipartition::label() const { return mode_label(side_a) + "|" + mode_label(side_b); }

double uncertainty_bound(const QuadratureForm& u, const QuadratureForm& v, const std::vector<int>& subset) {
  if (u.n_modes() != v.n_modes()) throw std::invalid_argument("forms differ in mode count");
  double sum = 0.0;
  for (int i : subset) {
    if (i < 0 || i >= u.n_modes()) throw std::invalid_argument("subset mode out of range");
    const QuadTerm& a = u.terms[i];
    const QuadTerm& b = v.terms[i];
    sum += a.c * b.c * std::sin(a.phase - b.phase);
  }
  return std::abs(sum);
}

double steering_product(const GaussianState& state, const QuadratureForm& u, const QuadratureForm& v) {
  return std::sqrt(variance_of(state, u) * variance_of(state, v));
}

std::vector<Bipartition> enumerate_bipartitions(int n) {
  if (n < 2) throw std::invalid_argument("bipartitions need at least two modes");
  if (n > max_enumerated_modes) throw std::domain_error("bipartition enumeration unsupported above 20 modes");
  std::vector<Bipartition> out;
  unsigned long count = 1ul << (n - 1);
  for (unsigned long mask = 0; mask + 1 < count; ++mask) {
    // mode 0 always in `with0`; bits of mask choose modes 1..n-1 that join it
    std::vector<int> with0{0}, rest;
    for (int m = 1; m < n; ++m) ((mask >> (m - 1)) & 1ul ? with0 : rest).push_back(m);
    Bipartition b;
    if (rest.size() < with0.size()) {
      b.side_a = rest;
      b.side_b = with0;
    } else {
      b.side_a = with0;
      b.side_b = rest;
    }
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end(), [](const Bipartition& x, const Bipartition& y) {
    if (x.side_a.size() != y.side_a.size()) return x.side_a.size() < y.side_a.size();
    return x.side_a < y.side_a;
  });
  return out;
}

}  // namespace cvsteer
