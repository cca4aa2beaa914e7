#pragma once

#include "cvsteer/phase_space.hpp"

#include <string>
#include <vector>

namespace cvsteer {

inline constexpr int max_enumerated_modes = 20;

// Unordered split of the modes; side_a is the smaller side (ties: the side holding mode 0).
struct Bipartition {
  std::vector<int> side_a;
  std::vector<int> side_b;

  std::string label() const;
};

std::string mode_label(const std::vector<int>& modes);

double uncertainty_bound(const QuadratureForm& u, const QuadratureForm& v, const std::vector<int>& subset);
double steering_product(const GaussianState& state, const QuadratureForm& u, const QuadratureForm& v);

std::vector<Bipartition> enumerate_bipartitions(int n);

}  // namespace cvsteer
