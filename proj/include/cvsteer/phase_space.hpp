#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace cvsteer {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Axis { x_squeezed, p_squeezed };

// Covariance in (x1,p1,x2,p2,...) order; vacuum is the identity.
struct GaussianState {
  int n_modes = 0;
  Matrix cov;
};

struct SymplecticOp {
  Matrix matrix;
  std::string description;
};

// One term c * q(phase) with q(phase) = cos(phase) x - sin(phase) p.
struct QuadTerm {
  double c = 0.0;
  double phase = 0.0;
};

inline constexpr double phase_x = 0.0;
inline constexpr double phase_p = -1.57079632679489661923;
inline constexpr double phase_minus_p = 1.57079632679489661923;

struct QuadratureForm {
  std::vector<QuadTerm> terms;

  int n_modes() const { return static_cast<int>(terms.size()); }
  Vector expand() const;
};

QuadratureForm x_form(const std::vector<double>& coeffs);
QuadratureForm p_form(const std::vector<double>& coeffs);
QuadratureForm make_form(const std::vector<double>& coeffs, const std::vector<double>& phases);

Matrix omega(int n);

GaussianState vacuum(int n);
SymplecticOp identity_op(int n);
SymplecticOp squeezer(int n, int mode, double r, Axis axis);
SymplecticOp beam_splitter(int n, int mode_a, int mode_b, double R);
SymplecticOp phase_shift(int n, int mode, double theta);

// Returns the op that applies `first` and then `second`.
SymplecticOp compose(const SymplecticOp& first, const SymplecticOp& second);
SymplecticOp inverse(const SymplecticOp& op);

GaussianState apply(const GaussianState& state, const SymplecticOp& op);
double variance_of(const GaussianState& state, const QuadratureForm& form);

double symplectic_error(const SymplecticOp& op);
double symmetry_error(const GaussianState& state);
double physicality_floor(const GaussianState& state);
bool is_physical(const GaussianState& state, double floor = -1e-9);

}  // namespace cvsteer
