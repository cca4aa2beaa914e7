#include "cvsteer/phase_space.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace cvsteer {

namespace {

void check_modes(int n) {
  if (n < 1) throw std::invalid_argument("mode count must be positive");
}

void check_index(int n, int mode) {
  if (mode < 0 || mode >= n) throw std::invalid_argument("mode index out of range");
}

double snap(double v) { return std::abs(v) < 1e-15 ? 0.0 : v; }

}  // namespace

Vector QuadratureForm::expand() const {
  Vector c = Vector::Zero(2 * n_modes());
  for (int i = 0; i < n_modes(); ++i) {
    c(2 * i) = snap(terms[i].c * std::cos(terms[i].phase));
    c(2 * i + 1) = snap(-terms[i].c * std::sin(terms[i].phase));
  }
  return c;
}

QuadratureForm make_form(const std::vector<double>& coeffs, const std::vector<double>& phases) {
  if (coeffs.size() != phases.size()) throw std::invalid_argument("coefficient and phase lists differ in length");
  QuadratureForm f;
  f.terms.reserve(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) f.terms.push_back({coeffs[i], phases[i]});
  return f;
}

QuadratureForm x_form(const std::vector<double>& coeffs) {
  return make_form(coeffs, std::vector<double>(coeffs.size(), phase_x));
}

QuadratureForm p_form(const std::vector<double>& coeffs) {
  return make_form(coeffs, std::vector<double>(coeffs.size(), phase_p));
}

Matrix omega(int n) {
  Matrix w = Matrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    w(2 * i, 2 * i + 1) = 1.0;
    w(2 * i + 1, 2 * i) = -1.0;
  }
  return w;
}

GaussianState vacuum(int n) {
  check_modes(n);
  return {n, Matrix::Identity(2 * n, 2 * n)};
}

SymplecticOp identity_op(int n) {
  check_modes(n);
  return {Matrix::Identity(2 * n, 2 * n), "identity"};
}

SymplecticOp squeezer(int n, int mode, double r, Axis axis) {
  check_modes(n);
  check_index(n, mode);
  if (!(r >= 0.0)) throw std::invalid_argument("squeezing parameter must be non-negative");
  Matrix s = Matrix::Identity(2 * n, 2 * n);
  double sx = axis == Axis::p_squeezed ? std::exp(r) : std::exp(-r);
  s(2 * mode, 2 * mode) = sx;
  s(2 * mode + 1, 2 * mode + 1) = 1.0 / sx;
  std::string label = axis == Axis::p_squeezed ? "squeeze-p" : "squeeze-x";
  return {s, label + "(" + std::to_string(mode) + ")"};
}

SymplecticOp beam_splitter(int n, int mode_a, int mode_b, double R) {
  check_modes(n);
  check_index(n, mode_a);
  check_index(n, mode_b);
  if (mode_a == mode_b) throw std::invalid_argument("beam splitter needs two distinct modes");
  if (!(R >= 0.0 && R <= 1.0)) throw std::invalid_argument("reflectivity outside [0,1]");
  Matrix s = Matrix::Identity(2 * n, 2 * n);
  double sr = std::sqrt(R), st = std::sqrt(1.0 - R);
  for (int q = 0; q < 2; ++q) {
    int a = 2 * mode_a + q, b = 2 * mode_b + q;
    s(a, a) = sr;
    s(a, b) = st;
    s(b, a) = st;
    s(b, b) = -sr;
  }
  return {s, "bs(" + std::to_string(mode_a) + "," + std::to_string(mode_b) + ")"};
}

SymplecticOp phase_shift(int n, int mode, double theta) {
  check_modes(n);
  check_index(n, mode);
  Matrix s = Matrix::Identity(2 * n, 2 * n);
  double c = snap(std::cos(theta)), sn = snap(std::sin(theta));
  s(2 * mode, 2 * mode) = c;
  s(2 * mode, 2 * mode + 1) = sn;
  s(2 * mode + 1, 2 * mode) = -sn;
  s(2 * mode + 1, 2 * mode + 1) = c;
  return {s, "phase(" + std::to_string(mode) + ")"};
}

SymplecticOp compose(const SymplecticOp& first, const SymplecticOp& second) {
  if (first.matrix.rows() != second.matrix.rows()) throw std::invalid_argument("op dimensions differ");
  return {second.matrix * first.matrix, first.description + ";" + second.description};
}

SymplecticOp inverse(const SymplecticOp& op) {
  int n = static_cast<int>(op.matrix.rows() / 2);
  Matrix w = omega(n);
  return {-w * op.matrix.transpose() * w, "inv(" + op.description + ")"};
}

GaussianState apply(const GaussianState& state, const SymplecticOp& op) {
  if (op.matrix.rows() != state.cov.rows()) throw std::invalid_argument("op and state dimensions differ");
  Matrix cov = op.matrix * state.cov * op.matrix.transpose();
  cov = 0.5 * (cov + cov.transpose());
  return {state.n_modes, cov};
}

double variance_of(const GaussianState& state, const QuadratureForm& form) {
  if (form.n_modes() != state.n_modes) throw std::invalid_argument("form and state dimensions differ");
  Vector c = form.expand();
  return c.dot(state.cov * c);
}

double symplectic_error(const SymplecticOp& op) {
  int n = static_cast<int>(op.matrix.rows() / 2);
  Matrix w = omega(n);
  return (op.matrix * w * op.matrix.transpose() - w).cwiseAbs().maxCoeff();
}

double symmetry_error(const GaussianState& state) {
  double scale = std::max(1.0, state.cov.cwiseAbs().maxCoeff());
  return (state.cov - state.cov.transpose()).cwiseAbs().maxCoeff() / scale;
}

double physicality_floor(const GaussianState& state) {
  using Complex = std::complex<double>;
  Eigen::MatrixXcd h = state.cov.cast<Complex>() + Complex(0.0, 1.0) * omega(state.n_modes).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_physical(const GaussianState& state, double floor) {
  return symmetry_error(state) < 1e-12 && physicality_floor(state) >= floor;
}

}  // namespace cvsteer
