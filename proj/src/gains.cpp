#include "cvsteer/gains.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cvsteer/networks.hpp"

namespace cvsteer {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

Vector unit_quad(int n, int mode, double phase) {
  QuadratureForm f;
  f.terms.assign(n, {});
  f.terms[mode] = {1.0, phase};
  return f.expand();
}

Matrix quad_cov(const GaussianState& state, const std::vector<int>& modes, const std::vector<double>& phases) {
  int k = static_cast<int>(modes.size());
  Matrix basis(2 * state.n_modes, k);
  for (int i = 0; i < k; ++i) basis.col(i) = unit_quad(state.n_modes, modes[i], phases[modes[i]]);
  return basis.transpose() * state.cov * basis;
}

std::vector<int> involved_modes(const GainSet& gs) {
  std::vector<int> all = gs.steered;
  all.insert(all.end(), gs.steerers.begin(), gs.steerers.end());
  std::sort(all.begin(), all.end());
  return all;
}

void validate_sides(int n, const std::vector<int>& steered, const std::vector<int>& steerers) {
  if (steered.empty() || steerers.empty()) throw std::invalid_argument("both sides need at least one mode");
  std::vector<int> all = steered;
  all.insert(all.end(), steerers.begin(), steerers.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) throw std::invalid_argument("sides overlap");
  if (all.front() < 0 || all.back() >= n) throw std::invalid_argument("mode index out of range");
}

// Minimum-variance gains for one quadrature family with `pinned` held at 1.
std::vector<double> regression_gains(const GaussianState& state, const std::vector<int>& modes, int pinned,
                                     const std::vector<double>& phases) {
  std::vector<int> free;
  for (int m : modes)
    if (m != pinned) free.push_back(m);
  std::vector<double> out(state.n_modes, 0.0);
  out[pinned] = 1.0;
  if (free.empty()) return out;
  Matrix a = quad_cov(state, free, phases);
  Vector c(free.size());
  for (std::size_t i = 0; i < free.size(); ++i)
    c(i) = unit_quad(state.n_modes, free[i], phases[free[i]]).dot(state.cov *
                                                                  unit_quad(state.n_modes, pinned, phases[pinned]));
  Vector x = a.ldlt().solve(-c);
  for (std::size_t i = 0; i < free.size(); ++i) out[free[i]] = x(i);
  return out;
}

struct Profile {
  double value = inf;
  std::vector<double> g;
};

Profile profile(const GaussianState& state, const GainSet& gs, int pinned) {
  std::vector<int> modes = involved_modes(gs);
  int k = static_cast<int>(modes.size());
  Matrix m = quad_cov(state, modes, gs.v_phase);
  Vector b = Vector::Zero(k);
  for (int i = 0; i < k; ++i)
    if (std::find(gs.steered.begin(), gs.steered.end(), modes[i]) != gs.steered.end())
      b(i) = gs.h[modes[i]] * std::sin(gs.u_phase[modes[i]] - gs.v_phase[modes[i]]);
  Vector w = m.ldlt().solve(b);
  double q = b.dot(w);
  Profile p;
  if (!(q > 0.0)) return p;
  double vu = variance_of(state, gs.u());
  p.value = std::sqrt(std::max(vu, 0.0) / q);
  p.g.assign(state.n_modes, 0.0);
  int ip = static_cast<int>(std::find(modes.begin(), modes.end(), pinned) - modes.begin());
  double scale = std::abs(w(ip)) > 1e-300 ? 1.0 / w(ip) : 1.0;
  for (int i = 0; i < k; ++i) p.g[modes[i]] = w(i) * scale;
  return p;
}

std::vector<int> free_modes(const GainSet& gs, int pinned) {
  std::vector<int> out;
  for (int m : involved_modes(gs))
    if (m != pinned) out.push_back(m);
  return out;
}

GainSet with_params(const GainSet& base, const std::vector<int>& free, const Vector& z) {
  GainSet gs = base;
  for (std::size_t i = 0; i < free.size(); ++i) {
    gs.h[free[i]] = z(2 * i);
    gs.g[free[i]] = z(2 * i + 1);
  }
  return gs;
}

Vector params_of(const GainSet& gs, const std::vector<int>& free) {
  Vector z(2 * free.size());
  for (std::size_t i = 0; i < free.size(); ++i) {
    z(2 * i) = gs.h[free[i]];
    z(2 * i + 1) = gs.g[free[i]];
  }
  return z;
}

// Profile with the covariance blocks of the involved modes precomputed.
struct ProfileKernel {
  std::vector<int> modes;
  std::vector<double> sin_uv;  // zero outside the steered side
  Matrix cu, mv_inv;
  Vector h, b;

  ProfileKernel(const GaussianState& state, const GainSet& gs) : modes(involved_modes(gs)) {
    int k = static_cast<int>(modes.size());
    sin_uv.assign(k, 0.0);
    for (int i = 0; i < k; ++i)
      if (std::find(gs.steered.begin(), gs.steered.end(), modes[i]) != gs.steered.end())
        sin_uv[i] = std::sin(gs.u_phase[modes[i]] - gs.v_phase[modes[i]]);
    cu = quad_cov(state, modes, gs.u_phase);
    Matrix mv = quad_cov(state, modes, gs.v_phase);
    mv_inv = mv.ldlt().solve(Matrix::Identity(k, k));
    h.resize(k);
    b.resize(k);
  }

  double operator()(const std::vector<double>& gains) {
    for (std::size_t i = 0; i < modes.size(); ++i) {
      h(i) = gains[modes[i]];
      b(i) = h(i) * sin_uv[i];
    }
    double q = b.dot(mv_inv * b);
    if (!(q > 0.0)) return inf;
    return std::sqrt(std::max(h.dot(cu * h), 0.0) / q);
  }
};

// Coarse scan of the closed-form profile followed by a local polish.
Profile guard_oracle(const GaussianState& state, const GainSet& base, const std::vector<int>& free, int pinned,
                     std::vector<double>& best_h) {
  const int dims = static_cast<int>(free.size());
  const double lo = -5.0, step = 0.1;
  const int pts = 101;
  ProfileKernel kernel(state, base);
  std::vector<double> h = base.h;
  double best = inf;
  std::vector<double> arg(dims, 0.0);
  long total = dims == 1 ? pts : static_cast<long>(pts) * pts;
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    for (int d = 0; d < dims; ++d) {
      h[free[d]] = lo + step * static_cast<double>(rest % pts);
      rest /= pts;
    }
    double val = kernel(h);
    if (val < best) {
      best = val;
      for (int d = 0; d < dims; ++d) arg[d] = h[free[d]];
    }
  }
  if (!std::isfinite(best)) return {};
  auto obj = [&](const Vector& z) {
    for (int d = 0; d < dims; ++d) h[free[d]] = z(d);
    return kernel(h);
  };
  Vector z0 = Eigen::Map<Vector>(arg.data(), dims);
  NelderMeadResult r = nelder_mead(obj, z0, {1e-9, 200000, 0.05});
  GainSet gs = base;
  for (int d = 0; d < dims; ++d) gs.h[free[d]] = r.x(d);
  best_h = gs.h;
  return profile(state, gs, pinned);
}

}  // namespace

QuadratureForm GainSet::u() const { return make_form(h, u_phase); }
QuadratureForm GainSet::v() const { return make_form(g, v_phase); }

std::string GainSet::label() const { return mode_label(steered) + "|" + mode_label(steerers); }

GainSet blank_gains(int n, std::vector<int> steered, std::vector<int> steerers) {
  validate_sides(n, steered, steerers);
  GainSet gs;
  gs.steered = std::move(steered);
  gs.steerers = std::move(steerers);
  gs.h.assign(n, 0.0);
  gs.g.assign(n, 0.0);
  gs.u_phase.assign(n, phase_x);
  gs.v_phase.assign(n, phase_p);
  return gs;
}

double steering_value(const GaussianState& state, const GainSet& gains) {
  double bound = uncertainty_bound(gains.u(), gains.v(), gains.steered);
  double prod = steering_product(state, gains.u(), gains.v());
  if (bound <= 0.0) return inf;
  return prod / bound;
}

std::pair<double, double> epr_gains(double r, double R1) {
  if (!(R1 >= 0.0 && R1 <= 1.0)) throw std::invalid_argument("reflectivity outside [0,1]");
  double T1 = 1.0 - R1, ep = std::exp(2.0 * r), em = std::exp(-2.0 * r);
  double num = std::sqrt(R1 * T1) * (ep - em);
  return {num / (T1 * ep + R1 * em), num / (R1 * ep + T1 * em)};
}

std::pair<double, double> ss_gains(double r, double R1) {
  if (!(R1 >= 0.0 && R1 <= 1.0)) throw std::invalid_argument("reflectivity outside [0,1]");
  double T1 = 1.0 - R1, ep = std::exp(2.0 * r), em = std::exp(-2.0 * r);
  double s = std::sqrt(R1 * T1);
  return {s * (ep - 1.0) / (T1 * ep + R1), s * (1.0 - em) / (R1 + T1 * em)};
}

std::pair<double, double> ghz_gains(int n, double in_var_x1, double in_var_x2, double in_var_p1, double in_var_p2) {
  if (n < 2) throw std::invalid_argument("GHZ gains need at least two modes");
  double h = -(in_var_x1 - in_var_x2) / (in_var_x2 + (n - 1) * in_var_x1);
  double g = -(in_var_p1 - in_var_p2) / (in_var_p2 + (n - 1) * in_var_p1);
  return {h, g};
}

std::pair<double, double> ghz_gains_symmetric(int n, double r) {
  return ghz_gains(n, std::exp(2.0 * r), std::exp(-2.0 * r), std::exp(-2.0 * r), std::exp(2.0 * r));
}

std::pair<double, double> ghz_gains_asymmetric(int n, double r2) {
  double r1 = ghz_partner_squeezing(n, r2);
  return ghz_gains(n, std::exp(2.0 * r1), std::exp(-2.0 * r2), std::exp(-2.0 * r1), std::exp(2.0 * r2));
}

int pinned_mode(const std::vector<int>& steered, const std::vector<int>& steerers) {
  if (steerers.size() < steered.size()) return steerers.front();
  return steered.front();
}

GainSet minimum_variance_gains(const GaussianState& state, const std::vector<int>& steered,
                               const std::vector<int>& steerers) {
  GainSet gs = blank_gains(state.n_modes, steered, steerers);
  int pinned = pinned_mode(gs.steered, gs.steerers);
  std::vector<int> modes = involved_modes(gs);
  gs.h = regression_gains(state, modes, pinned, gs.u_phase);
  gs.g = regression_gains(state, modes, pinned, gs.v_phase);
  gs.value = steering_value(state, gs);
  return gs;
}

double profile_over_v(const GaussianState& state, const GainSet& gains) {
  return profile(state, gains, pinned_mode(gains.steered, gains.steerers)).value;
}

GainSet optimize_steering_gains(const GaussianState& state, const std::vector<int>& steered,
                                const std::vector<int>& steerers, const OptimizeOptions& opts) {
  const int n = state.n_modes;
  GainSet base = blank_gains(n, steered, steerers);
  if (!opts.u_phases.empty()) {
    if (static_cast<int>(opts.u_phases.size()) != n) throw std::invalid_argument("u phases need one entry per mode");
    base.u_phase = opts.u_phases;
  }
  if (!opts.v_phases.empty()) {
    if (static_cast<int>(opts.v_phases.size()) != n) throw std::invalid_argument("v phases need one entry per mode");
    base.v_phase = opts.v_phases;
  }
  int pinned = pinned_mode(base.steered, base.steerers);
  base.h[pinned] = 1.0;
  base.g[pinned] = 1.0;
  std::vector<int> free = free_modes(base, pinned);
  std::vector<int> modes = involved_modes(base);

  auto objective = [&](const Vector& z) { return steering_value(state, with_params(base, free, z)); };

  std::vector<GainSet> seeds;
  if (opts.seed) {
    if (opts.seed->n_modes() != n) throw std::invalid_argument("seed gains have the wrong mode count");
    GainSet s = base;
    for (int m : free) {
      s.h[m] = opts.seed->h[m];
      s.g[m] = opts.seed->g[m];
    }
    seeds.push_back(s);
  }
  {
    GainSet s = base;
    s.h = regression_gains(state, modes, pinned, base.u_phase);
    s.g = regression_gains(state, modes, pinned, base.v_phase);
    seeds.push_back(s);
  }
  for (double sh : {-1.0, 1.0}) {
    GainSet s = base;
    for (int m : free) {
      s.h[m] = sh;
      s.g[m] = 1.0;
    }
    seeds.push_back(s);
  }

  Vector z0;
  for (const GainSet& s : seeds) {
    Vector z = params_of(s, free);
    if (std::isfinite(objective(z))) {
      z0 = z;
      break;
    }
  }
  if (z0.size() != static_cast<long>(2 * free.size())) throw std::runtime_error("no finite starting point for gains");

  NelderMeadResult best = nelder_mead(objective, z0, opts.nm);
  NelderMeadResult polish = nelder_mead(objective, best.x, opts.nm);
  if (polish.f <= best.f) best = polish;

  if (opts.guard && !free.empty() && free.size() <= 2) {
    std::vector<double> h_star;
    Profile oracle = guard_oracle(state, base, free, pinned, h_star);
    if (std::isfinite(oracle.value) && best.f > oracle.value + 1e-3) {
      GainSet s = base;
      s.h = h_star;
      s.g = oracle.g;
      Vector centre = params_of(s, free);
      for (int k = 0; k < 5; ++k) {
        Vector start = centre;
        double offset = 0.02 * k * (k % 2 == 0 ? 1.0 : -1.0);
        start.array() += offset;
        if (!std::isfinite(objective(start))) start = centre;
        NelderMeadResult rr = nelder_mead(objective, start, opts.nm);
        if (rr.f < best.f) best = rr;
      }
    }
  }

  GainSet out = with_params(base, free, best.x);
  out.provenance = "optimized";
  out.value = best.f;
  return out;
}

}  // namespace cvsteer
