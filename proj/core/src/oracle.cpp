#include "specbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "specbound/parallel.hpp"
#include "specbound/poly.hpp"
#include "specbound/rng.hpp"
#include "specbound/summation.hpp"
#include "specbound/tensor.hpp"

namespace specbound {
namespace {

// Accepts steps that lose at most this relative amount to rounding.
constexpr double kAcceptSlack = 0x1p-50;

void normalize(std::vector<double>& v) {
  const double nv = euclidean_norm(v);
  if (nv > 0.0) {
    for (auto& x : v) x /= nv;
  }
}

// Reusable evaluator: keeps its power table between calls.
class PolyEvaluator {
 public:
  explicit PolyEvaluator(const HomoPoly& f) : f_(f), table_(f.dimension() * (f.degree() + 1)) {}

  double operator()(std::span<const double> x) {
    const unsigned p = f_.degree();
    const std::size_t n = f_.dimension();
    for (std::size_t i = 0; i < n; ++i) {
      double* row = table_.data() + i * (p + 1);
      row[0] = 1.0;
      for (unsigned e = 1; e <= p; ++e) row[e] = row[e - 1] * x[i];
    }
    CompensatedSum s;
    for (std::size_t t = 0; t < f_.num_terms(); ++t) {
      const auto e = f_.exponents(t);
      double term = f_.coefficient(t);
      for (std::size_t i = 0; i < n; ++i) term *= table_[i * (p + 1) + e[i]];
      s.add(term);
    }
    return s.value();
  }

 private:
  const HomoPoly& f_;
  std::vector<double> table_;
};

double residual_l2(std::span<const double> fx, std::span<const double> x, double lambda) {
  CompensatedSum s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = fx[i] - lambda * x[i];
    s.add(r * r);
  }
  return std::sqrt(s.value());
}

ShopmResult shopm_start(const HomoPoly& f, const PolyMap& F, const ShopmSettings& settings, std::size_t start) {
  const std::size_t n = f.dimension();
  CounterRng rng(settings.seed, start);
  PolyEvaluator fe(f);
  std::vector<PolyEvaluator> Fe;
  Fe.reserve(n);
  for (const auto& c : F.coords()) Fe.emplace_back(c);
  auto eval_map = [&](std::span<const double> x) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = Fe[i](x);
    return g;
  };

  const double damping = settings.damping.value_or(default_damping(f.degree()));
  ShopmResult r;
  r.best_start = start;
  std::vector<double> x = random_unit_vector(rng, n);
  double val = fe(x);
  std::vector<double> g = eval_map(x);
  for (std::size_t it = 0; it < settings.max_iters; ++it) {
    if (residual_l2(g, x, val) <= settings.tol) break;
    const double ng = euclidean_norm(g);
    if (ng == 0.0) break;
    const double sign = val >= 0.0 ? 1.0 : -1.0;
    bool accepted = false;
    std::vector<double> cand(n);
    double cand_val = 0.0;
    for (double a = damping; a > 1e-12; a *= 0.5) {
      for (std::size_t i = 0; i < n; ++i) cand[i] = (1.0 - a) * x[i] + a * sign * g[i] / ng;
      normalize(cand);
      cand_val = fe(cand);
      if (std::abs(cand_val) >= std::abs(val) * (1.0 - kAcceptSlack)) {
        accepted = true;
        break;
      }
    }
    if (!accepted || cand == x) break;
    x = std::move(cand);
    val = cand_val;
    g = eval_map(x);
  }
  r.value = std::abs(val);
  r.residual = residual_l2(g, x, val);
  r.converged = r.residual <= settings.tol;
  r.witness = std::move(x);
  return r;
}

// |f| along the unit circle / hemisphere chart used by grid_oracle.
std::vector<double> circle_point(double theta) { return {std::cos(theta), std::sin(theta)}; }
std::vector<double> sphere_point(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Golden-section maximization of g on [lo, hi].
template <typename Fn>
std::pair<double, double> golden_max(Fn&& g, double lo, double hi, int iters = 80) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double gc = g(c);
  double gd = g(d);
  for (int i = 0; i < iters && b - a > 1e-15; ++i) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - invphi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + invphi * (b - a);
      gd = g(d);
    }
  }
  return gc > gd ? std::pair{c, gc} : std::pair{d, gd};
}

// Nested evaluation of the k-fold iterate of F and of J^T y.
class IterateEvaluator {
 public:
  IterateEvaluator(const PolyMap& F, unsigned k) : F_(F), k_(k) {
    const double p = F.degree();
    for (const auto& c : F.coords()) {
      if (c.degree() == 0) {
        jac_.push_back(PolyMap(std::vector<HomoPoly>(F.input_dim(), HomoPoly(F.input_dim(), 0))));
      } else {
        jac_.push_back(gradient_map(c).scaled(p));
      }
    }
  }

  // Returns G(x) and fills the trajectory x_0..x_{k-1}.
  std::vector<double> value(std::span<const double> x) {
    trajectory_.clear();
    std::vector<double> cur(x.begin(), x.end());
    for (unsigned t = 0; t < k_; ++t) {
      trajectory_.push_back(cur);
      cur = eval(F_, cur);
    }
    return cur;
  }

  // J_G(x)^T y using the trajectory of the last value() call.
  std::vector<double> transpose_jacobian_times(std::vector<double> y) const {
    const std::size_t n = F_.input_dim();
    for (std::size_t t = trajectory_.size(); t-- > 0;) {
      std::vector<double> next(n, 0.0);
      for (std::size_t i = 0; i < jac_.size(); ++i) {
        const auto row = eval(jac_[i], trajectory_[t]);
        for (std::size_t l = 0; l < n; ++l) next[l] += row[l] * y[i];
      }
      y = std::move(next);
    }
    return y;
  }

 private:
  const PolyMap& F_;
  unsigned k_;
  std::vector<PolyMap> jac_;
  std::vector<std::vector<double>> trajectory_;
};

MapSigmaResult map_sigma_from(IterateEvaluator& G, std::vector<double> x, double total_degree,
                              const ShopmSettings& settings) {
  const double damping = settings.damping.value_or(0.9);
  std::vector<double> gx = G.value(x);
  double val = euclidean_norm(gx);
  MapSigmaResult r;
  double resid = 0.0;
  for (std::size_t it = 0; it <= settings.max_iters; ++it) {
    if (val == 0.0) break;
    std::vector<double> y = gx;
    for (auto& v : y) v /= val;
    std::vector<double> w = G.transpose_jacobian_times(std::move(y));
    for (auto& v : w) v /= total_degree;
    resid = residual_l2(w, x, val);
    if (resid <= settings.tol * std::max(1.0, val) || it == settings.max_iters) break;
    const double nw = euclidean_norm(w);
    if (nw == 0.0) break;
    bool accepted = false;
    std::vector<double> cand(x.size());
    std::vector<double> cand_g;
    double cand_val = 0.0;
    for (double a = damping; a > 1e-12; a *= 0.5) {
      for (std::size_t i = 0; i < x.size(); ++i) cand[i] = (1.0 - a) * x[i] + a * w[i] / nw;
      normalize(cand);
      cand_g = G.value(cand);
      cand_val = euclidean_norm(cand_g);
      if (cand_val >= val * (1.0 - kAcceptSlack)) {
        accepted = true;
        break;
      }
    }
    if (!accepted || cand == x) break;
    x = std::move(cand);
    gx = std::move(cand_g);
    val = cand_val;
  }
  r.value = val;
  r.residual = resid;
  r.converged = resid <= settings.tol * std::max(1.0, val);
  r.witness = std::move(x);
  return r;
}

}  // namespace

double default_damping(unsigned degree) noexcept { return degree % 2 == 0 ? 0.9 : 0.5; }

ShopmResult shopm_lower_bound(const HomoPoly& f, const ShopmSettings& settings) {
  const std::size_t n = f.dimension();
  if (f.is_zero() || f.degree() == 0) {
    ShopmResult r;
    r.value = f.is_zero() ? 0.0 : std::abs(f.coefficient(0));
    r.witness.assign(n, 0.0);
    r.witness[0] = 1.0;
    r.converged = true;
    return r;
  }
  const PolyMap F = gradient_map(f);
  const std::size_t starts = std::max<std::size_t>(1, settings.starts);
  std::vector<ShopmResult> results(starts);
  parallel_for(starts, settings.threads, [&](std::size_t s) { results[s] = shopm_start(f, F, settings, s); });
  std::size_t best = 0;
  for (std::size_t s = 1; s < starts; ++s) {
    if (results[s].value > results[best].value) best = s;
  }
  return results[best];
}

GridResult grid_oracle(const HomoPoly& f, std::size_t resolution) {
  const std::size_t n = f.dimension();
  if (n > 3) throw std::invalid_argument("grid_oracle: only n <= 3 is supported, got n = " + std::to_string(n));
  GridResult r;
  PolyEvaluator fe(f);
  if (n == 1) {
    r.witness = {1.0};
    r.value = std::abs(fe(r.witness));
    return r;
  }
  constexpr double pi = std::numbers::pi;
  if (n == 2) {
    const std::size_t steps = resolution == 0 ? 2000 : resolution;
    const double h = pi / static_cast<double>(steps);
    auto g = [&](double theta) { return std::abs(fe(circle_point(theta))); };
    double best_theta = 0.0;
    double best = -1.0;
    for (std::size_t i = 0; i < steps; ++i) {
      const double theta = h * static_cast<double>(i);
      const double v = g(theta);
      if (v > best) {
        best = v;
        best_theta = theta;
      }
    }
    const auto [theta, v] = golden_max(g, best_theta - h, best_theta + h);
    if (v > best) {
      best = v;
      best_theta = theta;
    }
    r.value = best;
    r.witness = circle_point(best_theta);
    return r;
  }

  const std::size_t steps = resolution == 0 ? 720 : resolution;
  const double h_theta = (pi / 2.0) / static_cast<double>(steps - 1);
  const double h_phi = 2.0 * pi / static_cast<double>(steps);
  auto g = [&](double theta, double phi) { return std::abs(fe(sphere_point(theta, phi))); };
  double best = -1.0;
  double best_theta = 0.0;
  double best_phi = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    const double theta = h_theta * static_cast<double>(i);
    for (std::size_t k = 0; k < steps; ++k) {
      const double phi = h_phi * static_cast<double>(k);
      const double v = g(theta, phi);
      if (v > best) {
        best = v;
        best_theta = theta;
        best_phi = phi;
      }
    }
  }
  // alternating golden-section passes in a shrinking window around the best
  // grid point
  double w_theta = h_theta;
  double w_phi = h_phi;
  for (int round = 0; round < 6; ++round) {
    const auto [theta, vt] =
        golden_max([&](double t) { return g(t, best_phi); }, best_theta - w_theta, best_theta + w_theta);
    if (vt > best) {
      best = vt;
      best_theta = theta;
    }
    const auto [phi, vp] =
        golden_max([&](double ph) { return g(best_theta, ph); }, best_phi - w_phi, best_phi + w_phi);
    if (vp > best) {
      best = vp;
      best_phi = phi;
    }
    w_theta *= 0.5;
    w_phi *= 0.5;
  }
  r.value = best;
  r.witness = sphere_point(best_theta, best_phi);
  return r;
}

double eigen_residual(const DenseTensor& t, std::span<const double> x, double lambda, EigenKind kind) {
  if (t.order() < 2 || !t.has_equal_trailing_dims() || t.dim(0) != t.dim(1) || x.size() != t.dim(0)) {
    throw std::invalid_argument("eigen_residual: tensor must be n x n x ... x n with n = len(x)");
  }
  const auto y = contract_power(t, x);
  const auto d = t.order();
  std::vector<double> rhs(x.begin(), x.end());
  if (kind == EigenKind::d_eigen) {
    for (auto& v : rhs) v = std::pow(v, static_cast<double>(d - 1));
  }
  return residual_l2(y, rhs, lambda);
}

double eigen_residual(const HomoPoly& f, std::span<const double> x, double lambda, EigenKind kind) {
  if (x.size() != f.dimension()) throw std::invalid_argument("eigen_residual: dimension mismatch");
  const auto y = eval(gradient_map(f), x);
  std::vector<double> rhs(x.begin(), x.end());
  if (kind == EigenKind::d_eigen) {
    for (auto& v : rhs) v = std::pow(v, static_cast<double>(f.degree() - 1));
  }
  return residual_l2(y, rhs, lambda);
}

MapSigmaResult map_sigma_estimate(const PolyMap& F, unsigned iterations, const ShopmSettings& settings,
                                  std::span<const double> warm_start) {
  if (iterations == 0) throw std::invalid_argument("map_sigma_estimate: iterations must be at least 1");
  if (!F.is_square() && iterations > 1) throw std::invalid_argument("map_sigma_estimate: iterates need a square map");
  const std::size_t n = F.input_dim();
  const double total_degree = std::pow(static_cast<double>(F.degree()), static_cast<double>(iterations));
  const std::size_t starts = std::max<std::size_t>(1, settings.starts);
  const bool warm = warm_start.size() == n && euclidean_norm(warm_start) > 0.0;
  std::vector<MapSigmaResult> results(starts + (warm ? 1 : 0));
  parallel_for(results.size(), settings.threads, [&](std::size_t s) {
    IterateEvaluator G(F, iterations);
    std::vector<double> x;
    if (warm && s == 0) {
      x.assign(warm_start.begin(), warm_start.end());
      normalize(x);
    } else {
      CounterRng rng(settings.seed, warm ? s - 1 : s);
      x = random_unit_vector(rng, n);
    }
    if (total_degree == 0.0 || F.degree() == 0) {
      results[s].value = euclidean_norm(G.value(x));
      results[s].witness = x;
      results[s].converged = true;
      return;
    }
    results[s] = map_sigma_from(G, std::move(x), total_degree, settings);
  });
  std::size_t best = 0;
  for (std::size_t s = 1; s < results.size(); ++s) {
    if (results[s].value > results[best].value) best = s;
  }
  return results[best];
}

}  // namespace specbound
