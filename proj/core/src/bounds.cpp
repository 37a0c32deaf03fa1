#include "specbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "specbound/errors.hpp"
#include "specbound/poly.hpp"
#include "specbound/summation.hpp"
#include "specbound/tensor.hpp"

namespace specbound {
namespace {

std::vector<unsigned> doubling_schedule(unsigned kmax) {
  if (kmax == 0) throw std::invalid_argument("bound schedule: kmax must be at least 1");
  std::vector<unsigned> ks;
  for (unsigned k = 1; k <= kmax; k *= 2) {
    ks.push_back(k);
    if (k > kmax / 2) break;
  }
  return ks;
}

BoundSequence degenerate_sequence(BoundMethod method, std::vector<unsigned> ks, bool certified) {
  BoundSequence s;
  s.method = method;
  s.values.assign(ks.size(), 0.0);
  s.budget_used.assign(ks.size(), 0);
  s.ks = std::move(ks);
  s.certified = certified;
  s.degenerate = true;
  s.terminated_by = Termination::kmax;
  return s;
}

std::vector<unsigned> linear_schedule(unsigned kmax) {
  if (kmax == 0) throw std::invalid_argument("bound schedule: kmax must be at least 1");
  std::vector<unsigned> ks(kmax);
  for (unsigned k = 1; k <= kmax; ++k) ks[k - 1] = k;
  return ks;
}

void check_iterable_map(const PolyMap& F, const char* who) {
  if (!F.is_square()) {
    throw std::invalid_argument(std::string(who) + ": map must be square, got " + std::to_string(F.output_dim()) +
                                " outputs for " + std::to_string(F.input_dim()) + " inputs");
  }
  if (F.degree() < 2) {
    throw std::invalid_argument(std::string(who) + ": map degree must be at least 2 (use matrix_power_bounds for "
                                "linear maps), got " + std::to_string(F.degree()));
  }
}

// Row-major n x n product.
std::vector<double> square_matrix_product(const std::vector<double>& a, const std::vector<double>& b, std::size_t n) {
  std::vector<double> c(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      CompensatedSum s;
      for (std::size_t l = 0; l < n; ++l) s.add(a[i * n + l] * b[l * n + j]);
      c[i * n + j] = s.value();
    }
  }
  return c;
}

}  // namespace

std::string to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::rho1:
      return "rho1";
    case BoundMethod::rho2:
      return "rho2";
    case BoundMethod::rho3:
      return "rho3";
    case BoundMethod::matrix_power:
      return "matrix_power";
  }
  return "unknown";
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::converged:
      return "converged";
    case Termination::budget:
      return "budget";
    case Termination::kmax:
      return "kmax";
  }
  return "unknown";
}

double BoundSequence::best() const noexcept {
  double b = std::numeric_limits<double>::infinity();
  for (double v : values) b = std::min(b, v);
  return b;
}

BoundSequence rho1_bounds(const HomoPoly& f, unsigned kmax, std::size_t budget, double conv_tol) {
  const auto ks = doubling_schedule(kmax);
  if (f.is_zero()) return degenerate_sequence(BoundMethod::rho1, ks, true);

  BoundSequence s;
  s.method = BoundMethod::rho1;
  s.terminated_by = Termination::kmax;
  const double c = hs_norm(f);
  // g is f^k / ||f^k||_HS; value_k = ||f^k||^{1/k}, and
  // value_{2k} = value_k * ||g^2||^{1/(2k)}.
  HomoPoly g = f.scaled(1.0 / c);
  double value = c;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const unsigned k = ks[i];
    s.ks.push_back(k);
    s.values.push_back(value);
    s.budget_used.push_back(g.num_terms());
    if (conv_tol > 0.0 && i > 0 && std::abs(s.values[i - 1] - value) <= conv_tol * value) {
      s.terminated_by = Termination::converged;
      break;
    }
    if (i + 1 == ks.size()) break;
    try {
      HomoPoly sq = multiply(g, g, budget);
      const double nsq = hs_norm(sq);
      value *= std::pow(nsq, 1.0 / (2.0 * k));
      g = sq.scaled(1.0 / nsq);
    } catch (const ResourceLimitError& e) {
      s.terminated_by = Termination::budget;
      s.note = "power k=" + std::to_string(2 * k) + ": " + e.what();
      break;
    }
  }
  return s;
}

BoundSequence rho2_bounds(const PolyMap& F, unsigned kmax, std::size_t budget) {
  check_iterable_map(F, "rho2_bounds");
  const auto ks = linear_schedule(kmax);
  const double c = hs_norm(F);
  if (c == 0.0) return degenerate_sequence(BoundMethod::rho2, ks, false);

  BoundSequence s;
  s.method = BoundMethod::rho2;
  s.certified = false;
  s.terminated_by = Termination::kmax;
  const double p = F.degree();
  const PolyMap unit = F.scaled(1.0 / c);
  // G is H_k / ||H_k||_HS for the iterates H_k of the normalized map; log_norm
  // tracks log ||H_k||_HS, so that H_{k+1} = ||H_k||^p * unit(G).
  // ||unit||_HS is 1 up to rounding; taking it as exactly 1 keeps value_1 = c
  PolyMap G = unit;
  double log_norm = 0.0;
  for (unsigned k : ks) {
    if (k > 1) {
      try {
        PolyMap next = compose_map(unit, G, budget);
        const double nn = hs_norm(next);
        if (nn == 0.0) {
          log_norm = -std::numeric_limits<double>::infinity();
        } else {
          log_norm = p * log_norm + std::log(nn);
          G = next.scaled(1.0 / nn);
        }
      } catch (const ResourceLimitError& e) {
        s.terminated_by = Termination::budget;
        s.note = "iterate k=" + std::to_string(k) + ": " + e.what();
        break;
      }
    }
    const double exponent = (p - 1.0) / (std::pow(p, static_cast<double>(k)) - 1.0);
    s.ks.push_back(k);
    s.values.push_back(c * std::exp(log_norm * exponent));
    s.budget_used.push_back(G.num_terms());
    if (std::isinf(log_norm)) break;
  }
  return s;
}

BoundSequence rho2_bounds(const HomoPoly& f, unsigned kmax, std::size_t budget) {
  if (f.degree() < 3) {
    throw std::invalid_argument("rho2_bounds: polynomial degree must be at least 3, got " +
                                std::to_string(f.degree()));
  }
  BoundSequence s = rho2_bounds(gradient_map(f), kmax, budget);
  s.certified = true;
  return s;
}

BoundSequence rho3_diagnostic(const PolyMap& F, unsigned kmax, const ShopmSettings& settings) {
  check_iterable_map(F, "rho3_diagnostic");
  const auto ks = linear_schedule(kmax);
  const double c = hs_norm(F);
  if (c == 0.0) return degenerate_sequence(BoundMethod::rho3, ks, false);

  BoundSequence s;
  s.method = BoundMethod::rho3;
  s.certified = false;
  s.terminated_by = Termination::kmax;
  const double p = F.degree();
  const PolyMap unit = F.scaled(1.0 / c);
  std::vector<double> warm;
  for (unsigned k : ks) {
    const MapSigmaResult r = map_sigma_estimate(unit, k, settings, warm);
    warm = r.witness;
    const double exponent = (p - 1.0) / (std::pow(p, static_cast<double>(k)) - 1.0);
    s.ks.push_back(k);
    s.values.push_back(c * std::pow(r.value, exponent));
    s.budget_used.push_back(0);
  }
  return s;
}

BoundSequence matrix_power_bounds(const DenseTensor& t, unsigned kmax) {
  if (t.order() != 2 || t.dim(0) != t.dim(1)) throw std::invalid_argument("matrix_power_bounds: square matrix required");
  if (!is_symmetric(t)) throw std::invalid_argument("matrix_power_bounds: matrix is not symmetric");
  const auto ks = doubling_schedule(kmax);
  const double c = hs_norm(t);
  if (c == 0.0) return degenerate_sequence(BoundMethod::matrix_power, ks, true);

  BoundSequence s;
  s.method = BoundMethod::matrix_power;
  s.terminated_by = Termination::kmax;
  const std::size_t n = t.dim(0);
  std::vector<double> g(t.data().begin(), t.data().end());
  for (auto& v : g) v /= c;
  double value = c;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    s.ks.push_back(ks[i]);
    s.values.push_back(value);
    s.budget_used.push_back(n * n);
    if (i + 1 == ks.size()) break;
    auto sq = square_matrix_product(g, g, n);
    const double nsq = euclidean_norm(sq);
    if (nsq == 0.0) {
      // nilpotent symmetric matrices are zero, so this only guards rounding
      s.ks.push_back(ks[i + 1]);
      s.values.push_back(0.0);
      s.budget_used.push_back(n * n);
      break;
    }
    value *= std::pow(nsq, 1.0 / (2.0 * ks[i]));
    for (auto& v : sq) v /= nsq;
    g = std::move(sq);
  }
  return s;
}

double matrix_bound_d3(const DenseTensor& t) {
  if (t.order() != 3) throw std::invalid_argument("matrix_bound_d3: order-3 tensor required");
  const std::size_t n12 = t.dim(0) * t.dim(1);
  const std::size_t n3 = t.dim(2);
  const auto data = t.data();
  std::vector<double> m(n3 * n3, 0.0);
  for (std::size_t k = 0; k < n3; ++k) {
    for (std::size_t l = k; l < n3; ++l) {
      CompensatedSum s;
      for (std::size_t ij = 0; ij < n12; ++ij) s.add(data[ij * n3 + k] * data[ij * n3 + l]);
      m[k * n3 + l] = m[l * n3 + k] = s.value();
    }
  }
  // start from the column with the largest diagonal entry
  std::size_t kstar = 0;
  for (std::size_t k = 1; k < n3; ++k) {
    if (m[k * n3 + k] > m[kstar * n3 + kstar]) kstar = k;
  }
  if (m[kstar * n3 + kstar] == 0.0) return 0.0;
  std::vector<double> x(n3);
  for (std::size_t k = 0; k < n3; ++k) x[k] = m[k * n3 + kstar];
  auto apply = [&](const std::vector<double>& v) {
    std::vector<double> y(n3);
    for (std::size_t k = 0; k < n3; ++k) y[k] = compensated_dot(std::span(m).subspan(k * n3, n3), v);
    return y;
  };
  double nx = euclidean_norm(x);
  for (auto& v : x) v /= nx;
  double rayleigh = 0.0;
  constexpr std::size_t kMaxIters = 100000;
  for (std::size_t it = 0; it < kMaxIters; ++it) {
    std::vector<double> y = apply(x);
    const double next = compensated_dot(x, y);
    const double ny = euclidean_norm(y);
    if (ny == 0.0) break;
    for (std::size_t k = 0; k < n3; ++k) x[k] = y[k] / ny;
    const bool done = it > 0 && std::abs(next - rayleigh) <= 1e-12 * next;
    rayleigh = next;
    if (done) break;
  }
  // Rayleigh quotient at the final iterate
  rayleigh = std::max(rayleigh, compensated_dot(x, apply(x)));
  return std::sqrt(std::max(0.0, rayleigh));
}

HomoPoly tau_polynomial(const DenseTensor& s) {
  if (s.order() < 3) throw std::invalid_argument("tau_polynomial: order must be at least 3");
  if (!is_symmetric(s)) throw std::invalid_argument("tau_polynomial: tensor is not symmetric");
  const std::size_t n = s.dim(0);
  const std::size_t d = s.order();
  const auto q = static_cast<unsigned>(d - 2);
  std::size_t trailing = 1;
  for (std::size_t i = 0; i < q; ++i) trailing *= n;
  const auto data = s.data();

  HomoPoly tau(n, 2 * q);
  std::vector<std::size_t> idx(q);
  for (std::size_t ab = 0; ab < n * n; ++ab) {
    std::vector<std::pair<MultiIndex, double>> terms;
    terms.reserve(trailing);
    std::fill(idx.begin(), idx.end(), 0);
    for (std::size_t r = 0; r < trailing; ++r) {
      const double v = data[ab * trailing + r];
      if (v != 0.0) {
        std::vector<std::uint32_t> e(n, 0);
        for (auto i : idx) ++e[i];
        terms.emplace_back(MultiIndex(std::move(e)), v);
      }
      for (std::size_t m = q; m-- > 0;) {
        if (++idx[m] < n) break;
        idx[m] = 0;
      }
    }
    const HomoPoly entry = HomoPoly::from_terms(n, q, std::move(terms));
    if (!entry.is_zero()) tau = add(tau, multiply(entry, entry));
  }
  return tau;
}

double tau_tilde_bound(const DenseTensor& s, std::size_t budget) {
  const HomoPoly tau = tau_polynomial(s);
  if (tau.is_zero()) return 0.0;
  const double c = hs_norm(tau);
  const HomoPoly unit = tau.scaled(1.0 / c);
  double best = c;
  HomoPoly g = unit;
  for (unsigned k = 2; k <= 4; ++k) {
    try {
      g = multiply(g, unit, budget);
    } catch (const ResourceLimitError&) {
      break;
    }
    best = std::min(best, c * std::pow(hs_norm(g), 1.0 / k));
  }
  return std::sqrt(best);
}

CollatzWielandtResult collatz_wielandt_bound(const DenseTensor& t, std::span<const double> x0, std::size_t max_iters,
                                             double tol) {
  if (t.order() < 2 || !t.is_equidimensional()) {
    throw std::invalid_argument("collatz_wielandt_bound: equidimensional tensor of order >= 2 required");
  }
  const std::size_t n = t.dim(0);
  const double e = static_cast<double>(t.order() - 1);
  std::vector<double> x(n, 1.0);
  if (!x0.empty()) {
    if (x0.size() != n) throw std::invalid_argument("collatz_wielandt_bound: x0 has the wrong length");
    for (double v : x0) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("collatz_wielandt_bound: x0 must be strictly positive");
      }
    }
    x.assign(x0.begin(), x0.end());
  }
  auto normalize_l1 = [](std::vector<double>& v) {
    CompensatedSum s;
    for (double a : v) s.add(a);
    const double total = s.value();
    for (auto& a : v) a /= total;
  };
  normalize_l1(x);

  const DenseTensor a = abs(t);
  CollatzWielandtResult r;
  r.bound = std::numeric_limits<double>::infinity();
  if (hs_norm(a) == 0.0) {
    r.bound = 0.0;
    r.spread = 1.0;
    r.witness = x;
    r.converged = true;
    return r;
  }
  constexpr std::size_t kStallWindow = 50;
  std::size_t stalled = 0;
  double prev_max = 0.0;
  double prev_min = 0.0;
  for (std::size_t it = 0; it < std::max<std::size_t>(1, max_iters); ++it) {
    const auto y = contract_power(a, x);
    double qmax = 0.0;
    double qmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double q = y[i] / std::pow(x[i], e);
      qmax = std::max(qmax, q);
      qmin = std::min(qmin, q);
    }
    r.bound = std::min(r.bound, qmax);
    r.lower = qmin;
    r.spread = qmin > 0.0 ? qmax / qmin : std::numeric_limits<double>::infinity();
    r.witness = x;
    r.iterations = it + 1;
    if (r.spread - 1.0 <= tol) {
      r.converged = true;
      break;
    }
    if (it > 0 && std::abs(qmax - prev_max) <= tol * qmax && std::abs(qmin - prev_min) <= tol * qmax) {
      if (++stalled >= kStallWindow) {
        r.converged = true;
        break;
      }
    } else {
      stalled = 0;
    }
    prev_max = qmax;
    prev_min = qmin;
    std::vector<double> next(n);
    bool positive = true;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = std::pow(y[i], 1.0 / e);
      positive = positive && next[i] > 0.0;
    }
    if (!positive) break;  // the iterate left the open positive cone
    normalize_l1(next);
    x = std::move(next);
  }
  return r;
}

}  // namespace specbound
