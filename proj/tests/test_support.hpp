#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "specbound/dense_tensor.hpp"
#include "specbound/homo_poly.hpp"
#include "specbound/multi_index.hpp"
#include "specbound/poly_map.hpp"

namespace specbound::testing {

using Rng = std::mt19937_64;

inline double factorial(unsigned k) {
  double f = 1.0;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f;
}

/// All exponent vectors of length n summing to p, in no particular order.
inline std::vector<std::vector<std::uint32_t>> all_exponents(std::size_t n, unsigned p) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur(n, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == n) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      cur[i] = e;
      self(self, i + 1, left - e);
    }
  };
  rec(rec, 0, p);
  return out;
}

inline double relative_gap(double a, double b) { return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)}); }

inline double gaussian(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

/// Dense random polynomial with standard normal coefficients.
inline HomoPoly random_poly(Rng& rng, std::size_t n, unsigned p) {
  std::vector<std::pair<MultiIndex, double>> terms;
  for (auto& e : all_exponents(n, p)) terms.emplace_back(MultiIndex(e), gaussian(rng));
  return HomoPoly::from_terms(n, p, std::move(terms));
}

inline PolyMap random_map(Rng& rng, std::size_t m, std::size_t n, unsigned p) {
  std::vector<HomoPoly> coords;
  for (std::size_t i = 0; i < m; ++i) coords.push_back(random_poly(rng, n, p));
  return PolyMap(std::move(coords));
}

inline std::vector<double> random_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = gaussian(rng);
  return v;
}

inline std::vector<double> random_unit(Rng& rng, std::size_t n) {
  auto v = random_vector(rng, n);
  double s = 0.0;
  for (double x : v) s += x * x;
  for (auto& x : v) x /= std::sqrt(s);
  return v;
}

/// Row-major random orthogonal matrix (Q factor of a Gaussian matrix).
inline std::vector<double> random_orthogonal(Rng& rng, std::size_t n) {
  Eigen::MatrixXd a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = gaussian(rng);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = q(i, j);
  return out;
}

/// Symmetric tensor built entry by entry from the monomial coefficients,
/// independently of the library's conversion routine.
inline DenseTensor naive_tensor(const HomoPoly& f) {
  const std::size_t n = f.dimension();
  const unsigned p = f.degree();
  DenseTensor t = DenseTensor::cube(n, p);
  std::vector<std::size_t> idx(p);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    t.unravel(flat, idx);
    std::vector<std::uint32_t> e(n, 0);
    for (auto i : idx) ++e[i];
    double count = factorial(p);
    for (auto x : e) count /= factorial(x);
    t.data()[flat] = f.coefficient(MultiIndex(e)) / count;
  }
  return t;
}

inline double frobenius(const DenseTensor& t) {
  long double s = 0.0L;
  for (double v : t.data()) s += static_cast<long double>(v) * v;
  return static_cast<double>(std::sqrt(s));
}

/// Direct evaluation sum c_j x^j with std::pow, no shared code paths.
inline double naive_eval(const HomoPoly& f, const std::vector<double>& x) {
  long double s = 0.0L;
  for (std::size_t t = 0; t < f.num_terms(); ++t) {
    long double term = f.coefficient(t);
    const auto e = f.exponents(t);
    for (std::size_t i = 0; i < x.size(); ++i) term *= std::pow(static_cast<long double>(x[i]), e[i]);
    s += term;
  }
  return static_cast<double>(s);
}

/// Symmetric order-d tensor with Gaussian entries, averaged by hand over all
/// permutations of each index tuple.
inline DenseTensor random_symmetric_tensor(Rng& rng, std::size_t n, std::size_t d) {
  DenseTensor raw = DenseTensor::cube(n, d);
  for (auto& v : raw.data()) v = gaussian(rng);
  DenseTensor out = DenseTensor::cube(n, d);
  std::vector<std::size_t> idx(d);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out.unravel(flat, idx);
    std::sort(idx.begin(), idx.end());
    double sum = 0.0;
    std::size_t count = 0;
    do {
      sum += raw(idx);
      ++count;
    } while (std::next_permutation(idx.begin(), idx.end()));
    out.data()[flat] = sum / static_cast<double>(count);
  }
  return out;
}

/// Largest |eigenvalue| of a symmetric row-major matrix via Eigen.
inline double eigen_spectral_radius(std::size_t n, const std::vector<double>& a) {
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a[i * n + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// Brute-force max |f| on the unit circle by a fine angular scan.
inline double circle_max(const HomoPoly& f, std::size_t steps = 200000) {
  double best = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    const double th = std::numbers::pi * static_cast<double>(i) / static_cast<double>(steps);
    best = std::max(best, std::abs(naive_eval(f, {std::cos(th), std::sin(th)})));
  }
  return best;
}

}  // namespace specbound::testing
