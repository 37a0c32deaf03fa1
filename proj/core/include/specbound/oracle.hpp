#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "specbound/dense_tensor.hpp"
#include "specbound/homo_poly.hpp"
#include "specbound/poly_map.hpp"

namespace specbound {

struct ShopmSettings {
  std::size_t starts = 32;
  std::size_t max_iters = 2000;
  /// Fixed-point residual at which a start counts as converged.
  double tol = 1e-10;
  /// Step weight of the new direction; unset means default_damping(degree).
  std::optional<double> damping;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// 0.9 for even degree, 0.5 for odd degree.
double default_damping(unsigned degree) noexcept;

struct ShopmResult {
  double value = 0.0;            // best |f(x)| on the unit sphere
  std::vector<double> witness;   // unit vector attaining `value`
  double residual = 0.0;         // ||F(x) - f(x) x||_2 at the witness
  bool converged = false;
  std::size_t best_start = 0;
};

/// Damped symmetric power iteration on F = gradient_map(f):
///   x <- normalize((1 - a) x + a s F(x) / ||F(x)||),  s = sign f(x),
/// accepting a step only when |f| does not decrease (the weight a is halved
/// until it does). Returns a lower bound on ||f||_sigma.
ShopmResult shopm_lower_bound(const HomoPoly& f, const ShopmSettings& settings = {});

struct GridResult {
  double value = 0.0;
  std::vector<double> witness;
};

/// Exhaustive search of |f| over the unit sphere for n <= 3. The grid has
/// `resolution` points on a half circle (n = 2, default 2000) or
/// resolution^2 points on a hemisphere (n = 3, default 720), followed by a
/// golden-section refinement around the best grid point.
GridResult grid_oracle(const HomoPoly& f, std::size_t resolution = 0);

enum class EigenKind {
  /// T x^{d-1} = lambda x^{[d-1]} (entrywise power), x normalized in l_d.
  d_eigen,
  /// T x^{d-1} = lambda x, x normalized in l_2 (spectral-norm witnesses).
  l2_fixed_point,
};

/// ||T x (x)^{d-1} x - lambda x^{[d-1]}||_2 or ||T x (x)^{d-1} x - lambda x||_2.
double eigen_residual(const DenseTensor& t, std::span<const double> x, double lambda, EigenKind kind);
/// Same quantities with T x (x)^{p-1} x = F(x) = gradient_map(f)(x).
double eigen_residual(const HomoPoly& f, std::span<const double> x, double lambda, EigenKind kind);

struct MapSigmaResult {
  double value = 0.0;            // best ||G(x)||_2 over unit x
  std::vector<double> witness;
  double residual = 0.0;
  bool converged = false;
};

/// Lower estimate of ||G||_sigma = max ||G(x)||_2 / ||x||^P for the k-fold
/// iterate G = F o ... o F (k >= 1), evaluated by nesting F with the chain rule
/// rather than by expanding G. Alternates y = G(x)/||G(x)|| with
/// x <- normalize(J_G(x)^T y) (the two-block power step), damped and
/// monotone like shopm_lower_bound.
MapSigmaResult map_sigma_estimate(const PolyMap& F, unsigned iterations, const ShopmSettings& settings = {},
                                  std::span<const double> warm_start = {});

}  // namespace specbound
