#pragma once

#include <span>
#include <vector>

#include "specbound/homo_poly.hpp"

namespace specbound {

/// Homogeneous polynomial map R^n -> R^m whose m coordinates share degree p.
/// Equivalent to a tensor in R^m (x) S^p R^n that is symmetric in its
/// trailing p modes.
class PolyMap {
 public:
  /// All coordinates must share dimension and degree; at least one is required.
  explicit PolyMap(std::vector<HomoPoly> coords);

  static PolyMap identity(std::size_t n);
  /// Linear map x -> A x for a row-major m x n matrix.
  static PolyMap linear(std::size_t m, std::size_t n, std::span<const double> row_major);

  std::size_t input_dim() const noexcept { return coords_.front().dimension(); }
  std::size_t output_dim() const noexcept { return coords_.size(); }
  unsigned degree() const noexcept { return coords_.front().degree(); }
  bool is_square() const noexcept { return input_dim() == output_dim(); }

  const HomoPoly& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const HomoPoly> coords() const noexcept { return coords_; }
  std::size_t num_terms() const noexcept;

  PolyMap scaled(double s) const;

  friend bool operator==(const PolyMap&, const PolyMap&) = default;

 private:
  std::vector<HomoPoly> coords_;
};

}  // namespace specbound
