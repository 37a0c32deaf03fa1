#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "specbound/multi_index.hpp"

namespace specbound {

inline constexpr std::size_t kDefaultMonomialBudget = 2'000'000;

/// Sparse homogeneous polynomial of degree p in n variables.
///
/// Stores monomial coefficients c_j (the coefficient of x^j in the usual
/// expansion), not symmetric-tensor entries; the two are related by
/// c_j = (p! / j!) * phi_j. Terms are kept in graded-lex order and exact zeros
/// are never stored. The zero polynomial keeps its formal (n, p).
class HomoPoly {
 public:
  /// Zero polynomial in n >= 1 variables with formal degree p.
  HomoPoly(std::size_t n, unsigned p);

  /// Builds from an unordered term list. Duplicate indices are summed and
  /// resulting zeros dropped. Every index must have length n and degree p.
  static HomoPoly from_terms(std::size_t n, unsigned p, std::vector<std::pair<MultiIndex, double>> terms);
  static HomoPoly monomial(const MultiIndex& j, double c);
  /// The linear form sum_i c_i x_i.
  static HomoPoly linear_form(std::span<const double> c);
  /// The degree-0 polynomial with value c, in n variables.
  static HomoPoly constant(std::size_t n, double c);

  std::size_t dimension() const noexcept { return n_; }
  unsigned degree() const noexcept { return p_; }
  std::size_t num_terms() const noexcept { return coeffs_.size(); }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  std::span<const std::uint32_t> exponents(std::size_t term) const noexcept {
    return {exps_.data() + term * n_, n_};
  }
  double coefficient(std::size_t term) const noexcept { return coeffs_[term]; }
  std::span<const double> coefficients() const noexcept { return coeffs_; }
  /// Coefficient of x^j, zero when absent.
  double coefficient(const MultiIndex& j) const;

  /// Symmetric-tensor entry phi_j = c_j * j! / p! of a stored term.
  double tensor_entry(std::size_t term) const;

  HomoPoly scaled(double s) const;
  HomoPoly operator-() const { return scaled(-1.0); }

  friend bool operator==(const HomoPoly&, const HomoPoly&) = default;

  /// Takes flat exponent storage already in graded-lex order with nonzero
  /// coefficients. Only checked in debug builds.
  static HomoPoly from_sorted(std::size_t n, unsigned p, std::vector<std::uint32_t> exps, std::vector<double> coeffs);

 private:
  std::size_t n_;
  unsigned p_;
  std::vector<std::uint32_t> exps_;
  std::vector<double> coeffs_;
};

}  // namespace specbound
