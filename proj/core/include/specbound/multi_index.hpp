#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace specbound {

/// Exponent vector (j_1, ..., j_n) of a monomial x_1^{j_1} ... x_n^{j_n}.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<std::uint32_t> exponents) : exps_(std::move(exponents)) {}
  MultiIndex(std::initializer_list<std::uint32_t> exponents) : exps_(exponents) {}
  explicit MultiIndex(std::span<const std::uint32_t> exponents) : exps_(exponents.begin(), exponents.end()) {}

  /// All-zero index of length n.
  static MultiIndex zero(std::size_t n) { return MultiIndex(std::vector<std::uint32_t>(n, 0)); }
  /// Unit index e_i of length n.
  static MultiIndex unit(std::size_t n, std::size_t i);

  std::size_t size() const noexcept { return exps_.size(); }
  unsigned degree() const noexcept;
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::span<const std::uint32_t> exponents() const noexcept { return exps_; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<std::uint32_t> exps_;
};

/// Canonical graded-lex order: higher total degree first, then
/// lexicographically larger exponent vectors first (x1^2, x1 x2, x2^2).
bool graded_lex_before(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) noexcept;

struct GradedLexBefore {
  bool operator()(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) const noexcept {
    return graded_lex_before(a, b);
  }
  bool operator()(const MultiIndex& a, const MultiIndex& b) const noexcept {
    return graded_lex_before(a.exponents(), b.exponents());
  }
  bool operator()(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const noexcept {
    return graded_lex_before(a, b);
  }
};

/// Reciprocal multinomial j_1! ... j_n! / p!, evaluated in log space.
/// Throws std::invalid_argument when |j| != p.
double multinomial_weight(std::span<const std::uint32_t> j, unsigned p);
double multinomial_weight(const MultiIndex& j, unsigned p);

/// Multinomial p! / (j_1! ... j_n!) with p = |j|. Exact (built from integer
/// binomials) while the value fits in 2^53; log-gamma otherwise.
double multinomial_count(std::span<const std::uint32_t> j);

/// Number of monomials of degree p in n variables, C(n+p-1, p), saturating
/// at SIZE_MAX.
std::size_t monomial_count(std::size_t n, unsigned p) noexcept;

}  // namespace specbound
