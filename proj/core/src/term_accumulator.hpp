#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "specbound/homo_poly.hpp"
#include "specbound/multi_index.hpp"

namespace specbound::detail {

// Collects coefficient contributions for monomials of a fixed degree in n
// variables. Small monomial spaces use a dense array addressed by the
// mixed-radix key sum_i j_i R^(n-2-i) (radix R = degree + 1, last exponent
// implied); since that key is additive, products of monomials map to sums of
// keys. Larger spaces fall back to an ordered map.
class TermAccumulator {
 public:
  TermAccumulator(std::size_t n, unsigned degree, std::size_t expected_terms);

  bool dense() const noexcept { return !dense_values_.empty(); }

  std::uint64_t key(std::span<const std::uint32_t> exps) const noexcept {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i + 1 < n_; ++i) k += exps[i] * strides_[i];
    return k;
  }

  void add_at(std::uint64_t key, double v) noexcept { dense_values_[key] += v; }
  void add(std::span<const std::uint32_t> exps, double v);
  void add_scaled(const HomoPoly& f, double s);

  // Terms exceeding `budget` raise ResourceLimitError with `context` in the
  // message.
  HomoPoly finish(std::size_t budget, const std::string& context);

 private:
  std::size_t n_;
  unsigned degree_;
  std::vector<std::uint64_t> strides_;
  std::vector<double> dense_values_;
  std::map<std::vector<std::uint32_t>, double, GradedLexBefore> sparse_;
};

void check_budget(std::size_t terms, std::size_t budget, const std::string& context);

}  // namespace specbound::detail
