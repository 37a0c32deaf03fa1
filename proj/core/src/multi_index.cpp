#include "specbound/multi_index.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace specbound {
namespace {

constexpr std::size_t kLogFactorialTableSize = 4096;

const std::array<double, kLogFactorialTableSize>& log_factorial_table() {
  static const auto table = [] {
    std::array<double, kLogFactorialTableSize> t{};
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = std::lgamma(static_cast<double>(k) + 1.0);
    return t;
  }();
  return table;
}

double log_factorial(std::uint64_t k) {
  if (k < kLogFactorialTableSize) return log_factorial_table()[k];
  return std::lgamma(static_cast<double>(k) + 1.0);
}

}  // namespace

MultiIndex MultiIndex::unit(std::size_t n, std::size_t i) {
  if (i >= n) throw std::invalid_argument("MultiIndex::unit: index out of range");
  std::vector<std::uint32_t> e(n, 0);
  e[i] = 1;
  return MultiIndex(std::move(e));
}

unsigned MultiIndex::degree() const noexcept {
  return std::accumulate(exps_.begin(), exps_.end(), 0U);
}

bool graded_lex_before(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) noexcept {
  const auto da = std::accumulate(a.begin(), a.end(), 0ULL);
  const auto db = std::accumulate(b.begin(), b.end(), 0ULL);
  if (da != db) return da > db;
  const std::size_t len = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < len; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return a.size() > b.size();
}

double multinomial_weight(std::span<const std::uint32_t> j, unsigned p) {
  std::uint64_t total = 0;
  double log_w = 0.0;
  for (auto e : j) {
    total += e;
    log_w += log_factorial(e);
  }
  if (total != p) {
    throw std::invalid_argument("multinomial_weight: |j| = " + std::to_string(total) +
                                " does not match degree " + std::to_string(p));
  }
  return std::exp(log_w - log_factorial(p));
}

double multinomial_weight(const MultiIndex& j, unsigned p) { return multinomial_weight(j.exponents(), p); }

double multinomial_count(std::span<const std::uint32_t> j) {
  constexpr std::uint64_t kExactLimit = 1ULL << 53;
  std::uint64_t running = 0;
  std::uint64_t value = 1;
  bool exact = true;
  for (auto e : j) {
    // multiply by C(running + e, e), built incrementally so every step is an
    // exact integer division
    for (std::uint32_t t = 1; t <= e && exact; ++t) {
      // value * (running + t) is divisible by t; cancel the gcd first so the
      // product stays in range
      const std::uint64_t g = std::gcd(value, static_cast<std::uint64_t>(t));
      const std::uint64_t factor = (running + t) / (t / g);
      const std::uint64_t base = value / g;
      if (base > (kExactLimit - 1) / factor) {
        exact = false;
        break;
      }
      value = base * factor;
    }
    running += e;
    if (!exact) break;
  }
  if (exact) return static_cast<double>(value);
  std::uint64_t total = 0;
  double log_c = 0.0;
  for (auto e : j) {
    total += e;
    log_c -= log_factorial(e);
  }
  return std::exp(log_c + log_factorial(total));
}

std::size_t monomial_count(std::size_t n, unsigned p) noexcept {
  if (n == 0) return p == 0 ? 1 : 0;
  // C(n - 1 + p, n - 1), accumulated with the smaller of the two lower indices
  const std::uint64_t top = n - 1 + static_cast<std::uint64_t>(p);
  const std::uint64_t r = std::min<std::uint64_t>(n - 1, p);
  std::uint64_t c = 1;
  for (std::uint64_t t = 1; t <= r; ++t) {
    // c * (top - r + t) is divisible by t
    const std::uint64_t g = std::gcd(c, t);
    const std::uint64_t factor = (top - r + t) / (t / g);
    const std::uint64_t base = c / g;
    if (base > std::numeric_limits<std::uint64_t>::max() / factor) return std::numeric_limits<std::size_t>::max();
    c = base * factor;
  }
  return static_cast<std::size_t>(c);
}

}  // namespace specbound
