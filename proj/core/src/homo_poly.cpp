#include "specbound/homo_poly.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "specbound/errors.hpp"
#include "term_accumulator.hpp"

namespace specbound {
namespace detail {
namespace {

constexpr std::uint64_t kMaxDenseSlots = 1ULL << 22;

// R^(n-1), saturating just above kMaxDenseSlots.
std::uint64_t dense_slot_count(std::size_t n, unsigned degree) {
  std::uint64_t slots = 1;
  const std::uint64_t radix = static_cast<std::uint64_t>(degree) + 1;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    slots *= radix;
    if (slots > kMaxDenseSlots) return kMaxDenseSlots + 1;
  }
  return slots;
}

}  // namespace

void check_budget(std::size_t terms, std::size_t budget, const std::string& context) {
  if (terms > budget) {
    throw ResourceLimitError(context + ": " + std::to_string(terms) + " monomials exceed budget of " +
                                 std::to_string(budget),
                             terms, budget);
  }
}

TermAccumulator::TermAccumulator(std::size_t n, unsigned degree, std::size_t expected_terms)
    : n_(n), degree_(degree) {
  const std::uint64_t slots = dense_slot_count(n, degree);
  const std::uint64_t expected = std::min<std::uint64_t>(expected_terms, monomial_count(n, degree));
  if (slots <= kMaxDenseSlots && slots <= 32 * expected + 4096) {
    strides_.assign(n_ > 0 ? n_ - 1 : 0, 1);
    const std::uint64_t radix = static_cast<std::uint64_t>(degree) + 1;
    for (std::size_t i = strides_.size(); i-- > 1;) strides_[i - 1] = strides_[i] * radix;
    dense_values_.assign(slots, 0.0);
  }
}

void TermAccumulator::add(std::span<const std::uint32_t> exps, double v) {
  if (dense()) {
    dense_values_[key(exps)] += v;
  } else {
    sparse_[std::vector<std::uint32_t>(exps.begin(), exps.end())] += v;
  }
}

void TermAccumulator::add_scaled(const HomoPoly& f, double s) {
  for (std::size_t t = 0; t < f.num_terms(); ++t) add(f.exponents(t), s * f.coefficient(t));
}

HomoPoly TermAccumulator::finish(std::size_t budget, const std::string& context) {
  std::vector<std::uint32_t> exps;
  std::vector<double> coeffs;
  if (dense()) {
    const auto nonzero = static_cast<std::size_t>(
        std::count_if(dense_values_.begin(), dense_values_.end(), [](double v) { return v != 0.0; }));
    check_budget(nonzero, budget, context);
    exps.reserve(nonzero * n_);
    coeffs.reserve(nonzero);
    const std::uint64_t radix = static_cast<std::uint64_t>(degree_) + 1;
    std::vector<std::uint32_t> digits(n_, 0);
    // descending key order is graded-lex order
    for (std::uint64_t k = dense_values_.size(); k-- > 0;) {
      const double v = dense_values_[k];
      if (v == 0.0) continue;
      std::uint64_t rest = k;
      std::uint64_t used = 0;
      for (std::size_t i = n_ - 1; i-- > 0;) {
        digits[i] = static_cast<std::uint32_t>(rest % radix);
        rest /= radix;
        used += digits[i];
      }
      digits[n_ - 1] = static_cast<std::uint32_t>(degree_ - used);
      exps.insert(exps.end(), digits.begin(), digits.end());
      coeffs.push_back(v);
    }
  } else {
    const auto nonzero = static_cast<std::size_t>(
        std::count_if(sparse_.begin(), sparse_.end(), [](const auto& kv) { return kv.second != 0.0; }));
    check_budget(nonzero, budget, context);
    exps.reserve(nonzero * n_);
    coeffs.reserve(nonzero);
    for (const auto& [j, v] : sparse_) {
      if (v == 0.0) continue;
      exps.insert(exps.end(), j.begin(), j.end());
      coeffs.push_back(v);
    }
  }
  dense_values_.clear();
  sparse_.clear();
  return HomoPoly::from_sorted(n_, degree_, std::move(exps), std::move(coeffs));
}

}  // namespace detail

HomoPoly::HomoPoly(std::size_t n, unsigned p) : n_(n), p_(p) {
  if (n == 0) throw std::invalid_argument("HomoPoly: dimension must be positive");
}

HomoPoly HomoPoly::from_sorted(std::size_t n, unsigned p, std::vector<std::uint32_t> exps,
                               std::vector<double> coeffs) {
  HomoPoly f(n, p);
  assert(exps.size() == coeffs.size() * n);
  f.exps_ = std::move(exps);
  f.coeffs_ = std::move(coeffs);
#ifndef NDEBUG
  for (std::size_t t = 0; t < f.num_terms(); ++t) {
    assert(f.coeffs_[t] != 0.0);
    const auto e = f.exponents(t);
    assert(std::accumulate(e.begin(), e.end(), 0U) == p);
    if (t > 0) assert(graded_lex_before(f.exponents(t - 1), e));
  }
#endif
  return f;
}

HomoPoly HomoPoly::from_terms(std::size_t n, unsigned p, std::vector<std::pair<MultiIndex, double>> terms) {
  if (n == 0) throw std::invalid_argument("HomoPoly: dimension must be positive");
  for (const auto& [j, c] : terms) {
    if (j.size() != n) {
      throw std::invalid_argument("HomoPoly: multi-index of length " + std::to_string(j.size()) +
                                  " in a polynomial of dimension " + std::to_string(n));
    }
    if (j.degree() != p) {
      throw std::invalid_argument("HomoPoly: monomial of degree " + std::to_string(j.degree()) +
                                  " in a polynomial of degree " + std::to_string(p));
    }
    if (!std::isfinite(c)) throw std::invalid_argument("HomoPoly: non-finite coefficient");
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return graded_lex_before(a.first.exponents(), b.first.exponents()); });
  std::vector<std::uint32_t> exps;
  std::vector<double> coeffs;
  for (std::size_t t = 0; t < terms.size();) {
    double c = 0.0;
    std::size_t u = t;
    for (; u < terms.size() && terms[u].first == terms[t].first; ++u) c += terms[u].second;
    if (c != 0.0) {
      const auto e = terms[t].first.exponents();
      exps.insert(exps.end(), e.begin(), e.end());
      coeffs.push_back(c);
    }
    t = u;
  }
  return from_sorted(n, p, std::move(exps), std::move(coeffs));
}

HomoPoly HomoPoly::monomial(const MultiIndex& j, double c) {
  return from_terms(j.size(), j.degree(), {{j, c}});
}

HomoPoly HomoPoly::linear_form(std::span<const double> c) {
  std::vector<std::pair<MultiIndex, double>> terms;
  for (std::size_t i = 0; i < c.size(); ++i) terms.emplace_back(MultiIndex::unit(c.size(), i), c[i]);
  return from_terms(c.size(), 1, std::move(terms));
}

HomoPoly HomoPoly::constant(std::size_t n, double c) {
  return from_terms(n, 0, {{MultiIndex::zero(n), c}});
}

double HomoPoly::coefficient(const MultiIndex& j) const {
  if (j.size() != n_ || j.degree() != p_) return 0.0;
  std::size_t lo = 0;
  std::size_t hi = num_terms();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (graded_lex_before(exponents(mid), j.exponents())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < num_terms() && std::ranges::equal(exponents(lo), j.exponents())) return coeffs_[lo];
  return 0.0;
}

double HomoPoly::tensor_entry(std::size_t term) const {
  return coeffs_[term] / multinomial_count(exponents(term));
}

HomoPoly HomoPoly::scaled(double s) const {
  if (s == 0.0) return HomoPoly(n_, p_);
  HomoPoly out = *this;
  for (auto& c : out.coeffs_) c *= s;
  // underflow to zero must not leave stored zeros behind
  if (std::ranges::any_of(out.coeffs_, [](double c) { return c == 0.0; })) {
    std::vector<std::pair<MultiIndex, double>> terms;
    for (std::size_t t = 0; t < out.num_terms(); ++t) terms.emplace_back(MultiIndex(out.exponents(t)), out.coeffs_[t]);
    return from_terms(n_, p_, std::move(terms));
  }
  return out;
}

}  // namespace specbound
