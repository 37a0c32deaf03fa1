#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "specbound/errors.hpp"
#include "specbound/poly.hpp"
#include "specbound/summation.hpp"
#include "term_accumulator.hpp"

namespace specbound {
namespace {

void require_same_dimension(const HomoPoly& f, const HomoPoly& g, const char* op) {
  if (f.dimension() != g.dimension()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" + std::to_string(f.dimension()) +
                                " vs " + std::to_string(g.dimension()) + ")");
  }
}

// powers[i * (p + 1) + e] = x_i^e
std::vector<double> power_table(std::span<const double> x, unsigned p) {
  std::vector<double> table(x.size() * (p + 1));
  for (std::size_t i = 0; i < x.size(); ++i) {
    double* row = table.data() + i * (p + 1);
    row[0] = 1.0;
    for (unsigned e = 1; e <= p; ++e) row[e] = row[e - 1] * x[i];
  }
  return table;
}

// Images prod_i F_i^{j_i} of monomials y^j under a polynomial map, memoized so
// that each image costs a single multiplication by one coordinate.
class MonomialImageCache {
 public:
  MonomialImageCache(const PolyMap& F, std::size_t budget) : F_(F), budget_(budget) {}

  const HomoPoly& image(std::span<const std::uint32_t> j) {
    std::vector<std::uint32_t> key(j.begin(), j.end());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::size_t last = key.size();
    for (std::size_t i = key.size(); i-- > 0;) {
      if (key[i] != 0) {
        last = i;
        break;
      }
    }
    HomoPoly value = [&] {
      if (last == key.size()) return HomoPoly::constant(F_.input_dim(), 1.0);
      auto prev = key;
      --prev[last];
      const HomoPoly& base = image(prev);
      return multiply(base, F_[last], budget_);
    }();
    return memo_.emplace(std::move(key), std::move(value)).first->second;
  }

  HomoPoly compose(const HomoPoly& g) {
    const unsigned degree = g.degree() * F_.degree();
    const std::size_t n = F_.input_dim();
    detail::TermAccumulator acc(n, degree, std::min(monomial_count(n, degree), budget_));
    for (std::size_t t = 0; t < g.num_terms(); ++t) acc.add_scaled(image(g.exponents(t)), g.coefficient(t));
    return acc.finish(budget_, "compose");
  }

 private:
  const PolyMap& F_;
  std::size_t budget_;
  std::map<std::vector<std::uint32_t>, HomoPoly> memo_;
};

}  // namespace

double hs_norm(const HomoPoly& f) {
  CompensatedSum s;
  for (std::size_t t = 0; t < f.num_terms(); ++t) {
    const double c = f.coefficient(t);
    s.add(multinomial_weight(f.exponents(t), f.degree()) * c * c);
  }
  return std::sqrt(s.value());
}

double hs_norm(const PolyMap& F) {
  CompensatedSum s;
  for (const auto& c : F.coords()) {
    const double v = hs_norm(c);
    s.add(v * v);
  }
  return std::sqrt(s.value());
}

double eval(const HomoPoly& f, std::span<const double> x) {
  if (x.size() != f.dimension()) {
    throw std::invalid_argument("eval: point of length " + std::to_string(x.size()) +
                                " for a polynomial in " + std::to_string(f.dimension()) + " variables");
  }
  const unsigned p = f.degree();
  const auto table = power_table(x, p);
  CompensatedSum s;
  for (std::size_t t = 0; t < f.num_terms(); ++t) {
    const auto e = f.exponents(t);
    double term = f.coefficient(t);
    for (std::size_t i = 0; i < e.size(); ++i) term *= table[i * (p + 1) + e[i]];
    s.add(term);
  }
  return s.value();
}

std::vector<double> eval(const PolyMap& F, std::span<const double> x) {
  std::vector<double> out;
  out.reserve(F.output_dim());
  for (const auto& c : F.coords()) out.push_back(eval(c, x));
  return out;
}

HomoPoly add(const HomoPoly& f, const HomoPoly& g) {
  require_same_dimension(f, g, "add");
  if (f.degree() != g.degree()) throw std::invalid_argument("add: degree mismatch");
  detail::TermAccumulator acc(f.dimension(), f.degree(), f.num_terms() + g.num_terms());
  acc.add_scaled(f, 1.0);
  acc.add_scaled(g, 1.0);
  return acc.finish(std::numeric_limits<std::size_t>::max(), "add");
}

HomoPoly multiply(const HomoPoly& f, const HomoPoly& g, std::size_t budget) {
  require_same_dimension(f, g, "multiply");
  const std::size_t n = f.dimension();
  const unsigned degree = f.degree() + g.degree();
  if (f.is_zero() || g.is_zero()) return HomoPoly(n, degree);

  const std::size_t pairs = f.num_terms() * g.num_terms();
  detail::TermAccumulator acc(n, degree, pairs);
  if (acc.dense()) {
    std::vector<std::uint64_t> g_keys(g.num_terms());
    for (std::size_t t = 0; t < g.num_terms(); ++t) g_keys[t] = acc.key(g.exponents(t));
    const auto g_coeffs = g.coefficients();
    for (std::size_t s = 0; s < f.num_terms(); ++s) {
      const std::uint64_t fk = acc.key(f.exponents(s));
      const double fc = f.coefficient(s);
      for (std::size_t t = 0; t < g_keys.size(); ++t) acc.add_at(fk + g_keys[t], fc * g_coeffs[t]);
    }
  } else {
    std::vector<std::uint32_t> sum(n);
    for (std::size_t s = 0; s < f.num_terms(); ++s) {
      const auto a = f.exponents(s);
      for (std::size_t t = 0; t < g.num_terms(); ++t) {
        const auto b = g.exponents(t);
        for (std::size_t i = 0; i < n; ++i) sum[i] = a[i] + b[i];
        acc.add(sum, f.coefficient(s) * g.coefficient(t));
      }
    }
  }
  return acc.finish(budget, "multiply");
}

HomoPoly power(const HomoPoly& f, unsigned k, std::size_t budget) {
  if (k == 0) throw std::invalid_argument("power: exponent must be at least 1");
  try {
    std::optional<HomoPoly> result;
    HomoPoly base = f;
    for (unsigned bits = k;;) {
      if (bits & 1U) result = result ? multiply(*result, base, budget) : base;
      bits >>= 1U;
      if (bits == 0) break;
      base = multiply(base, base, budget);
    }
    return *std::move(result);
  } catch (const ResourceLimitError& e) {
    throw ResourceLimitError("power k=" + std::to_string(k) + ": " + e.what(), e.required(), e.limit());
  }
}

PolyMap gradient_map(const HomoPoly& f) {
  if (f.degree() == 0) throw std::invalid_argument("gradient_map: constant polynomial has no gradient map");
  const std::size_t n = f.dimension();
  const unsigned p = f.degree();
  std::vector<HomoPoly> coords;
  coords.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> exps;
    std::vector<double> coeffs;
    // j -> j - e_i preserves graded-lex order among terms with j_i >= 1
    for (std::size_t t = 0; t < f.num_terms(); ++t) {
      const auto e = f.exponents(t);
      if (e[i] == 0) continue;
      const auto start = exps.size();
      exps.insert(exps.end(), e.begin(), e.end());
      --exps[start + i];
      coeffs.push_back(f.coefficient(t) * static_cast<double>(e[i]) / static_cast<double>(p));
    }
    coords.push_back(HomoPoly::from_sorted(n, p - 1, std::move(exps), std::move(coeffs)));
  }
  return PolyMap(std::move(coords));
}

HomoPoly compose(const HomoPoly& g, const PolyMap& F, std::size_t budget) {
  if (g.dimension() != F.output_dim()) {
    throw std::invalid_argument("compose: outer polynomial has " + std::to_string(g.dimension()) +
                                " variables but the map has " + std::to_string(F.output_dim()) + " outputs");
  }
  MonomialImageCache cache(F, budget);
  return cache.compose(g);
}

PolyMap compose_map(const PolyMap& G, const PolyMap& F, std::size_t budget) {
  if (G.input_dim() != F.output_dim()) {
    throw std::invalid_argument("compose_map: outer map has " + std::to_string(G.input_dim()) +
                                " inputs but the inner map has " + std::to_string(F.output_dim()) + " outputs");
  }
  MonomialImageCache cache(F, budget);
  std::vector<HomoPoly> coords;
  coords.reserve(G.output_dim());
  for (const auto& g : G.coords()) coords.push_back(cache.compose(g));
  return PolyMap(std::move(coords));
}

HomoPoly rotate(const HomoPoly& f, std::span<const double> q, std::size_t budget) {
  const std::size_t n = f.dimension();
  if (q.size() != n * n) throw std::invalid_argument("rotate: matrix must be n x n");
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += q[k * n + a] * q[k * n + b];
      worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
    }
  }
  if (!(worst <= 1e-10)) {
    throw std::invalid_argument("rotate: matrix is not orthogonal (max |Q^T Q - I| = " + std::to_string(worst) + ")");
  }
  return compose(f, PolyMap::linear(n, n, q), budget);
}

bool majorizes(const HomoPoly& f, const HomoPoly& g) {
  require_same_dimension(f, g, "majorizes");
  if (f.degree() != g.degree()) throw std::invalid_argument("majorizes: degree mismatch");
  if (std::ranges::any_of(f.coefficients(), [](double c) { return c < 0.0; })) {
    throw std::invalid_argument("majorizes: the dominating polynomial must have nonnegative entries");
  }
  // phi_j and c_j differ by the same positive multinomial for f and g
  for (std::size_t t = 0; t < g.num_terms(); ++t) {
    if (f.coefficient(MultiIndex(g.exponents(t))) < std::abs(g.coefficient(t))) return false;
  }
  return true;
}

}  // namespace specbound
