#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "specbound/summation.hpp"
#include "specbound/tensor.hpp"

namespace specbound {
namespace {

// Advances a row-major multi-index; returns false after the last one.
bool next_index(std::vector<std::size_t>& idx, std::span<const std::size_t> dims) {
  for (std::size_t k = idx.size(); k-- > 0;) {
    if (++idx[k] < dims[k]) return true;
    idx[k] = 0;
  }
  return false;
}

// Averages t over index permutations of modes [first, d). Entries in the same
// orbit share the flat index of their sorted representative.
DenseTensor symmetrize_from(const DenseTensor& t, std::size_t first) {
  std::vector<double> sum(t.size(), 0.0);
  std::vector<std::size_t> count(t.size(), 0);
  std::vector<std::size_t> rep(t.size());
  std::vector<std::size_t> idx(t.order(), 0);
  std::vector<std::size_t> sorted(t.order());
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    t.unravel(flat, idx);
    sorted = idx;
    std::sort(sorted.begin() + static_cast<std::ptrdiff_t>(first), sorted.end());
    rep[flat] = t.flat_index(sorted);
    sum[rep[flat]] += t.data()[flat];
    ++count[rep[flat]];
  }
  DenseTensor out(std::vector<std::size_t>(t.dims().begin(), t.dims().end()));
  auto data = out.data();
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    data[flat] = sum[rep[flat]] / static_cast<double>(count[rep[flat]]);
  }
  return out;
}

bool symmetric_from(const DenseTensor& t, std::size_t first, double tol) {
  std::vector<std::size_t> idx(t.order(), 0);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    t.unravel(flat, idx);
    std::sort(idx.begin() + static_cast<std::ptrdiff_t>(first), idx.end());
    if (std::abs(t.data()[flat] - t(idx)) > tol) return false;
  }
  return true;
}

// Contracts the last mode with x.
DenseTensor contract_last(const DenseTensor& t, std::span<const double> x) {
  const std::size_t n = t.dims().back();
  if (x.size() != n) throw std::invalid_argument("contraction: vector length does not match mode size");
  std::vector<std::size_t> dims(t.dims().begin(), t.dims().end() - 1);
  const std::size_t rows = t.size() / n;
  std::vector<double> data(rows);
  const auto src = t.data();
  for (std::size_t r = 0; r < rows; ++r) {
    CompensatedSum s;
    for (std::size_t i = 0; i < n; ++i) s.add(src[r * n + i] * x[i]);
    data[r] = s.value();
  }
  if (dims.empty()) dims.push_back(1);
  return DenseTensor(std::move(dims), std::move(data));
}

}  // namespace

double inner(const DenseTensor& a, const DenseTensor& b) {
  if (!std::ranges::equal(a.dims(), b.dims())) throw std::invalid_argument("inner: shape mismatch");
  return compensated_dot(a.data(), b.data());
}

double hs_norm(const DenseTensor& t) { return euclidean_norm(t.data()); }

DenseTensor kron(const DenseTensor& a, const DenseTensor& b) {
  std::vector<std::size_t> dims(a.dims().begin(), a.dims().end());
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  std::vector<double> data;
  data.reserve(a.size() * b.size());
  for (double av : a.data()) {
    for (double bv : b.data()) data.push_back(av * bv);
  }
  return DenseTensor(std::move(dims), std::move(data));
}

DenseTensor abs(const DenseTensor& t) {
  std::vector<double> data(t.data().begin(), t.data().end());
  for (auto& v : data) v = std::abs(v);
  return DenseTensor(std::vector<std::size_t>(t.dims().begin(), t.dims().end()), std::move(data));
}

DenseTensor symmetrize(const DenseTensor& t) {
  if (!t.is_equidimensional()) throw std::invalid_argument("symmetrize: all modes must have the same dimension");
  return symmetrize_from(t, 0);
}

DenseTensor partial_symmetrize(const DenseTensor& t) {
  if (t.order() < 2 || !t.has_equal_trailing_dims()) {
    throw std::invalid_argument("partial_symmetrize: modes 2..d must have the same dimension");
  }
  return symmetrize_from(t, 1);
}

bool is_symmetric(const DenseTensor& t, double tol) { return t.is_equidimensional() && symmetric_from(t, 0, tol); }

bool is_partially_symmetric(const DenseTensor& t, double tol) {
  return t.order() >= 2 && t.has_equal_trailing_dims() && symmetric_from(t, 1, tol);
}

std::vector<double> contract_power(const DenseTensor& t, std::span<const double> x) {
  if (!t.has_equal_trailing_dims()) throw std::invalid_argument("contract_power: trailing modes must be equidimensional");
  if (t.order() == 1) return {t.data().begin(), t.data().end()};
  if (x.size() != t.dim(1)) {
    throw std::invalid_argument("contract_power: vector of length " + std::to_string(x.size()) +
                                " for trailing modes of size " + std::to_string(t.dim(1)));
  }
  DenseTensor cur = contract_last(t, x);
  for (std::size_t k = 2; k < t.order(); ++k) cur = contract_last(cur, x);
  return {cur.data().begin(), cur.data().end()};
}

DenseTensor slice_matrix(const DenseTensor& t, std::span<const std::vector<double>> xs) {
  if (t.order() < 3) throw std::invalid_argument("slice_matrix: tensor must have at least 3 modes");
  if (xs.size() != t.order() - 2) {
    throw std::invalid_argument("slice_matrix: expected " + std::to_string(t.order() - 2) + " vectors");
  }
  DenseTensor cur = t;
  for (std::size_t k = xs.size(); k-- > 0;) {
    if (xs[k].size() != t.dim(k + 2)) throw std::invalid_argument("slice_matrix: vector length mismatch");
    cur = contract_last(cur, xs[k]);
  }
  return cur;
}

std::vector<double> contract_all_but(const DenseTensor& t, std::span<const std::vector<double>> xs,
                                     std::size_t skip_mode) {
  const std::size_t d = t.order();
  if (xs.size() != d || skip_mode >= d) throw std::invalid_argument("contract_all_but: need one vector per mode");
  for (std::size_t k = 0; k < d; ++k) {
    if (k != skip_mode && xs[k].size() != t.dim(k)) throw std::invalid_argument("contract_all_but: length mismatch");
  }
  std::vector<CompensatedSum> acc(t.dim(skip_mode));
  std::vector<std::size_t> idx(d, 0);
  const auto data = t.data();
  std::size_t flat = 0;
  do {
    double w = data[flat++];
    if (w != 0.0) {
      for (std::size_t k = 0; k < d; ++k) {
        if (k != skip_mode) w *= xs[k][idx[k]];
      }
      acc[idx[skip_mode]].add(w);
    }
  } while (next_index(idx, t.dims()));
  std::vector<double> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = acc[i].value();
  return out;
}

DenseTensor to_tensor(const HomoPoly& f) {
  const std::size_t n = f.dimension();
  const unsigned p = f.degree();
  if (p == 0) throw std::invalid_argument("to_tensor: degree-0 polynomials have no tensor of order >= 1");
  DenseTensor out = DenseTensor::cube(n, p);
  std::vector<std::size_t> idx(p, 0);
  std::vector<std::uint32_t> counts(n);
  auto data = out.data();
  std::size_t flat = 0;
  do {
    std::ranges::fill(counts, 0U);
    for (auto i : idx) ++counts[i];
    const MultiIndex j(counts);
    const double c = f.coefficient(j);
    data[flat] = c == 0.0 ? 0.0 : c / multinomial_count(j.exponents());
    ++flat;
  } while (next_index(idx, out.dims()));
  return out;
}

HomoPoly to_poly(const DenseTensor& s, double tol) {
  if (!s.is_equidimensional()) throw std::invalid_argument("to_poly: tensor is not equidimensional");
  if (!is_symmetric(s, tol)) throw std::invalid_argument("to_poly: tensor is not symmetric");
  const std::size_t n = s.dim(0);
  const auto p = static_cast<unsigned>(s.order());
  std::vector<std::pair<MultiIndex, double>> terms;
  std::vector<std::size_t> idx(p, 0);
  std::vector<std::uint32_t> counts(n);
  // one representative per orbit: nondecreasing index tuples
  std::size_t flat = 0;
  do {
    if (std::is_sorted(idx.begin(), idx.end())) {
      const double phi = s.data()[flat];
      if (phi != 0.0) {
        std::ranges::fill(counts, 0U);
        for (auto i : idx) ++counts[i];
        terms.emplace_back(MultiIndex(counts), phi * multinomial_count(counts));
      }
    }
    ++flat;
  } while (next_index(idx, s.dims()));
  return HomoPoly::from_terms(n, p, std::move(terms));
}

}  // namespace specbound
