#pragma once

#include <span>
#include <vector>

#include "specbound/dense_tensor.hpp"
#include "specbound/homo_poly.hpp"

namespace specbound {

double inner(const DenseTensor& a, const DenseTensor& b);
/// Euclidean norm of the entries.
double hs_norm(const DenseTensor& t);

/// Outer (Kronecker) product with modes of `a` followed by modes of `b`.
DenseTensor kron(const DenseTensor& a, const DenseTensor& b);

/// Entrywise absolute value.
DenseTensor abs(const DenseTensor& t);

/// Average over all permutations of the index tuple. Requires equal dims.
DenseTensor symmetrize(const DenseTensor& t);
/// Averages over permutations of modes 1..d-1, leaving mode 0 fixed.
DenseTensor partial_symmetrize(const DenseTensor& t);

bool is_symmetric(const DenseTensor& t, double tol = 1e-12);
bool is_partially_symmetric(const DenseTensor& t, double tol = 1e-12);

/// (T x (x)^p x)_i = sum t_{i, i2..i_{p+1}} x_{i2} ... x_{i_{p+1}}: contracts
/// every trailing mode with x. Order-1 tensors are returned as is.
std::vector<double> contract_power(const DenseTensor& t, std::span<const double> x);

/// Contracts modes 3..d with xs[0..d-3], leaving an n1 x n2 matrix.
DenseTensor slice_matrix(const DenseTensor& t, std::span<const std::vector<double>> xs);

/// Contracts with one vector per mode except `skip_mode`.
std::vector<double> contract_all_but(const DenseTensor& t, std::span<const std::vector<double>> xs,
                                     std::size_t skip_mode);

/// Symmetric tensor with phi_j = c_j j!/p! at every index tuple of type j.
DenseTensor to_tensor(const HomoPoly& f);
/// Inverse of to_tensor; rejects tensors that are not symmetric within tol.
HomoPoly to_poly(const DenseTensor& s, double tol = 1e-12);

}  // namespace specbound
