#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "specbound/homo_poly.hpp"
#include "specbound/multi_index.hpp"
#include "specbound/poly_map.hpp"

namespace specbound {

/// Hilbert-Schmidt norm sqrt(sum_j (j!/p!) c_j^2), i.e. the Euclidean norm of
/// the associated symmetric tensor.
double hs_norm(const HomoPoly& f);
/// sqrt(sum_i ||F_i||_HS^2).
double hs_norm(const PolyMap& F);

double eval(const HomoPoly& f, std::span<const double> x);
std::vector<double> eval(const PolyMap& F, std::span<const double> x);

HomoPoly add(const HomoPoly& f, const HomoPoly& g);
HomoPoly multiply(const HomoPoly& f, const HomoPoly& g, std::size_t budget = kDefaultMonomialBudget);

/// f^k by square-and-multiply. ResourceLimitError names k when the budget is
/// exceeded.
HomoPoly power(const HomoPoly& f, unsigned k, std::size_t budget = kDefaultMonomialBudget);

/// F_i = (1/p) df/dx_i for f of degree p >= 1, so that sum_i x_i F_i(x) = f(x).
PolyMap gradient_map(const HomoPoly& f);

/// g(F(x)) for g in F.output_dim() variables.
HomoPoly compose(const HomoPoly& g, const PolyMap& F, std::size_t budget = kDefaultMonomialBudget);
/// G(F(x)), coordinatewise.
PolyMap compose_map(const PolyMap& G, const PolyMap& F, std::size_t budget = kDefaultMonomialBudget);

/// f(Qx) for a row-major orthogonal n x n matrix Q (checked to 1e-10).
HomoPoly rotate(const HomoPoly& f, std::span<const double> q_row_major,
                std::size_t budget = kDefaultMonomialBudget);

/// True iff phi_j(f) >= |phi_j(g)| for every multi-index j. f must have
/// nonnegative coefficients.
bool majorizes(const HomoPoly& f, const HomoPoly& g);

}  // namespace specbound
