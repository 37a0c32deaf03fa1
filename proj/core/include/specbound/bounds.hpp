#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "specbound/dense_tensor.hpp"
#include "specbound/homo_poly.hpp"
#include "specbound/oracle.hpp"
#include "specbound/poly_map.hpp"

namespace specbound {

enum class BoundMethod { rho1, rho2, rho3, matrix_power };
enum class Termination { converged, budget, kmax };

std::string to_string(BoundMethod m);
std::string to_string(Termination t);

/// One bound sequence: values[i] is the bound at iterate index ks[i].
struct BoundSequence {
  BoundMethod method = BoundMethod::rho1;
  std::vector<unsigned> ks;
  std::vector<double> values;
  Termination terminated_by = Termination::kmax;
  /// Stored monomial (or matrix entry) count of the iterate behind each value.
  std::vector<std::size_t> budget_used;
  /// Whether every value is an upper bound on the spectral norm of the input.
  bool certified = true;
  /// Set for the zero input, where every value is 0.
  bool degenerate = false;
  /// Reason for early termination, if any.
  std::string note;

  /// Smallest computed value (+inf when nothing was computed).
  double best() const noexcept;
};

/// ||f^k||_HS^{1/k} for k = 1, 2, 4, ... <= kmax. Powers are formed by
/// repeated squaring of f / ||f||_HS. With conv_tol > 0 the schedule stops
/// once consecutive values agree to that relative tolerance.
BoundSequence rho1_bounds(const HomoPoly& f, unsigned kmax = 32, std::size_t budget = kDefaultMonomialBudget,
                          double conv_tol = 0.0);

/// ||F^{ok}||_HS^{(p-1)/(p^k-1)} for k = 1..kmax and a square map of degree
/// p >= 2. The values bound the limit only along doubling indices, so the
/// sequence is not marked certified.
BoundSequence rho2_bounds(const PolyMap& F, unsigned kmax = 4, std::size_t budget = kDefaultMonomialBudget);
/// The same sequence for F = gradient_map(f), deg f >= 3. Every value is an
/// upper bound on ||f||_sigma.
BoundSequence rho2_bounds(const HomoPoly& f, unsigned kmax = 4, std::size_t budget = kDefaultMonomialBudget);

/// (estimated ||F^{ok}||_sigma)^{(p-1)/(p^k-1)} for k = 1..kmax. The
/// estimates come from a local maximizer and are lower estimates of each
/// iterate's norm, so the sequence is diagnostic only (never certified).
BoundSequence rho3_diagnostic(const PolyMap& F, unsigned kmax = 4, const ShopmSettings& settings = {});

/// ||S^k||_HS^{1/k} for k = 1, 2, 4, ... <= kmax and a symmetric matrix S.
BoundSequence matrix_power_bounds(const DenseTensor& s, unsigned kmax = 64);

/// sqrt(lambda_max(M)) with M_{kk'} = sum_{ij} t_ijk t_ijk' for an order-3
/// tensor, by power iteration with Rayleigh-quotient stopping at 1e-12.
double matrix_bound_d3(const DenseTensor& t);

/// sqrt of min_{k<=4} ||tau^k||_HS^{1/k}, where tau(x) is the squared
/// Frobenius norm of the matrix S(x, ..., x) obtained by contracting the last
/// d-2 modes of a symmetric order-d tensor (d >= 3) with x.
double tau_tilde_bound(const DenseTensor& s, std::size_t budget = kDefaultMonomialBudget);
/// tau(x) itself, as a polynomial of degree 2(d-2).
HomoPoly tau_polynomial(const DenseTensor& s);

struct CollatzWielandtResult {
  /// Smallest max-quotient seen: an upper bound on rho(|T|).
  double bound = 0.0;
  /// Min-quotient at the last iterate.
  double lower = 0.0;
  /// max/min quotient ratio at the last iterate (1 at an eigenvector).
  double spread = 0.0;
  std::vector<double> witness;  // l1-normalized positive iterate
  std::size_t iterations = 0;
  bool converged = false;
};

/// Normalized iteration x <- normalize((|T| x^{d-1})^{1/(d-1)}) for an
/// equidimensional order-d tensor (d >= 2), tracking the quotients
/// (|T| x^{d-1})_i / x_i^{d-1}. An empty x0 means the all-ones vector.
CollatzWielandtResult collatz_wielandt_bound(const DenseTensor& t, std::span<const double> x0 = {},
                                             std::size_t max_iters = 1000, double tol = 1e-12);

}  // namespace specbound
