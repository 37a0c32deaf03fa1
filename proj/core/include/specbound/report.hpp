#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "specbound/bounds.hpp"
#include "specbound/dense_tensor.hpp"
#include "specbound/homo_poly.hpp"

namespace specbound {

/// Method names accepted in ReportConfig::methods.
///   hs, rho1, rho2, rho3, tau_tilde, matrix_d3, matrix_power, cw,
///   shopm, grid, hopm
const std::vector<std::string>& known_methods();

struct ReportConfig {
  unsigned rho1_kmax = 32;
  unsigned rho2_kmax = 4;
  unsigned rho3_kmax = 4;
  unsigned matrix_kmax = 64;
  std::size_t budget = kDefaultMonomialBudget;
  std::uint64_t seed = 0;
  std::size_t starts = 32;
  /// Oracle fixed-point residual tolerance.
  double tol = 1e-10;
  /// Relative convergence tolerance for rho1 (0 runs the whole schedule).
  double rho1_tol = 0.0;
  unsigned threads = 1;
  /// Restricts the battery; empty runs every applicable method.
  std::set<std::string> methods;
  bool include_timings = false;
  /// Free-form description of the input (usually the file name).
  std::string source;

  bool enabled(const std::string& method) const { return methods.empty() || methods.count(method) > 0; }
};

struct OracleEstimate {
  std::string method;
  double value = 0.0;
  std::vector<double> witness;
  double residual = 0.0;
  bool converged = false;
};

struct MethodFailure {
  std::string method;
  std::string message;
};

struct UpperBound {
  std::string method;
  double value = 0.0;
};

struct BoundReport {
  std::string kind;  // "poly" or "tensor"
  std::size_t n = 0;
  std::vector<std::size_t> dims;
  unsigned d = 0;
  bool symmetric = true;
  std::string source;
  std::string input_hash;

  std::vector<BoundSequence> sequences;
  std::optional<double> hs_trivial;
  std::optional<double> matrix_d3;
  std::optional<double> tau_tilde;
  std::optional<CollatzWielandtResult> collatz_wielandt;
  /// Whether the Collatz-Wielandt bound entered the bracket.
  bool cw_certified = false;
  std::vector<OracleEstimate> oracles;

  /// Every certified upper bound that entered the bracket.
  std::vector<UpperBound> upper_bounds;
  double lower = 0.0;
  double upper = 0.0;
  std::string lower_method;
  std::string upper_method;
  /// Certified bounds that fell below the oracle lower bound.
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
  std::vector<MethodFailure> failures;

  ReportConfig config;
  std::map<std::string, double> timings_ms;

  bool bracket_violated() const noexcept { return !violations.empty(); }
  /// Some sequence stopped because of the monomial budget.
  bool truncated() const noexcept;
  const BoundSequence* sequence(BoundMethod m) const noexcept;
};

/// Runs the bound battery on a homogeneous polynomial.
BoundReport assemble_report(const HomoPoly& f, const ReportConfig& config = {});
/// Symmetric tensors are routed through their polynomial; other tensors get
/// the HS bound, the order-3 matrix bound and a HOPM lower bound.
BoundReport assemble_report(const DenseTensor& t, const ReportConfig& config = {});

/// Relative tolerance used when comparing lower and upper bounds.
double bracket_tolerance(double upper) noexcept;

std::string report_to_json(const BoundReport& r);
/// One row per (method, k): method,k,value,terminated_by. Scalar bounds and
/// oracles appear with an empty k.
std::string report_to_csv(const BoundReport& r);
std::string report_to_table(const BoundReport& r);

/// Version string embedded in reports.
std::string version_string();

}  // namespace specbound
