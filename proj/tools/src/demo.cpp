#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "specbound/bounds.hpp"
#include "specbound/cli.hpp"
#include "specbound/hopm.hpp"
#include "specbound/oracle.hpp"
#include "specbound/poly.hpp"
#include "specbound/tensor.hpp"

namespace specbound::cli {
namespace {

struct Check {
  std::string name;
  std::function<bool(std::string&)> run;
};

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

HomoPoly diagonal(std::vector<double> lambda, unsigned q) {
  const std::size_t n = lambda.size();
  std::vector<std::pair<MultiIndex, double>> terms;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> e(n, 0);
    e[i] = q;
    terms.emplace_back(MultiIndex(std::move(e)), lambda[i]);
  }
  return HomoPoly::from_terms(n, q, std::move(terms));
}

DenseTensor diagonal_tensor(std::vector<double> lambda, std::size_t d) {
  const std::size_t n = lambda.size();
  DenseTensor t = DenseTensor::cube(n, d);
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(idx.begin(), idx.end(), i);
    t(idx) = lambda[i];
  }
  return t;
}

std::vector<Check> checks() {
  std::vector<Check> c;
  c.push_back({"rank-one constancy: rho1((x1+x2)^2) = 2 for k <= 32", [](std::string& detail) {
                 const double coef[] = {1.0, 1.0};
                 const HomoPoly f = power(HomoPoly::linear_form(coef), 2);
                 const auto s = rho1_bounds(f, 32);
                 bool ok = s.values.size() == 6;
                 for (double v : s.values) ok = ok && close(v, 2.0, 1e-9);
                 detail = "last value " + std::to_string(s.values.back());
                 return ok;
               }});
  c.push_back({"diagonal rho1: x1^2 + x2^2 gives sqrt(2), (8/3)^(1/4)", [](std::string& detail) {
                 const auto s = rho1_bounds(diagonal({1.0, 1.0}, 2), 2);
                 detail = "k=1 " + std::to_string(s.values[0]) + ", k=2 " + std::to_string(s.values[1]);
                 return s.values.size() == 2 && close(s.values[0], std::sqrt(2.0), 1e-12) &&
                        close(s.values[1], std::pow(8.0 / 3.0, 0.25), 1e-12);
               }});
  c.push_back({"diagonal rho2: x1^3 + x2^3 gives sqrt(2)^(1/(2^k-1))", [](std::string& detail) {
                 const auto s = rho2_bounds(diagonal({1.0, 1.0}, 3), 4);
                 bool ok = s.values.size() == 4;
                 for (std::size_t i = 0; ok && i < 4; ++i) {
                   ok = close(s.values[i], std::pow(std::sqrt(2.0), 1.0 / (std::pow(2.0, i + 1.0) - 1.0)), 1e-9);
                 }
                 detail = "k=4 " + std::to_string(s.values.back());
                 return ok;
               }});
  c.push_back({"matrix baseline: diag(3,1) powers decrease to 3", [](std::string& detail) {
                 const auto s = matrix_power_bounds(DenseTensor::matrix(2, 2, {3.0, 0.0, 0.0, 1.0}), 64);
                 bool ok = close(s.values[0], std::sqrt(10.0), 1e-12) && close(s.values[1], std::pow(82.0, 0.25), 1e-12);
                 for (std::size_t i = 1; i < s.values.size(); ++i) ok = ok && s.values[i] <= s.values[i - 1] + 1e-12;
                 ok = ok && std::abs(s.values.back() - 3.0) <= 0.02 * 3.0;
                 detail = "k=64 " + std::to_string(s.values.back());
                 return ok;
               }});
  c.push_back({"order-3 matrix bound: diagonal (1,1) gives 1 <= HS = sqrt(2)", [](std::string& detail) {
                 const DenseTensor t = diagonal_tensor({1.0, 1.0}, 3);
                 const double b = matrix_bound_d3(t);
                 const double lower = hopm_spectral_estimate(t).value;
                 detail = "bound " + std::to_string(b) + ", hopm " + std::to_string(lower);
                 return close(b, 1.0, 1e-10) && b <= hs_norm(t) && lower <= b + 1e-9;
               }});
  c.push_back({"Collatz-Wielandt: diagonal (1, 0.5) order 4 gives 1; all-ones 2x2x2x2 gives 8",
               [](std::string& detail) {
                 const auto diag = collatz_wielandt_bound(diagonal_tensor({1.0, 0.5}, 4));
                 DenseTensor ones = DenseTensor::cube(2, 4);
                 for (auto& v : ones.data()) v = 1.0;
                 const auto all = collatz_wielandt_bound(ones);
                 const double res = eigen_residual(ones, all.witness, all.bound, EigenKind::d_eigen);
                 detail = "diagonal " + std::to_string(diag.bound) + ", all-ones " + std::to_string(all.bound);
                 return close(diag.bound, 1.0, 1e-9) && close(all.bound, 8.0, 1e-9) && res <= 1e-10;
               }});
  return c;
}

}  // namespace

int run_demo(std::ostream& out) {
  int failed = 0;
  for (const auto& check : checks()) {
    std::string detail;
    bool ok = false;
    try {
      ok = check.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    out << (ok ? "PASS " : "FAIL ") << check.name << " (" << detail << ")\n";
    failed += ok ? 0 : 1;
  }
  out << (failed == 0 ? "all demo checks passed\n" : std::to_string(failed) + " demo check(s) failed\n");
  return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace specbound::cli
