// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Reference values come from closed forms and from independent
// oracles in test_support.hpp, never from the code under test.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "specbound/bounds.hpp"
#include "specbound/cli.hpp"
#include "specbound/io.hpp"
#include "specbound/oracle.hpp"
#include "specbound/poly.hpp"
#include "specbound/report.hpp"
#include "specbound/tensor.hpp"
#include "test_support.hpp"

namespace {

using namespace specbound;
using namespace specbound::testing;

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

bool relative_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

HomoPoly poly(std::size_t n, unsigned p, std::vector<std::pair<std::vector<std::uint32_t>, double>> terms) {
  std::vector<std::pair<MultiIndex, double>> t;
  for (auto& [j, c] : terms) t.emplace_back(MultiIndex(std::move(j)), c);
  return HomoPoly::from_terms(n, p, std::move(t));
}

Outcome criterion1() {
  Outcome o;
  const HomoPoly f = poly(2, 2, {{{2, 0}, 1.0}, {{1, 1}, 2.0}, {{0, 2}, 1.0}});
  const BoundSequence s = rho1_bounds(f, 32);
  for (std::size_t i = 0; i < s.ks.size(); ++i) {
    if (!relative_close(s.values[i], 2.0, 1e-9)) o.fail("k=" + std::to_string(s.ks[i]) + " gives " + num(s.values[i]));
  }
  if (s.ks != std::vector<unsigned>{1, 2, 4, 8, 16, 32}) o.fail("unexpected k schedule");
  if (o.ok) o.detail = "(x1+x2)^2 gives 2 at k = 1..32";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const HomoPoly f = poly(2, 2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}});
  const BoundSequence s = rho1_bounds(f, 32);
  if (s.values.size() != 6) o.fail("expected 6 terms, got " + std::to_string(s.values.size()));
  if (!relative_close(s.values.at(0), std::sqrt(2.0), 1e-12)) o.fail("k=1 gives " + num(s.values[0]));
  if (!relative_close(s.values.at(1), std::pow(8.0 / 3.0, 0.25), 1e-12)) o.fail("k=2 gives " + num(s.values[1]));
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const double k = s.ks[i];
    if (i > 0 && !(s.values[i] < s.values[i - 1])) o.fail("not strictly decreasing at k=" + num(k));
    const double lo = std::pow(2.0, 1.0 / (2.0 * k));
    const double hi = std::pow(k + 1.0, 1.0 / k);
    if (s.values[i] < lo * (1 - 1e-12) || s.values[i] > hi * (1 + 1e-12)) o.fail("outside sandwich at k=" + num(k));
  }
  if (o.ok) o.detail = "sqrt2, (8/3)^(1/4), strictly decreasing, inside sandwich; k=32 gives " + num(s.values.back());
  return o;
}

Outcome criterion3() {
  Outcome o;
  const PolyMap F({poly(2, 2, {{{2, 0}, 1.0}}), poly(2, 2, {{{0, 2}, 1.0}})});
  PolyMap G = F;
  for (unsigned k = 1; k <= 4; ++k) {
    if (k > 1) G = compose_map(G, F);
    if (!relative_close(hs_norm(G), std::sqrt(2.0), 1e-12)) o.fail("||F^k|| at k=" + std::to_string(k));
  }
  const BoundSequence s = rho2_bounds(F, 4);
  if (s.values.size() != 4) o.fail("expected 4 terms");
  for (std::size_t i = 0; i < s.values.size() && i < 4; ++i) {
    const double closed = std::pow(std::sqrt(2.0), 1.0 / (std::pow(2.0, static_cast<double>(i + 1)) - 1.0));
    if (!relative_close(s.values[i], closed, 1e-9)) o.fail("k=" + std::to_string(i + 1) + " gives " + num(s.values[i]));
  }
  if (o.ok) {
    o.detail = "||F^k|| = sqrt2 for k <= 4; sequence matches (sqrt2)^(1/(2^k-1)) =";
    for (double v : s.values) o.detail += " " + num(v);
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  Rng rng(4004);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(25);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = i; j < 5; ++j) a[i * 5 + j] = a[j * 5 + i] = gaussian(rng);
    }
    const BoundSequence s = matrix_power_bounds(DenseTensor::matrix(5, 5, a), 64);
    for (std::size_t i = 1; i < s.values.size(); ++i) {
      if (s.values[i] > s.values[i - 1] * (1 + 1e-12)) o.fail("increase in trial " + std::to_string(trial));
    }
    const double radius = eigen_spectral_radius(5, a);
    const double gap = s.values.back() / radius - 1.0;
    worst = std::max(worst, gap);
    if (s.ks.back() != 64) o.fail("schedule does not reach k=64");
    if (gap < -1e-12 || gap > 0.02) o.fail("k=64 off by " + num(gap) + " in trial " + std::to_string(trial));
  }
  if (o.ok) o.detail = "worst k=64 excess over |lambda|max: " + num(worst * 100) + "%";
  return o;
}

Outcome bracket_soundness(std::size_t instances, const std::vector<unsigned>& degrees, std::uint64_t seed,
                          std::size_t* checked_matrix = nullptr) {
  Outcome o;
  Rng rng(seed);
  std::size_t checks = 0;
  for (std::size_t trial = 0; trial < instances; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const unsigned d = degrees[(trial / 2) % degrees.size()];
    const DenseTensor t = random_symmetric_tensor(rng, n, d);
    ReportConfig config;
    config.seed = trial;
    const BoundReport r = assemble_report(t, config);
    const double hs = frobenius(t);
    const double lower = r.lower;
    if (!r.violations.empty()) o.fail("trial " + std::to_string(trial) + ": " + r.violations.front());
    if (!r.failures.empty()) o.fail("trial " + std::to_string(trial) + ": " + r.failures.front().message);
    for (const auto& ub : r.upper_bounds) {
      const double slack = 1e-9 * std::max(1.0, hs);
      if (lower > ub.value + slack) o.fail(ub.method + " below oracle in trial " + std::to_string(trial));
      if (ub.value > hs + slack) o.fail(ub.method + " above HS in trial " + std::to_string(trial));
      ++checks;
    }
    if (checked_matrix && d == 3) {
      if (!r.matrix_d3) {
        o.fail("missing matrix bound in trial " + std::to_string(trial));
      } else if (*r.matrix_d3 > hs * (1 + 1e-9)) {
        o.fail("matrix bound above HS in trial " + std::to_string(trial));
      }
      ++*checked_matrix;
    }
  }
  if (o.ok) o.detail = std::to_string(instances) + " tensors, " + std::to_string(checks) + " bound checks, no violations";
  return o;
}

Outcome criterion5() { return bracket_soundness(200, {3, 4}, 5005); }

Outcome criterion6() {
  Outcome o;
  DenseTensor t = DenseTensor::cube(2, 3);
  t({0, 0, 0}) = 1.0;
  t({1, 1, 1}) = 1.0;
  const double m = matrix_bound_d3(t);
  if (std::abs(m - 1.0) > 1e-10) o.fail("diagonal bound " + num(m));
  if (!relative_close(hs_norm(t), std::sqrt(2.0), 1e-15)) o.fail("HS " + num(hs_norm(t)));
  std::size_t checked = 0;
  Outcome ordering = bracket_soundness(100, {3}, 6006, &checked);
  if (!ordering.ok) o.fail(ordering.detail);
  if (o.ok) o.detail = "diagonal bound 1 vs HS sqrt2; matrix <= HS on " + std::to_string(checked) + " cubics";
  return o;
}

Outcome criterion7() {
  Outcome o;
  const DenseTensor ones(std::vector<std::size_t>(4, 2), std::vector<double>(16, 1.0));
  const CollatzWielandtResult cw = collatz_wielandt_bound(ones);
  if (!relative_close(cw.bound, 8.0, 1e-9)) o.fail("all-ones quotient " + num(cw.bound));
  const double res = eigen_residual(ones, cw.witness, cw.bound, EigenKind::d_eigen);
  if (res > 1e-10) o.fail("eigen residual " + num(res));
  DenseTensor diag = DenseTensor::cube(3, 4);
  const double lambdas[] = {0.5, 2.5, 1.25};
  for (std::size_t i = 0; i < 3; ++i) diag({i, i, i, i}) = lambdas[i];
  const CollatzWielandtResult cd = collatz_wielandt_bound(diag);
  if (!relative_close(cd.bound, 2.5, 1e-9)) o.fail("diagonal quotient " + num(cd.bound));
  if (o.ok) o.detail = "all-ones 8 (residual " + num(res) + "), diagonal max lambda 2.5";
  return o;
}

Outcome criterion8() {
  Outcome o;
  Rng rng(8008);
  std::size_t checks = 0;
  for (unsigned p = 1; p <= 3; ++p) {
    for (unsigned q = 1; q <= 3; ++q) {
      for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const HomoPoly f = random_poly(rng, n, p);
        const HomoPoly g = random_poly(rng, n, q);
        if (hs_norm(multiply(f, g)) > hs_norm(f) * hs_norm(g) * (1 + 1e-9)) {
          o.fail("product (p,q)=(" + std::to_string(p) + "," + std::to_string(q) + ")");
        }
        // g of degree q in m variables composed with F: R^n -> R^m of degree p
        const std::size_t m = 1 + trial % 3;
        const HomoPoly outer = random_poly(rng, m, q);
        const PolyMap F = random_map(rng, m, n, p);
        if (hs_norm(compose(outer, F)) > hs_norm(outer) * std::pow(hs_norm(F), q) * (1 + 1e-9)) {
          o.fail("composition (p,q)=(" + std::to_string(p) + "," + std::to_string(q) + ")");
        }
        checks += 2;
      }
    }
  }
  if (o.ok) o.detail = std::to_string(checks) + " inequality checks, no violations";
  return o;
}

Outcome criterion9() {
  Outcome o;
  Rng rng(9009);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const HomoPoly f = random_poly(rng, 2, 3);
    ShopmSettings settings;
    settings.seed = static_cast<std::uint64_t>(trial);
    const double s = shopm_lower_bound(f, settings).value;
    const double g = grid_oracle(f).value;
    const double gap = relative_gap(s, g);
    worst = std::max(worst, gap);
    if (gap > 1e-3) o.fail("trial " + std::to_string(trial) + ": shopm " + num(s) + " vs grid " + num(g));
  }
  if (o.ok) o.detail = "50 cubics, worst relative gap " + num(worst);
  return o;
}

Outcome criterion10() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "specbound_acceptance_determinism.json";
  std::ofstream(path) << R"({"n": 3, "p": 4, "terms": [{"j": [4, 0, 0], "c": 1.5}, {"j": [2, 1, 1], "c": -2},
      {"j": [1, 1, 2], "c": 0.75}, {"j": [0, 2, 2], "c": 1}, {"j": [0, 0, 4], "c": -0.5}]})";
  auto run_once = [&](const char* threads) {
    if (threads) {
      setenv("SPECBOUND_THREADS", threads, 1);
    } else {
      unsetenv("SPECBOUND_THREADS");
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run({"bound", path.string(), "--seed", "42"}, out, err);
    if (code != cli::kExitOk) o.fail("exit code " + std::to_string(code) + ": " + err.str());
    return out.str();
  };
  const std::string first = run_once(nullptr);
  for (const char* threads : {static_cast<const char*>(nullptr), "1", "2", "4"}) {
    if (run_once(threads) != first) o.fail(std::string("report differs with threads=") + (threads ? threads : "unset"));
  }
  unsetenv("SPECBOUND_THREADS");
  fs::remove(path);
  if (first.empty()) o.fail("empty report");
  if (o.ok) o.detail = "5 runs, " + std::to_string(first.size()) + "-byte report identical";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // <= 0 means no runtime limit
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "rank-one exactness", 1.0, criterion1},
      {2, "diagonal power sequence", 5.0, criterion2},
      {3, "diagonal map iterates", 1.0, criterion3},
      {4, "matrix baseline", 1.0, criterion4},
      {5, "bracket soundness", 60.0, criterion5},
      {6, "order-3 matrix bound", 5.0, criterion6},
      {7, "Collatz-Wielandt", 1.0, criterion7},
      {8, "product and composition inequalities", 30.0, criterion8},
      {9, "oracle cross-validation", 30.0, criterion9},
      {10, "determinism", 0.0, criterion10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs >= c.limit_s) o.fail("runtime " + num(secs) + " s exceeds " + num(c.limit_s) + " s");
    std::printf("%s criterion %d: %s: %s [%.3f s]\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    if (!o.ok) ++failed;
  }
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
