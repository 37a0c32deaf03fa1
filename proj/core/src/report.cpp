#include "specbound/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include "json_writer.hpp"
#include "specbound/errors.hpp"
#include "specbound/hopm.hpp"
#include "specbound/io.hpp"
#include "specbound/oracle.hpp"
#include "specbound/poly.hpp"
#include "specbound/tensor.hpp"

#ifndef SPECBOUND_VERSION_STRING
#define SPECBOUND_VERSION_STRING "v0.0.0-unknown"
#endif

namespace specbound {
namespace {

using detail::Json;

// Largest dense tensor materialized for the tensor-based bounds.
constexpr std::size_t kMaxDenseEntries = std::size_t{1} << 24;

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Runner {
 public:
  Runner(BoundReport& r, const ReportConfig& config) : r_(r), config_(config) {}

  void operator()(const std::string& name, const std::function<void()>& body) {
    if (!config_.enabled(name)) return;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body();
    } catch (const std::exception& e) {
      r_.failures.push_back({name, e.what()});
    }
    if (config_.include_timings) {
      const auto t1 = std::chrono::steady_clock::now();
      r_.timings_ms[name] = std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
  }

 private:
  BoundReport& r_;
  const ReportConfig& config_;
};

ShopmSettings oracle_settings(const ReportConfig& config) {
  ShopmSettings s;
  s.starts = config.starts;
  s.tol = config.tol;
  s.seed = config.seed;
  s.threads = config.threads;
  return s;
}

std::size_t dense_size(std::size_t n, unsigned d) {
  std::size_t total = 1;
  for (unsigned i = 0; i < d; ++i) {
    if (total > kMaxDenseEntries / n) return kMaxDenseEntries + 1;
    total *= n;
  }
  return total;
}

void run_symmetric(BoundReport& r, const HomoPoly& f, const ReportConfig& config) {
  Runner run(r, config);
  const unsigned d = f.degree();
  const std::size_t n = f.dimension();
  const ShopmSettings settings = oracle_settings(config);

  run("hs", [&] {
    r.hs_trivial = hs_norm(f);
    r.upper_bounds.push_back({"hs", *r.hs_trivial});
  });
  run("rho1", [&] {
    r.sequences.push_back(rho1_bounds(f, config.rho1_kmax, config.budget, config.rho1_tol));
    r.upper_bounds.push_back({"rho1", r.sequences.back().best()});
  });
  if (d >= 3) {
    run("rho2", [&] {
      r.sequences.push_back(rho2_bounds(f, config.rho2_kmax, config.budget));
      if (!r.sequences.back().values.empty()) r.upper_bounds.push_back({"rho2", r.sequences.back().best()});
    });
    run("rho3", [&] { r.sequences.push_back(rho3_diagnostic(gradient_map(f), config.rho3_kmax, settings)); });
  }

  std::optional<DenseTensor> tensor;
  auto dense = [&]() -> const DenseTensor& {
    if (!tensor) {
      if (dense_size(n, d) > kMaxDenseEntries) {
        throw ResourceLimitError("dense tensor with n^d = " + std::to_string(n) + "^" + std::to_string(d) +
                                     " entries exceeds the desk-scale limit",
                                 dense_size(n, d), kMaxDenseEntries);
      }
      tensor = to_tensor(f);
    }
    return *tensor;
  };
  if (d >= 3) {
    run("tau_tilde", [&] {
      r.tau_tilde = tau_tilde_bound(dense(), config.budget);
      r.upper_bounds.push_back({"tau_tilde", *r.tau_tilde});
    });
  }
  if (d == 3) {
    run("matrix_d3", [&] {
      r.matrix_d3 = matrix_bound_d3(dense());
      r.upper_bounds.push_back({"matrix_d3", *r.matrix_d3});
    });
  }
  if (d == 2) {
    run("matrix_power", [&] {
      r.sequences.push_back(matrix_power_bounds(dense(), config.matrix_kmax));
      r.upper_bounds.push_back({"matrix_power", r.sequences.back().best()});
    });
  }
  if (d >= 2) {
    run("cw", [&] {
      r.collatz_wielandt = collatz_wielandt_bound(dense());
      // enters the bracket only for nonnegative tensors of even order; for
      // signed tensors rho(|T|) is reported but left out of the minimum
      const auto& entries = dense().data();
      const bool nonnegative = std::all_of(entries.begin(), entries.end(), [](double v) { return v >= 0.0; });
      r.cw_certified = d % 2 == 0 && nonnegative;
      if (r.cw_certified) r.upper_bounds.push_back({"cw", r.collatz_wielandt->bound});
    });
  }

  run("shopm", [&] {
    const ShopmResult s = shopm_lower_bound(f, settings);
    r.oracles.push_back({"shopm", s.value, s.witness, s.residual, s.converged});
  });
  if (n <= 3) {
    run("grid", [&] {
      const GridResult g = grid_oracle(f);
      r.oracles.push_back({"grid", g.value, g.witness, 0.0, true});
    });
  }
}

void run_general(BoundReport& r, const DenseTensor& t, const ReportConfig& config) {
  Runner run(r, config);
  run("hs", [&] {
    r.hs_trivial = hs_norm(t);
    r.upper_bounds.push_back({"hs", *r.hs_trivial});
  });
  if (t.order() == 3) {
    run("matrix_d3", [&] {
      r.matrix_d3 = matrix_bound_d3(t);
      r.upper_bounds.push_back({"matrix_d3", *r.matrix_d3});
    });
  }
  if (t.order() >= 2 && t.is_equidimensional()) {
    // rho(|T|) does not bound the spectral norm of a non-symmetric tensor
    run("cw", [&] { r.collatz_wielandt = collatz_wielandt_bound(t); });
  }
  run("hopm", [&] {
    HopmSettings s;
    s.starts = config.starts;
    s.seed = config.seed;
    s.threads = config.threads;
    const HopmResult h = hopm_spectral_estimate(t, s);
    std::vector<double> witness;
    for (const auto& x : h.factors) witness.insert(witness.end(), x.begin(), x.end());
    r.oracles.push_back({"hopm", h.value, std::move(witness), 0.0, h.stopped_by == HopmStop::converged});
  });
}

void finalize(BoundReport& r) {
  r.upper = std::numeric_limits<double>::infinity();
  r.upper_method = "none";
  for (const auto& ub : r.upper_bounds) {
    if (ub.value < r.upper) {
      r.upper = ub.value;
      r.upper_method = ub.method;
    }
  }
  r.lower = 0.0;
  r.lower_method = "none";
  for (const auto& o : r.oracles) {
    if (o.value > r.lower || r.lower_method == "none") {
      r.lower = o.value;
      r.lower_method = o.method;
    }
  }
  for (const auto& ub : r.upper_bounds) {
    if (r.lower > ub.value + bracket_tolerance(ub.value)) {
      r.violations.push_back(ub.method);
      r.warnings.push_back("lower bound " + format_real(r.lower) + " (" + r.lower_method + ") exceeds certified " +
                           ub.method + " bound " + format_real(ub.value));
    }
  }
}

Json real_array(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json sequence_json(const BoundSequence& s) {
  Json j{{"method", to_string(s.method)},
         {"certified", s.certified},
         {"degenerate", s.degenerate},
         {"terminated_by", to_string(s.terminated_by)},
         {"ks", s.ks},
         {"values", real_array(s.values)},
         {"budget_used", s.budget_used},
         {"best", s.values.empty() ? Json(nullptr) : Json(s.best())}};
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

Json config_json(const ReportConfig& c) {
  Json methods = Json::array();
  for (const auto& m : c.methods) methods.push_back(m);
  return Json{{"rho1_kmax", c.rho1_kmax}, {"rho2_kmax", c.rho2_kmax},     {"rho3_kmax", c.rho3_kmax},
              {"matrix_kmax", c.matrix_kmax}, {"budget", c.budget},       {"seed", c.seed},
              {"starts", c.starts},       {"tol", c.tol},                 {"rho1_tol", c.rho1_tol},
              {"methods", methods.empty() ? Json("all") : methods}};
}

}  // namespace

const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> names{"hs",           "rho1", "rho2",  "rho3", "tau_tilde", "matrix_d3",
                                              "matrix_power", "cw",   "shopm", "grid", "hopm"};
  return names;
}

double bracket_tolerance(double upper) noexcept { return 1e-9 * std::max(1.0, std::abs(upper)); }

bool BoundReport::truncated() const noexcept {
  return std::any_of(sequences.begin(), sequences.end(),
                     [](const BoundSequence& s) { return s.terminated_by == Termination::budget; });
}

const BoundSequence* BoundReport::sequence(BoundMethod m) const noexcept {
  for (const auto& s : sequences) {
    if (s.method == m) return &s;
  }
  return nullptr;
}

std::string version_string() { return SPECBOUND_VERSION_STRING; }

BoundReport assemble_report(const HomoPoly& f, const ReportConfig& config) {
  BoundReport r;
  r.kind = "poly";
  r.n = f.dimension();
  r.d = f.degree();
  r.dims.assign(f.degree(), f.dimension());
  r.symmetric = true;
  r.source = config.source;
  r.input_hash = fnv1a_hex(to_json(f));
  r.config = config;
  run_symmetric(r, f, config);
  finalize(r);
  return r;
}

BoundReport assemble_report(const DenseTensor& t, const ReportConfig& config) {
  BoundReport r;
  r.kind = "tensor";
  r.n = t.dim(0);
  r.d = static_cast<unsigned>(t.order());
  r.dims.assign(t.dims().begin(), t.dims().end());
  r.source = config.source;
  r.input_hash = fnv1a_hex(to_json(t));
  r.config = config;
  r.symmetric = is_symmetric(t);
  if (r.symmetric) {
    run_symmetric(r, to_poly(t), config);
  } else {
    run_general(r, t, config);
  }
  finalize(r);
  return r;
}

std::string report_to_json(const BoundReport& r) {
  Json sequences = Json::array();
  for (const auto& s : r.sequences) sequences.push_back(sequence_json(s));

  Json scalars = Json::object();
  if (r.hs_trivial) scalars["hs_trivial"] = *r.hs_trivial;
  if (r.matrix_d3) scalars["matrix_d3"] = *r.matrix_d3;
  if (r.tau_tilde) scalars["tau_tilde"] = *r.tau_tilde;
  if (r.collatz_wielandt) {
    const auto& cw = *r.collatz_wielandt;
    scalars["collatz_wielandt"] = Json{{"bound", cw.bound},           {"lower", cw.lower},
                                       {"spread", cw.spread},         {"iterations", cw.iterations},
                                       {"converged", cw.converged},   {"certified", r.cw_certified},
                                       {"witness", real_array(cw.witness)}};
  }

  Json estimates = Json::array();
  const OracleEstimate* best = nullptr;
  for (const auto& o : r.oracles) {
    estimates.push_back(Json{{"method", o.method},
                             {"value", o.value},
                             {"residual", o.residual},
                             {"converged", o.converged},
                             {"witness", real_array(o.witness)}});
    if (o.method == r.lower_method && best == nullptr) best = &o;
  }

  Json uppers = Json::array();
  for (const auto& u : r.upper_bounds) uppers.push_back(Json{{"method", u.method}, {"value", u.value}});

  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(Json{{"method", f.method}, {"message", f.message}});

  Json doc{
      {"version", version_string()},
      {"input",
       Json{{"kind", r.kind},
            {"n", r.n},
            {"d", r.d},
            {"dims", r.dims},
            {"symmetric", r.symmetric},
            {"source", r.source},
            {"hash", r.input_hash}}},
      {"config", config_json(r.config)},
      {"seed", r.config.seed},
      {"sequences", std::move(sequences)},
      {"scalar_bounds", std::move(scalars)},
      {"oracle_lower",
       Json{{"value", r.lower},
            {"method", r.lower_method},
            {"witness", best ? real_array(best->witness) : Json::array()},
            {"estimates", std::move(estimates)}}},
      {"bracket",
       Json{{"lower", r.lower},
            {"upper", r.upper},
            {"lower_method", r.lower_method},
            {"upper_method", r.upper_method},
            {"upper_bounds", std::move(uppers)},
            {"violated", r.bracket_violated()},
            {"violations", r.violations}}},
      {"truncated", r.truncated()},
      {"failures", std::move(failures)},
      {"warnings", r.warnings},
  };
  if (r.config.include_timings) {
    Json t = Json::object();
    for (const auto& [k, v] : r.timings_ms) t[k] = v;
    doc["timings_ms"] = std::move(t);
  }
  return detail::write_json(doc) + "\n";
}

std::string report_to_csv(const BoundReport& r) {
  std::ostringstream out;
  out << "method,k,value,terminated_by\n";
  for (const auto& s : r.sequences) {
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      out << to_string(s.method) << ',' << s.ks[i] << ',' << format_real(s.values[i]) << ','
          << to_string(s.terminated_by) << '\n';
    }
  }
  auto scalar = [&](const std::string& name, double v) { out << name << ",," << format_real(v) << ",\n"; };
  if (r.hs_trivial) scalar("hs_trivial", *r.hs_trivial);
  if (r.matrix_d3) scalar("matrix_d3", *r.matrix_d3);
  if (r.tau_tilde) scalar("tau_tilde", *r.tau_tilde);
  if (r.collatz_wielandt) scalar("collatz_wielandt", r.collatz_wielandt->bound);
  for (const auto& o : r.oracles) scalar("oracle_" + o.method, o.value);
  scalar("bracket_lower", r.lower);
  scalar("bracket_upper", r.upper);
  return out.str();
}

std::string report_to_table(const BoundReport& r) {
  std::ostringstream out;
  char line[160];
  out << "specbound " << version_string() << "\n";
  out << "input: " << r.kind << " n=" << r.n << " d=" << r.d << (r.symmetric ? " symmetric" : " general");
  if (!r.source.empty()) out << " (" << r.source << ")";
  out << " hash=" << r.input_hash << " seed=" << r.config.seed << "\n\n";
  for (const auto& s : r.sequences) {
    out << to_string(s.method) << (s.certified ? "" : " [diagnostic]") << "  terminated_by=" << to_string(s.terminated_by)
        << "\n";
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      std::snprintf(line, sizeof line, "  k=%-6u %.12g   terms=%zu\n", s.ks[i], s.values[i], s.budget_used[i]);
      out << line;
    }
    if (!s.note.empty()) out << "  note: " << s.note << "\n";
  }
  auto scalar = [&](const char* name, double v, const char* tag) {
    std::snprintf(line, sizeof line, "%-18s %.12g%s\n", name, v, tag);
    out << line;
  };
  if (r.hs_trivial) scalar("hs_trivial", *r.hs_trivial, "");
  if (r.matrix_d3) scalar("matrix_d3", *r.matrix_d3, "");
  if (r.tau_tilde) scalar("tau_tilde", *r.tau_tilde, "");
  if (r.collatz_wielandt) {
    scalar("collatz_wielandt", r.collatz_wielandt->bound, r.cw_certified ? "" : "  [informational]");
  }
  for (const auto& o : r.oracles) scalar(("lower/" + o.method).c_str(), o.value, "");
  out << "\n";
  std::snprintf(line, sizeof line, "bracket: [%.12g, %.12g]  (lower: %s, upper: %s)\n", r.lower, r.upper,
                r.lower_method.c_str(), r.upper_method.c_str());
  out << line;
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  for (const auto& f : r.failures) out << "failed: " << f.method << ": " << f.message << "\n";
  if (r.config.include_timings) {
    for (const auto& [k, v] : r.timings_ms) {
      std::snprintf(line, sizeof line, "time %-14s %.3f ms\n", k.c_str(), v);
      out << line;
    }
  }
  return out.str();
}

}  // namespace specbound
