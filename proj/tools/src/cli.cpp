#include "specbound/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <variant>

#include <CLI11.hpp>

#include "specbound/bounds.hpp"
#include "specbound/errors.hpp"
#include "specbound/io.hpp"
#include "specbound/parallel.hpp"
#include "specbound/poly.hpp"
#include "specbound/report.hpp"
#include "specbound/tensor.hpp"

namespace specbound::cli {
namespace {

struct Options {
  std::string input;
  std::string output;
  std::string format = "json";
  std::string methods;
  std::string to;
  ReportConfig config;
  bool strict = false;
  bool dense = false;
};

void add_report_options(CLI::App* cmd, Options& o) {
  cmd->add_option("file", o.input, "Input JSON file (polynomial, map or tensor)")->required();
  cmd->add_option("--kmax", o.config.rho1_kmax, "Largest power k in the rho1 doubling schedule")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rho2-kmax", o.config.rho2_kmax, "Largest iterate k for rho2 and rho3")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--matrix-kmax", o.config.matrix_kmax, "Largest power k for the matrix baseline")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--budget", o.config.budget, "Monomial budget per polynomial")->capture_default_str();
  cmd->add_option("--seed", o.config.seed, "64-bit seed for the multistart oracles")->capture_default_str();
  cmd->add_option("--starts", o.config.starts, "Oracle multistart count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", o.config.tol, "Oracle fixed-point residual tolerance")->capture_default_str();
  cmd->add_option("--rho1-tol", o.config.rho1_tol, "Stop rho1 once consecutive values agree to this")
      ->capture_default_str();
  cmd->add_option("--methods", o.methods, "Comma-separated subset of methods to run");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}))->capture_default_str();
  cmd->add_option("-o,--output", o.output, "Write the report to this file instead of stdout");
  cmd->add_flag("--strict", o.strict, "Exit with code 4 when a sequence is truncated by the budget");
  cmd->add_flag("--timings", o.config.include_timings, "Include per-method wall-clock times");
}

std::set<std::string> parse_methods(const std::string& list) {
  std::set<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (item.empty()) continue;
    const auto& known = known_methods();
    if (std::find(known.begin(), known.end(), item) == known.end()) {
      throw InputError("unknown method \"" + item + "\"");
    }
    out.insert(item);
  }
  return out;
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw InputError("cannot write " + o.output);
  f << text;
}

std::string render(const BoundReport& r, const std::string& format) {
  if (format == "csv") return report_to_csv(r);
  if (format == "table") return report_to_table(r);
  return report_to_json(r);
}

// Report for a square polynomial map: rho2 and rho3 of the map itself.
BoundReport map_report(const PolyMap& F, const ReportConfig& config) {
  BoundReport r;
  r.kind = "map";
  r.n = F.input_dim();
  r.d = F.degree() + 1;
  r.dims.assign(F.degree(), F.input_dim());
  r.dims.insert(r.dims.begin(), F.output_dim());
  r.symmetric = false;
  r.source = config.source;
  r.input_hash = fnv1a_hex(to_json(F));
  r.config = config;
  if (config.enabled("rho2")) r.sequences.push_back(rho2_bounds(F, config.rho2_kmax, config.budget));
  if (config.enabled("rho3")) {
    ShopmSettings s;
    s.starts = config.starts;
    s.tol = config.tol;
    s.seed = config.seed;
    s.threads = config.threads;
    r.sequences.push_back(rho3_diagnostic(F, config.rho3_kmax, s));
  }
  r.upper = hs_norm(F);
  r.upper_method = "hs";
  r.lower_method = "none";
  return r;
}

int run_report(const Options& base, const std::set<std::string>& forced, std::ostream& out) {
  Options o = base;
  o.config.methods = forced.empty() ? parse_methods(o.methods) : forced;
  o.config.source = std::filesystem::path(o.input).filename().string();
  o.config.threads = threads_from_env();
  const InputObject input = load_input(o.input);
  BoundReport r;
  if (const auto* f = std::get_if<HomoPoly>(&input)) {
    r = assemble_report(*f, o.config);
  } else if (const auto* t = std::get_if<DenseTensor>(&input)) {
    r = assemble_report(*t, o.config);
  } else {
    if (forced.count("rho2") == 0) {
      throw InputError("polynomial maps are only accepted by the rho2 command");
    }
    ReportConfig c = o.config;
    c.methods = {"rho2", "rho3"};
    r = map_report(std::get<PolyMap>(input), c);
  }
  emit(render(r, o.format), o, out);
  if (r.bracket_violated()) return kExitBracketViolation;
  if (o.strict && r.truncated()) return kExitBudgetTruncated;
  return kExitOk;
}

int run_convert(const Options& o, std::ostream& out) {
  const InputObject input = load_input(o.input);
  std::string text;
  if (const auto* f = std::get_if<HomoPoly>(&input)) {
    if (o.to == "poly") {
      text = to_json(*f);
    } else {
      if (f->degree() == 0) throw InputError("a constant polynomial has no tensor form");
      text = to_json(to_tensor(*f), o.dense);
    }
  } else if (const auto* t = std::get_if<DenseTensor>(&input)) {
    if (o.to == "tensor") {
      text = to_json(*t, o.dense);
    } else {
      if (!is_symmetric(*t)) throw InputError("only symmetric tensors convert to a polynomial");
      text = to_json(to_poly(*t));
    }
  } else {
    throw InputError("convert handles polynomials and tensors only");
  }
  emit(text, o, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified upper bounds and oracle lower bounds for spectral norms of symmetric tensors"};
  app.name("specbound");
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  Options o;
  auto* bound = app.add_subcommand("bound", "Run the full bound battery and print a report");
  add_report_options(bound, o);
  auto* rho1 = app.add_subcommand("rho1", "Power sequence ||f^k||_HS^(1/k) only");
  add_report_options(rho1, o);
  auto* rho2 = app.add_subcommand("rho2", "Gradient-map (or polynomial-map) iterate sequence only");
  add_report_options(rho2, o);
  auto* cw = app.add_subcommand("cw", "Collatz-Wielandt bound only");
  add_report_options(cw, o);
  auto* matrix3 = app.add_subcommand("matrix3", "Order-3 quadratic-form matrix bound only");
  add_report_options(matrix3, o);
  auto* demo = app.add_subcommand("demo", "Check the built-in closed-form cases");
  auto* convert = app.add_subcommand("convert", "Convert between polynomial and symmetric-tensor JSON");
  convert->add_option("file", o.input, "Input JSON file")->required();
  convert->add_option("--to", o.to, "Target kind (default: the other kind)")->check(CLI::IsMember({"poly", "tensor"}));
  convert->add_flag("--dense", o.dense, "Write tensors in the dense row-major layout");
  convert->add_option("-o,--output", o.output, "Write to this file instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << version_string() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* failing = &app;
    for (auto* sub : app.get_subcommands()) failing = sub;
    err << failing->help();
    return kExitInputError;
  }

  try {
    if (demo->parsed()) return run_demo(out);
    if (convert->parsed()) return run_convert(o, out);
    if (bound->parsed()) return run_report(o, {}, out);
    if (rho1->parsed()) return run_report(o, {"rho1"}, out);
    if (rho2->parsed()) return run_report(o, {"rho2"}, out);
    if (cw->parsed()) return run_report(o, {"cw"}, out);
    if (matrix3->parsed()) return run_report(o, {"matrix_d3"}, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace specbound::cli
