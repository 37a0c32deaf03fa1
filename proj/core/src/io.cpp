#include "specbound/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json_writer.hpp"
#include "specbound/errors.hpp"

namespace specbound {
namespace {

using detail::Json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where.empty() ? what : where + ": " + what);
}

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::exception& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
}

const Json& member(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::uint64_t as_count(const Json& v, const std::string& where) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    fail(where, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

double as_real(const Json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, "number is not finite");
  return x;
}

const Json& as_array(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array");
  return v;
}

HomoPoly poly_from(const Json& doc, const std::string& where) {
  const auto n = as_count(member(doc, "n", where), where + ".n");
  const auto p = as_count(member(doc, "p", where), where + ".p");
  if (n == 0) fail(where + ".n", "dimension must be positive");
  if (p > 100000) fail(where + ".p", "degree is unreasonably large");
  const Json& terms = as_array(member(doc, "terms", where), where + ".terms");
  std::vector<std::pair<MultiIndex, double>> parsed;
  parsed.reserve(terms.size());
  std::set<std::vector<std::uint32_t>> seen;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string at = where + ".terms[" + std::to_string(t) + "]";
    const Json& j = as_array(member(terms[t], "j", at), at + ".j");
    if (j.size() != n) fail(at + ".j", "has " + std::to_string(j.size()) + " entries, expected n = " + std::to_string(n));
    std::vector<std::uint32_t> e(n);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = as_count(j[i], at + ".j[" + std::to_string(i) + "]");
      if (v > p) fail(at + ".j", "exponent exceeds the degree");
      e[i] = static_cast<std::uint32_t>(v);
      total += v;
    }
    if (total != p) fail(at + ".j", "exponents sum to " + std::to_string(total) + ", expected p = " + std::to_string(p));
    if (!seen.insert(e).second) fail(at + ".j", "duplicate monomial");
    parsed.emplace_back(MultiIndex(std::move(e)), as_real(member(terms[t], "c", at), at + ".c"));
  }
  return HomoPoly::from_terms(n, static_cast<unsigned>(p), std::move(parsed));
}

PolyMap polymap_from(const Json& doc) {
  const auto n = as_count(member(doc, "n", "map"), "map.n");
  const auto m = as_count(member(doc, "m", "map"), "map.m");
  const auto p = as_count(member(doc, "p", "map"), "map.p");
  const Json& coords = as_array(member(doc, "coords", "map"), "map.coords");
  if (m == 0 || coords.size() != m) fail("map.coords", "expected m = " + std::to_string(m) + " coordinates");
  std::vector<HomoPoly> polys;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const std::string at = "map.coords[" + std::to_string(i) + "]";
    HomoPoly f = poly_from(coords[i], at);
    if (f.dimension() != n || f.degree() != p) fail(at, "does not match (n, p) of the map");
    polys.push_back(std::move(f));
  }
  return PolyMap(std::move(polys));
}

DenseTensor tensor_from(const Json& doc) {
  const Json& dims_json = as_array(member(doc, "dims", "tensor"), "tensor.dims");
  if (dims_json.empty()) fail("tensor.dims", "at least one mode is required");
  std::vector<std::size_t> dims;
  std::size_t total = 1;
  for (std::size_t i = 0; i < dims_json.size(); ++i) {
    const auto v = as_count(dims_json[i], "tensor.dims[" + std::to_string(i) + "]");
    if (v == 0) fail("tensor.dims", "dimensions must be positive");
    if (total > (std::size_t{1} << 32) / v) fail("tensor.dims", "tensor is too large");
    total *= v;
    dims.push_back(v);
  }
  const bool has_entries = doc.contains("entries");
  const bool has_dense = doc.contains("dense");
  if (has_entries == has_dense) fail("tensor", "exactly one of \"entries\" and \"dense\" must be present");
  if (has_dense) {
    const Json& dense = as_array(doc["dense"], "tensor.dense");
    if (dense.size() != total) {
      fail("tensor.dense", "has " + std::to_string(dense.size()) + " values, expected " + std::to_string(total));
    }
    std::vector<double> data(total);
    for (std::size_t i = 0; i < total; ++i) data[i] = as_real(dense[i], "tensor.dense[" + std::to_string(i) + "]");
    return DenseTensor(std::move(dims), std::move(data));
  }
  DenseTensor t(dims);
  std::vector<bool> seen(total, false);
  const Json& entries = as_array(doc["entries"], "tensor.entries");
  std::vector<std::size_t> idx(dims.size());
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string at = "tensor.entries[" + std::to_string(e) + "]";
    const Json& ij = as_array(member(entries[e], "idx", at), at + ".idx");
    if (ij.size() != dims.size()) fail(at + ".idx", "must have one index per mode");
    for (std::size_t m = 0; m < dims.size(); ++m) {
      const auto v = as_count(ij[m], at + ".idx");
      if (v < 1 || v > dims[m]) fail(at + ".idx", "index out of range (indices are 1-based)");
      idx[m] = v - 1;
    }
    const std::size_t flat = t.flat_index(idx);
    if (seen[flat]) fail(at + ".idx", "duplicate entry");
    seen[flat] = true;
    t.data()[flat] = as_real(member(entries[e], "v", at), at + ".v");
  }
  return t;
}

Json poly_json(const HomoPoly& f) {
  Json terms = Json::array();
  for (std::size_t t = 0; t < f.num_terms(); ++t) {
    const auto e = f.exponents(t);
    terms.push_back(Json{{"j", Json(std::vector<std::uint32_t>(e.begin(), e.end()))}, {"c", f.coefficient(t)}});
  }
  return Json{{"n", f.dimension()}, {"p", f.degree()}, {"terms", std::move(terms)}};
}

}  // namespace

InputObject parse_input(std::string_view text) {
  const Json doc = parse_document(text);
  if (!doc.is_object()) throw InputError("top-level JSON value must be an object");
  if (doc.contains("coords")) return polymap_from(doc);
  if (doc.contains("terms")) return poly_from(doc, "poly");
  if (doc.contains("dims")) return tensor_from(doc);
  throw InputError("unrecognized input: expected \"terms\" (polynomial), \"coords\" (map) or \"dims\" (tensor)");
}

HomoPoly parse_poly(std::string_view text) { return poly_from(parse_document(text), "poly"); }
PolyMap parse_polymap(std::string_view text) { return polymap_from(parse_document(text)); }
DenseTensor parse_tensor(std::string_view text) { return tensor_from(parse_document(text)); }

InputObject load_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_input(buf.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string to_json(const HomoPoly& f) { return detail::write_json(poly_json(f)) + "\n"; }

std::string to_json(const PolyMap& F) {
  Json coords = Json::array();
  for (const auto& c : F.coords()) coords.push_back(poly_json(c));
  return detail::write_json(Json{{"n", F.input_dim()},
                                 {"m", F.output_dim()},
                                 {"p", F.degree()},
                                 {"coords", std::move(coords)}}) +
         "\n";
}

std::string to_json(const DenseTensor& t, bool dense) {
  Json doc{{"dims", Json(std::vector<std::size_t>(t.dims().begin(), t.dims().end()))}};
  if (dense) {
    doc["dense"] = Json(std::vector<double>(t.data().begin(), t.data().end()));
  } else {
    Json entries = Json::array();
    std::vector<std::size_t> idx(t.order());
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
      if (t.data()[flat] == 0.0) continue;
      t.unravel(flat, idx);
      for (auto& i : idx) ++i;
      entries.push_back(Json{{"idx", Json(idx)}, {"v", t.data()[flat]}});
    }
    doc["entries"] = std::move(entries);
  }
  return detail::write_json(doc) + "\n";
}

std::string to_json(const InputObject& obj) {
  return std::visit([](const auto& v) { return to_json(v); }, obj);
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace specbound
