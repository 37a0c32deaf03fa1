#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "specbound/dense_tensor.hpp"
#include "specbound/homo_poly.hpp"
#include "specbound/poly_map.hpp"

namespace specbound {

/// Any object the file formats describe.
using InputObject = std::variant<HomoPoly, PolyMap, DenseTensor>;

/// Parses one JSON document. The kind is detected from its keys:
///   polynomial  {"n", "p", "terms": [{"j": [...], "c": x}, ...]}
///   map         {"n", "m", "p", "coords": [<polynomial>, ...]}
///   tensor      {"dims": [...], "entries": [{"idx": [...], "v": x}, ...]}
///               or {"dims": [...], "dense": [...]} (row-major)
/// Tensor indices are one-based. Malformed input raises InputError.
InputObject parse_input(std::string_view text);
HomoPoly parse_poly(std::string_view text);
PolyMap parse_polymap(std::string_view text);
DenseTensor parse_tensor(std::string_view text);

/// Reads and parses a file; I/O failures also raise InputError.
InputObject load_input(const std::filesystem::path& path);

/// Canonical JSON (graded-lex terms, 17 significant digits).
std::string to_json(const HomoPoly& f);
std::string to_json(const PolyMap& F);
/// Sparse "entries" layout unless `dense` is set.
std::string to_json(const DenseTensor& t, bool dense = false);
std::string to_json(const InputObject& obj);

/// 64-bit FNV-1a hash of a byte string, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace specbound
