#include "specbound/poly_map.hpp"

#include <stdexcept>
#include <string>

namespace specbound {

PolyMap::PolyMap(std::vector<HomoPoly> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("PolyMap: at least one coordinate is required");
  const auto n = coords_.front().dimension();
  const auto p = coords_.front().degree();
  for (std::size_t i = 1; i < coords_.size(); ++i) {
    if (coords_[i].dimension() != n || coords_[i].degree() != p) {
      throw std::invalid_argument("PolyMap: coordinate " + std::to_string(i) + " has (n, p) = (" +
                                  std::to_string(coords_[i].dimension()) + ", " +
                                  std::to_string(coords_[i].degree()) + "), expected (" + std::to_string(n) +
                                  ", " + std::to_string(p) + ")");
    }
  }
}

PolyMap PolyMap::identity(std::size_t n) {
  std::vector<HomoPoly> coords;
  coords.reserve(n);
  for (std::size_t i = 0; i < n; ++i) coords.push_back(HomoPoly::monomial(MultiIndex::unit(n, i), 1.0));
  return PolyMap(std::move(coords));
}

PolyMap PolyMap::linear(std::size_t m, std::size_t n, std::span<const double> row_major) {
  if (row_major.size() != m * n) throw std::invalid_argument("PolyMap::linear: matrix size mismatch");
  std::vector<HomoPoly> coords;
  coords.reserve(m);
  for (std::size_t i = 0; i < m; ++i) coords.push_back(HomoPoly::linear_form(row_major.subspan(i * n, n)));
  return PolyMap(std::move(coords));
}

std::size_t PolyMap::num_terms() const noexcept {
  std::size_t total = 0;
  for (const auto& c : coords_) total += c.num_terms();
  return total;
}

PolyMap PolyMap::scaled(double s) const {
  std::vector<HomoPoly> coords;
  coords.reserve(coords_.size());
  for (const auto& c : coords_) coords.push_back(c.scaled(s));
  return PolyMap(std::move(coords));
}

}  // namespace specbound
