#include "specbound/dense_tensor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace specbound {
namespace {

std::size_t checked_product(std::span<const std::size_t> dims) {
  std::size_t total = 1;
  for (auto d : dims) {
    if (d == 0) throw std::invalid_argument("DenseTensor: dimensions must be positive");
    if (total > (std::size_t{1} << 40) / d) throw std::invalid_argument("DenseTensor: tensor too large");
    total *= d;
  }
  return total;
}

}  // namespace

DenseTensor::DenseTensor(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("DenseTensor: at least one mode is required");
  data_.assign(checked_product(dims_), 0.0);
  strides_.assign(dims_.size(), 1);
  for (std::size_t k = dims_.size() - 1; k-- > 0;) strides_[k] = strides_[k + 1] * dims_[k + 1];
}

DenseTensor::DenseTensor(std::vector<std::size_t> dims, std::vector<double> data) : DenseTensor(std::move(dims)) {
  if (data.size() != data_.size()) {
    throw std::invalid_argument("DenseTensor: " + std::to_string(data.size()) + " entries for a tensor of size " +
                                std::to_string(data_.size()));
  }
  data_ = std::move(data);
}

bool DenseTensor::is_equidimensional() const noexcept {
  return std::ranges::all_of(dims_, [&](std::size_t d) { return d == dims_.front(); });
}

bool DenseTensor::has_equal_trailing_dims() const noexcept {
  return dims_.size() < 2 || std::all_of(dims_.begin() + 1, dims_.end(), [&](std::size_t d) { return d == dims_[1]; });
}

std::size_t DenseTensor::flat_index(std::span<const std::size_t> idx) const {
  if (idx.size() != dims_.size()) throw std::invalid_argument("DenseTensor: index has wrong number of modes");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= dims_[k]) throw std::out_of_range("DenseTensor: index out of range");
    flat += idx[k] * strides_[k];
  }
  return flat;
}

void DenseTensor::unravel(std::size_t flat, std::span<std::size_t> idx) const noexcept {
  for (std::size_t k = dims_.size(); k-- > 0;) {
    idx[k] = flat % dims_[k];
    flat /= dims_[k];
  }
}

}  // namespace specbound
