#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace specbound {

/// Dense d-mode real tensor, row-major (last index fastest). Indices are
/// zero-based in the API; the JSON format uses one-based indices.
class DenseTensor {
 public:
  explicit DenseTensor(std::vector<std::size_t> dims);
  DenseTensor(std::vector<std::size_t> dims, std::vector<double> data);

  /// Zero tensor in the d-fold tensor power of R^n.
  static DenseTensor cube(std::size_t n, std::size_t d) { return DenseTensor(std::vector<std::size_t>(d, n)); }
  static DenseTensor matrix(std::size_t rows, std::size_t cols, std::vector<double> data) {
    return DenseTensor({rows, cols}, std::move(data));
  }

  std::size_t order() const noexcept { return dims_.size(); }
  std::size_t dim(std::size_t mode) const { return dims_[mode]; }
  std::span<const std::size_t> dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_equidimensional() const noexcept;
  /// Modes 1..d-1 share one dimension (the R^m (x) (R^n)^{(x)p} shape).
  bool has_equal_trailing_dims() const noexcept;

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  std::size_t flat_index(std::span<const std::size_t> idx) const;
  void unravel(std::size_t flat, std::span<std::size_t> idx) const noexcept;

  double operator()(std::span<const std::size_t> idx) const { return data_[flat_index(idx)]; }
  double& operator()(std::span<const std::size_t> idx) { return data_[flat_index(idx)]; }
  double operator()(std::initializer_list<std::size_t> idx) const {
    return (*this)(std::span<const std::size_t>(idx.begin(), idx.size()));
  }
  double& operator()(std::initializer_list<std::size_t> idx) {
    return (*this)(std::span<const std::size_t>(idx.begin(), idx.size()));
  }

  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::vector<double> data_;
};

}  // namespace specbound
