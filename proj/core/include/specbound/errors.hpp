#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace specbound {

/// Raised when an operation would store more monomials than its budget allows.
class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(const std::string& what, std::size_t required, std::size_t limit)
      : std::runtime_error(what), required_(required), limit_(limit) {}

  std::size_t required() const noexcept { return required_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t required_;
  std::size_t limit_;
};

/// Malformed or inconsistent input files (JSON syntax, schema, shapes).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace specbound
