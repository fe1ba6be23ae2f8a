#pragma once

#include <stdexcept>
#include <string>

namespace divlab {

// Error taxonomy mirrored by the C API status codes.

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& m) : std::runtime_error(m) {}
};

struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& m) : std::runtime_error(m) {}
};

struct OverflowError : std::runtime_error {
  explicit OverflowError(const std::string& m) : std::runtime_error(m) {}
};

struct UnsupportedError : std::runtime_error {
  explicit UnsupportedError(const std::string& m) : std::runtime_error(m) {}
};

struct PoleError : std::runtime_error {
  explicit PoleError(const std::string& m) : std::runtime_error(m) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& m) : std::runtime_error(m) {}
};

struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace divlab
