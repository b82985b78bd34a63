#ifndef HACCV_COMMON_HPP
#define HACCV_COMMON_HPP

#include <stdexcept>
#include <string>

namespace haccv {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Invalid configuration or arguments (bad order, bad alpha, dimension mismatch).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or unusable input data (CSV problems, missing columns, too few rows).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure: singular systems, failed factorizations, non-finite input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace haccv

#endif
