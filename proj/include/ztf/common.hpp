#pragma once

#include <complex>
#include <stdexcept>

namespace ztf {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Malformed arguments: bad radii, empty windows, invalid exponents, ...
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Operands living on incompatible dimensions, boxes, or grids.
class DimensionMismatch : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

/// Textual input (JSON/CSV) that cannot be decoded.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace ztf
