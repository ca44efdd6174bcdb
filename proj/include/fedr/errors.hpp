#pragma once

#include <stdexcept>
#include <string>

namespace fedr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

/// Prepared meter state lost more probability mass to truncation than allowed.
class NormDeficitExceeded : public Error {
 public:
  NormDeficitExceeded(double deficit, double tail_tol, int n_max);
  double deficit() const noexcept { return deficit_; }

 private:
  double deficit_;
};

class CutoffCeilingExceeded : public Error {
 public:
  using Error::Error;
};

/// sin(2g) vanishes: the meter carries no shift and the error diverges.
class CalibrationSingular : public Error {
 public:
  using Error::Error;
};

class ZeroMeanSx : public Error {
 public:
  using Error::Error;
};

class QuadratureNotConverged : public Error {
 public:
  using Error::Error;
};

}  // namespace fedr
