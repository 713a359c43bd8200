#pragma once

#include <stdexcept>
#include <string>

namespace quadloc {

// Base class for every error the library raises on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A factorization ran out of usable pivots before reaching the requested rank.
struct RankDeficientError : Error {
  using Error::Error;
};

// A square matrix inverse was requested but the determinant is numerically zero.
struct SingularMatrixError : Error {
  using Error::Error;
};

// |cos(theta)| dropped below the guard: the Euler angle rate map is not invertible.
struct GimbalSingularityError : Error {
  using Error::Error;
};

// A leg Jacobian determinant is numerically zero (stretched or folded leg).
struct LegSingularityError : Error {
  using Error::Error;
};

// The vertical force component of a wrench vanished: no zero moment point exists.
struct DegenerateWrenchError : Error {
  using Error::Error;
};

// A support polygon was requested with no grounded feet.
struct EmptyPolygonError : Error {
  using Error::Error;
};

// Robot parameter or scenario file could not be parsed / failed validation.
struct ParseError : Error {
  using Error::Error;
};

// A module error escaped during a closed-loop tick; carries the tick index.
struct RuntimeFault : Error {
  RuntimeFault(long tick_index, const std::string& cause)
      : Error("tick " + std::to_string(tick_index) + ": " + cause), tick(tick_index) {}
  long tick;
};

}  // namespace quadloc
