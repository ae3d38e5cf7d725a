#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plasmon {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based; 0 when not line-oriented.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// A value breaks a documented invariant of a domain type.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Query outside the tabulated domain (no extrapolation is ever done).
class OutOfRangeError : public Error {
public:
  using Error::Error;
};

/// A Fresnel or transfer-matrix denominator vanished.
class SingularityError : public Error {
public:
  using Error::Error;
};

/// Requested Fock cutoff cannot hold the state to the truncation tolerance.
class TruncationError : public Error {
public:
  using Error::Error;
};

/// Requested Fock cutoff is smaller than the state's support.
class CapacityError : public Error {
public:
  using Error::Error;
};

/// Photon statistics requested for a state with zero mean photon number.
class UndefinedStatisticsError : public Error {
public:
  using Error::Error;
};

/// Negative radicand or non-positive denominator in a closed-form moment.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Precision ratio diverges (vanishing noise of the probe state).
class DivergenceError : public Error {
public:
  using Error::Error;
};

/// Grid scan found the extremum on the boundary of the search interval.
class NoInteriorExtremumError : public Error {
public:
  using Error::Error;
};

/// Signal slope vanishes at the requested operating point.
class DegenerateOperatingPointError : public Error {
public:
  using Error::Error;
};

}  // namespace plasmon
