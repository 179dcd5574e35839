#pragma once

#include <stdexcept>
#include <string>

namespace nonrecip {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two field points closer than the configured coincidence epsilon.
class CoincidentPointsError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation (e.g. omega <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The Clausius-Mossotti denominator vanished at the reported frequency.
class ResonanceError : public Error {
 public:
  ResonanceError(const std::string& what, double omega)
      : Error(what), omega_(omega) {}
  double omega() const noexcept { return omega_; }

 private:
  double omega_;
};

/// Adaptive quadrature ran out of subdivisions before reaching tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved, double requested)
      : Error(what), achieved_(achieved), requested_(requested) {}
  double achieved() const noexcept { return achieved_; }
  double requested() const noexcept { return requested_; }

 private:
  double achieved_;
  double requested_;
};

/// Scene geometry does not match the requested closed-form orientation.
class OrientationError : public Error {
 public:
  using Error::Error;
};

/// Invalid JSON configuration; the message carries the offending field path.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace nonrecip
