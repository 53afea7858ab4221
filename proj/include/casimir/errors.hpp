#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A formula that the library deliberately does not extrapolate
/// (e.g. Minkowski stress in a magnetic interspace).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Floating-point breakdown (zero denominator, NaN from an integrand).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An integrand returned a non-finite value at `abscissa`.
class NonFiniteError : public NumericError {
 public:
  NonFiniteError(const std::string& what, double abscissa)
      : NumericError(what), abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

/// Two independent evaluation routes disagree beyond their error bars.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent run configuration. Line/column are 1-based,
/// zero when the error is not tied to a source position.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    if (line <= 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }
  int line_;
  int column_;
};

}  // namespace casimir
