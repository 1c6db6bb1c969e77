#pragma once

#include <stdexcept>
#include <string>

namespace oamloop {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's mathematical domain.
class DomainError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string &what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

class NormalizationError : public Error {
public:
  using Error::Error;
};

/// Gradient requested where the orbital is not differentiable (r = 0).
class SingularPointError : public Error {
public:
  using Error::Error;
};

/// Integrator or quadrature failed its own accuracy monitor.
class NumericalError : public Error {
public:
  using Error::Error;
};

} // namespace oamloop
