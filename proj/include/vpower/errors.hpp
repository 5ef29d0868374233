#pragma once

#include <stdexcept>
#include <string>

namespace vpower {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid rule, dataset contents or flag combination.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The requested computation exceeds what the chosen backend can handle.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A backend was forced on a rule it cannot evaluate.
class DispatchError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// No grid row satisfies an optimization constraint.
class NoSolutionError : public Error {
 public:
  using Error::Error;
};

}  // namespace vpower
