#ifndef ERANK_ERRORS_HPP
#define ERANK_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace erank {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

// Raised when an operation needs an existential formula (no `<`, negation only on atoms).
class NotExistentialError : public Error {
public:
  using Error::Error;
};

// The requested structure cannot be evaluated, or a construction does not apply to it.
class UnsupportedProfileError : public Error {
public:
  using Error::Error;
};

// An enumeration or rewriting limit was hit.
class CapExceededError : public Error {
public:
  using Error::Error;
};

class InvalidArgumentError : public Error {
public:
  using Error::Error;
};

} // namespace erank

#endif
