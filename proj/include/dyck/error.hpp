#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dyck {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph, script or word text. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Strict update semantics: inserting a present edge or deleting an absent one.
class UpdateError : public Error {
 public:
  using Error::Error;
};

/// An operation was handed an instance it does not accept (wrong alphabet,
/// wrong direction mode, missing partition, stale index...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A structural property that must hold by construction was violated
/// (for example a malformed nominal segment).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace dyck
