#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cantorv {

// Base of every domain error raised by the engine. The CLI maps these to
// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed algebra-specification text; carries a 1-based line/column.
class SpecError : public Error {
 public:
  SpecError(std::string const& msg, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class SpecMismatch : public Error {
 public:
  SpecMismatch() : Error("objects belong to different algebra specifications") {}
};

// A leaf set that partitions the root cuboids but is not reachable from X.
class NotAdmissible : public Error {
 public:
  using Error::Error;
};

class NotComparable : public Error {
 public:
  using Error::Error;
};

// Soundness alarm: the lub construction produced something that is not an
// upper bound. Never expected for Brin-like specifications.
class NotBounded : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class IterationCapExceeded : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace cantorv
