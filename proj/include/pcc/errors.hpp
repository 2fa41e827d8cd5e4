#pragma once

#include <stdexcept>
#include <string>

namespace pcc {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input text could not be parsed; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// Collection exceeded its step cutoff. Reported distinctly from other
/// failures: it signals an inconsistent or pathological presentation, or
/// a cutoff too small for the input.
class StepLimitError : public Error {
 public:
  explicit StepLimitError(long long limit)
      : Error("step limit exceeded after " + std::to_string(limit) + " steps"),
        limit_(limit) {}

  long long limit() const { return limit_; }

 private:
  long long limit_;
};

/// A configured group-order (or enumeration-size) ceiling was exceeded.
class CeilingError : public Error {
 public:
  CeilingError(long long value, long long ceiling)
      : Error("size " + std::to_string(value) + " exceeds ceiling " +
              std::to_string(ceiling)),
        value_(value),
        ceiling_(ceiling) {}

  long long value() const { return value_; }
  long long ceiling() const { return ceiling_; }

 private:
  long long value_;
  long long ceiling_;
};

/// An operation was invoked outside its stated contract.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace pcc
