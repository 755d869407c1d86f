#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pathchain {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arrow of the form (v, v); the arrow set excludes the diagonal.
class SelfLoopError : public Error {
 public:
  explicit SelfLoopError(std::string token, std::size_t line = 0)
      : Error(line == 0
                  ? "self-loop at vertex '" + token + "'"
                  : "self-loop at vertex '" + token + "' on line " + std::to_string(line)),
        token_(std::move(token)),
        line_(line) {}

  const std::string& token() const noexcept { return token_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string token_;
  std::size_t line_;
};

class UnknownVertexError : public Error {
 public:
  explicit UnknownVertexError(const std::string& what) : Error("unknown vertex: " + what) {}
};

/// induced_from_to requires disjoint source and target sets.
class OverlappingSetsError : public Error {
 public:
  OverlappingSetsError() : Error("vertex sets overlap") {}
};

class UnknownEdgeError : public Error {
 public:
  explicit UnknownEdgeError(const std::string& what) : Error("unknown edge: " + what) {}
};

class EdgeInForestError : public Error {
 public:
  explicit EdgeInForestError(const std::string& what)
      : Error("edge lies in the spanning forest: " + what) {}
};

class NotAClusterError : public Error {
 public:
  NotAClusterError() : Error("chain is not a single (a,b)-cluster") {}
};

class DegreeMismatchError : public Error {
 public:
  DegreeMismatchError() : Error("chains have mismatching degrees") {}
};

class NotAPartitionError : public Error {
 public:
  explicit NotAPartitionError(const std::string& why) : Error("not a partition: " + why) {}
};

class OrderTooSmallError : public Error {
 public:
  explicit OrderTooSmallError(std::size_t m)
      : Error("trapezohedron order must be at least 2, got " + std::to_string(m)) {}
};

/// Enumeration or materialization exceeded a configured budget.
class BudgetExceededError : public Error {
 public:
  explicit BudgetExceededError(std::size_t count)
      : Error("budget exceeded at count " + std::to_string(count)), count_(count) {}

  std::size_t count() const noexcept { return count_; }

 private:
  std::size_t count_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string reason)
      : Error("parse error on line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(std::move(reason)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& reason) : Error("schema error: " + reason) {}
};

}  // namespace pathchain
