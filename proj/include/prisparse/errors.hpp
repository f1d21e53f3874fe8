#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prisparse {

// Base of every error this library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Graph construction violated an invariant (self-loop, duplicate edge, ...).
class GraphError : public Error {
 public:
  using Error::Error;
};

// Some required vertex pair has no connecting path.
class Disconnected : public Error {
 public:
  using Error::Error;
};

class UnknownEdge : public Error {
 public:
  using Error::Error;
};

class NoTerminals : public Error {
 public:
  using Error::Error;
};

class InvalidStrategyForFamily : public Error {
 public:
  using Error::Error;
};

class IncompatibleSolver : public Error {
 public:
  using Error::Error;
};

// Internal assertion of the tree merge; reaching it is a bug.
class PruningDisconnected : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

// Line-anchored input error. line == 0 means "not tied to a line".
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace prisparse
