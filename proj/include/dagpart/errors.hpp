#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dagpart/types.hpp"

namespace dagpart {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph or partition file. line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Input digraph is not acyclic. cycle() lists the nodes of one cycle in edge order.
class CycleError : public Error {
 public:
  CycleError(const std::string& what, std::vector<NodeId> cycle)
      : Error(what), cycle_(std::move(cycle)) {}
  const std::vector<NodeId>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<NodeId> cycle_;
};

/// The quotient graph of a partition contains a cycle (of blocks).
class CyclicQuotientError : public Error {
 public:
  CyclicQuotientError(const std::string& what, std::vector<BlockId> cycle)
      : Error(what), cycle_(std::move(cycle)) {}
  const std::vector<BlockId>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<BlockId> cycle_;
};

/// No feasible partition can exist (or none exists, when raised by the exact solver).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// The randomized construction could not produce a feasible partition.
class ConstructionInfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Contradictory or out-of-range parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace dagpart
