#pragma once

#include <stdexcept>
#include <string>

namespace heatlevel {

/// Precondition violated by the caller (bad interval, t <= 0, L == 0, ...).
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A function returned a non-finite value at a sampled node.
class EvaluationError : public std::runtime_error {
public:
  EvaluationError(const std::string& what, double node)
      : std::runtime_error(what), node_(node) {}
  double node() const noexcept { return node_; }

private:
  double node_;
};

/// Adaptive quadrature hit its subdivision limit. The best estimate so far is
/// kept so callers can decide whether it is usable.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
      : std::runtime_error(what), best_(best_estimate), error_(error_estimate) {}
  double best_estimate() const noexcept { return best_; }
  double error_estimate() const noexcept { return error_; }

private:
  double best_;
  double error_;
};

/// The sign structure a construction relies on was not found.
class StructureError : public std::runtime_error {
public:
  StructureError(const std::string& what, std::string trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::string& trace() const noexcept { return trace_; }

private:
  std::string trace_;
};

class UnsupportedDimension : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace heatlevel
