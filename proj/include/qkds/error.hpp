#pragma once

#include <stdexcept>
#include <string>

namespace qkds {

/// An argument violated a domain guard (mu, eta, trials, grid shape, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class SolverFailure { NoSignChange, MaxIterationsExceeded, Infeasible };

inline const char* to_string(SolverFailure f) {
  switch (f) {
    case SolverFailure::NoSignChange: return "NoSignChange";
    case SolverFailure::MaxIterationsExceeded: return "MaxIterationsExceeded";
    case SolverFailure::Infeasible: return "Infeasible";
  }
  return "Unknown";
}

class SolverError : public std::runtime_error {
 public:
  SolverError(SolverFailure failure, const std::string& what)
      : std::runtime_error(std::string(to_string(failure)) + ": " + what), failure_(failure) {}

  SolverFailure failure() const noexcept { return failure_; }

 private:
  SolverFailure failure_;
};

}  // namespace qkds
