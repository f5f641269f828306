#ifndef MIXKIT_ERRORS_HPP_
#define MIXKIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace mixkit {

// Malformed or out-of-tolerance input (CLI exit code 1).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A request whose exact computation exceeds a configured enumeration limit
// (CLI exit code 2).
class SizeRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when the SDP iteration budget runs out. The best strictly feasible
// primal value is still a valid upper-bound certificate for c(Gamma).
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double best_feasible_value, double feasibility_margin)
      : std::runtime_error(what),
        best_feasible_value_(best_feasible_value),
        feasibility_margin_(feasibility_margin) {}

  double best_feasible_value() const { return best_feasible_value_; }
  double feasibility_margin() const { return feasibility_margin_; }

 private:
  double best_feasible_value_;
  double feasibility_margin_;
};

}  // namespace mixkit

#endif  // MIXKIT_ERRORS_HPP_
