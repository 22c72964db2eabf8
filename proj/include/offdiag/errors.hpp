#ifndef OFFDIAG_ERRORS_HPP
#define OFFDIAG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace offdiag {

// Iterative routine ran out of its iteration budget. Carries the best
// estimate reached so far.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, double best)
        : std::runtime_error(what), best_estimate(best) {}
    double best_estimate;
};

class SingularMatrixError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class CapacityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DegenerateInputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace offdiag

#endif
