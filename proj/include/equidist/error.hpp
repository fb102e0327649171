#pragma once

#include <stdexcept>
#include <string>

namespace equidist {

/// Violated precondition or malformed input. The CLI maps this to exit code 2.
class invalid_input : public std::invalid_argument {
 public:
  explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

/// An iterative routine ran out of budget. Carries the best bracket found so far.
class no_convergence : public std::runtime_error {
 public:
  no_convergence(const std::string& what, double best_lo, double best_hi)
      : std::runtime_error(what), best_lo(best_lo), best_hi(best_hi) {}
  double best_lo;
  double best_hi;
};

}  // namespace equidist
