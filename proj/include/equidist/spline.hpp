#pragma once

#include <vector>

namespace equidist {

/// Natural cubic spline through strictly increasing abscissae; evaluates the
/// interpolant and its first derivative. Queries outside the knot range throw.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> xs, std::vector<double> ys);

  double value(double x) const;
  double derivative(double x) const;
  double x_min() const { return xs_.front(); }
  double x_max() const { return xs_.back(); }

 private:
  std::size_t segment(double x) const;
  std::vector<double> xs_, ys_, m_;  // m_: second derivatives at the knots
};

}  // namespace equidist
