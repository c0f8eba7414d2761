#ifndef BERGLAB_QUADRATURE_HPP
#define BERGLAB_QUADRATURE_HPP

#include <cmath>
#include <functional>

namespace berglab {

inline constexpr double kPi = 3.14159265358979323846;

/// Adaptive Simpson on [a,b]. rel_tol is relative to the running estimate,
/// with abs_tol as a floor for integrals that vanish.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double abs_tol = 1e-300,
                 int max_depth = 48);

/// Integral of f over [r,1) through the substitution s = 1 - exp(-(1/u - 1)).
/// Handles endpoint behaviour of weights that vanish or blow up slowly at 1.
double integrate_to_one(const std::function<double(double)>& f, double r,
                        double rel_tol = 1e-12);

/// Wrap an angle into (-pi, pi].
inline double wrap_angle(double t) {
  double w = std::remainder(t, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

}  // namespace berglab

#endif
