#include "berglab/quadrature.hpp"

#include <cmath>
#include <limits>

namespace berglab {

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = f(lm);
  double frm = f(rm);
  double left = simpson(fa, flm, fm, m - a);
  double right = simpson(fm, frm, fb, b - m);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol, int max_depth) {
  if (!(b > a)) return 0.0;
  // Seed with a coarse composite pass so the tolerance has a sensible scale.
  const int n0 = 8;
  double h = (b - a) / n0;
  double coarse = 0.0;
  for (int i = 0; i < n0; ++i) {
    double x0 = a + i * h;
    coarse += simpson(f(x0), f(x0 + 0.5 * h), f(x0 + h), h);
  }
  double tol = std::max(std::abs(coarse) * rel_tol, abs_tol);
  double total = 0.0;
  for (int i = 0; i < n0; ++i) {
    double x0 = a + i * h;
    double x1 = x0 + h;
    double m = 0.5 * (x0 + x1);
    double fa = f(x0), fm = f(m), fb = f(x1);
    double whole = simpson(fa, fm, fb, h);
    total += adapt(f, x0, x1, fa, fm, fb, whole, tol / n0, max_depth);
  }
  return total;
}

double integrate_to_one(const std::function<double(double)>& f, double r,
                        double rel_tol) {
  // s = 1 - exp(-t), t = 1/u - 1; u runs over (0, u_r].
  // ds = exp(-t) dt, dt = du / u^2.
  double t_r = -std::log1p(-r);  // -log(1-r)
  double u_r = 1.0 / (1.0 + t_r);
  auto g = [&](double u) -> double {
    if (u <= 0.0) return 0.0;
    double t = 1.0 / u - 1.0;
    double e = std::exp(-t);
    if (e == 0.0) return 0.0;
    double s = 1.0 - e;
    return f(s) * e / (u * u);
  };
  return integrate(g, 0.0, u_r, rel_tol);
}

}  // namespace berglab
