#include "berglab/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "berglab/exec.hpp"

namespace berglab {

double kernel(Complex z, Complex zeta, double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("kernel: lambda must be positive");
  double d = std::abs(1.0 - std::conj(zeta) * z);
  return std::pow((1.0 - std::abs(z)) / d, lambda);
}

RationalTestFunction RationalTestFunction::normalized_family(Complex a, double p,
                                                             const RadialWeight& w,
                                                             double lambda) {
  if (std::abs(a) == 0.0) {
    throw std::domain_error("test function: a = 0 (omega(S(0)) undefined)");
  }
  double c = (lambda + 1.0) / p;
  double scale = std::pow(1.0 - std::abs(a), c) *
                 std::pow(region_mass(w, Square(a)), -1.0 / p);
  RationalTestFunction f;
  f.terms_.push_back({a, Complex(scale, 0.0), c});
  return f;
}

RationalTestFunction RationalTestFunction::kernel_combination(
    std::vector<Complex> points, std::vector<Complex> coeffs, double lambda) {
  if (points.size() != coeffs.size()) {
    throw std::invalid_argument("kernel combination: size mismatch");
  }
  RationalTestFunction f;
  for (std::size_t k = 0; k < points.size(); ++k) {
    double scale = std::pow(1.0 - std::abs(points[k]), lambda);
    f.terms_.push_back({points[k], coeffs[k] * scale, lambda});
  }
  return f;
}

Complex RationalTestFunction::derivative(int n, Complex z) const {
  // d^n/dz^n (1 - conj(a) z)^{-c} = conj(a)^n c (c+1)...(c+n-1) (1 - conj(a) z)^{-c-n}
  Complex out = 0.0;
  for (const Term& t : terms_) {
    Complex base = 1.0 - std::conj(t.a) * z;
    double rising = 1.0;
    for (int i = 0; i < n; ++i) rising *= t.power + i;
    Complex an = std::pow(std::conj(t.a), n);
    out += t.coeff * an * rising * std::pow(base, Complex(-t.power - n, 0.0));
  }
  return out;
}

RationalTestFunction test_function(Complex a, double p, const RadialWeight& w,
                                   double lambda_override) {
  double lambda = lambda_override;
  if (lambda <= 0.0) lambda = w.certificate().lambda0 + 1.0;
  return RationalTestFunction::normalized_family(a, p, w, lambda);
}

Complex s_lambda(const std::vector<Complex>& coeffs, const std::vector<Complex>& points,
                 double lambda, Complex z) {
  if (coeffs.size() != points.size()) {
    throw std::invalid_argument("s_lambda: size mismatch");
  }
  Complex s = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    Complex base = (1.0 - std::abs(points[k])) / (1.0 - std::conj(points[k]) * z);
    s += coeffs[k] * std::pow(base, Complex(lambda, 0.0));
  }
  return s;
}

double bergman_norm(const std::function<Complex(Complex)>& F, const RadialWeight& w,
                    const PolarGrid& grid, double p) {
  std::vector<double> vals(grid.cells.size());
  parallel_for(grid.cells.size(), [&](std::size_t i) {
    const auto& c = grid.cells[i];
    vals[i] = std::pow(std::abs(F(c.center)), p) * w(std::abs(c.center)) * c.weight;
  });
  double s = 0.0;
  for (double v : vals) s += v;
  return std::pow(s, 1.0 / p);
}

double lq_norm(const std::function<Complex(Complex)>& F, const DiscMeasure& mu,
               double q) {
  double s = 0.0;
  for (const Atom& a : mu.atoms()) {
    s += std::pow(std::abs(F(a.point)), q) * a.mass;
  }
  if (mu.has_density()) {
    const auto& grid = mu.grid();
    for (std::size_t i = 0; i < grid.cells.size(); ++i) {
      double v = mu.cell_values()[i];
      if (v > 0.0) {
        s += std::pow(std::abs(F(grid.cells[i].center)), q) * v * grid.cells[i].weight;
      }
    }
  }
  if (mu.has_radial_density()) {
    const auto& rho = mu.radial_density();
    auto angular = [&](double r) {
      auto f = [&](double t) {
        return std::pow(std::abs(F(std::polar(r, t))), q);
      };
      return integrate(f, 0.0, 2.0 * kPi, 1e-8) / (2.0 * kPi);
    };
    s += integrate([&](double r) { return rho(r) * angular(r) * 2.0 * r; }, 0.0,
                   mu.radial_rmax(), 1e-7);
  }
  return std::pow(s, 1.0 / q);
}

double nontangential_max(const std::function<Complex(Complex)>& F,
                         const PolarGrid& grid, double alpha, Complex zeta) {
  if (std::abs(zeta) == 0.0) throw std::domain_error("nontangential_max: zeta = 0");
  double m = 0.0;
  for (const auto& c : grid.cells) {
    if (lens_contains(zeta, alpha, c.center)) {
      m = std::max(m, std::abs(F(c.center)));
    }
  }
  return m;
}

}  // namespace berglab
