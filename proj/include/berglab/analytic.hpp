#ifndef BERGLAB_ANALYTIC_HPP
#define BERGLAB_ANALYTIC_HPP

#include <complex>
#include <vector>

#include "berglab/measure.hpp"
#include "berglab/weights.hpp"

namespace berglab {

/// h_lambda(z, zeta) = ((1 - |z|) / |1 - conj(zeta) z|)^lambda, in (0, 2^lambda].
double kernel(Complex z, Complex zeta, double lambda);

/// Rational test function built from powers of (1 - conj(a) z)^{-1}:
/// either the normalized family
///   f_{a,p}(z) = ((1-|a|)/(1 - conj(a) z))^{(lambda+1)/p} omega(S(a))^{-1/p}
/// or a kernel combination sum_k b_k ((1-|z_k|)/(1 - conj(z_k) z))^lambda.
/// Exact derivatives of every order are available in closed form.
class RationalTestFunction {
 public:
  static RationalTestFunction normalized_family(Complex a, double p,
                                                const RadialWeight& w,
                                                double lambda);
  static RationalTestFunction kernel_combination(std::vector<Complex> points,
                                                 std::vector<Complex> coeffs,
                                                 double lambda);

  Complex operator()(Complex z) const { return derivative(0, z); }
  Complex derivative(int n, Complex z) const;

 private:
  struct Term {
    Complex a;       // pole parameter
    Complex coeff;   // scalar in front
    double power;    // exponent c of (1 - conj(a) z)^{-c}
  };
  std::vector<Term> terms_;
};

/// f_{a,p} with lambda = certificate lambda0 + 1 (overridable).
RationalTestFunction test_function(Complex a, double p, const RadialWeight& w,
                                   double lambda_override = -1.0);

/// S_lambda(b)(z) = sum_k b_k ((1-|z_k|)/(1 - conj(z_k) z))^lambda.
Complex s_lambda(const std::vector<Complex>& coeffs, const std::vector<Complex>& points,
                 double lambda, Complex z);

/// || F ||_{A^p_omega} by grid quadrature of |F|^p omega.
double bergman_norm(const std::function<Complex(Complex)>& F, const RadialWeight& w,
                    const PolarGrid& grid, double p);

/// L^q(mu) norm of F over a measure (atoms and/or grid density).
double lq_norm(const std::function<Complex(Complex)>& F, const DiscMeasure& mu,
               double q);

/// N(F)(zeta): sup of |F| over grid cell centers inside Gamma_alpha(zeta).
double nontangential_max(const std::function<Complex(Complex)>& F,
                         const PolarGrid& grid, double alpha, Complex zeta);

}  // namespace berglab

#endif
