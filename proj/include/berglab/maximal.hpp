#ifndef BERGLAB_MAXIMAL_HPP
#define BERGLAB_MAXIMAL_HPP

#include <vector>

#include "berglab/measure.hpp"
#include "berglab/weights.hpp"

namespace berglab {

enum class MaximalMode {
  Standard,      // squares S(a) containing z, rotated dyadic family + atom squares
  DyadicSquare,  // S(I), I in the literal Upsilon family
  DyadicTent,    // T(I), I in Upsilon, plus the global term mu(D)/omega(D)
  Kernel,        // Lemma-style kernel form over a in Gamma(zeta)
};

struct MaximalOptions {
  MaximalMode mode = MaximalMode::Standard;
  double alpha = 1.0;
  int n_max = 8;
  double kernel_lambda = 3.0;
  /// When set, square masses of omega are taken on this grid so that density
  /// measures and weight masses share one quadrature.
  const PolarGrid* grid = nullptr;
};

/// The standard-mode candidate family: one coarse ring of unit-length arcs
/// (so every point of the disc is covered) plus full-circle tilings by arcs
/// of length pi/2^{n+2} for n = 0..n_max.
std::vector<Square> square_family(int n_max);

/// M_{omega,alpha}(mu)(z): sup of mu(S)/omega(S)^alpha over the mode family
/// of regions containing z. Candidates with omega-mass zero are skipped.
double maximal_function(const DiscMeasure& mu, const RadialWeight& w, Complex z,
                        const MaximalOptions& opt);

/// Sup of mu(S)/omega(S)^alpha over the whole standard family plus squares
/// anchored at mu's support points (the L^infty norm surrogate).
double maximal_sup(const DiscMeasure& mu, const RadialWeight& w, double alpha,
                   int n_max, const PolarGrid* grid = nullptr);

/// Pointwise [M_omega(phi^{1/alpha})]^alpha on the grid. Square averages use
/// grid masses on both sides, so the image of a constant is that constant.
std::vector<double> maximal_operator_image(const PolarGrid& grid,
                                           const std::vector<double>& phi,
                                           const RadialWeight& w, double alpha,
                                           int n_max,
                                           const std::vector<Square>& extra = {});

}  // namespace berglab

#endif
