#ifndef BERGLAB_TENT_HPP
#define BERGLAB_TENT_HPP

#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "berglab/measure.hpp"
#include "berglab/weights.hpp"

namespace berglab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Shared quadrature bundle for tent-space evaluations: one polar grid, one
/// weight, and every omega(T(.)) mass taken as a grid sum over the very same
/// cells. Discrete Fubini identities then hold to rounding error.
struct TentInstance {
  std::shared_ptr<PolarGrid> grid;
  const RadialWeight* weight = nullptr;
  std::vector<double> cell_om;   // omega(center) * cell weight
  double disc_om = 0.0;          // sum of cell_om
  std::vector<Atom> nu;          // discrete support of the measure
  std::vector<double> nu_tent_om;  // omega(T(z_k)) as grid sums
  std::vector<Complex> vertices;   // full-circle candidate lattice
  std::vector<double> vertex_tent_om;

  double tent_mass_grid(Complex z) const;  // O(cells)
};

TentInstance make_tent_instance(std::shared_ptr<PolarGrid> grid,
                                const RadialWeight& w, const DiscMeasure& nu,
                                int vertex_depth = 5);

/// A_{q,nu}(f | h)(zeta) over the aperture-alpha lens: for finite q the
/// 1/q power of the cone sum, for q = infinity the nu-ess-sup (0 on empty
/// cones). h truncates the cone to |z| > |zeta|/(1+h); h = kInf disables it.
double area_function(const TentInstance& inst, const std::vector<Complex>& f,
                     double q, Complex zeta, double h = kInf, double alpha = 0.5);

/// C_{q,nu}(f)(zeta): sup over candidate vertices a in Gamma(zeta) (dyadic
/// lattice, nu's own points, and the origin) of the omega(T(.))-weighted
/// tent average, to the power 1/q.
double c_function(const TentInstance& inst, const std::vector<Complex>& f,
                  double q, Complex zeta);

enum class TentNormMode { AreaFunctional, CFunctional };

/// ||f||_{T^p_q(nu, omega)}. AreaFunctional: L^p_omega norm over the grid of
/// A_{q,nu}(f); p = infinity takes the grid sup. CFunctional with
/// p = infinity is the T^infty_q quasi-norm: sup over candidate vertices
/// (extended by extra_vertices) of the tent average, power 1/q.
double tent_norm(const TentInstance& inst, const std::vector<Complex>& f,
                 double p, double q, TentNormMode mode = TentNormMode::AreaFunctional,
                 double alpha = 0.5,
                 const std::vector<Complex>& extra_vertices = {});

/// <f, g> = sum_k f_k conj(g_k) omega(T(z_k)) nu_k.
Complex pairing(const TentInstance& inst, const std::vector<Complex>& f,
                const std::vector<Complex>& g);

struct StoppingProfile {
  double qprime = 2.0;
  double C1 = 1.0;
  std::vector<double> h;      // per grid cell; kInf when never breached
  std::vector<double> Cq;     // C^{q'}_{q',nu}(g) per grid cell (the q' power)
  std::vector<double> cell_mod;   // |zeta| per cell
  std::vector<char> zero_c_diag;  // C = 0 with nonzero cone mass

  /// Membership zeta_cell in H(z) = { zeta : |zeta| <= (1 + h(zeta)) |z| }.
  bool in_H(std::size_t cell, double mod_z) const {
    if (h[cell] == kInf) return true;
    return cell_mod[cell] <= (1.0 + h[cell]) * mod_z;
  }
};

/// Exact stopping time for discrete nu: per grid cell, the largest h with
/// A_{q',nu}(g|h) <= C1 C_{q',nu}(g), computed by walking the cone points in
/// decreasing modulus.
StoppingProfile stopping_time(const TentInstance& inst, const std::vector<Complex>& g,
                              double qprime, double C1);

/// Coverage ratio (1/omega(T(z))) int_{T(z) cap H(z)} omega dA on the grid.
double stopping_coverage(const TentInstance& inst, const StoppingProfile& prof,
                         Complex z);

/// Empirical constant C3: max over the given z of the tent average of
/// A^{q'}(g | 1/|z| - 1) against inf over T(z) of C^{q'}.
double measure_stopping_c3(const TentInstance& inst, const std::vector<Complex>& g,
                           double qprime, const std::vector<Complex>& zs);

/// P_0(g)(z): omega-average of g(z, .) over the tent T(z), on the grid.
Complex p0_average(const TentInstance& inst,
                   const std::function<Complex(Complex, Complex)>& g, Complex z);

/// Mixed norm ||h||_{L^p L^q(nu, omega)} with the inner variable running over
/// nu and the outer over the grid; either exponent may be kInf.
double mixed_norm(const TentInstance& inst,
                  const std::function<Complex(Complex, Complex)>& h, double p,
                  double q);

struct ConeKernelRatio {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 1.0;
  bool degenerate = false;  // rhs = 0 with lhs > 0
};

/// Both sides of the cone/kernel comparison at exponent lambda: the iterated
/// kernel integral against (nu(Gamma(.)))^p + nu({0}), by grid quadrature.
ConeKernelRatio cone_kernel_ratio(const TentInstance& inst, double p, double lambda);

/// Greedy doubling selection at one point: keep k1 = min{k : phi_k > 0} and
/// then each first k with phi_k > 2 phi_{last kept}.
std::vector<double> luecking_select(const std::vector<double>& phi);
std::vector<int> luecking_selected_indices(const std::vector<double>& phi);

/// Regularization F(u, rho, nu) = sum nu_k chi_{D(z_k, rho |z_k| (1-|z_k|))}(u)
/// / (rho^2 |z_k|^2).
double regularization(Complex u, double rho, const std::vector<Atom>& nu);

}  // namespace berglab

#endif
