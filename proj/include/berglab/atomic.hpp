#ifndef BERGLAB_ATOMIC_HPP
#define BERGLAB_ATOMIC_HPP

#include <vector>

#include "berglab/tent.hpp"

namespace berglab {

/// A tent-supported atom: values on the support points of nu that fall in
/// the tent over `arc`, normalized for the declared space.
struct TentAtom {
  Arc arc;                              // support tent T(arc)
  std::vector<std::size_t> support;     // indices into TentInstance::nu
  std::vector<Complex> values;          // a(z_k) at those indices
  bool infinity_type = true;            // T^p_infty atom vs T^p_q atom
  double p = 1.0;
  double q = kInf;
  double tent_om = 0.0;                 // omega(T(arc)) grid mass
};

struct AtomCheck {
  bool valid = false;
  double measured = 0.0;  // left-hand side of the defining inequality
  double bound = 0.0;
};

AtomCheck validate_atom(const TentInstance& inst, const TentAtom& atom);

struct Decomposition {
  std::vector<Complex> lambdas;
  std::vector<TentAtom> atoms;
  double lambda_p_sum = 0.0;  // sum |lambda_j|^p
  double dilation_c = 2.0;    // adaptively found arc dilation
  int k_min = 0, k_max = -1;  // level range that carried support

  /// Pointwise reconstruction sum lambda_j a_j at every support index.
  std::vector<Complex> reconstruct(std::size_t support_size) const;
};

/// Constructive atomic decomposition of f in T^p_infty(nu, omega): level sets
/// of the cone sup, Whitney arcs of their circle projections, concentric
/// dilation, disjoint pieces. Exact reconstruction on the support.
Decomposition decompose_tp_infty(const TentInstance& inst,
                                 const std::vector<Complex>& f, double p);

/// Atomic decomposition of f in T^p_q (0 < p <= q < infinity) through the
/// factorization f = g h.
Decomposition decompose_tp_q(const TentInstance& inst, const std::vector<Complex>& f,
                             double p, double q);

struct Factorization {
  std::vector<Complex> g;  // in T^p_infty
  std::vector<Complex> h;  // in T^infty_q, f = g h on the support
};

/// f = g h with g^s(z) the tent average of the maximal image of A^s_{q,nu}(f).
/// s defaults to p/2 (any 0 < s < p is accepted).
Factorization factorize(const TentInstance& inst, const std::vector<Complex>& f,
                        double p, double q, double s = -1.0);

struct BalayageResult {
  std::vector<double> B_cells;   // B_{mu,psi} on the grid cells
  std::vector<double> S_values;  // (S mu)_psi at the mu support points
  double sup_maximal = 0.0;      // sup over the square family of M((S mu)_psi mu)
  bool undefined_integrand = false;
};

/// Balayage of mu against psi (values on mu's support points):
/// B(zeta) = int_Gamma psi dmu, (S mu)_psi(z) = psi(z) int_T(z) omega / B dA,
/// plus the bounded-maximal-function check on the swept measure.
BalayageResult balayage(const TentInstance& inst, const DiscMeasure& mu,
                        const std::vector<double>& psi, int maximal_depth = 6);

}  // namespace berglab

#endif
