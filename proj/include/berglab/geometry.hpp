#ifndef BERGLAB_GEOMETRY_HPP
#define BERGLAB_GEOMETRY_HPP

#include <complex>
#include <variant>
#include <vector>

#include "berglab/quadrature.hpp"

namespace berglab {

using Complex = std::complex<double>;

/// Arc of the unit circle: center angle and length in radians (len <= 2*pi).
struct Arc {
  double theta_c = 0.0;
  double len = 0.0;
  /// Open-interval membership.
  bool contains(double theta) const {
    return std::abs(wrap_angle(theta - theta_c)) < 0.5 * len;
  }
  /// Half-open [lo, hi) membership, used when arcs partition a set.
  bool contains_half_open(double theta) const {
    double off = wrap_angle(theta - theta_c) + 0.5 * len;
    if (off < 0.0) off += 2.0 * kPi;
    return off >= 0.0 && off < len;
  }
  double lo() const { return theta_c - 0.5 * len; }
  double hi() const { return theta_c + 0.5 * len; }
};

/// Carleson square S(I): points r e^{it} with e^{it} in I and r >= 1 - |I|.
/// |I| is arc length in radians and must satisfy |I| <= 1.
struct Square {
  double theta_c;
  double len;
  Square(double theta, double l);
  explicit Square(Complex a);  // S(a), arc I_a of length 1 - |a| centred at arg a
  double inner_radius() const { return 1.0 - len; }
};

/// Lens (non-tangential approach region) of aperture alpha attached to zeta.
struct Lens {
  Complex zeta;
  double alpha = 0.5;
};

/// Truncated lens Gamma^h(zeta): lens minus the closed disc of radius
/// |zeta|/(1+h). h = 0 is empty, h = infinity is the full lens.
struct TruncatedLens {
  Complex zeta;
  double alpha = 0.5;
  double h = 0.0;
};

/// Tent T_alpha(z) = { zeta : z in Gamma_alpha(zeta) }.
struct Tent {
  Complex vertex;
  double alpha = 0.5;
};

/// Tent over an arc. For |I| < 1 this is T(a_I) with a_I = (1-|I|) times the
/// arc midpoint direction; for |I| >= 1 it degenerates to the open sector
/// over the arc interior together with the origin.
struct TentOverArc {
  Arc arc;
  double alpha = 0.5;
};

/// Pseudohyperbolic disc Delta(z, r).
struct PseudoDisc {
  Complex center;
  double radius;
};

/// Dyadic arc I_{n,k} = { e^{it} : pi k / 2^{n+2} <= t < pi (k+1) / 2^{n+2} },
/// 0 <= k < 2^{n+2}. The associated region is the tent over the arc.
struct DyadicTent {
  int n = 0;
  int k = 0;
};

/// Angular sector over an arc (membership by argument only). Realizes the
/// triangular sets bounded by an arc and the radii through its endpoints.
struct Sector {
  Arc arc;
};

using Region = std::variant<Square, Tent, Lens, TruncatedLens, PseudoDisc,
                            DyadicTent, TentOverArc, Sector>;

/// Exact membership predicate. Lens/tent inequalities are strict; squares are
/// closed. The origin belongs to every lens (convention) and to no tent with
/// nonzero vertex.
bool region_contains(const Region& region, Complex z);

bool lens_contains(Complex zeta, double alpha, Complex z);

/// |(a-b)/(1 - conj(a) b)|.
double pseudo_distance(Complex a, Complex b);

double dyadic_arc_length(int n);
Arc dyadic_arc(int n, int k);
/// Vertex in the Upsilon convention: z = (1 - 2|I|/pi) * midpoint direction.
Complex dyadic_vertex_upsilon(int n, int k);
/// Vertex in the Carleson-square convention: a_I = (1 - |I|) * midpoint.
Complex dyadic_vertex_square(int n, int k);

struct DyadicVertex {
  DyadicTent id;
  Complex z;  // Upsilon-convention vertex
};

/// All dyadic arcs of levels 0..n_max with their Upsilon vertices.
std::vector<DyadicVertex> dyadic_tents(int n_max);

/// Full-circle vertex lattice: level-n arc length pi/2^{n+2} tiled around the
/// whole circle (2^{n+3} points per level) at radius 1 - 2^{-(n+1)}.
std::vector<Complex> vertex_lattice(int n_max);

/// Whitney covering of an open subset of the circle given as a union of open
/// arcs. Arcs are emitted half-open, pairwise disjoint, with length
/// comparable to the distance to the complement (down to min_len).
std::vector<Arc> whitney_cover(const std::vector<Arc>& open_set,
                               double min_len = 6e-6);

/// Covering of the full circle by successive bisection towards xi: two half
/// circles, then quarters, then repeatedly split the two arcs terminating at
/// xi until their length drops below dist. Shortest arc >= dist/2.
std::vector<Arc> whitney_cover_full_circle(double xi, double dist);

/// Merge overlapping arcs into disjoint components (normalized, sorted).
std::vector<Arc> merge_arcs(std::vector<Arc> arcs);

}  // namespace berglab

#endif
