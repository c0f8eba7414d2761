#include "berglab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace berglab {

Square::Square(double theta, double l) : theta_c(theta), len(l) {
  if (!(l > 0.0) || l > 1.0) {
    throw std::domain_error("Square: arc length must lie in (0, 1]");
  }
}

Square::Square(Complex a) {
  double r = std::abs(a);
  if (r == 0.0 || r >= 1.0) {
    throw std::domain_error("Square: anchor must satisfy 0 < |a| < 1");
  }
  theta_c = std::arg(a);
  len = 1.0 - r;
}

bool lens_contains(Complex zeta, double alpha, Complex z) {
  double r = std::abs(zeta);
  if (r == 0.0) throw std::domain_error("lens: zeta = 0 has no argument");
  if (std::abs(z) == 0.0) return true;  // 0 lies in every lens
  double zr = std::abs(z);
  if (zr >= r) return false;
  double gap = std::abs(wrap_angle(std::arg(zeta) - std::arg(z)));
  return gap < alpha * (1.0 - zr / r);
}

namespace {

bool tent_over_arc_contains(const Arc& arc, double alpha, Complex z) {
  if (arc.len >= 2.0 * kPi) return true;
  if (arc.len >= 1.0) {
    // Lazy union over sub-arcs shorter than 1: the sector over the interior
    // of the arc, plus the origin.
    if (std::abs(z) == 0.0) return true;
    return arc.contains(std::arg(z));
  }
  Complex a_I = (1.0 - arc.len) * std::polar(1.0, arc.theta_c);
  return lens_contains(z, alpha, a_I);
}

}  // namespace

bool region_contains(const Region& region, Complex z) {
  return std::visit(
      [&](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Square>) {
          double zr = std::abs(z);
          if (zr < r.inner_radius() || zr >= 1.0) return false;
          double gap = std::abs(wrap_angle(std::arg(z) - r.theta_c));
          return gap <= 0.5 * r.len;
        } else if constexpr (std::is_same_v<T, Tent>) {
          if (std::abs(z) == 0.0) return false;  // Gamma(0) is undefined
          return lens_contains(z, r.alpha, r.vertex);
        } else if constexpr (std::is_same_v<T, Lens>) {
          return lens_contains(r.zeta, r.alpha, z);
        } else if constexpr (std::is_same_v<T, TruncatedLens>) {
          double cut = std::abs(r.zeta);
          if (std::isfinite(r.h)) {
            if (r.h <= 0.0) return false;  // Gamma^0 is empty
            cut = cut / (1.0 + r.h);
            if (!(std::abs(z) > cut)) return false;
          }
          return lens_contains(r.zeta, r.alpha, z);
        } else if constexpr (std::is_same_v<T, PseudoDisc>) {
          return pseudo_distance(r.center, z) < r.radius;
        } else if constexpr (std::is_same_v<T, DyadicTent>) {
          return tent_over_arc_contains(dyadic_arc(r.n, r.k), 0.5, z);
        } else if constexpr (std::is_same_v<T, TentOverArc>) {
          return tent_over_arc_contains(r.arc, r.alpha, z);
        } else {  // Sector
          if (std::abs(z) == 0.0) return false;
          return r.arc.contains(std::arg(z));
        }
      },
      region);
}

double pseudo_distance(Complex a, Complex b) {
  return std::abs((a - b) / (1.0 - std::conj(a) * b));
}

double dyadic_arc_length(int n) { return kPi / std::ldexp(1.0, n + 2); }

Arc dyadic_arc(int n, int k) {
  double len = dyadic_arc_length(n);
  return Arc{(k + 0.5) * len, len};
}

Complex dyadic_vertex_upsilon(int n, int k) {
  Arc a = dyadic_arc(n, k);
  return (1.0 - 2.0 * a.len / kPi) * std::polar(1.0, a.theta_c);
}

Complex dyadic_vertex_square(int n, int k) {
  Arc a = dyadic_arc(n, k);
  return (1.0 - a.len) * std::polar(1.0, a.theta_c);
}

std::vector<DyadicVertex> dyadic_tents(int n_max) {
  std::vector<DyadicVertex> out;
  for (int n = 0; n <= n_max; ++n) {
    int count = 1 << (n + 2);
    for (int k = 0; k < count; ++k) {
      out.push_back({DyadicTent{n, k}, dyadic_vertex_upsilon(n, k)});
    }
  }
  return out;
}

std::vector<Complex> vertex_lattice(int n_max) {
  std::vector<Complex> out;
  for (int n = 0; n <= n_max; ++n) {
    double len = dyadic_arc_length(n);
    int count = 1 << (n + 3);  // len * 2^{n+3} = 2*pi
    double radius = 1.0 - std::ldexp(1.0, -(n + 1));
    for (int k = 0; k < count; ++k) {
      out.push_back(std::polar(radius, (k + 0.5) * len));
    }
  }
  return out;
}

std::vector<Arc> merge_arcs(std::vector<Arc> arcs) {
  std::vector<Arc> live;
  for (const Arc& a : arcs) {
    if (a.len <= 0.0) continue;
    if (a.len >= 2.0 * kPi) return {Arc{0.0, 2.0 * kPi}};
    live.push_back(a);
  }
  if (live.empty()) return {};
  // Find an uncovered seam angle. If the union is not the whole circle, the
  // right endpoint of some arc borders a gap, so it suffices to test arc
  // endpoints for membership.
  double seam = 0.0;
  bool found = false;
  for (const Arc& a : live) {
    double cand = a.hi();
    bool covered = false;
    for (const Arc& b : live) {
      if (b.contains(cand)) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      seam = cand;
      found = true;
      break;
    }
  }
  if (!found) return {Arc{0.0, 2.0 * kPi}};
  // Unroll into (seam, seam + 2*pi]; no arc crosses the seam.
  std::vector<std::pair<double, double>> iv;
  for (const Arc& a : live) {
    double off = a.lo() - seam;
    off -= 2.0 * kPi * std::floor(off / (2.0 * kPi));
    double lo = seam + off;
    iv.emplace_back(lo, lo + a.len);
  }
  std::sort(iv.begin(), iv.end());
  std::vector<std::pair<double, double>> merged;
  for (auto& p : iv) {
    // Strict overlap only: open arcs touching at a point stay separate.
    if (!merged.empty() && p.first < merged.back().second) {
      merged.back().second = std::max(merged.back().second, p.second);
    } else {
      merged.push_back(p);
    }
  }
  std::vector<Arc> out;
  out.reserve(merged.size());
  for (auto& p : merged) {
    out.push_back(Arc{0.5 * (p.first + p.second), p.second - p.first});
  }
  return out;
}

namespace {

// Arc-length distance from the closed interval [lo,hi] to the complement of
// the merged open set, all measured on the unrolled line.
double dist_to_complement(double lo, double hi, double comp_lo, double comp_hi) {
  return std::min(lo - comp_lo, comp_hi - hi);
}

void whitney_bisect(double lo, double hi, double comp_lo, double comp_hi,
                    double min_len, std::vector<Arc>& out) {
  double len = hi - lo;
  double d = dist_to_complement(lo, hi, comp_lo, comp_hi);
  if (len <= d || len <= min_len) {
    out.push_back(Arc{0.5 * (lo + hi), len});
    return;
  }
  double mid = 0.5 * (lo + hi);
  whitney_bisect(lo, mid, comp_lo, comp_hi, min_len, out);
  whitney_bisect(mid, hi, comp_lo, comp_hi, min_len, out);
}

}  // namespace

std::vector<Arc> whitney_cover(const std::vector<Arc>& open_set, double min_len) {
  std::vector<Arc> comps = merge_arcs(open_set);
  if (comps.empty()) return {};
  if (comps.size() == 1 && comps.front().len >= 2.0 * kPi) {
    throw std::invalid_argument(
        "whitney_cover: full circle needs whitney_cover_full_circle");
  }
  std::vector<Arc> out;
  for (const Arc& c : comps) {
    whitney_bisect(c.lo(), c.hi(), c.lo(), c.hi(), min_len, out);
  }
  return out;
}

std::vector<Arc> whitney_cover_full_circle(double xi, double dist) {
  if (!(dist > 0.0)) throw std::domain_error("whitney_cover_full_circle: dist <= 0");
  std::vector<Arc> out;
  // Circle as [xi, xi + 2*pi): halves, then quarters, then keep splitting the
  // two arcs that terminate at xi (the first and the last).
  double len = 0.5 * kPi;  // quarter length after the two initial splits
  // The two middle quarters are final.
  out.push_back(Arc{xi + 0.75 * kPi, len});
  out.push_back(Arc{xi + 1.25 * kPi, len});
  double left_lo = xi;             // arc [xi, xi+len) keeps splitting
  double right_hi = xi + 2.0 * kPi;  // arc [right_hi-len, right_hi) keeps splitting
  while (len >= dist && len > 1e-12) {
    double half = 0.5 * len;
    out.push_back(Arc{left_lo + len - 0.5 * half, half});    // outer half stays
    out.push_back(Arc{right_hi - len + 0.5 * half, half});
    len = half;
  }
  out.push_back(Arc{left_lo + 0.5 * len, len});
  out.push_back(Arc{right_hi - 0.5 * len, len});
  return out;
}

}  // namespace berglab
