#include "berglab/atomic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "berglab/exec.hpp"
#include "berglab/maximal.hpp"

namespace berglab {

namespace {

bool in_closed_tent_over_arc(const Arc& arc, Complex z) {
  if (region_contains(Region{TentOverArc{arc, 0.5}}, z)) return true;
  if (arc.len < 1.0) {
    Complex a = (1.0 - arc.len) * std::polar(1.0, arc.theta_c);
    return z == a;
  }
  return false;
}

double tent_over_arc_grid_mass(const TentInstance& inst, const Arc& arc) {
  Region reg{TentOverArc{arc, 0.5}};
  double m = 0.0;
  for (std::size_t i = 0; i < inst.grid->cells.size(); ++i) {
    if (region_contains(reg, inst.grid->cells[i].center)) m += inst.cell_om[i];
  }
  return m;
}

}  // namespace

AtomCheck validate_atom(const TentInstance& inst, const TentAtom& atom) {
  AtomCheck out;
  for (std::size_t i = 0; i < atom.support.size(); ++i) {
    Complex z = inst.nu[atom.support[i]].point;
    if (!in_closed_tent_over_arc(atom.arc, z)) {
      return out;  // support leaks out of the tent: invalid
    }
  }
  if (atom.infinity_type) {
    double m = 0.0;
    for (std::size_t i = 0; i < atom.support.size(); ++i) {
      if (inst.nu[atom.support[i]].mass > 0.0) {
        m = std::max(m, std::abs(atom.values[i]));
      }
    }
    out.measured = m;
    out.bound = std::pow(atom.tent_om, -1.0 / atom.p);
  } else {
    double s = 0.0;
    for (std::size_t i = 0; i < atom.support.size(); ++i) {
      std::size_t k = atom.support[i];
      s += std::pow(std::abs(atom.values[i]), atom.q) * inst.nu_tent_om[k] *
           inst.nu[k].mass;
    }
    out.measured = s;
    out.bound = std::pow(atom.tent_om, (atom.p - atom.q) / atom.p);
  }
  out.valid = out.measured <= out.bound * (1.0 + 1e-9);
  return out;
}

std::vector<Complex> Decomposition::reconstruct(std::size_t support_size) const {
  std::vector<Complex> out(support_size, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    for (std::size_t i = 0; i < atoms[j].support.size(); ++i) {
      out[atoms[j].support[i]] += lambdas[j] * atoms[j].values[i];
    }
  }
  return out;
}

namespace {

// Level of each support point: Lambda = max(|f| at the point, cone sup)^p,
// binned as Lambda in (2^k, 2^{k+1}].
std::vector<double> level_field(const TentInstance& inst,
                                const std::vector<Complex>& f, double p) {
  std::size_t n = inst.nu.size();
  std::vector<double> lam(n, 0.0);
  parallel_for(n, [&](std::size_t k) {
    double m = std::abs(f[k]);
    Complex u = inst.nu[k].point;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k || inst.nu[j].mass <= 0.0) continue;
      // z_j in Gamma(u), i.e. u in T(z_j)
      if (std::abs(u) > 0.0 && lens_contains(u, 0.5, inst.nu[j].point)) {
        m = std::max(m, std::abs(f[j]));
      }
    }
    lam[k] = std::pow(m, p);
  });
  return lam;
}

int level_index(double lambda_val) {
  // k with lambda in (2^k, 2^{k+1}]
  int k = static_cast<int>(std::ceil(std::log2(lambda_val))) - 1;
  while (lambda_val > std::ldexp(1.0, k + 1)) ++k;
  while (k > -1074 && lambda_val <= std::ldexp(1.0, k)) --k;
  return k;
}

// Distance from the circle to the uncovered part of the disc when the arcs
// of the tents of `tops` cover the whole circle; also reports the angle xi
// realizing it. Scanned over arc endpoints and a uniform sample.
std::pair<double, double> full_circle_distance(const std::vector<Complex>& tops) {
  std::vector<double> cand;
  for (Complex z : tops) {
    double theta = std::arg(z);
    double half = 0.5 * (1.0 - std::abs(z));
    cand.push_back(theta);
    cand.push_back(theta - half);
    cand.push_back(theta + half);
  }
  for (int i = 0; i < 2048; ++i) cand.push_back(2.0 * kPi * i / 2048.0);
  auto uncovered_radius = [&](double phi) {
    double m = 1.0;
    for (Complex z : tops) {
      double gap = std::abs(wrap_angle(phi - std::arg(z)));
      double den = 1.0 - 2.0 * gap;
      if (den <= 0.0) continue;
      double rho = std::abs(z) / den;
      if (rho < 1.0) m = std::min(m, rho);
    }
    return m;
  };
  double best_phi = 0.0, best = -1.0;
  for (double phi : cand) {
    double r = uncovered_radius(phi);
    if (r > best) {
      best = r;
      best_phi = phi;
    }
  }
  return {best_phi, 1.0 - best};
}

}  // namespace

Decomposition decompose_tp_infty(const TentInstance& inst,
                                 const std::vector<Complex>& f, double p) {
  if (f.size() != inst.nu.size()) {
    throw std::invalid_argument("decompose: values do not match the support");
  }
  Decomposition dec;
  std::vector<double> lam = level_field(inst, f, p);
  std::vector<int> lvl(lam.size(), 0);
  bool any = false;
  int kmin = 0, kmax = -1;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    if (lam[i] > 0.0) {
      lvl[i] = level_index(lam[i]);
      if (!any) {
        kmin = kmax = lvl[i];
        any = true;
      } else {
        kmin = std::min(kmin, lvl[i]);
        kmax = std::max(kmax, lvl[i]);
      }
    }
  }
  if (!any) return dec;  // f vanishes nu-a.e.
  dec.k_min = kmin;
  dec.k_max = kmax;

  // Per level: tents whose top value exceeds 2^k give the projected arcs.
  struct LevelData {
    std::vector<Arc> whitney;
    std::vector<std::size_t> members;  // support points at this level
  };
  std::vector<LevelData> levels(kmax - kmin + 1);
  for (int k = kmin; k <= kmax; ++k) {
    std::vector<Arc> arcs;
    std::vector<Complex> tops;
    double thr = std::ldexp(1.0, k);
    for (std::size_t j = 0; j < inst.nu.size(); ++j) {
      if (inst.nu[j].mass <= 0.0) continue;
      if (std::pow(std::abs(f[j]), p) > thr) {
        Complex z = inst.nu[j].point;
        arcs.push_back(Arc{std::arg(z), 1.0 - std::abs(z)});
        tops.push_back(z);
      }
    }
    std::vector<Arc> merged = merge_arcs(arcs);
    LevelData& ld = levels[k - kmin];
    if (merged.size() == 1 && merged.front().len >= 2.0 * kPi) {
      auto [xi, dist] = full_circle_distance(tops);
      if (!(dist > 0.0)) dist = 1e-6;
      ld.whitney = whitney_cover_full_circle(xi, dist);
    } else {
      ld.whitney = whitney_cover(merged);
    }
  }
  for (std::size_t i = 0; i < lam.size(); ++i) {
    if (lam[i] > 0.0) levels[lvl[i] - kmin].members.push_back(i);
  }

  // Grow the dilation c until every member lands in the dilated tent of its
  // Whitney arc.
  double c = 2.0;
  const double c_cap = 4096.0;
  struct Assignment {
    int level;
    std::size_t arc;  // index into whitney of that level
    std::vector<std::size_t> pts;
  };
  std::vector<Assignment> assignment;
  while (true) {
    assignment.clear();
    bool ok = true;
    for (int k = kmin; k <= kmax && ok; ++k) {
      LevelData& ld = levels[k - kmin];
      std::vector<std::vector<std::size_t>> buckets(ld.whitney.size());
      for (std::size_t idx : ld.members) {
        double theta = std::arg(inst.nu[idx].point);
        bool placed = false;
        for (std::size_t a = 0; a < ld.whitney.size() && !placed; ++a) {
          if (ld.whitney[a].contains_half_open(theta)) {
            Arc dil{ld.whitney[a].theta_c, std::min(c * ld.whitney[a].len, 2.0 * kPi)};
            if (!in_closed_tent_over_arc(dil, inst.nu[idx].point)) {
              ok = false;  // dilation too small
            }
            buckets[a].push_back(idx);
            placed = true;
          }
        }
        if (!placed) {
          ok = false;  // projection fell outside the covering: widen arcs
        }
        if (!ok) break;
      }
      for (std::size_t a = 0; a < ld.whitney.size(); ++a) {
        if (!buckets[a].empty()) {
          assignment.push_back({k, a, std::move(buckets[a])});
        }
      }
    }
    if (ok || c >= c_cap) break;
    c *= 2.0;
  }
  dec.dilation_c = c;

  for (const Assignment& as : assignment) {
    const Arc& I = levels[as.level - kmin].whitney[as.arc];
    Arc J{I.theta_c, std::min(c * I.len, 2.0 * kPi)};
    double tom = tent_over_arc_grid_mass(inst, J);
    if (tom <= 0.0) continue;  // no omega mass in sight: skip the piece
    double scale = std::pow(2.0, -(as.level + 1) / p) * std::pow(tom, -1.0 / p);
    TentAtom atom;
    atom.arc = J;
    atom.infinity_type = true;
    atom.p = p;
    atom.q = kInf;
    atom.tent_om = tom;
    for (std::size_t idx : as.pts) {
      atom.support.push_back(idx);
      atom.values.push_back(f[idx] * scale);
    }
    double lam_j = std::pow(2.0, (as.level + 1) / p) * std::pow(tom, 1.0 / p);
    dec.atoms.push_back(std::move(atom));
    dec.lambdas.push_back(Complex(lam_j, 0.0));
    dec.lambda_p_sum += std::pow(lam_j, p);
  }
  return dec;
}

Factorization factorize(const TentInstance& inst, const std::vector<Complex>& f,
                        double p, double q, double s) {
  if (s <= 0.0) s = 0.5 * p;
  if (!(s < p)) throw std::domain_error("factorize: need 0 < s < p");
  const auto& cells = inst.grid->cells;
  std::vector<double> a_s(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    a_s[i] = std::pow(area_function(inst, f, q, cells[i].center), s);
  });
  std::vector<Square> extra;
  for (const Atom& z : inst.nu) {
    if (std::abs(z.point) > 0.0) extra.emplace_back(z.point);
  }
  std::vector<double> m = maximal_operator_image(*inst.grid, a_s, *inst.weight, 1.0,
                                                 inst.grid->depth, extra);
  Factorization out;
  out.g.resize(inst.nu.size());
  out.h.resize(inst.nu.size());
  for (std::size_t k = 0; k < inst.nu.size(); ++k) {
    Complex z = inst.nu[k].point;
    double zr = std::abs(z);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (zr == 0.0 || lens_contains(cells[i].center, 0.5, z)) {
        num += m[i] * inst.cell_om[i];
        den += inst.cell_om[i];
      }
    }
    double gs = den > 0.0 ? num / den : 0.0;
    double g = std::pow(gs, 1.0 / s);
    out.g[k] = g;
    if (std::abs(f[k]) == 0.0) {
      out.h[k] = 0.0;
    } else if (g == 0.0) {
      throw std::logic_error("factorize: g vanished where f does not");
    } else {
      out.h[k] = f[k] / g;
    }
  }
  return out;
}

Decomposition decompose_tp_q(const TentInstance& inst, const std::vector<Complex>& f,
                             double p, double q) {
  if (!(p > 0.0) || !(p <= q) || q == kInf) {
    throw std::domain_error("decompose_tp_q: need 0 < p <= q < infinity");
  }
  Factorization fac = factorize(inst, f, p, q);
  Decomposition base = decompose_tp_infty(inst, fac.g, p);

  // T^infty_q norm of h, with the atom tents themselves as candidates so the
  // normalized pieces satisfy the atom inequality by construction.
  std::vector<Complex> extra;
  double degenerate_best = 0.0;
  for (const TentAtom& a : base.atoms) {
    if (a.arc.len < 1.0) {
      extra.push_back((1.0 - a.arc.len) * std::polar(1.0, a.arc.theta_c));
    } else {
      double sum = 0.0;
      for (std::size_t k = 0; k < inst.nu.size(); ++k) {
        if (in_closed_tent_over_arc(a.arc, inst.nu[k].point)) {
          sum += std::pow(std::abs(fac.h[k]), q) * inst.nu_tent_om[k] *
                 inst.nu[k].mass;
        }
      }
      if (a.tent_om > 0.0) degenerate_best = std::max(degenerate_best, sum / a.tent_om);
    }
  }
  double hn = tent_norm(inst, fac.h, kInf, q, TentNormMode::CFunctional, 0.5, extra);
  hn = std::max(hn, std::pow(degenerate_best, 1.0 / q));
  if (hn <= 0.0) return Decomposition{};  // f vanishes on the support

  Decomposition dec;
  dec.dilation_c = base.dilation_c;
  dec.k_min = base.k_min;
  dec.k_max = base.k_max;
  for (std::size_t j = 0; j < base.atoms.size(); ++j) {
    const TentAtom& a = base.atoms[j];
    TentAtom b;
    b.arc = a.arc;
    b.support = a.support;
    b.infinity_type = false;
    b.p = p;
    b.q = q;
    b.tent_om = a.tent_om;
    b.values.resize(a.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      b.values[i] = fac.h[a.support[i]] * a.values[i] / hn;
    }
    Complex lam = base.lambdas[j] * hn;
    dec.atoms.push_back(std::move(b));
    dec.lambdas.push_back(lam);
    dec.lambda_p_sum += std::pow(std::abs(lam), p);
  }
  return dec;
}

BalayageResult balayage(const TentInstance& inst, const DiscMeasure& mu,
                        const std::vector<double>& psi, int maximal_depth) {
  std::vector<Atom> sup = mu.support_points();
  if (psi.size() != sup.size()) {
    throw std::invalid_argument("balayage: psi must be sampled on mu's support");
  }
  for (double v : psi) {
    if (v < 0.0) throw std::invalid_argument("balayage: psi must be >= 0");
  }
  const auto& cells = inst.grid->cells;
  BalayageResult out;
  out.B_cells.assign(cells.size(), 0.0);
  parallel_for(cells.size(), [&](std::size_t i) {
    Complex zeta = cells[i].center;
    double b = 0.0;
    for (std::size_t k = 0; k < sup.size(); ++k) {
      if (std::abs(sup[k].point) > 0.0 && lens_contains(zeta, 0.5, sup[k].point)) {
        b += psi[k] * sup[k].mass;
      }
    }
    out.B_cells[i] = b;
  });

  out.S_values.assign(sup.size(), 0.0);
  for (std::size_t k = 0; k < sup.size(); ++k) {
    Complex z = sup[k].point;
    double zr = std::abs(z);
    double integral = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!(zr == 0.0 || lens_contains(cells[i].center, 0.5, z))) continue;
      if (out.B_cells[i] <= 0.0) {
        if (psi[k] * sup[k].mass > 0.0) out.undefined_integrand = true;
        continue;
      }
      integral += inst.cell_om[i] / out.B_cells[i];
    }
    out.S_values[k] = psi[k] * integral;
  }

  std::vector<Atom> swept(sup.size());
  for (std::size_t k = 0; k < sup.size(); ++k) {
    swept[k] = {sup[k].point, out.S_values[k] * sup[k].mass};
  }
  DiscMeasure swept_mu = DiscMeasure::from_atoms(std::move(swept));
  out.sup_maximal = maximal_sup(swept_mu, *inst.weight, 1.0, maximal_depth);
  return out;
}

}  // namespace berglab
