#include "berglab/tent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "berglab/exec.hpp"

namespace berglab {

namespace {

bool in_cone(Complex zeta, double alpha, Complex z, double h) {
  if (std::isfinite(h)) {
    if (h <= 0.0) return false;
    if (!(std::abs(z) > std::abs(zeta) / (1.0 + h))) return false;
  }
  return lens_contains(zeta, alpha, z);
}

// z in T(a) or z is the apex itself; the closed tent used by tent averages.
bool in_closed_tent(Complex a, Complex z) {
  if (z == a) return true;
  if (std::abs(z) == 0.0) return false;
  return lens_contains(z, 0.5, a);
}

}  // namespace

double TentInstance::tent_mass_grid(Complex z) const {
  double zr = std::abs(z);
  double m = 0.0;
  for (std::size_t i = 0; i < grid->cells.size(); ++i) {
    Complex c = grid->cells[i].center;
    if (zr == 0.0 || lens_contains(c, 0.5, z)) m += cell_om[i];
  }
  return m;
}

TentInstance make_tent_instance(std::shared_ptr<PolarGrid> grid,
                                const RadialWeight& w, const DiscMeasure& nu,
                                int vertex_depth) {
  TentInstance inst;
  inst.grid = std::move(grid);
  inst.weight = &w;
  const auto& cells = inst.grid->cells;
  inst.cell_om.resize(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    inst.cell_om[i] = w(std::abs(cells[i].center)) * cells[i].weight;
    inst.disc_om += inst.cell_om[i];
  }
  inst.nu = nu.support_points();
  inst.nu_tent_om.resize(inst.nu.size());
  parallel_for(inst.nu.size(), [&](std::size_t k) {
    inst.nu_tent_om[k] = inst.tent_mass_grid(inst.nu[k].point);
  });
  inst.vertices = vertex_lattice(vertex_depth);
  inst.vertex_tent_om.resize(inst.vertices.size());
  parallel_for(inst.vertices.size(), [&](std::size_t k) {
    inst.vertex_tent_om[k] = inst.tent_mass_grid(inst.vertices[k]);
  });
  return inst;
}

double area_function(const TentInstance& inst, const std::vector<Complex>& f,
                     double q, Complex zeta, double h, double alpha) {
  if (std::abs(zeta) == 0.0) throw std::domain_error("area_function: zeta = 0");
  if (f.size() != inst.nu.size()) {
    throw std::invalid_argument("area_function: values do not match the support");
  }
  if (q == kInf) {
    double m = 0.0;
    for (std::size_t k = 0; k < inst.nu.size(); ++k) {
      if (inst.nu[k].mass <= 0.0) continue;
      if (in_cone(zeta, alpha, inst.nu[k].point, h)) {
        m = std::max(m, std::abs(f[k]));
      }
    }
    return m;  // empty cone: 0
  }
  if (!(q > 0.0)) throw std::domain_error("area_function: q must be positive");
  double s = 0.0;
  for (std::size_t k = 0; k < inst.nu.size(); ++k) {
    if (in_cone(zeta, alpha, inst.nu[k].point, h)) {
      s += std::pow(std::abs(f[k]), q) * inst.nu[k].mass;
    }
  }
  return std::pow(s, 1.0 / q);
}

namespace {

// Tent averages (the q'-th power of C) for every candidate vertex:
// (1/omega(T(a))) sum_{z_k in closed T(a)} |f_k|^q omega(T(z_k)) nu_k.
std::vector<double> candidate_tent_averages(const TentInstance& inst,
                                            const std::vector<Complex>& f, double q,
                                            std::vector<Complex>& cands) {
  cands.clear();
  cands.reserve(inst.vertices.size() + inst.nu.size() + 1);
  std::vector<double> masses;
  cands.insert(cands.end(), inst.vertices.begin(), inst.vertices.end());
  masses.insert(masses.end(), inst.vertex_tent_om.begin(), inst.vertex_tent_om.end());
  for (std::size_t k = 0; k < inst.nu.size(); ++k) {
    cands.push_back(inst.nu[k].point);
    masses.push_back(inst.nu_tent_om[k]);
  }
  cands.push_back(Complex(0.0, 0.0));
  masses.push_back(inst.disc_om);

  std::vector<double> avg(cands.size(), 0.0);
  parallel_for(cands.size(), [&](std::size_t c) {
    if (masses[c] <= 0.0) return;
    double s = 0.0;
    for (std::size_t k = 0; k < inst.nu.size(); ++k) {
      if (in_closed_tent(cands[c], inst.nu[k].point)) {
        s += std::pow(std::abs(f[k]), q) * inst.nu_tent_om[k] * inst.nu[k].mass;
      }
    }
    avg[c] = s / masses[c];
  });
  return avg;
}

}  // namespace

double c_function(const TentInstance& inst, const std::vector<Complex>& f, double q,
                  Complex zeta) {
  if (std::abs(zeta) == 0.0) throw std::domain_error("c_function: zeta = 0");
  if (!(q > 0.0) || q == kInf) throw std::domain_error("c_function: q must be finite");
  std::vector<Complex> cands;
  std::vector<double> avg = candidate_tent_averages(inst, f, q, cands);
  double best = 0.0;
  for (std::size_t c = 0; c < cands.size(); ++c) {
    bool admissible = std::abs(cands[c]) == 0.0 || lens_contains(zeta, 0.5, cands[c]);
    if (admissible) best = std::max(best, avg[c]);
  }
  return std::pow(best, 1.0 / q);
}

double tent_norm(const TentInstance& inst, const std::vector<Complex>& f, double p,
                 double q, TentNormMode mode, double alpha,
                 const std::vector<Complex>& extra_vertices) {
  const auto& cells = inst.grid->cells;
  if (mode == TentNormMode::AreaFunctional) {
    std::vector<double> a(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
      a[i] = area_function(inst, f, q, cells[i].center, kInf, alpha);
    });
    if (p == kInf) {
      double m = 0.0;
      for (double v : a) m = std::max(m, v);
      return m;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      s += std::pow(a[i], p) * inst.cell_om[i];
    }
    return std::pow(s, 1.0 / p);
  }
  // CFunctional
  std::vector<Complex> cands;
  std::vector<double> avg = candidate_tent_averages(inst, f, q, cands);
  double best = 0.0;
  for (double v : avg) best = std::max(best, v);
  for (Complex a : extra_vertices) {
    double m = inst.tent_mass_grid(a);
    if (m <= 0.0) continue;
    double s = 0.0;
    for (std::size_t k = 0; k < inst.nu.size(); ++k) {
      if (in_closed_tent(a, inst.nu[k].point)) {
        s += std::pow(std::abs(f[k]), q) * inst.nu_tent_om[k] * inst.nu[k].mass;
      }
    }
    best = std::max(best, s / m);
  }
  if (p == kInf) return std::pow(best, 1.0 / q);
  // Finite-p C-functional norm: L^p_omega of the pointwise sup over the cone.
  std::vector<double> cf(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    double b = 0.0;
    for (std::size_t c = 0; c < cands.size(); ++c) {
      bool admissible =
          std::abs(cands[c]) == 0.0 || lens_contains(cells[i].center, 0.5, cands[c]);
      if (admissible) b = std::max(b, avg[c]);
    }
    cf[i] = std::pow(b, 1.0 / q);
  });
  double s = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    s += std::pow(cf[i], p) * inst.cell_om[i];
  }
  return std::pow(s, 1.0 / p);
}

Complex pairing(const TentInstance& inst, const std::vector<Complex>& f,
                const std::vector<Complex>& g) {
  if (f.size() != inst.nu.size() || g.size() != inst.nu.size()) {
    throw std::invalid_argument("pairing: mismatched supports");
  }
  Complex s = 0.0;
  for (std::size_t k = 0; k < inst.nu.size(); ++k) {
    s += f[k] * std::conj(g[k]) * inst.nu_tent_om[k] * inst.nu[k].mass;
  }
  return s;
}

StoppingProfile stopping_time(const TentInstance& inst, const std::vector<Complex>& g,
                              double qprime, double C1) {
  if (!(C1 > 0.0)) throw std::domain_error("stopping_time: C1 must be positive");
  const auto& cells = inst.grid->cells;
  StoppingProfile prof;
  prof.qprime = qprime;
  prof.C1 = C1;
  prof.h.assign(cells.size(), kInf);
  prof.Cq.assign(cells.size(), 0.0);
  prof.zero_c_diag.assign(cells.size(), 0);
  prof.cell_mod.resize(cells.size());

  std::vector<Complex> cands;
  std::vector<double> avg = candidate_tent_averages(inst, g, qprime, cands);

  parallel_for(cells.size(), [&](std::size_t i) {
    Complex zeta = cells[i].center;
    prof.cell_mod[i] = std::abs(zeta);
    double best = 0.0;
    for (std::size_t c = 0; c < cands.size(); ++c) {
      bool admissible = std::abs(cands[c]) == 0.0 || lens_contains(zeta, 0.5, cands[c]);
      if (admissible) best = std::max(best, avg[c]);
    }
    prof.Cq[i] = best;
    double thr = std::pow(C1, qprime) * best;

    // Cone points sorted by decreasing modulus; h jumps at |zeta|/|z_k| - 1.
    std::vector<std::pair<double, double>> pts;  // (|z_k|, |g_k|^{q'} nu_k)
    for (std::size_t k = 0; k < inst.nu.size(); ++k) {
      if (lens_contains(zeta, 0.5, inst.nu[k].point)) {
        pts.emplace_back(std::abs(inst.nu[k].point),
                         std::pow(std::abs(g[k]), qprime) * inst.nu[k].mass);
      }
    }
    if (pts.empty()) return;  // h stays infinite
    if (thr <= 0.0) {
      double conemass = 0.0;
      for (auto& p : pts) conemass += p.second;
      if (conemass > 0.0) {
        prof.h[i] = 0.0;
        prof.zero_c_diag[i] = 1;
      }
      return;
    }
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    double zr = std::abs(zeta);
    double acc = 0.0;
    for (auto& p : pts) {
      acc += p.second;
      if (acc > thr * (1.0 + 1e-12)) {
        double mod = std::max(p.first, 1e-300);
        prof.h[i] = zr / mod - 1.0;
        return;
      }
    }
  });
  return prof;
}

double stopping_coverage(const TentInstance& inst, const StoppingProfile& prof,
                         Complex z) {
  const auto& cells = inst.grid->cells;
  double num = 0.0, den = 0.0;
  double zr = std::abs(z);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!(zr == 0.0 || lens_contains(cells[i].center, 0.5, z))) continue;
    den += inst.cell_om[i];
    double hz = prof.h[i];
    double rz = std::abs(cells[i].center);
    bool in_H = (hz == kInf) || (rz <= (1.0 + hz) * zr);
    if (in_H) num += inst.cell_om[i];
  }
  if (den <= 0.0) return 1.0;
  return num / den;
}

double measure_stopping_c3(const TentInstance& inst, const std::vector<Complex>& g,
                           double qprime, const std::vector<Complex>& zs) {
  const auto& cells = inst.grid->cells;
  std::vector<Complex> cands;
  std::vector<double> avg = candidate_tent_averages(inst, g, qprime, cands);
  std::vector<double> cq(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    double best = 0.0;
    for (std::size_t c = 0; c < cands.size(); ++c) {
      bool ok = std::abs(cands[c]) == 0.0 || lens_contains(cells[i].center, 0.5, cands[c]);
      if (ok) best = std::max(best, avg[c]);
    }
    cq[i] = best;
  });

  double c3 = 0.0;
  for (Complex z : zs) {
    double zr = std::abs(z);
    if (zr <= 0.0) continue;
    double x = 1.0 / zr - 1.0;
    double num = 0.0, den = 0.0, infc = kInf;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!lens_contains(cells[i].center, 0.5, z)) continue;
      den += inst.cell_om[i];
      infc = std::min(infc, cq[i]);
      // A^{q'}(g|x)(zeta): cone sum truncated at |u| > |zeta|/(1+x).
      Complex zeta = cells[i].center;
      double s = 0.0;
      for (std::size_t k = 0; k < inst.nu.size(); ++k) {
        if (in_cone(zeta, 0.5, inst.nu[k].point, x)) {
          s += std::pow(std::abs(g[k]), qprime) * inst.nu[k].mass;
        }
      }
      num += s * inst.cell_om[i];
    }
    if (den <= 0.0 || infc <= 0.0 || infc == kInf) continue;
    c3 = std::max(c3, num / (den * infc));
  }
  return c3;
}

Complex p0_average(const TentInstance& inst,
                   const std::function<Complex(Complex, Complex)>& g, Complex z) {
  const auto& cells = inst.grid->cells;
  double zr = std::abs(z);
  Complex num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    Complex c = cells[i].center;
    if (zr == 0.0 || lens_contains(c, 0.5, z)) {
      num += g(z, c) * inst.cell_om[i];
      den += inst.cell_om[i];
    }
  }
  if (den <= 0.0) throw std::domain_error("p0_average: omega(T(z)) vanishes");
  return num / den;
}

double mixed_norm(const TentInstance& inst,
                  const std::function<Complex(Complex, Complex)>& h, double p,
                  double q) {
  const auto& cells = inst.grid->cells;
  auto inner = [&](Complex zeta) -> double {
    if (q == kInf) {
      double m = 0.0;
      for (const Atom& a : inst.nu) {
        if (a.mass > 0.0) m = std::max(m, std::abs(h(a.point, zeta)));
      }
      return m;
    }
    double s = 0.0;
    for (const Atom& a : inst.nu) {
      s += std::pow(std::abs(h(a.point, zeta)), q) * a.mass;
    }
    return std::pow(s, 1.0 / q);
  };
  if (p == kInf) {
    double m = 0.0;
    for (const auto& c : cells) m = std::max(m, inner(c.center));
    return m;
  }
  std::vector<double> vals(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) { vals[i] = inner(cells[i].center); });
  double s = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    s += std::pow(vals[i], p) * inst.cell_om[i];
  }
  return std::pow(s, 1.0 / p);
}

ConeKernelRatio cone_kernel_ratio(const TentInstance& inst, double p, double lambda) {
  const auto& cells = inst.grid->cells;
  ConeKernelRatio out;
  double origin_mass = 0.0;
  for (const Atom& a : inst.nu) {
    if (std::abs(a.point) == 0.0) origin_mass += a.mass;
  }
  std::vector<double> lhs_cell(cells.size()), rhs_cell(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    Complex zeta = cells[i].center;
    double ker = 0.0, cone = 0.0;
    for (const Atom& a : inst.nu) {
      double d = std::abs(1.0 - std::conj(zeta) * a.point);
      ker += std::pow((1.0 - std::abs(a.point)) / d, lambda) * a.mass;
      if (std::abs(a.point) > 0.0 && lens_contains(zeta, 0.5, a.point)) {
        cone += a.mass;
      }
    }
    lhs_cell[i] = std::pow(ker, p);
    rhs_cell[i] = std::pow(cone, p);
  });
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out.lhs += lhs_cell[i] * inst.cell_om[i];
    out.rhs += rhs_cell[i] * inst.cell_om[i];
  }
  out.rhs += origin_mass;
  if (out.rhs <= 0.0) {
    if (out.lhs <= 0.0) {
      out.ratio = 1.0;  // 0/0 convention, logged by the caller
    } else {
      out.degenerate = true;
      out.ratio = kInf;
    }
  } else {
    out.ratio = out.lhs / out.rhs;
  }
  return out;
}

std::vector<int> luecking_selected_indices(const std::vector<double>& phi) {
  std::vector<int> idx;
  double last = 0.0;
  bool have = false;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    if (!have) {
      if (phi[k] > 0.0) {
        idx.push_back(static_cast<int>(k));
        last = phi[k];
        have = true;
      }
    } else if (phi[k] > 2.0 * last) {
      idx.push_back(static_cast<int>(k));
      last = phi[k];
    }
  }
  return idx;
}

std::vector<double> luecking_select(const std::vector<double>& phi) {
  std::vector<double> out(phi.size(), 0.0);
  for (int k : luecking_selected_indices(phi)) out[k] = phi[k];
  return out;
}

double regularization(Complex u, double rho, const std::vector<Atom>& nu) {
  double s = 0.0;
  for (const Atom& a : nu) {
    double m = std::abs(a.point);
    if (m <= 0.0) continue;
    double rad = rho * m * (1.0 - m);
    if (std::abs(u - a.point) < rad) {
      s += a.mass / (rho * rho * m * m);
    }
  }
  return s;
}

}  // namespace berglab
