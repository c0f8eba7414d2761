#include "berglab/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "berglab/exec.hpp"

namespace berglab {

namespace {

double square_omega(const RadialWeight& w, const Square& s, const PolarGrid* grid) {
  if (grid) return region_mass_grid(w, s, *grid);
  return region_mass(w, s);
}

double ratio_or_skip(double mass, double om, double alpha) {
  if (om <= 0.0) return -1.0;  // candidate skipped
  return mass / std::pow(om, alpha);
}

}  // namespace

std::vector<Square> square_family(int n_max) {
  std::vector<Square> fam;
  for (int j = 0; j < 7; ++j) {  // coarse covering ring, |I| = 1
    fam.emplace_back(2.0 * kPi * j / 7.0 + 0.5, 1.0);
  }
  for (int n = 0; n <= n_max; ++n) {
    double len = dyadic_arc_length(n);
    int count = 1 << (n + 3);
    for (int m = 0; m < count; ++m) {
      fam.emplace_back((m + 0.5) * len, len);
    }
  }
  return fam;
}

double maximal_function(const DiscMeasure& mu, const RadialWeight& w, Complex z,
                        const MaximalOptions& opt) {
  double zr = std::abs(z);
  double best = 0.0;
  auto consider = [&](double mass, double om) {
    double q = ratio_or_skip(mass, om, opt.alpha);
    if (q > best) best = q;
  };

  switch (opt.mode) {
    case MaximalMode::Standard: {
      double theta = std::arg(z);
      // Coarse unit-length arcs always contain z.
      for (int j = 0; j < 7; ++j) {
        Square s(2.0 * kPi * j / 7.0 + 0.5, 1.0);
        double gap = std::abs(wrap_angle(theta - s.theta_c));
        if (gap <= 0.5 * s.len) {
          consider(mu.mass(s), square_omega(w, s, opt.grid));
        }
      }
      for (int n = 0; n <= opt.n_max; ++n) {
        double len = dyadic_arc_length(n);
        if (zr < 1.0 - len) break;  // deeper squares cannot contain z
        double t = theta < 0.0 ? theta + 2.0 * kPi : theta;
        int m = std::min(static_cast<int>(t / len), (1 << (n + 3)) - 1);
        Square s((m + 0.5) * len, len);
        consider(mu.mass(s), square_omega(w, s, opt.grid));
      }
      for (const Atom& a : mu.atoms()) {
        if (std::abs(a.point) == 0.0) continue;
        Square s(a.point);
        if (region_contains(s, z)) {
          consider(mu.mass(s), square_omega(w, s, opt.grid));
        }
      }
      break;
    }
    case MaximalMode::DyadicSquare: {
      double t = std::arg(z);
      if (t < 0.0) t += 2.0 * kPi;
      for (int n = 0; n <= opt.n_max; ++n) {
        double len = dyadic_arc_length(n);
        if (zr < 1.0 - len) break;
        int k = static_cast<int>(t / len);
        if (k >= (1 << (n + 2))) continue;  // outside the Upsilon half circle
        Square s((k + 0.5) * len, len);
        consider(mu.mass(s), square_omega(w, s, opt.grid));
      }
      break;
    }
    case MaximalMode::DyadicTent: {
      double t = std::arg(z);
      if (t < 0.0) t += 2.0 * kPi;
      for (int n = 0; n <= opt.n_max; ++n) {
        double len = dyadic_arc_length(n);
        if (zr <= 1.0 - len) break;
        int k0 = static_cast<int>(t / len);
        for (int k = k0 - 1; k <= k0 + 1; ++k) {
          if (k < 0 || k >= (1 << (n + 2))) continue;
          DyadicTent dt{n, k};
          if (!region_contains(Region{dt}, z)) continue;
          double om = opt.grid ? region_mass_grid(w, Region{dt}, *opt.grid)
                               : region_mass(w, Region{dt});
          consider(mu.mass(Region{dt}), om);
        }
      }
      // Global term.
      double om_disc = opt.grid
                           ? [&] {
                               double s = 0.0;
                               for (const auto& c : opt.grid->cells)
                                 s += w(std::abs(c.center)) * c.weight;
                               return s;
                             }()
                           : integrate_to_one([&](double s) { return w(s) * 2.0 * s; },
                                              0.0, 1e-12);
      if (om_disc > 0.0) best = std::max(best, mu.total() / std::pow(om_disc, opt.alpha));
      break;
    }
    case MaximalMode::Kernel: {
      if (zr == 0.0) throw std::domain_error("kernel maximal: zeta = 0");
      std::vector<Complex> cands = vertex_lattice(opt.n_max);
      for (const Atom& a : mu.atoms()) cands.push_back(a.point);
      auto support = mu.support_points();
      for (Complex a : cands) {
        if (std::abs(a) == 0.0) continue;
        if (!lens_contains(z, 0.5, a)) continue;  // a must lie in Gamma(z)
        Square s(a);
        double om = square_omega(w, s, opt.grid);
        if (om <= 0.0) continue;
        double one_minus = 1.0 - std::abs(a);
        double integral = 0.0;
        for (const Atom& p : support) {
          double d = std::abs(1.0 - std::conj(a) * p.point);
          integral += std::pow(one_minus / d, opt.kernel_lambda) * p.mass;
        }
        best = std::max(best, integral / std::pow(om, opt.alpha));
      }
      break;
    }
  }
  return best;
}

double maximal_sup(const DiscMeasure& mu, const RadialWeight& w, double alpha,
                   int n_max, const PolarGrid* grid) {
  std::vector<Square> fam = square_family(n_max);
  for (const Atom& a : mu.atoms()) {
    if (std::abs(a.point) > 0.0) fam.emplace_back(a.point);
  }
  double best = 0.0;
  for (const Square& s : fam) {
    double om = square_omega(w, s, grid);
    if (om <= 0.0) continue;
    double m = mu.mass(s);
    if (m <= 0.0) continue;
    best = std::max(best, m / std::pow(om, alpha));
  }
  return best;
}

std::vector<double> maximal_operator_image(const PolarGrid& grid,
                                           const std::vector<double>& phi,
                                           const RadialWeight& w, double alpha,
                                           int n_max,
                                           const std::vector<Square>& extra) {
  if (phi.size() != grid.cells.size()) {
    throw std::invalid_argument("maximal image: phi must be sampled on the grid");
  }
  for (double v : phi) {
    if (v < 0.0) throw std::invalid_argument("maximal image: phi must be >= 0");
  }
  const std::size_t nc = grid.cells.size();
  std::vector<double> psi(nc), omw(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    double om = w(std::abs(grid.cells[i].center));
    psi[i] = std::pow(phi[i], 1.0 / alpha) * om * grid.cells[i].weight;
    omw[i] = om * grid.cells[i].weight;
  }

  std::vector<double> image(nc, 0.0);
  auto apply_level = [&](double len, double theta0, int count) {
    std::vector<double> num(count, 0.0), den(count, 0.0);
    double inner = 1.0 - len;
    for (std::size_t i = 0; i < nc; ++i) {
      double r = std::abs(grid.cells[i].center);
      if (r < inner) continue;
      double t = std::arg(grid.cells[i].center) - theta0;
      t -= 2.0 * kPi * std::floor(t / (2.0 * kPi));
      int m = std::min(static_cast<int>(t / len), count - 1);
      num[m] += psi[i];
      den[m] += omw[i];
    }
    for (std::size_t i = 0; i < nc; ++i) {
      double r = std::abs(grid.cells[i].center);
      if (r < inner) continue;
      double t = std::arg(grid.cells[i].center) - theta0;
      t -= 2.0 * kPi * std::floor(t / (2.0 * kPi));
      int m = std::min(static_cast<int>(t / len), count - 1);
      if (den[m] > 0.0) image[i] = std::max(image[i], num[m] / den[m]);
    }
  };

  // Coarse covering ring: 7 overlapping unit arcs handled square by square.
  for (int j = 0; j < 7; ++j) {
    Square s(2.0 * kPi * j / 7.0 + 0.5, 1.0);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < nc; ++i) {
      if (region_contains(s, grid.cells[i].center)) {
        num += psi[i];
        den += omw[i];
      }
    }
    if (den <= 0.0) continue;
    double avg = num / den;
    for (std::size_t i = 0; i < nc; ++i) {
      if (region_contains(s, grid.cells[i].center)) {
        image[i] = std::max(image[i], avg);
      }
    }
  }
  for (int n = 0; n <= n_max; ++n) {
    apply_level(dyadic_arc_length(n), 0.0, 1 << (n + 3));
  }
  for (const Square& s : extra) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < nc; ++i) {
      if (region_contains(s, grid.cells[i].center)) {
        num += psi[i];
        den += omw[i];
      }
    }
    if (den <= 0.0) continue;
    double avg = num / den;
    for (std::size_t i = 0; i < nc; ++i) {
      if (region_contains(s, grid.cells[i].center)) {
        image[i] = std::max(image[i], avg);
      }
    }
  }
  for (std::size_t i = 0; i < nc; ++i) image[i] = std::pow(image[i], alpha);
  return image;
}

}  // namespace berglab
