#include "berglab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "berglab/quadrature.hpp"

namespace berglab {

DiscMeasure DiscMeasure::from_atoms(std::vector<Atom> atoms) {
  DiscMeasure m;
  for (const Atom& a : atoms) {
    if (a.mass < 0.0) throw std::invalid_argument("negative atom mass");
    if (std::abs(a.point) >= 1.0) throw std::invalid_argument("atom outside the disc");
    m.total_ += a.mass;
  }
  m.atoms_ = std::move(atoms);
  return m;
}

DiscMeasure DiscMeasure::from_density(std::shared_ptr<PolarGrid> grid,
                                      std::vector<double> cell_values) {
  if (!grid || cell_values.size() != grid->cells.size()) {
    throw std::invalid_argument("density values must match the grid cells");
  }
  DiscMeasure m;
  for (std::size_t i = 0; i < cell_values.size(); ++i) {
    if (cell_values[i] < 0.0) throw std::invalid_argument("negative density value");
    m.total_ += cell_values[i] * grid->cells[i].weight;
  }
  m.grid_ = std::move(grid);
  m.cell_values_ = std::move(cell_values);
  return m;
}

DiscMeasure DiscMeasure::from_radial_density(std::function<double(double)> rho,
                                             double r_max, bool infinite_total) {
  if (!(r_max > 0.0) || r_max >= 1.0) {
    throw std::invalid_argument("radial density needs 0 < r_max < 1");
  }
  DiscMeasure m;
  m.radial_ = std::move(rho);
  m.radial_rmax_ = r_max;
  m.infinite_ = infinite_total;
  m.total_ = integrate([&](double s) { return m.radial_(s) * 2.0 * s; }, 0.0, r_max,
                       1e-10);
  return m;
}

DiscMeasure DiscMeasure::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open measure file: " + path);
  std::vector<Atom> atoms;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, y, mass;
    if (!(row >> x >> y >> mass)) throw std::runtime_error("bad measure row: " + line);
    atoms.push_back({Complex(x, y), mass});
  }
  return from_atoms(std::move(atoms));
}

DiscMeasure DiscMeasure::hyperbolic(std::shared_ptr<PolarGrid> grid) {
  std::vector<double> vals(grid->cells.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    double r = std::abs(grid->cells[i].center);
    double d = 1.0 - r * r;
    vals[i] = 1.0 / (d * d);
  }
  auto m = from_density(std::move(grid), std::move(vals));
  m.infinite_ = true;  // dh diverges as the truncation radius grows
  return m;
}

DiscMeasure DiscMeasure::counterexample(const RadialWeight& w,
                                        std::shared_ptr<PolarGrid> grid) {
  std::vector<double> vals(grid->cells.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    double r = std::abs(grid->cells[i].center);
    double sq = region_mass(w, Square(grid->cells[i].center));
    vals[i] = sq / ((1.0 - r) * (1.0 - r));
  }
  auto m = from_density(std::move(grid), std::move(vals));
  m.infinite_ = true;
  return m;
}

DiscMeasure DiscMeasure::counterexample_radial(const RadialWeight& w, double r_max) {
  auto rho = [w](double s) {
    if (s <= 0.0) return 0.0;
    double sq = region_mass(w, Square(Complex(s, 0.0)));
    return sq / ((1.0 - s) * (1.0 - s));
  };
  return from_radial_density(rho, r_max, true);
}

namespace {

double radial_region_mass(const std::function<double(double)>& rho, double r_max,
                          const Region& region) {
  // Angular share of the region at radius s, times the radial density.
  if (const Square* sq = std::get_if<Square>(&region)) {
    double lo = sq->inner_radius();
    double hi = std::min(r_max, 1.0);
    if (hi <= lo) return 0.0;
    double frac = sq->len / (2.0 * kPi);
    return frac *
           integrate([&](double s) { return rho(s) * 2.0 * s; }, lo, hi, 1e-10);
  }
  if (const Tent* t = std::get_if<Tent>(&region)) {
    if (t->alpha != 0.5) {
      throw std::invalid_argument("radial mass: only aperture 1/2 tents");
    }
    double v = std::abs(t->vertex);
    double hi = r_max;
    if (hi <= v) return 0.0;
    return integrate([&](double s) { return rho(s) * (s - v); }, v, hi, 1e-10) / kPi;
  }
  if (const PseudoDisc* d = std::get_if<PseudoDisc>(&region)) {
    double a = std::abs(d->center);
    double r = d->radius;
    double denom = 1.0 - r * r * a * a;
    double c = a * (1.0 - r * r) / denom;
    double R = r * (1.0 - a * a) / denom;
    double lo = std::max(0.0, c - R);
    double hi = std::min(r_max, c + R);
    if (hi <= lo) return 0.0;
    auto f = [&](double s) {
      return rho(s) * 2.0 * pseudo_disc_half_angle(a, r, s) * s / kPi;
    };
    return integrate(f, lo, hi, 1e-9);
  }
  if (const Sector* sec = std::get_if<Sector>(&region)) {
    double frac = std::min(sec->arc.len, 2.0 * kPi) / (2.0 * kPi);
    return frac *
           integrate([&](double s) { return rho(s) * 2.0 * s; }, 0.0, r_max, 1e-10);
  }
  throw std::invalid_argument("radial mass: unsupported region kind");
}

}  // namespace

double pseudo_disc_half_angle(double mod_a, double r, double s) {
  double denom = 1.0 - r * r * mod_a * mod_a;
  double c = mod_a * (1.0 - r * r) / denom;
  double R = r * (1.0 - mod_a * mod_a) / denom;
  if (s <= 0.0) return 0.0;
  if (c == 0.0) return (s < R) ? kPi : 0.0;
  double cosphi = (s * s + c * c - R * R) / (2.0 * s * c);
  if (cosphi >= 1.0) return 0.0;
  if (cosphi <= -1.0) return kPi;
  return std::acos(cosphi);
}

double DiscMeasure::mass(const Region& region) const {
  double m = 0.0;
  for (const Atom& a : atoms_) {
    if (region_contains(region, a.point)) m += a.mass;
  }
  if (grid_) {
    for (std::size_t i = 0; i < grid_->cells.size(); ++i) {
      if (cell_values_[i] == 0.0) continue;
      if (region_contains(region, grid_->cells[i].center)) {
        m += cell_values_[i] * grid_->cells[i].weight;
      }
    }
  }
  if (radial_) m += radial_region_mass(radial_, radial_rmax_, region);
  return m;
}

std::vector<Atom> DiscMeasure::support_points() const {
  std::vector<Atom> pts = atoms_;
  if (grid_) {
    for (std::size_t i = 0; i < grid_->cells.size(); ++i) {
      if (cell_values_[i] > 0.0) {
        pts.push_back({grid_->cells[i].center, cell_values_[i] * grid_->cells[i].weight});
      }
    }
  }
  return pts;
}

SeparatedSequence SeparatedSequence::lattice(double delta, double r_max) {
  if (!(delta > 0.0) || delta >= 1.0) {
    throw std::invalid_argument("lattice: delta must lie in (0,1)");
  }
  SeparatedSequence seq;
  // Ring radii with pseudohyperbolic gap ~delta between consecutive rings:
  // 1 - r_{n+1} = kappa (1 - r_n) with |r_{n+1} - r_n| / (1 - r_n r_{n+1}) ~ delta.
  double kappa = (1.0 - delta) / (1.0 + delta);
  double r = 0.0;
  std::vector<double> radii;
  radii.push_back(0.35);  // keep points away from the origin
  while (true) {
    double next = 1.0 - kappa * (1.0 - radii.back());
    if (next > r_max) break;
    radii.push_back(next);
  }
  (void)r;
  for (std::size_t ring = 0; ring < radii.size(); ++ring) {
    double rn = radii[ring];
    // Angular spacing: pseudohyperbolic distance between neighbours on the
    // ring is about rn * dtheta / (1 - rn^2). Stagger alternate rings.
    double dtheta = delta * (1.0 - rn * rn) / rn;
    int n = std::max(4, static_cast<int>(std::floor(2.0 * kPi / dtheta)));
    double step = 2.0 * kPi / n;
    double offset = 0.5 * step * (ring % 2);
    for (int j = 0; j < n; ++j) {
      seq.points.push_back(std::polar(rn, offset + j * step));
    }
  }
  double sep = 1.0;
  for (std::size_t i = 0; i < seq.points.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.points.size(); ++j) {
      sep = std::min(sep, pseudo_distance(seq.points[i], seq.points[j]));
    }
  }
  seq.separation = sep;
  return seq;
}

}  // namespace berglab
