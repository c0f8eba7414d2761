#ifndef BERGLAB_MEASURE_HPP
#define BERGLAB_MEASURE_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "berglab/geometry.hpp"
#include "berglab/weights.hpp"

namespace berglab {

struct Atom {
  Complex point;
  double mass;
};

/// Positive Borel measure on the disc: point atoms, an optional cell density
/// on a polar grid, and an optional radial density rho(s) truncated at r_max.
/// The radial form keeps 1-D quadrature available far beyond feasible 2-D
/// grids; its masses are exact for squares, tents, pseudo-discs and sectors.
class DiscMeasure {
 public:
  DiscMeasure() = default;

  static DiscMeasure from_atoms(std::vector<Atom> atoms);
  static DiscMeasure from_density(std::shared_ptr<PolarGrid> grid,
                                  std::vector<double> cell_values);
  static DiscMeasure from_radial_density(std::function<double(double)> rho,
                                         double r_max, bool infinite_total);
  static DiscMeasure from_csv(const std::string& path);

  /// dh = dA / (1 - |z|^2)^2 as a grid density.
  static DiscMeasure hyperbolic(std::shared_ptr<PolarGrid> grid);
  /// d mu = omega(S(z)) (1 - |z|)^{-2} dA as a grid density.
  static DiscMeasure counterexample(const RadialWeight& w,
                                    std::shared_ptr<PolarGrid> grid);
  /// Radial-density form of the same measure truncated at r_max.
  static DiscMeasure counterexample_radial(const RadialWeight& w, double r_max);

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool has_density() const { return grid_ != nullptr; }
  bool has_radial_density() const { return static_cast<bool>(radial_); }
  const PolarGrid& grid() const { return *grid_; }
  const std::vector<double>& cell_values() const { return cell_values_; }
  const std::function<double(double)>& radial_density() const { return radial_; }
  double radial_rmax() const { return radial_rmax_; }
  bool infinite_flagged() const { return infinite_; }

  double total() const { return total_; }
  double mass(const Region& region) const;

  /// Unified discrete support: atoms plus density cells carrying positive
  /// mass, each as (point, mass). Radial densities have no discrete support.
  std::vector<Atom> support_points() const;

 private:
  std::vector<Atom> atoms_;
  std::shared_ptr<PolarGrid> grid_;
  std::vector<double> cell_values_;
  std::function<double(double)> radial_;
  double radial_rmax_ = 0.0;
  bool infinite_ = false;
  double total_ = 0.0;
};

struct SeparatedSequence {
  std::vector<Complex> points;  // all nonzero
  double separation = 0.0;      // min pairwise pseudohyperbolic distance

  static SeparatedSequence lattice(double delta, double r_max = 0.99);
};

/// Angular half-width of the Euclidean slice of Delta(a, r) at radius s,
/// for a on the positive real axis (rotate the measure instead of the disc).
double pseudo_disc_half_angle(double mod_a, double r, double s);

}  // namespace berglab

#endif
