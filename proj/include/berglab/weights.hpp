#ifndef BERGLAB_WEIGHTS_HPP
#define BERGLAB_WEIGHTS_HPP

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "berglab/geometry.hpp"

namespace berglab {

/// Empirical doubling/exponent certificates for a radial weight. All values
/// are measured on a finite scan grid; `member` is a numeric verdict, not a
/// proof.
struct DoublingReport {
  bool member = false;       // tail-doubling ratio stayed under the cap
  double C = 0.0;            // max of what(r)/what((1+r)/2) over the scan
  double beta = 0.0;         // smallest scanned exponent for the tail bound
  double gamma = 0.0;        // smallest scanned exponent for the moment bound
  double lambda0 = 0.0;      // smallest scanned kernel exponent with stable ratio
  double cap = 1e6;
};

/// A radial weight r in [0,1) -> omega(r) >= 0 with a cached tail table
/// what(r) = int_r^1 omega(s) ds and an optional doubling certificate.
class RadialWeight {
 public:
  enum class Kind { StandardAlpha, LogType, Table, Custom };

  static RadialWeight standard(double alpha);  // (1-r^2)^alpha, alpha > -1
  static RadialWeight log_type();              // 1/((1-r) log^2(e/(1-r)))
  static RadialWeight exponential();           // exp(-1/(1-r)), not doubling
  static RadialWeight from_table(std::vector<double> r, std::vector<double> w);
  static RadialWeight from_function(std::function<double(double)> f, std::string name);
  static RadialWeight from_csv(const std::string& path);

  double operator()(double r) const { return eval_(r); }
  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  /// Tail what(r) via the cached table (log-log interpolation between nodes).
  double tail_fast(double r) const;

  const DoublingReport& certificate() const;

 private:
  RadialWeight() = default;
  void build_tail_table();

  Kind kind_ = Kind::Custom;
  std::string name_;
  std::function<double(double)> eval_;
  std::vector<double> tab_x_;        // 1 - r, decreasing toward 0
  std::vector<double> tab_logtail_;  // log what(r) at the nodes
  mutable std::shared_ptr<DoublingReport> cert_;
};

/// Polar quadrature grid on a disc truncated at r_M = 1 - rho^depth.
/// Ring boundaries refine geometrically: 1 - r_{i+1} = rho (1 - r_i).
/// Cell weights are normalized area (dA = dx dy / pi), so they sum to r_M^2.
struct PolarGrid {
  struct Cell {
    std::complex<double> center;
    double weight;  // normalized-area weight of the cell
    int ring;
  };

  int depth = 6;
  double rho = 0.5;
  int angular_factor = 1;  // multiplies the per-ring angle count
  std::vector<double> ring_lo, ring_hi;
  std::vector<int> ring_cells_begin;  // index of first cell of each ring
  std::vector<Cell> cells;

  static PolarGrid make(int depth, double rho = 0.5, int angular_factor = 1);
  PolarGrid refined() const { return make(depth + 1, rho, angular_factor); }
  double outer_radius() const { return ring_hi.empty() ? 0.0 : ring_hi.back(); }
  double total_weight() const;
};

/// what(r) = int_r^1 omega(s) ds by adaptive quadrature. Throws for r >= 1.
double tail(const RadialWeight& w, double r);

/// Empirical doubling certificates on a scan grid reaching r_max.
DoublingReport doubling_report(const RadialWeight& w, double r_max = 0.999,
                               double cap = 1e6);

/// omega-mass of a region. Squares, tents and full-disc masses use exact 1-D
/// quadrature of the radial slice; other regions fall back to 2-D grid
/// quadrature on `grid` (required in that case).
double region_mass(const RadialWeight& w, const Region& region,
                   const PolarGrid* grid = nullptr);

/// omega-mass restricted to the grid: sum of omega(center) * weight over
/// cells whose center lies in the region. This is the flavour every tent
/// space evaluator shares so that discrete Fubini identities are exact.
double region_mass_grid(const RadialWeight& w, const Region& region,
                        const PolarGrid& grid);

/// omega_star(z) = int_{|z|}^1 omega(s) log(s/|z|) s ds. Throws at z = 0.
double omega_star(const RadialWeight& w, double mod_z);

/// int_D omega(z) / |1 - conj(zeta) z|^{lambda+1} dA(z) for radial omega,
/// evaluated by nested adaptive quadrature.
double kernel_weight_integral(const RadialWeight& w, double mod_zeta,
                              double lambda);

}  // namespace berglab

#endif
