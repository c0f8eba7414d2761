#include "berglab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "berglab/quadrature.hpp"

namespace berglab {

namespace {

// Tail-table nodes: 1 - r = 2^{-j/8}, j = 0..kTailNodes-1.
constexpr int kTailNodes = 360;

double node_x(int j) { return std::exp2(-j / 8.0); }

}  // namespace

RadialWeight RadialWeight::standard(double alpha) {
  if (alpha <= -1.0) throw std::domain_error("standard weight needs alpha > -1");
  RadialWeight w;
  w.kind_ = Kind::StandardAlpha;
  std::ostringstream name;
  name << "standard(" << alpha << ")";
  w.name_ = name.str();
  w.eval_ = [alpha](double r) { return std::pow(1.0 - r * r, alpha); };
  w.build_tail_table();
  return w;
}

RadialWeight RadialWeight::log_type() {
  RadialWeight w;
  w.kind_ = Kind::LogType;
  w.name_ = "log";
  w.eval_ = [](double r) {
    double x = 1.0 - r;
    double l = 1.0 - std::log(x);  // log(e/(1-r))
    return 1.0 / (x * l * l);
  };
  w.build_tail_table();
  return w;
}

RadialWeight RadialWeight::exponential() {
  RadialWeight w;
  w.kind_ = Kind::Custom;
  w.name_ = "exponential";
  w.eval_ = [](double r) { return std::exp(-1.0 / (1.0 - r)); };
  w.build_tail_table();
  return w;
}

RadialWeight RadialWeight::from_table(std::vector<double> r, std::vector<double> vals) {
  if (r.size() != vals.size() || r.size() < 2) {
    throw std::invalid_argument("weight table needs >= 2 matching samples");
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < 0.0 || r[i] >= 1.0) throw std::invalid_argument("table radius outside [0,1)");
    if (i > 0 && r[i] <= r[i - 1]) throw std::invalid_argument("table radii must increase");
    if (vals[i] < 0.0) throw std::invalid_argument("negative weight value");
  }
  RadialWeight w;
  w.kind_ = Kind::Table;
  w.name_ = "table";
  auto rs = std::make_shared<std::vector<double>>(std::move(r));
  auto ws = std::make_shared<std::vector<double>>(std::move(vals));
  w.eval_ = [rs, ws](double x) {
    const auto& r = *rs;
    const auto& v = *ws;
    if (x <= r.front()) return v.front();
    if (x >= r.back()) return v.back();  // constant extension past the table
    auto it = std::upper_bound(r.begin(), r.end(), x);
    std::size_t i = static_cast<std::size_t>(it - r.begin());
    double t = (x - r[i - 1]) / (r[i] - r[i - 1]);
    return v[i - 1] + t * (v[i] - v[i - 1]);
  };
  w.build_tail_table();
  return w;
}

RadialWeight RadialWeight::from_function(std::function<double(double)> f, std::string name) {
  RadialWeight w;
  w.kind_ = Kind::Custom;
  w.name_ = std::move(name);
  w.eval_ = std::move(f);
  w.build_tail_table();
  return w;
}

RadialWeight RadialWeight::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open weight table: " + path);
  std::vector<double> r, v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double a, b;
    if (!(row >> a >> b)) throw std::runtime_error("bad weight table row: " + line);
    r.push_back(a);
    v.push_back(b);
  }
  return from_table(std::move(r), std::move(v));
}

void RadialWeight::build_tail_table() {
  tab_x_.resize(kTailNodes);
  tab_logtail_.resize(kTailNodes);
  // Accumulate int_{r_j}^{r_{j+1}} omega between consecutive nodes, then add
  // the final stub beyond the last node, so each table entry is a true tail.
  std::vector<double> seg(kTailNodes, 0.0);
  for (int j = 0; j < kTailNodes; ++j) tab_x_[j] = node_x(j);
  double deep = integrate_to_one(eval_, 1.0 - tab_x_[kTailNodes - 1], 1e-13);
  for (int j = 0; j + 1 < kTailNodes; ++j) {
    double a = 1.0 - tab_x_[j];
    double b = 1.0 - tab_x_[j + 1];
    seg[j] = integrate(eval_, a, b, 1e-13);
  }
  double acc = deep;
  for (int j = kTailNodes - 2; j >= 0; --j) acc += seg[j];
  // acc is now the full tail at node 0; rebuild cumulatively.
  double run = deep;
  tab_logtail_[kTailNodes - 1] = std::log(std::max(run, 1e-320));
  for (int j = kTailNodes - 2; j >= 0; --j) {
    run += seg[j];
    tab_logtail_[j] = std::log(std::max(run, 1e-320));
  }
  (void)acc;
}

double RadialWeight::tail_fast(double r) const {
  if (r >= 1.0) throw std::domain_error("tail: r must be < 1");
  if (r < 0.0) r = 0.0;
  double x = 1.0 - r;
  if (x >= tab_x_.front()) return std::exp(tab_logtail_.front());
  // Locate the bracketing nodes in the decreasing x table; interpolate
  // log-tail linearly in log x.
  double j_real = -8.0 * std::log2(x);
  int j = static_cast<int>(j_real);
  if (j >= kTailNodes - 1) {
    // Extrapolate with the slope of the last segment.
    int m = kTailNodes - 1;
    double slope = (tab_logtail_[m] - tab_logtail_[m - 1]) /
                   (std::log(tab_x_[m]) - std::log(tab_x_[m - 1]));
    return std::exp(tab_logtail_[m] + slope * (std::log(x) - std::log(tab_x_[m])));
  }
  double lx0 = std::log(tab_x_[j]);
  double lx1 = std::log(tab_x_[j + 1]);
  double t = (std::log(x) - lx0) / (lx1 - lx0);
  return std::exp(tab_logtail_[j] + t * (tab_logtail_[j + 1] - tab_logtail_[j]));
}

const DoublingReport& RadialWeight::certificate() const {
  if (!cert_) {
    cert_ = std::make_shared<DoublingReport>(doubling_report(*this));
  }
  return *cert_;
}

double tail(const RadialWeight& w, double r) {
  if (r >= 1.0) throw std::domain_error("tail: r must be < 1");
  if (r < 0.0) r = 0.0;
  return integrate_to_one([&w](double s) { return w(s); }, r, 1e-13);
}

namespace {

// Scan radii for the doubling certificates: geometric approach to 1.
std::vector<double> scan_radii(double r_max) {
  std::vector<double> out;
  for (double x = 1.0; x > 1.0 - r_max - 1e-12; x *= std::exp2(-0.25)) {
    out.push_back(1.0 - x);
    if (1.0 - x >= r_max) break;
  }
  return out;
}

}  // namespace

DoublingReport doubling_report(const RadialWeight& w, double r_max, double cap) {
  DoublingReport rep;
  rep.cap = cap;
  std::vector<double> rs = scan_radii(r_max);
  std::vector<double> tails(rs.size()), mids(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    tails[i] = tail(w, rs[i]);
    mids[i] = tail(w, 0.5 * (1.0 + rs[i]));
  }
  double c = 0.0;
  bool member = true;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (mids[i] <= 0.0) {
      if (tails[i] > 0.0) member = false;
      continue;
    }
    double ratio = tails[i] / mids[i];
    c = std::max(c, ratio);
    if (ratio > cap) member = false;
  }
  rep.C = c;
  rep.member = member && c <= cap && c > 0.0;

  if (rep.member) {
    // beta: smallest scanned exponent with what(r) <= C ((1-r)/(1-t))^beta what(t)
    // over all scan pairs r <= t.
    auto beta_ok = [&](double beta) {
      for (std::size_t i = 0; i < rs.size(); ++i) {
        for (std::size_t j = i; j < rs.size(); ++j) {
          double lhs = tails[i];
          double rhs = rep.C * std::pow((1.0 - rs[i]) / (1.0 - rs[j]), beta) * tails[j];
          if (lhs > rhs * (1.0 + 1e-9)) return false;
        }
      }
      return true;
    };
    double beta = 0.125;
    while (beta < 64.0 && !beta_ok(beta)) beta *= 2.0;
    // refine one octave down
    for (double step = beta / 2.0; step > beta / 16.0; step /= 2.0) {
      if (beta - step >= 0.125 && beta_ok(beta - step)) beta -= step;
    }
    rep.beta = beta;

    // gamma: smallest scanned exponent with
    // int_0^t ((1-t)/(1-s))^gamma omega(s) ds <= C what(t).
    auto gamma_ok = [&](double g) {
      for (std::size_t j = 1; j < rs.size(); ++j) {
        double t = rs[j];
        double lhs = integrate(
            [&](double s) { return std::pow((1.0 - t) / (1.0 - s), g) * w(s); }, 0.0,
            t, 1e-9);
        if (lhs > rep.C * tails[j] * (1.0 + 1e-6)) return false;
      }
      return true;
    };
    double gamma = 0.25;
    while (gamma < 64.0 && !gamma_ok(gamma)) gamma *= 2.0;
    for (double step = gamma / 2.0; step > gamma / 16.0; step /= 2.0) {
      if (gamma - step >= 0.25 && gamma_ok(gamma - step)) gamma -= step;
    }
    rep.gamma = gamma;

    // lambda0: smallest scanned kernel exponent for which the ratio
    // kernel_integral / (what(zeta) (1-|zeta|)^{-lambda}) is stable across a
    // radius sweep (max/min within a fixed factor).
    std::vector<double> zs = {0.5, 0.75, 0.9, 0.97, 0.99};
    double lambda0 = 0.0;
    for (double lam : {0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0}) {
      double lo = 1e300, hi = 0.0;
      for (double z : zs) {
        double k = kernel_weight_integral(w, z, lam);
        double ref = tail(w, z) / std::pow(1.0 - z, lam);
        double q = k / ref;
        lo = std::min(lo, q);
        hi = std::max(hi, q);
      }
      if (hi / lo < 8.0) {
        lambda0 = lam;
        break;
      }
    }
    rep.lambda0 = (lambda0 > 0.0) ? lambda0 : 8.0;
  }
  return rep;
}

double region_mass(const RadialWeight& w, const Region& region, const PolarGrid* grid) {
  if (const Square* s = std::get_if<Square>(&region)) {
    double r0 = s->inner_radius();
    double m = integrate_to_one([&](double t) { return w(t) * 2.0 * t; }, r0, 1e-12);
    return s->len / (2.0 * kPi) * m;
  }
  if (const Tent* t = std::get_if<Tent>(&region)) {
    if (t->alpha == 0.5) {
      double r0 = std::abs(t->vertex);
      return integrate_to_one([&, r0](double s) { return w(s) * (s - r0); }, r0,
                              1e-12) /
             kPi;
    }
    // fall through to grid quadrature for non-default apertures
  }
  if (const DyadicTent* d = std::get_if<DyadicTent>(&region)) {
    Arc a = dyadic_arc(d->n, d->k);
    double r0 = 1.0 - a.len;
    return integrate_to_one([&, r0](double s) { return w(s) * (s - r0); }, r0,
                            1e-12) /
           kPi;
  }
  if (const TentOverArc* t = std::get_if<TentOverArc>(&region)) {
    if (t->alpha == 0.5 && t->arc.len < 1.0) {
      double r0 = 1.0 - t->arc.len;
      return integrate_to_one([&, r0](double s) { return w(s) * (s - r0); }, r0,
                              1e-12) /
             kPi;
    }
    if (t->arc.len >= 1.0) {
      double frac = std::min(t->arc.len, 2.0 * kPi) / (2.0 * kPi);
      return frac * integrate_to_one([&](double s) { return w(s) * 2.0 * s; }, 0.0,
                                     1e-12);
    }
  }
  if (const Sector* sec = std::get_if<Sector>(&region)) {
    double frac = std::min(sec->arc.len, 2.0 * kPi) / (2.0 * kPi);
    return frac * integrate_to_one([&](double s) { return w(s) * 2.0 * s; }, 0.0,
                                   1e-12);
  }
  if (!grid) {
    throw std::invalid_argument("region_mass: this region needs a quadrature grid");
  }
  return region_mass_grid(w, region, *grid);
}

double region_mass_grid(const RadialWeight& w, const Region& region,
                        const PolarGrid& grid) {
  double m = 0.0;
  for (const auto& c : grid.cells) {
    if (region_contains(region, c.center)) m += w(std::abs(c.center)) * c.weight;
  }
  return m;
}

double omega_star(const RadialWeight& w, double mod_z) {
  if (mod_z <= 0.0) throw std::domain_error("omega_star: |z| must be positive");
  if (mod_z >= 1.0) throw std::domain_error("omega_star: |z| must be < 1");
  return integrate_to_one(
      [&](double s) { return w(s) * std::log(s / mod_z) * s; }, mod_z, 1e-12);
}

double kernel_weight_integral(const RadialWeight& w, double mod_zeta, double lambda) {
  double c = lambda + 1.0;
  // Angular integral I(b) = int_0^{2 pi} (1 - 2 b cos t + b^2)^{-c/2} dt.
  auto angular = [c](double b) {
    auto f = [b, c](double t) {
      double d2 = 1.0 - 2.0 * b * std::cos(t) + b * b;
      return std::pow(d2, -0.5 * c);
    };
    return 2.0 * integrate(f, 0.0, kPi, 1e-10);
  };
  auto radial = [&](double s) { return w(s) * s * angular(mod_zeta * s); };
  return integrate_to_one(radial, 0.0, 1e-9) / kPi;
}

PolarGrid PolarGrid::make(int depth, double rho, int angular_factor) {
  if (depth < 1 || !(rho > 0.0) || rho >= 1.0 || angular_factor < 1) {
    throw std::invalid_argument("PolarGrid: bad parameters");
  }
  PolarGrid g;
  g.depth = depth;
  g.rho = rho;
  g.angular_factor = angular_factor;
  double lo = 0.0;
  for (int i = 0; i < depth; ++i) {
    double hi = 1.0 - std::pow(rho, i + 1);
    double mid = 0.5 * (lo + hi);
    int n = angular_factor *
            std::max(8, static_cast<int>(std::ceil(2.0 * kPi / (1.0 - mid))));
    double dtheta = 2.0 * kPi / n;
    double ring_w = (hi * hi - lo * lo) * dtheta / (2.0 * kPi);
    g.ring_lo.push_back(lo);
    g.ring_hi.push_back(hi);
    g.ring_cells_begin.push_back(static_cast<int>(g.cells.size()));
    for (int j = 0; j < n; ++j) {
      double theta = (j + 0.5) * dtheta;
      g.cells.push_back({std::polar(mid, theta), ring_w, i});
    }
    lo = hi;
  }
  return g;
}

double PolarGrid::total_weight() const {
  double s = 0.0;
  for (const auto& c : cells) s += c.weight;
  return s;
}

}  // namespace berglab
