#include "berglab/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "berglab/analytic.hpp"
#include "berglab/exec.hpp"

namespace berglab {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Bounded: return "bounded";
    case Verdict::Diverging: return "diverging";
    default: return "inconclusive";
  }
}

Verdict classify_trend(const std::vector<double>& values) {
  if (values.size() < 2) return Verdict::Inconclusive;
  bool all_stable = true, all_growing = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i - 1] <= 0.0) {
      if (values[i] > 0.0) all_stable = false;
      continue;
    }
    double g = values[i] / values[i - 1];
    if (g > kBoundedGrowth) all_stable = false;
    if (g < kDivergingGrowth) all_growing = false;
  }
  if (all_stable) return Verdict::Bounded;
  if (all_growing) return Verdict::Diverging;
  return Verdict::Inconclusive;
}

namespace {

double lp_norm_grid(const TentInstance& inst, const std::vector<double>& vals,
                    double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    s += std::pow(vals[i], p) * inst.cell_om[i];
  }
  return std::pow(s, 1.0 / p);
}

// Phi_mu(z) = mu(Delta(z, r)) / (omega(S(z)) (1-|z|)^{qn}) at the cells.
std::vector<double> phi_mu_values(const DiscMeasure& mu, const RadialWeight& w,
                                  const PolarGrid& grid, double r, double q, int n) {
  std::vector<double> out(grid.cells.size());
  parallel_for(grid.cells.size(), [&](std::size_t i) {
    Complex z = grid.cells[i].center;
    double zr = std::abs(z);
    double den = region_mass(w, Square(z)) * std::pow(1.0 - zr, q * n);
    out[i] = den > 0.0 ? mu.mass(PseudoDisc{z, r}) / den : 0.0;
  });
  return out;
}

}  // namespace

ConditionReport condition_quantities(const CarlesonSetup& setup) {
  if (!setup.weight || !setup.measure) {
    throw std::invalid_argument("condition_quantities: incomplete setup");
  }
  const RadialWeight& w = *setup.weight;
  double p = setup.p, q = setup.q;
  int n = setup.n;
  if (!(p > 0.0) || !(q > 0.0) || n < 0) {
    throw std::invalid_argument("condition_quantities: bad exponents");
  }
  ConditionReport rep;
  rep.p = p;
  rep.q = q;
  rep.n = n;
  rep.r = setup.r;
  rep.depths = setup.depths;

  std::vector<ConditionQuantity> conds;
  auto add_value = [&conds](const std::string& name, double v) {
    for (auto& c : conds) {
      if (c.name == name) {
        c.values.push_back(v);
        return;
      }
    }
    conds.push_back({name, {v}, Verdict::Inconclusive});
  };

  double lambda = setup.lambda_override;
  if (lambda <= 0.0) lambda = w.certificate().lambda0 + 1.0;

  for (int depth : setup.depths) {
    auto grid = std::make_shared<PolarGrid>(PolarGrid::make(depth));
    DiscMeasure mu = setup.measure(grid);
    const PolarGrid* mass_grid = mu.has_density() ? grid.get() : nullptr;

    if (n == 0) {
      if (q < p) {
        double pp = p / (p - q);
        TentInstance inst = make_tent_instance(grid, w, mu,
                                               std::min(depth - 1, setup.family_depth));
        // B_mu and Psi_mu share the support masses mu_k / omega(T(z_k)).
        std::vector<double> b(grid->cells.size(), 0.0), psi(grid->cells.size(), 0.0);
        parallel_for(grid->cells.size(), [&](std::size_t i) {
          Complex z = grid->cells[i].center;
          double bb = 0.0, pp2 = 0.0;
          for (std::size_t k = 0; k < inst.nu.size(); ++k) {
            if (inst.nu_tent_om[k] <= 0.0) continue;
            double m = inst.nu[k].mass / inst.nu_tent_om[k];
            pp2 += kernel(inst.nu[k].point, z, lambda) * m;
            if (std::abs(inst.nu[k].point) > 0.0 &&
                lens_contains(z, 0.5, inst.nu[k].point)) {
              bb += m;
            }
          }
          b[i] = bb;
          psi[i] = pp2;
        });
        add_value("B_mu_Lp", lp_norm_grid(inst, b, pp));
        add_value("Psi_mu_Lp", lp_norm_grid(inst, psi, pp));
        std::vector<double> mx(grid->cells.size());
        MaximalOptions opt;
        opt.alpha = 1.0;
        opt.n_max = setup.family_depth;
        opt.grid = mass_grid;
        parallel_for(grid->cells.size(), [&](std::size_t i) {
          mx[i] = maximal_function(mu, w, grid->cells[i].center, opt);
        });
        add_value("maximal_Lp", lp_norm_grid(inst, mx, pp));
      } else if (q == p) {
        add_value("maximal_sup", maximal_sup(mu, w, 1.0, setup.family_depth, mass_grid));
      } else {
        add_value("maximal_qp_sup",
                  maximal_sup(mu, w, q / p, setup.family_depth, mass_grid));
        // Delta-quotient over an a-sweep on the grid.
        double best = 0.0;
        for (const auto& c : grid->cells) {
          double om = region_mass(w, Square(c.center));
          if (om <= 0.0) continue;
          double v = mu.mass(PseudoDisc{c.center, setup.r}) / std::pow(om, q / p);
          best = std::max(best, v);
        }
        add_value("delta_quotient_sup", best);
      }
    } else {
      // n >= 1
      if (p >= q && !(p == q && q >= 2.0)) {
        std::vector<double> phi = phi_mu_values(mu, w, *grid, setup.r, q, n);
        DiscMeasure nu = DiscMeasure::hyperbolic(grid);
        TentInstance inst = make_tent_instance(grid, w, nu,
                                               std::min(depth - 1, setup.family_depth));
        std::vector<Complex> f(phi.size());
        for (std::size_t i = 0; i < phi.size(); ++i) f[i] = phi[i];
        if (q < std::min(2.0, p)) {
          double tp = p / (p - q), tq = 2.0 / (2.0 - q);
          add_value("Phi_mu_T(p/(p-q),2/(2-q))",
                    tent_norm(inst, f, tp, tq, TentNormMode::AreaFunctional));
        } else if (q == p && p < 2.0) {
          double tq = 2.0 / (2.0 - p);
          add_value("Phi_mu_T(inf," + std::to_string(tq) + ")",
                    tent_norm(inst, f, kInf, tq, TentNormMode::CFunctional));
        } else if (q >= 2.0 && q < p) {
          double tp = p / (p - q);
          add_value("Phi_mu_T(p/(p-q),inf)",
                    tent_norm(inst, f, tp, kInf, TentNormMode::AreaFunctional));
        } else {
          throw std::invalid_argument("condition_quantities: no tent-space case fits");
        }
      } else {
        // q > p, or q = p >= 2: weighted sup conditions.
        double best_s = 0.0, best_d = 0.0;
        for (const auto& c : grid->cells) {
          double zr = std::abs(c.center);
          double om = region_mass(w, Square(c.center));
          if (om <= 0.0) continue;
          double den = std::pow(om, q / p) * std::pow(1.0 - zr, n * q);
          best_s = std::max(best_s, mu.mass(Square(c.center)) / den);
          best_d = std::max(best_d, mu.mass(PseudoDisc{c.center, setup.r}) / den);
        }
        add_value("square_nq_sup", best_s);
        add_value("delta_nq_sup", best_d);
      }
    }
  }
  for (auto& c : conds) c.verdict = classify_trend(c.values);
  rep.conditions = std::move(conds);
  return rep;
}

double embedding_constant(const CarlesonSetup& setup, const DiscMeasure& mu,
                          const std::shared_ptr<PolarGrid>& grid, unsigned seed) {
  const RadialWeight& w = *setup.weight;
  double p = setup.p, q = setup.q;
  int n = setup.n;
  std::mt19937_64 rng(seed);
  double best = 0.0;

  // Normalized-kernel sweep.
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  for (double mod : {0.5, 0.65, 0.8, 0.9, 0.95}) {
    for (int rep = 0; rep < 2; ++rep) {
      Complex a = std::polar(mod, ang(rng));
      RationalTestFunction f = test_function(a, p, w, setup.lambda_override);
      auto F = [&](Complex z) { return f(z); };
      auto Fn = [&](Complex z) { return f.derivative(n, z); };
      double den = bergman_norm(F, w, *grid, p);
      if (den <= 0.0) continue;
      best = std::max(best, lq_norm(Fn, mu, q) / den);
    }
  }

  // Random kernel combinations on a lattice.
  SeparatedSequence lat = SeparatedSequence::lattice(0.35, 0.95);
  std::uniform_int_distribution<std::size_t> pick(0, lat.points.size() - 1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double lambda = setup.lambda_override;
  if (lambda <= 0.0) lambda = w.certificate().lambda0 + 1.0;
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<Complex> pts;
    std::vector<Complex> coeffs;
    for (int k = 0; k < 24; ++k) {
      pts.push_back(lat.points[pick(rng)]);
      coeffs.push_back(Complex(gauss(rng), gauss(rng)));
    }
    RationalTestFunction f =
        RationalTestFunction::kernel_combination(pts, coeffs, lambda + n + 1.0);
    auto F = [&](Complex z) { return f(z); };
    auto Fn = [&](Complex z) { return f.derivative(n, z); };
    double den = bergman_norm(F, w, *grid, p);
    if (den <= 0.0) continue;
    best = std::max(best, lq_norm(Fn, mu, q) / den);
  }
  return best;
}

VerdictReport verdict(const CarlesonSetup& setup, unsigned seed) {
  VerdictReport rep;
  rep.conditions = condition_quantities(setup);
  for (int depth : setup.depths) {
    auto grid = std::make_shared<PolarGrid>(PolarGrid::make(depth));
    DiscMeasure mu = setup.measure(grid);
    rep.embedding.push_back(embedding_constant(setup, mu, grid, seed));
  }
  rep.embedding_verdict = classify_trend(rep.embedding);
  for (const auto& c : rep.conditions.conditions) {
    bool mismatch = (c.verdict == Verdict::Bounded &&
                     rep.embedding_verdict == Verdict::Diverging) ||
                    (c.verdict == Verdict::Diverging &&
                     rep.embedding_verdict == Verdict::Bounded);
    if (mismatch) {
      rep.flags.push_back(c.name + ": condition " + verdict_name(c.verdict) +
                          " vs embedding " + verdict_name(rep.embedding_verdict));
    }
  }
  return rep;
}

CounterexampleSplit counterexample_split(const RadialWeight& w,
                                         const std::vector<int>& depths, double r) {
  CounterexampleSplit out;
  out.depths = depths;
  for (int d : depths) {
    double r_max = 1.0 - std::ldexp(1.0, -d);
    DiscMeasure mu = DiscMeasure::counterexample_radial(w, r_max);
    double sq = 0.0;
    for (int j = 1; j < d; ++j) {
      Complex a(1.0 - std::ldexp(1.0, -j), 0.0);
      double om = region_mass(w, Square(a));
      if (om <= 0.0) continue;
      sq = std::max(sq, mu.mass(Square(a)) / om);
    }
    double dq = 0.0;
    for (double mod : {0.5, 0.6, 0.7, 0.8, 0.9, 0.95}) {
      Complex a(mod, 0.0);
      double om = region_mass(w, Square(a));
      if (om <= 0.0) continue;
      dq = std::max(dq, mu.mass(PseudoDisc{a, r}) / om);
    }
    out.square_sup.push_back(sq);
    out.delta_sup.push_back(dq);
  }
  out.square_verdict = classify_trend(out.square_sup);
  out.delta_verdict = classify_trend(out.delta_sup);
  return out;
}

TentLevelSets maximal_tent_level_sets(const DiscMeasure& mu, const RadialWeight& w,
                                      const PolarGrid& grid, int n_max) {
  TentLevelSets out;
  // Ratios for every dyadic tent in the literal half-circle family.
  struct Entry {
    DyadicTent id;
    double ratio;
  };
  std::vector<Entry> entries;
  for (int n = 0; n <= n_max; ++n) {
    int count = 1 << (n + 2);
    for (int k = 0; k < count; ++k) {
      Region reg{DyadicTent{n, k}};
      double om = region_mass_grid(w, reg, grid);
      if (om <= 0.0) continue;
      double m = mu.mass(reg);
      if (m <= 0.0) continue;
      entries.push_back({DyadicTent{n, k}, m / om});
    }
  }
  double om_disc = 0.0;
  for (const auto& c : grid.cells) om_disc += w(std::abs(c.center)) * c.weight;
  double global_ratio = om_disc > 0.0 ? mu.total() / om_disc : 0.0;

  double top = global_ratio;
  for (const auto& e : entries) top = std::max(top, e.ratio);
  if (top <= 0.0) return out;
  int k_hi = static_cast<int>(std::floor(std::log2(top)));
  int k_lo = k_hi - 12;

  auto arc_contains = [](const DyadicTent& inner, const DyadicTent& outer) {
    // Outer must be at a shallower level (longer arc) with matching prefix.
    if (outer.n > inner.n) return false;
    int shift = inner.n - outer.n;
    return (inner.k >> shift) == outer.k;
  };

  for (int k = k_lo; k <= k_hi; ++k) {
    double thr = std::ldexp(1.0, k);
    out.ks.push_back(k);
    bool glob = global_ratio > thr;
    out.global.push_back(glob ? 1 : 0);
    std::vector<DyadicTent> maximal;
    std::vector<char> members(grid.cells.size(), 0);
    if (glob) {
      std::fill(members.begin(), members.end(), 1);
    } else {
      std::vector<const Entry*> qual;
      for (const auto& e : entries) {
        if (e.ratio > thr) qual.push_back(&e);
      }
      for (const Entry* e : qual) {
        bool is_max = true;
        for (const Entry* o : qual) {
          if (o == e) continue;
          if (arc_contains(e->id, o->id)) {
            is_max = false;
            break;
          }
        }
        if (is_max) maximal.push_back(e->id);
      }
      for (const DyadicTent& t : maximal) {
        Region reg{t};
        for (std::size_t i = 0; i < grid.cells.size(); ++i) {
          if (!members[i] && region_contains(reg, grid.cells[i].center)) {
            members[i] = 1;
          }
        }
      }
    }
    out.maximal.push_back(std::move(maximal));
    out.E.push_back(std::move(members));
  }
  return out;
}

}  // namespace berglab
