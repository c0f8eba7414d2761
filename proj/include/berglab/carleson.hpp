#ifndef BERGLAB_CARLESON_HPP
#define BERGLAB_CARLESON_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "berglab/maximal.hpp"
#include "berglab/measure.hpp"
#include "berglab/tent.hpp"

namespace berglab {

enum class Verdict { Bounded, Diverging, Inconclusive };

const char* verdict_name(Verdict v);

/// Trend classification across refinement levels: bounded when every step
/// grows by at most kBoundedGrowth, diverging when every step grows by at
/// least kDivergingGrowth.
inline constexpr double kBoundedGrowth = 1.25;
inline constexpr double kDivergingGrowth = 1.5;
Verdict classify_trend(const std::vector<double>& values);

struct ConditionQuantity {
  std::string name;
  std::vector<double> values;  // one per refinement depth
  Verdict verdict = Verdict::Inconclusive;
};

struct ConditionReport {
  double p = 2.0, q = 2.0;
  int n = 0;
  double r = 0.5;
  std::vector<int> depths;
  std::vector<ConditionQuantity> conditions;
};

struct CarlesonSetup {
  const RadialWeight* weight = nullptr;
  double p = 2.0, q = 2.0;
  int n = 0;       // differentiation order
  double r = 0.5;  // pseudohyperbolic radius for Delta-conditions
  double lambda_override = -1.0;  // kernel exponent for Psi_mu; cert + 1 if < 0
  int family_depth = 6;
  std::vector<int> depths = {4, 5, 6};
  /// Builds the measure at each refinement depth (density presets depend on
  /// the grid; atomic measures can ignore it).
  std::function<DiscMeasure(std::shared_ptr<PolarGrid>)> measure;
};

/// Every geometric condition the exponent regime prescribes, evaluated at
/// each refinement depth with a trend verdict.
ConditionReport condition_quantities(const CarlesonSetup& setup);

/// Max over a family of analytic test functions (normalized kernels over an
/// a-sweep plus random kernel combinations on a lattice) of
/// ||F^(n)||_{L^q(mu)} / ||F||_{A^p_omega}; a lower bound for the embedding
/// constant.
double embedding_constant(const CarlesonSetup& setup, const DiscMeasure& mu,
                          const std::shared_ptr<PolarGrid>& grid, unsigned seed);

struct VerdictReport {
  ConditionReport conditions;
  std::vector<double> embedding;  // per depth
  Verdict embedding_verdict = Verdict::Inconclusive;
  std::vector<std::string> flags;  // inconsistencies between the two sides
};

/// Pair every condition trend with the measured embedding trend and flag
/// bounded-vs-diverging mismatches.
VerdictReport verdict(const CarlesonSetup& setup, unsigned seed);

/// Level sets of the dyadic-tent maximal function: per level k the maximal
/// dyadic tents with mu(T) > 2^k omega(T) (the whole disc acts as the top
/// region through the global term), and E_k membership per grid cell.
struct TentLevelSets {
  std::vector<int> ks;
  std::vector<std::vector<DyadicTent>> maximal;  // per k
  std::vector<char> global;                      // per k: whole disc qualified
  std::vector<std::vector<char>> E;              // per k: grid-cell membership
};

TentLevelSets maximal_tent_level_sets(const DiscMeasure& mu, const RadialWeight& w,
                                      const PolarGrid& grid, int n_max);

/// Square-vs-pseudodisc split for the measure omega(S(z)) (1-|z|)^{-2} dA in
/// its radial form: at each truncation depth d (r_M = 1 - 2^{-d}) the sup of
/// mu(S(a))/omega(S(a)) over a dyadic a-sweep, against the sup of
/// mu(Delta(a, r))/omega(S(a)) over a fixed sweep.
struct CounterexampleSplit {
  std::vector<int> depths;
  std::vector<double> square_sup;
  std::vector<double> delta_sup;
  Verdict square_verdict = Verdict::Inconclusive;
  Verdict delta_verdict = Verdict::Inconclusive;
};

CounterexampleSplit counterexample_split(const RadialWeight& w,
                                         const std::vector<int>& depths,
                                         double r = 0.5);

}  // namespace berglab

#endif
