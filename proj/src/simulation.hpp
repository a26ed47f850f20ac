#ifndef EB_SIMULATION_HPP
#define EB_SIMULATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gibbs.hpp"

namespace eb {

// Effect-size law for the non-null units.
struct EffectLaw {
  enum class Kind { constant, normal, exponential };
  Kind kind = Kind::constant;
  double a = 0.0;  // constant value | normal mean | exponential rate
  double b = 0.0;  // normal sd

  static EffectLaw constant(double c) { return {Kind::constant, c, 0.0}; }
  static EffectLaw normal(double mean, double sd) { return {Kind::normal, mean, sd}; }
  static EffectLaw exponential(double rate) { return {Kind::exponential, rate, 0.0}; }

  std::string describe() const;
};

// One simulation scenario: unit counts, within-unit design, and the non-null
// effect law. Units 1..null_count are null (beta = 0); the rest draw beta
// from the law. Every unit carries the same design: the first
// n_per_unit - treated_per_unit observations have d = 0, the rest d = 1.
struct Scenario {
  int id = 1;
  int null_count = 900;
  int nonnull_count = 100;
  int n_per_unit = 30;
  int treated_per_unit = 15;
  EffectLaw effect_law = EffectLaw::constant(1.0);
  double noise_sd = 1.0;
  std::uint64_t seed = 1;

  // Scenario ids 1..6 carry the canonical effect laws:
  //   1: beta = 1        2: beta = 3
  //   3: beta ~ N(1,1)   4: beta ~ N(3,1)
  //   5: beta ~ Exp(1)   6: beta ~ Exp(1/3)
  static EffectLaw law_for_id(int id);

  void validate() const;
};

struct SimulatedUnits {
  std::vector<UnitData> units;
  std::vector<double> true_beta;  // parallel to units
};

// Deterministic given scenario.seed: effect sizes are drawn first (unit order),
// then per-observation noise, all from one stream derived from the seed.
SimulatedUnits generate(const Scenario& scenario);

}  // namespace eb

#endif
