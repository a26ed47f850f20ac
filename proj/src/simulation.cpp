#include "simulation.hpp"

#include <cmath>
#include <cstdio>

#include "errors.hpp"
#include "rng.hpp"

namespace eb {

namespace {
constexpr std::uint64_t kSimulateStreamTag = 0x53494d; // "SIM"
}

std::string EffectLaw::describe() const {
  char buf[64];
  switch (kind) {
    case Kind::constant:
      std::snprintf(buf, sizeof(buf), "constant(%g)", a);
      break;
    case Kind::normal:
      std::snprintf(buf, sizeof(buf), "normal(%g,%g)", a, b);
      break;
    case Kind::exponential:
      std::snprintf(buf, sizeof(buf), "exponential(%g)", a);
      break;
  }
  return buf;
}

EffectLaw Scenario::law_for_id(int id) {
  switch (id) {
    case 1: return EffectLaw::constant(1.0);
    case 2: return EffectLaw::constant(3.0);
    case 3: return EffectLaw::normal(1.0, 1.0);
    case 4: return EffectLaw::normal(3.0, 1.0);
    case 5: return EffectLaw::exponential(1.0);
    case 6: return EffectLaw::exponential(1.0 / 3.0);
    default: throw_domain("scenario id must be in 1..6, got " + std::to_string(id));
  }
}

void Scenario::validate() const {
  if (id < 1 || id > 6) throw_domain("scenario id must be in 1..6");
  if (null_count < 0 || nonnull_count < 0) throw_domain("unit counts must be non-negative");
  if (null_count + nonnull_count == 0) throw_domain("scenario has no units");
  if (n_per_unit < 3) throw_domain("n_per_unit must be >= 3");
  if (treated_per_unit <= 0 || treated_per_unit >= n_per_unit)
    throw_domain("treated_per_unit must satisfy 0 < treated < n_per_unit");
  if (!(noise_sd > 0.0)) throw_domain("noise_sd must be positive");
  if (effect_law.kind == EffectLaw::Kind::normal && !(effect_law.b > 0.0))
    throw_domain("effect law normal(mean, sd) needs sd > 0");
  if (effect_law.kind == EffectLaw::Kind::exponential && !(effect_law.a > 0.0))
    throw_domain("effect law exponential(rate) needs rate > 0");
}

SimulatedUnits generate(const Scenario& sc) {
  sc.validate();
  Rng rng(derive_stream(sc.seed, kSimulateStreamTag));

  const int total = sc.null_count + sc.nonnull_count;
  SimulatedUnits out;
  out.units.reserve(total);
  out.true_beta.assign(total, 0.0);

  // Effect sizes first, in unit order; unit ids are 1-based, nulls first.
  for (int j = sc.null_count; j < total; ++j) {
    const EffectLaw& law = sc.effect_law;
    switch (law.kind) {
      case EffectLaw::Kind::constant: out.true_beta[j] = law.a; break;
      case EffectLaw::Kind::normal: out.true_beta[j] = law.a + law.b * rng.normal(); break;
      case EffectLaw::Kind::exponential: out.true_beta[j] = rng.exponential(law.a); break;
    }
  }

  const int n_control = sc.n_per_unit - sc.treated_per_unit;
  for (int j = 0; j < total; ++j) {
    UnitData u;
    u.unit_id = j + 1;
    u.y.resize(sc.n_per_unit);
    u.d.resize(sc.n_per_unit);
    for (int i = 0; i < sc.n_per_unit; ++i) {
      u.d[i] = (i >= n_control) ? 1 : 0;
      double mean = u.d[i] ? out.true_beta[j] : 0.0;  // alpha_j = 0
      u.y[i] = mean + sc.noise_sd * rng.normal();
    }
    out.units.push_back(std::move(u));
  }
  return out;
}

}  // namespace eb
