#include "resil/core.hpp"

#include <numbers>

namespace resil {

UnitValue UnitValue::checked(Real x, const std::string& what) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
    throw ConfigError(what + " must lie in [0, 1], got " + std::to_string(x));
  }
  return UnitValue(x);
}

UnitValue clamp_unit(Real x) {
  if (!std::isfinite(x)) {
    throw ArithmeticError("clamp_unit: non-finite input");
  }
  return UnitValue(clamp01(x));
}

void GaussianSpec::validate(const std::string& what) const {
  if (!std::isfinite(mean) || !std::isfinite(std)) {
    throw ConfigError(what + ": Gaussian parameters must be finite");
  }
  if (std < 0.0) {
    throw ConfigError(what + ": standard deviation must be >= 0");
  }
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(const SeedSpec& seed) {
  return mix64(mix64(seed.base_seed) ^
               mix64(seed.replication_index + 0x9E3779B97F4A7C15ULL));
}

Real Rng::uniform() {
  return static_cast<Real>(engine_() >> 11) * 0x1.0p-53;
}

Real Rng::standard_normal() {
  // u1 in (0, 1] keeps the log finite.
  const Real u1 = (static_cast<Real>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  const Real u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

UnitValue sample_truncated_gaussian(const GaussianSpec& spec, Rng& rng) {
  const Real z = rng.standard_normal();
  if (spec.std == 0.0) {
    return clamp_unit(spec.mean);
  }
  return clamp_unit(spec.mean + spec.std * z);
}

UnitValue empathy_weighted_mean(std::span<const Real> values,
                                std::span<const Real> weights,
                                UnitValue fallback) {
  if (values.size() != weights.size()) {
    throw ConfigError("empathy_weighted_mean: values and weights differ in length");
  }
  Real num = 0.0;
  Real den = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    num += weights[i] * values[i];
    den += weights[i];
  }
  if (den <= 0.0) {
    return fallback;
  }
  return clamp_unit(num / den);
}

}  // namespace resil
