#pragma once

// Foundational value types shared by every module: unit-interval values,
// Gaussian specs, the seeded random stream and the empathy-weighted mean.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>

namespace resil {

using Real = double;

template <typename Scalar>
using ArrayX = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
using ArrayXr = ArrayX<Real>;

// Invalid user input: bad config values, dangling ids, shape mismatches.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range external data (catalog rows, EM-DAT counts).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem failures.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite intermediate values.
class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A real number guaranteed to lie in [0, 1].
class UnitValue {
 public:
  constexpr UnitValue() = default;

  /// Throws ConfigError unless 0 <= x <= 1.
  static UnitValue checked(Real x, const std::string& what = "value");

  constexpr Real value() const { return value_; }
  constexpr operator Real() const { return value_; }

  friend constexpr bool operator==(UnitValue, UnitValue) = default;

 private:
  friend UnitValue clamp_unit(Real x);
  constexpr explicit UnitValue(Real x) : value_(x) {}
  Real value_ = 0.0;
};

/// min(1, max(0, x)); throws ArithmeticError for NaN or infinity.
UnitValue clamp_unit(Real x);

/// Elementwise clamp to [0, 1] for scalars and Eigen arrays alike.
template <typename Scalar>
  requires std::is_floating_point_v<Scalar>
inline Scalar clamp01(Scalar x) {
  return std::min<Scalar>(Scalar(1), std::max<Scalar>(Scalar(0), x));
}

template <typename Derived>
inline auto clamp01(const Eigen::ArrayBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  return x.max(Scalar(0)).min(Scalar(1));
}

struct GaussianSpec {
  Real mean = 0.0;
  Real std = 0.0;

  static constexpr GaussianSpec constant(Real v) { return {v, 0.0}; }
  bool is_constant() const { return std == 0.0; }
  /// Throws ConfigError when std < 0 or either field is non-finite.
  void validate(const std::string& what) const;

  friend bool operator==(const GaussianSpec&, const GaussianSpec&) = default;
};

struct SeedSpec {
  std::uint64_t base_seed = 0;
  std::uint64_t replication_index = 0;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Per-replication seed: mix64(mix64(base_seed) ^ mix64(replication_index +
/// 0x9E3779B97F4A7C15)). Stable across versions; do not change.
std::uint64_t derive_seed(const SeedSpec& seed);

/// Random stream owned by one replication. Wraps mt19937_64, whose output
/// sequence is fixed by the C++ standard.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  explicit Rng(const SeedSpec& seed) : engine_(derive_seed(seed)) {}

  /// Uniform on [0, 1) with 53 random bits; one engine output.
  Real uniform();
  /// Standard normal via the cosine branch of Box-Muller; always consumes
  /// exactly two engine outputs.
  Real standard_normal();

 private:
  std::mt19937_64 engine_;
};

/// mean + std * z, clamped to [0, 1]. Consumes two engine outputs even when
/// std == 0 so that draw positions never depend on parameter values.
UnitValue sample_truncated_gaussian(const GaussianSpec& spec, Rng& rng);

/// sum(w_i v_i) / sum(w_i), or fallback when the weights sum to zero.
UnitValue empathy_weighted_mean(std::span<const Real> values,
                                std::span<const Real> weights,
                                UnitValue fallback);

}  // namespace resil
