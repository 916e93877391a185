#pragma once

#include "resil/core.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace resil {

enum class MediaKind { Constant, DampedExponential, GaussianPulse };

std::string_view to_string(MediaKind kind);
/// Accepts constant | damped_exponential | gaussian_pulse.
MediaKind media_kind_from_string(std::string_view name);

/// Mass-media forcing. The closed forms are evaluated at tau = t / t_scale:
///   Constant:           n
///   DampedExponential:  a * exp(-b * tau) + c
///   GaussianPulse:      a * exp(-(tau - t0)^2 / w) + c
/// and clamped to [0, 1].
struct MediaProfile {
  MediaKind kind = MediaKind::Constant;
  Real n = 1.0;
  Real a = 1.0;
  Real b = 0.0;
  Real c = 0.0;
  Real t0 = 0.0;
  Real w = 1.0;
  Real t_scale = 1.0;
  // Fraction of positive coverage. A nonzero spread is sampled once per
  // replication by the engine; media_signal only reads the mean.
  GaussianSpec positive = GaussianSpec::constant(0.0);
  // Optional per-step polarity; step t uses entry min(t, size - 1).
  std::vector<Real> positive_schedule;

  static MediaProfile constant(Real n, Real n_pos);
  static MediaProfile damped_exponential(Real a = 2.5, Real b = 3.0, Real c = 0.04,
                                         Real t_scale = 100.0);
  static MediaProfile gaussian_pulse(Real a = 1.0, Real t0 = 50.0, Real w = 50.0,
                                     Real c = 0.06, Real t_scale = 1.0);

  void validate() const;

  friend bool operator==(const MediaProfile&, const MediaProfile&) = default;
};

struct MediaSample {
  UnitValue n;
  UnitValue n_pos;
};

MediaSample media_signal(const MediaProfile& profile, long t);
MediaSample media_signal(const MediaProfile& profile, long t, Real t_scale);

}  // namespace resil
