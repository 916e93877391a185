#include "resil/media.hpp"

#include <algorithm>

namespace resil {

std::string_view to_string(MediaKind kind) {
  switch (kind) {
    case MediaKind::Constant: return "constant";
    case MediaKind::DampedExponential: return "damped_exponential";
    case MediaKind::GaussianPulse: return "gaussian_pulse";
  }
  throw ConfigError("unknown media kind");
}

MediaKind media_kind_from_string(std::string_view name) {
  if (name == "constant") return MediaKind::Constant;
  if (name == "damped_exponential") return MediaKind::DampedExponential;
  if (name == "gaussian_pulse") return MediaKind::GaussianPulse;
  throw ConfigError("unknown media kind '" + std::string(name) +
                    "' (expected constant, damped_exponential or gaussian_pulse)");
}

MediaProfile MediaProfile::constant(Real n, Real n_pos) {
  MediaProfile p;
  p.kind = MediaKind::Constant;
  p.n = n;
  p.positive = GaussianSpec::constant(n_pos);
  return p;
}

MediaProfile MediaProfile::damped_exponential(Real a, Real b, Real c, Real t_scale) {
  MediaProfile p;
  p.kind = MediaKind::DampedExponential;
  p.a = a;
  p.b = b;
  p.c = c;
  p.t_scale = t_scale;
  return p;
}

MediaProfile MediaProfile::gaussian_pulse(Real a, Real t0, Real w, Real c, Real t_scale) {
  MediaProfile p;
  p.kind = MediaKind::GaussianPulse;
  p.a = a;
  p.t0 = t0;
  p.w = w;
  p.c = c;
  p.t_scale = t_scale;
  return p;
}

void MediaProfile::validate() const {
  for (Real v : {n, a, b, c, t0, w, t_scale}) {
    if (!std::isfinite(v)) throw ConfigError("media: parameters must be finite");
  }
  if (t_scale <= 0.0) throw ConfigError("media: t_scale must be > 0");
  if (kind == MediaKind::GaussianPulse && w <= 0.0) {
    throw ConfigError("media: gaussian_pulse width w must be > 0");
  }
  positive.validate("media.n_pos");
  if (positive.mean < 0.0 || positive.mean > 1.0) {
    throw ConfigError("media: n_pos mean must lie in [0, 1]");
  }
  for (Real v : positive_schedule) {
    UnitValue::checked(v, "media.n_pos_schedule entry");
  }
}

MediaSample media_signal(const MediaProfile& profile, long t, Real t_scale) {
  if (t < 0) throw ConfigError("media_signal: negative step");
  if (!(t_scale > 0.0)) throw ConfigError("media_signal: t_scale must be > 0");
  const Real tau = static_cast<Real>(t) / t_scale;
  Real raw = 0.0;
  switch (profile.kind) {
    case MediaKind::Constant:
      raw = profile.n;
      break;
    case MediaKind::DampedExponential:
      raw = profile.a * std::exp(-profile.b * tau) + profile.c;
      break;
    case MediaKind::GaussianPulse: {
      const Real d = tau - profile.t0;
      raw = profile.a * std::exp(-(d * d) / profile.w) + profile.c;
      break;
    }
    default:
      throw ConfigError("media_signal: unknown media kind");
  }
  Real pos = profile.positive.mean;
  if (!profile.positive_schedule.empty()) {
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(t),
                                           profile.positive_schedule.size() - 1);
    pos = profile.positive_schedule[idx];
  }
  return {clamp_unit(raw), clamp_unit(pos)};
}

MediaSample media_signal(const MediaProfile& profile, long t) {
  return media_signal(profile, t, profile.t_scale);
}

}  // namespace resil
