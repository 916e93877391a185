#include "doctest.h"

#include "resil/media.hpp"

#include <cmath>

using namespace resil;

TEST_CASE("constant media") {
  const auto m = MediaProfile::constant(1.0, 0.0);
  for (long t : {0L, 1L, 150L, 300L}) {
    const MediaSample s = media_signal(m, t);
    CHECK(s.n.value() == 1.0);
    CHECK(s.n_pos.value() == 0.0);
  }
}

TEST_CASE("damped exponential is clamped at the start") {
  const auto m = MediaProfile::damped_exponential();
  CHECK(media_signal(m, 0).n.value() == 1.0);  // raw 2.54
}

TEST_CASE("damped exponential decays towards c") {
  const auto m = MediaProfile::damped_exponential();
  Real prev = 2.0;
  for (long t = 0; t <= 2000; ++t) {
    const Real n = media_signal(m, t).n;
    CHECK(n <= prev);
    prev = n;
  }
  CHECK(prev == doctest::Approx(0.04).epsilon(1e-6));
  CHECK(media_signal(m, 100).n.value() == doctest::Approx(2.5 * std::exp(-3.0) + 0.04));
}

TEST_CASE("Gaussian pulse") {
  const auto m = MediaProfile::gaussian_pulse();
  CHECK(media_signal(m, 50).n.value() == 1.0);  // raw 1.06
  CHECK(media_signal(m, 40).n.value() == doctest::Approx(std::exp(-2.0) + 0.06).epsilon(1e-12));
  CHECK(media_signal(m, 40).n.value() == doctest::Approx(0.1953).epsilon(1e-3));
}

TEST_CASE("Gaussian pulse is unimodal around t0") {
  auto m = MediaProfile::gaussian_pulse(0.5, 80.0, 200.0, 0.1);
  Real prev = -1.0;
  for (long t = 0; t <= 80; ++t) {
    const Real n = media_signal(m, t).n;
    CHECK(n >= prev);
    prev = n;
  }
  for (long t = 81; t <= 300; ++t) {
    const Real n = media_signal(m, t).n;
    CHECK(n <= prev);
    prev = n;
  }
}

TEST_CASE("media signal is a pure function of (profile, t)") {
  const auto m = MediaProfile::gaussian_pulse();
  const Real a = media_signal(m, 73).n;
  media_signal(m, 12);
  CHECK(media_signal(m, 73).n.value() == a);
}

TEST_CASE("explicit time scale overrides the profile's") {
  const auto m = MediaProfile::damped_exponential();
  CHECK(media_signal(m, 100, 100.0).n.value() == media_signal(m, 100).n.value());
  CHECK(media_signal(m, 1, 1.0).n.value() == doctest::Approx(2.5 * std::exp(-3.0) + 0.04));
}

TEST_CASE("polarity schedule") {
  auto m = MediaProfile::constant(1.0, 0.0);
  m.positive_schedule = {0.1, 0.9};
  CHECK(media_signal(m, 0).n_pos.value() == 0.1);
  CHECK(media_signal(m, 1).n_pos.value() == 0.9);
  CHECK(media_signal(m, 200).n_pos.value() == 0.9);
}

TEST_CASE("media kinds round-trip through names") {
  for (MediaKind k : {MediaKind::Constant, MediaKind::DampedExponential, MediaKind::GaussianPulse}) {
    CHECK(media_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(media_kind_from_string("sine"), ConfigError);
}

TEST_CASE("media validation") {
  auto m = MediaProfile::gaussian_pulse();
  m.w = 0.0;
  CHECK_THROWS_AS(m.validate(), ConfigError);
  m = MediaProfile::constant(1.0, 0.0);
  m.positive = {1.5, 0.0};
  CHECK_THROWS_AS(m.validate(), ConfigError);
}
