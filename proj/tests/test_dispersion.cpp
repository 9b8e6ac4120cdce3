#include <doctest.h>

#include <cmath>
#include <limits>

#include "casimir/dispersion.hpp"
#include "casimir/eigenvalues.hpp"
#include "casimir/free_energy.hpp"

using namespace casimir;

TEST_CASE("permittivity values") {
  const Plasma plasma{3.0};
  CHECK(permittivity(plasma, 3.0) == doctest::Approx(2.0));
  const Drude drude{4.0, 0.5};
  CHECK(permittivity(drude, 0.5) == doctest::Approx(1.0 + 16.0 / (2.0 * 0.25)));
  CHECK(permittivity(ConstantIndex{2.0}, 7.0) == 4.0);
  CHECK(std::isinf(permittivity(drude, 0.0)));
  CHECK(std::isinf(permittivity(PerfectConductor{}, 1.0)));
  CHECK(permittivity_times_frequency(drude, 0.0) == doctest::Approx(16.0 / 0.5));
  CHECK(refractive_index(plasma, 3.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(permittivity(plasma, -1.0), DomainError);
}

TEST_CASE("Drude tends to plasma as the relaxation vanishes") {
  const double x_p = 50.0;
  for (double w : {0.1, 1.0, 10.0, 300.0}) {
    const double p = permittivity(Plasma{x_p}, w);
    const double d = permittivity(Drude{x_p, 1e-10}, w);
    CHECK(d == doctest::Approx(p).epsilon(1e-8));
  }
}

TEST_CASE("permittivity is decreasing and at least 1") {
  const DispersionModel models[] = {Plasma{20.0}, Drude{20.0, 0.3}};
  for (const auto& m : models) {
    double previous = std::numeric_limits<double>::infinity();
    for (double w = 1e-3; w < 1e4; w *= 1.5) {
      const double eps = permittivity(m, w);
      CHECK(eps >= 1.0);
      CHECK(eps < previous);
      previous = eps;
    }
  }
}

TEST_CASE("SI conversion") {
  // omega_p = 3e16 / s, a = 1 cm gives x_p ~ 1e6.
  const Plasma p = plasma_from_si(3.0e16, 0.01);
  CHECK(p.x_p == doctest::Approx(3.0e16 * 0.01 / kSpeedOfLight));
  CHECK(p.x_p == doctest::Approx(1.0e6).epsilon(0.01));
  const Drude d = drude_from_si(3.0e16, 1.0e14, 0.01);
  CHECK(d.relaxation_gamma == doctest::Approx(1.0e14 * 0.01 / kSpeedOfLight));
  const ThermalState th = ThermalState::from_si(300.0, 1e-6);
  CHECK(th.t == doctest::Approx(2.0 * M_PI * 1e-6 * 300.0 * 1.380649e-23 / (1.054571817e-34 * 299792458.0)));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate(ConstantIndex{0.5}), DomainError);
  CHECK_THROWS_AS(validate(Plasma{0.0}), DomainError);
  CHECK_THROWS_AS(validate(Drude{1.0, 0.0}), DomainError);
  CHECK_NOTHROW(validate(PerfectConductor{}));
}

TEST_CASE("index times frequency classification") {
  using Kind = IndexFrequencyLimit::Kind;
  CHECK(index_times_frequency_limit(Plasma{1e6}).kind == Kind::Infinite);
  CHECK(index_times_frequency_limit(plasma_from_si(3.0e16, 0.01)).kind == Kind::Infinite);
  const auto finite = index_times_frequency_limit(Plasma{5.0});
  CHECK(finite.kind == Kind::Finite);
  CHECK(finite.value == 5.0);
  CHECK(index_times_frequency_limit(Drude{1e6, 1.0}).kind == Kind::Zero);
  CHECK(index_times_frequency_limit(ConstantIndex{3.0}).kind == Kind::Zero);
  CHECK(index_times_frequency_limit(PerfectConductor{ZeroModePolicy::OptionA}).kind == Kind::Infinite);
  CHECK(index_times_frequency_limit(PerfectConductor{ZeroModePolicy::OptionB}).kind == Kind::Zero);
}

TEST_CASE("classification matches the TE zero mode") {
  const GapGeometry g = GapGeometry::from_ratio(0.5);
  const DispersionModel models[] = {ConstantIndex{2.0}, Plasma{1e6}, Plasma{5.0}, Drude{1e6, 1.0},
                                    PerfectConductor{ZeroModePolicy::OptionA},
                                    PerfectConductor{ZeroModePolicy::OptionB}};
  for (const auto& m : models) {
    const auto kind = index_times_frequency_limit(m).kind;
    for (int l = 1; l <= 5; ++l) {
      const double te = lambda_zero_mode(l, g, m).lambda_te;
      const double full = std::pow(0.5, 2 * l + 1);
      switch (kind) {
        case IndexFrequencyLimit::Kind::Zero: CHECK(te == 0.0); break;
        case IndexFrequencyLimit::Kind::Infinite: CHECK(te == full); break;
        case IndexFrequencyLimit::Kind::Finite:
          CHECK(te > 0.0);
          CHECK(te < full);
          break;
      }
    }
  }
}

TEST_CASE("labels") {
  CHECK(model_label(ConstantIndex{2.0}) == "n=2");
  CHECK(model_label(Plasma{1.0}) == "plasma");
  CHECK(model_label(Drude{1.0, 1.0}) == "drude");
  CHECK(model_label(PerfectConductor{ZeroModePolicy::OptionA}) == "pec-A");
  CHECK(model_label(PerfectConductor{ZeroModePolicy::OptionB}) == "pec-B");
}
