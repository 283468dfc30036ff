#include <cmath>
#include <complex>

#include <catch2/catch_amalgamated.hpp>

#include "eomsim/conversion.hpp"

using namespace eomsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("coherent-input rate values") {
  REQUIRE(cqc_rate(0.0) == 0.0);
  REQUIRE_THAT(cqc_rate(0.5), WithinAbs(16.0 / 9.0, 1e-14));
  REQUIRE_THAT(cqc_rate(std::sqrt(2.0) - 1.0), WithinAbs(1.0, 1e-13));
  REQUIRE(cqc_rate(0.3) < cqc_rate(0.31));
  REQUIRE_THROWS_AS(cqc_rate(-0.1), InvalidParameterError);
  REQUIRE_THROWS_AS(cqc_rate(1.0), UnsupportedRegimeError);
}

TEST_CASE("general rate demands dark coefficients") {
  const auto cfg = CouplingConfig::from_ratio(0.5);
  const auto p = closed_form_propagator(cfg, 0.4 * dark_mode_time(cfg, 1));
  const FieldMeans means{Complex(1.0, 0.0), Complex(0.0, 0.0)};
  REQUIRE_THROWS_AS(
      general_rate(cfg, p, means, Direction::OpticalToMicrowave),
      PreconditionError);
}

TEST_CASE("general rate demands a nonzero input mean") {
  const auto cfg = CouplingConfig::from_ratio(0.5);
  const auto p = closed_form_propagator(cfg, dark_mode_time(cfg, 1));
  const FieldMeans means{Complex(1.0, 0.0), Complex(0.0, 0.0)};
  REQUIRE_THROWS_AS(
      general_rate(cfg, p, means, Direction::MicrowaveToOptical),
      UndefinedRateError);
}

TEST_CASE("bare coherent input reproduces the coherent rate either way") {
  for (double k : {0.1, 0.45, 0.8}) {
    const auto cfg = CouplingConfig::from_ratio(k);
    const auto p = closed_form_propagator(cfg, dark_mode_time(cfg, 1));
    for (Complex z : {Complex(1.0, 0.0), Complex(0.0, 1.0),
                      Complex(2.0, -3.0)}) {
      CAPTURE(k, z);
      const auto ow = general_rate(cfg, p, {z, 0.0},
                                   Direction::OpticalToMicrowave);
      const auto wo = general_rate(cfg, p, {0.0, z},
                                   Direction::MicrowaveToOptical);
      REQUIRE_THAT(ow.rate, WithinRel(cqc_rate(k), 1e-13));
      REQUIRE_THAT(wo.rate, WithinRel(cqc_rate(k), 1e-13));
      REQUIRE(ow.dark_mode_index == 1);
      REQUIRE(ow.coupling_ratio == k);
      REQUIRE(ow.method == RateMethod::CoefficientBased);
    }
  }
}

TEST_CASE("every odd dark time gives the same rate") {
  const auto cfg = CouplingConfig::from_ratio(0.6);
  const FieldMeans means{Complex(1.0, 0.5), Complex(0.0, 0.0)};
  const auto p1 = closed_form_propagator(cfg, dark_mode_time(cfg, 1));
  const auto p3 = closed_form_propagator(cfg, dark_mode_time(cfg, 3));
  const auto r1 = general_rate(cfg, p1, means, Direction::OpticalToMicrowave);
  const auto r3 = general_rate(cfg, p3, means, Direction::OpticalToMicrowave);
  REQUIRE_THAT(r3.rate, WithinRel(r1.rate, 1e-12));
  REQUIRE(r3.dark_mode_index == 3);
}

TEST_CASE("entangled-input rate, frozen values at ratio one half") {
  REQUIRE_THAT(
      eaqc_rate(0.5, M_PI / 4.0, 0.0, 1.0, Direction::OpticalToMicrowave),
      WithinRel(9.0, 1e-13));
  REQUIRE_THAT(
      eaqc_rate(0.5, M_PI / 4.0, M_PI / 2.0, 1.0,
                Direction::OpticalToMicrowave),
      WithinRel(1.0 / 9.0, 1e-13));
}

TEST_CASE("entangled-input rate against the explicit moment ratio") {
  const double k = 0.35, theta = 0.7, phase = 1.1, amp = 0.8;
  const double d = 1.0 - k * k;
  const double h1 = -(1.0 + k * k) / d;
  const double h2 = -2.0 * k / d;
  const double decay = std::exp(-amp * amp);
  const double bo = 2.0 * std::cos(theta) * std::cos(theta) +
                    std::sin(2.0 * theta) * decay;
  const double bw = 2.0 * std::sin(theta) * std::sin(theta) +
                    std::sin(2.0 * theta) * decay;
  const Complex rot = std::exp(Complex(0.0, -2.0 * phase));

  const double expected_ow = std::norm(h1 * (bw / bo) + h2 * rot);
  REQUIRE_THAT(eaqc_rate(k, theta, phase, amp, Direction::OpticalToMicrowave),
               WithinRel(expected_ow, 1e-12));

  // opposite direction swaps the bracket ratio and uses the optical row
  const double g1 = (1.0 + k * k) / d;
  const double g2 = 2.0 * k / d;
  const double expected_wo = std::norm(g1 * (bo / bw) + g2 * rot);
  REQUIRE_THAT(eaqc_rate(k, theta, phase, amp, Direction::MicrowaveToOptical),
               WithinRel(expected_wo, 1e-12));
}

TEST_CASE("entangled-input rate limits") {
  // one empty branch reduces to the coherent-input rate
  REQUIRE_THAT(eaqc_rate(0.3, 0.0, 0.7, 1.2, Direction::OpticalToMicrowave),
               WithinRel(cqc_rate(0.3), 1e-13));
  REQUIRE_THAT(
      eaqc_rate(0.3, M_PI / 2.0, 0.7, 1.2, Direction::MicrowaveToOptical),
      WithinRel(cqc_rate(0.3), 1e-12));
  // and the source-side empty branch leaves the rate undefined
  REQUIRE_THROWS_AS(
      eaqc_rate(0.3, 0.0, 0.0, 1.2, Direction::MicrowaveToOptical),
      UndefinedRateError);
  REQUIRE_THROWS_AS(
      eaqc_rate(0.3, 0.3, 0.0, 0.0, Direction::OpticalToMicrowave),
      UndefinedRateError);
  REQUIRE_THROWS_AS(
      eaqc_rate(0.3, 0.3, 0.0, -1.0, Direction::OpticalToMicrowave),
      InvalidParameterError);
}

TEST_CASE("maximally entangled member drops the amplitude") {
  for (double amp : {0.5, 1.0, 2.0}) {
    CAPTURE(amp);
    REQUIRE_THAT(
        eaqc_rate(0.4, -M_PI / 4.0, 0.9, amp, Direction::OpticalToMicrowave),
        WithinRel(eaqc_max_entangled(0.4, 0.9), 1e-12));
  }
}

TEST_CASE("maximally entangled closed forms") {
  for (double k : {0.2, 0.5, 0.83}) {
    const double plus = (1.0 + k) / (1.0 - k);
    const double minus = (1.0 - k) / (1.0 + k);
    CAPTURE(k);
    REQUIRE_THAT(eaqc_max_entangled(k, 0.0), WithinRel(plus * plus, 1e-13));
    REQUIRE_THAT(eaqc_max_entangled(k, M_PI / 2.0),
                 WithinRel(minus * minus, 1e-13));
    REQUIRE_THAT(eaqc_max_entangled(k, 0.4),
                 WithinRel(eaqc_max_entangled(k, 0.4 + M_PI), 1e-13));
  }
}

TEST_CASE("entanglement-affecting factor, frozen values") {
  REQUIRE_THAT(eaf(0.5, 0.0).factor, WithinRel(16.0 / 81.0, 1e-13));
  REQUIRE_THAT(eaf(0.5, M_PI / 2.0).factor, WithinRel(16.0, 1e-13));
  REQUIRE_THROWS_AS(eaf(0.0, 0.0), DegenerateRatioError);
}

TEST_CASE("factor matches its reduced closed forms") {
  for (double k : {0.1, 0.3, 0.7, 0.9}) {
    const double aligned = std::pow(std::sqrt(2.0 * k) / (1.0 + k), 4.0);
    const double opposed = std::pow(std::sqrt(2.0 * k) / (1.0 - k), 4.0);
    CAPTURE(k);
    REQUIRE_THAT(eaf(k, 0.0).factor, WithinRel(aligned, 1e-12));
    REQUIRE_THAT(eaf(k, M_PI / 2.0).factor, WithinRel(opposed, 1e-12));
  }
}

TEST_CASE("regime classification") {
  REQUIRE(eaf(0.1, M_PI / 2.0).regime == Regime::Enhancing);
  REQUIRE(eaf(0.5, M_PI / 2.0).regime == Regime::Suppressing);
  for (double k : {0.1, 0.5, 0.9})
    REQUIRE(eaf(k, 0.0).regime == Regime::Enhancing);
  REQUIRE(std::string(regime_name(Regime::Neutral)) == "neutral");
  REQUIRE(std::string(direction_name(Direction::MicrowaveToOptical)) ==
          "microwave-to-optical");
}

TEST_CASE("critical coupling by bisection") {
  const double kc = critical_coupling();
  REQUIRE_THAT(kc, WithinAbs(2.0 - std::sqrt(3.0), 1e-9));
  REQUIRE(eaf(kc - 1e-6, M_PI / 2.0).regime == Regime::Enhancing);
  REQUIRE(eaf(kc + 1e-6, M_PI / 2.0).regime == Regime::Suppressing);
  REQUIRE_THROWS_AS(critical_coupling(0.0), InvalidParameterError);
}
