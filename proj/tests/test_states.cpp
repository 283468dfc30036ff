#include <cmath>
#include <complex>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "eomsim/states.hpp"

using namespace eomsim;
using Catch::Matchers::WithinAbs;

TEST_CASE("normalization of the balanced empty superposition") {
  const EntangledCoherentState s{M_PI / 4.0, 0.0, 0.0};
  REQUIRE_THAT(normalization(s), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
}

TEST_CASE("a single-branch state is already normalized") {
  const EntangledCoherentState s{0.0, Complex(1.3, -0.4), Complex(0.2, 0.0)};
  REQUIRE_THAT(normalization(s), WithinAbs(1.0, 1e-15));
}

TEST_CASE("fully destructive interference is rejected") {
  const EntangledCoherentState s{-M_PI / 4.0, 0.0, 0.0};
  REQUIRE_THROWS_AS(normalization(s), DegenerateStateError);
  REQUIRE_THROWS_AS(concurrence(s), DegenerateStateError);
}

TEST_CASE("concurrence of the balanced unit-amplitude state") {
  const EntangledCoherentState s{M_PI / 4.0, 1.0, 1.0};
  const double expected =
      (1.0 - std::exp(-1.0)) / (1.0 + std::exp(-1.0));
  REQUIRE_THAT(concurrence(s), WithinAbs(expected, 1e-14));
}

TEST_CASE("the odd balanced state is maximally entangled") {
  for (double a : {0.4, 0.8, 1.7}) {
    const EntangledCoherentState s{-M_PI / 4.0, a, a};
    CAPTURE(a);
    REQUIRE_THAT(concurrence(s), WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("single-branch states carry no entanglement") {
  REQUIRE(concurrence({0.0, 1.2, 0.7}) == 0.0);
  const EntangledCoherentState s{M_PI / 2.0, 1.2, 0.7};
  REQUIRE(std::abs(concurrence(s)) < 1e-15);
}

TEST_CASE("concurrence ignores the amplitude phases") {
  const EntangledCoherentState real_state{0.6, 1.1, 0.9};
  const EntangledCoherentState rotated{
      0.6, std::polar(1.1, 2.1), std::polar(0.9, -0.7)};
  REQUIRE_THAT(concurrence(rotated),
               WithinAbs(concurrence(real_state), 1e-14));
}

TEST_CASE("generic two-branch formula agrees with the specialized one") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 400; ++i) {
    const double theta = M_PI * (unit(rng) - 0.5);
    const double a = 2.5 * unit(rng);
    const double b = 2.5 * unit(rng);
    const EntangledCoherentState s{theta, std::polar(a, 2 * M_PI * unit(rng)),
                                   std::polar(b, 2 * M_PI * unit(rng))};
    const double generic =
        generic_concurrence(std::cos(theta), std::sin(theta),
                            std::exp(-0.5 * a * a), std::exp(-0.5 * b * b));
    CAPTURE(theta, a, b);
    REQUIRE_THAT(concurrence(s), WithinAbs(generic, 1e-13));
    REQUIRE(concurrence(s) >= 0.0);
    REQUIRE(concurrence(s) <= 1.0 + 1e-10);
  }
}

TEST_CASE("generic formula validates its inputs") {
  REQUIRE_THROWS_AS(generic_concurrence(1.0, 1.0, 1.5, 0.0),
                    InvalidOverlapError);
  REQUIRE_THROWS_AS(generic_concurrence(1.0, 1.0, 0.0, Complex(0.0, 1.2)),
                    InvalidOverlapError);
  REQUIRE_THROWS_AS(generic_concurrence(1.0, -1.0, 1.0, 1.0),
                    DegenerateStateError);
  REQUIRE(generic_concurrence(1.0, 0.0, 0.5, 0.5) == 0.0);
}

TEST_CASE("field means of the balanced unit-amplitude state") {
  const FieldMeans m = field_means({M_PI / 4.0, 1.0, 1.0});
  REQUIRE_THAT(m.optical.real(), WithinAbs(0.5, 1e-14));
  REQUIRE_THAT(m.optical.imag(), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(m.microwave.real(), WithinAbs(0.5, 1e-14));
}

TEST_CASE("field means follow the amplitude phases") {
  const Complex i_unit(0.0, 1.0);
  const FieldMeans m = field_means({M_PI / 4.0, i_unit, i_unit});
  REQUIRE(std::abs(m.optical - 0.5 * i_unit) < 1e-14);
  REQUIRE(std::abs(m.microwave - 0.5 * i_unit) < 1e-14);
}

TEST_CASE("a single-branch state has exactly one nonzero mean") {
  const FieldMeans m = field_means({0.0, Complex(0.7, 0.2), Complex(2.0, 0.0)});
  REQUIRE(m.optical == Complex(0.7, 0.2));
  REQUIRE(m.microwave == Complex(0.0, 0.0));  // exact zero, not just small
}

TEST_CASE("field mean channel selection") {
  const EntangledCoherentState s{M_PI / 4.0, 1.0, 1.0};
  REQUIRE(field_mean(s, ChannelId::Optical) == field_means(s).optical);
  REQUIRE(field_mean(s, ChannelId::Microwave) == field_means(s).microwave);
  REQUIRE_THROWS_AS(field_mean(s, ChannelId::Mechanical), InvalidChannelError);
}
