#include <catch2/catch_amalgamated.hpp>

#include "eomsim/model.hpp"

using namespace eomsim;
using Catch::Matchers::WithinAbs;

TEST_CASE("intracavity photon number from drive parameters") {
  ChannelDrive d;
  d.drive_amplitude = 5.0;
  d.detuning = 4.0;
  d.cavity_decay = 6.0;  // half width 3
  REQUIRE_THAT(intracavity_photon_number(d), WithinAbs(1.0, 1e-15));

  d.detuning = 0.0;
  d.cavity_decay = 2.0;
  d.drive_amplitude = 10.0;
  REQUIRE_THAT(intracavity_photon_number(d), WithinAbs(100.0, 1e-12));

  d.cavity_decay = 0.0;
  REQUIRE_THROWS_AS(intracavity_photon_number(d), InvalidParameterError);
}

TEST_CASE("drive-enhanced coupling") {
  ChannelDrive d;
  d.drive_amplitude = 10.0;
  d.cavity_decay = 2.0;
  d.single_photon_coupling = 0.1;
  REQUIRE_THAT(multiphoton_coupling(d), WithinAbs(1.0, 1e-13));

  d.single_photon_coupling = -0.1;
  REQUIRE_THROWS_AS(multiphoton_coupling(d), InvalidParameterError);
}

TEST_CASE("coupling configuration from a ratio") {
  const auto cfg = CouplingConfig::from_ratio(0.6);
  REQUIRE_THAT(cfg.ratio(), WithinAbs(0.6, 1e-15));
  REQUIRE_THAT(cfg.optical_coupling(), WithinAbs(0.6, 1e-15));
  REQUIRE_THAT(cfg.microwave_coupling(), WithinAbs(1.0, 1e-15));
  REQUIRE_THAT(cfg.frequency(), WithinAbs(0.8, 1e-15));
}

TEST_CASE("coupling configuration from explicit couplings") {
  const auto cfg = make_coupling_config(0.3, 0.5);
  REQUIRE_THAT(cfg.ratio(), WithinAbs(0.6, 1e-15));
  REQUIRE_THAT(cfg.frequency(), WithinAbs(0.4, 1e-15));
}

TEST_CASE("zero optical coupling is the pure beam-splitter limit") {
  const auto cfg = CouplingConfig::from_ratio(0.0, 2.0);
  REQUIRE(cfg.optical_coupling() == 0.0);
  REQUIRE_THAT(cfg.frequency(), WithinAbs(2.0, 1e-15));
}

TEST_CASE("non-oscillatory and invalid couplings are rejected") {
  REQUIRE_THROWS_AS(make_coupling_config(1.0, 1.0), UnsupportedRegimeError);
  REQUIRE_THROWS_AS(make_coupling_config(1.5, 1.0), UnsupportedRegimeError);
  REQUIRE_THROWS_AS(CouplingConfig::from_ratio(1.0), UnsupportedRegimeError);
  REQUIRE_THROWS_AS(make_coupling_config(0.5, 0.0), InvalidParameterError);
  REQUIRE_THROWS_AS(make_coupling_config(-0.1, 1.0), InvalidParameterError);
}

TEST_CASE("configuration straight from drive parameters") {
  DriveParams drives;
  drives.optical = {10.0, 0.0, 2.0, 0.05};    // G_o = 0.5
  drives.microwave = {10.0, 0.0, 2.0, 0.1};   // G_w = 1.0
  const auto cfg = make_coupling_config(drives);
  REQUIRE_THAT(cfg.ratio(), WithinAbs(0.5, 1e-13));
}

TEST_CASE("channel names") {
  REQUIRE(std::string(channel_name(ChannelId::Optical)) == "optical");
  REQUIRE(std::string(channel_name(ChannelId::Microwave)) == "microwave");
  REQUIRE(std::string(channel_name(ChannelId::Mechanical)) == "mechanical");
}
