#pragma once

#include <cmath>
#include <string>

#include "eomsim/errors.hpp"

namespace eomsim {

enum class ChannelId { Optical, Microwave, Mechanical };

inline const char* channel_name(ChannelId id) {
  switch (id) {
    case ChannelId::Optical:
      return "optical";
    case ChannelId::Microwave:
      return "microwave";
    case ChannelId::Mechanical:
      return "mechanical";
  }
  return "unknown";
}

// Steady-state drive parameters of one cavity channel.  The drive amplitude
// and detuning are taken in the rotating frame of the drive; decay is a full
// width (energy decay rate).
struct ChannelDrive {
  double drive_amplitude = 0.0;         // |E|
  double detuning = 0.0;                // Delta
  double cavity_decay = 0.0;            // kappa
  double single_photon_coupling = 0.0;  // g0
};

// Mean intracavity photon number sustained by a classical drive:
//   N = |E|^2 / ((kappa/2)^2 + Delta^2).
inline double intracavity_photon_number(const ChannelDrive& d) {
  if (d.cavity_decay <= 0.0)
    throw InvalidParameterError("cavity decay must be positive");
  const double half = 0.5 * d.cavity_decay;
  return d.drive_amplitude * d.drive_amplitude /
         (half * half + d.detuning * d.detuning);
}

// Drive-enhanced coupling G = g0 * sqrt(N).
inline double multiphoton_coupling(const ChannelDrive& d) {
  if (d.single_photon_coupling < 0.0)
    throw InvalidParameterError("single-photon coupling must be nonnegative");
  return d.single_photon_coupling * std::sqrt(intracavity_photon_number(d));
}

struct DriveParams {
  ChannelDrive optical;
  ChannelDrive microwave;
};

// The two enhanced couplings that define the linearized three-mode model.
// The optical side squeezes (two-mode-squeezing with the mechanics), the
// microwave side exchanges (beam splitter), and only G_o < G_w yields
// oscillatory dynamics; the factories reject everything else.
class CouplingConfig {
 public:
  static CouplingConfig from_couplings(double optical, double microwave) {
    return CouplingConfig(optical, microwave);
  }

  static CouplingConfig from_ratio(double ratio, double microwave = 1.0) {
    return CouplingConfig(ratio * microwave, microwave);
  }

  double optical_coupling() const { return optical_; }
  double microwave_coupling() const { return microwave_; }

  // k = G_o / G_w, in [0, 1).
  double ratio() const { return optical_ / microwave_; }

  // Oscillation frequency Omega = sqrt(G_w^2 - G_o^2).
  double frequency() const {
    return std::sqrt(microwave_ * microwave_ - optical_ * optical_);
  }

 private:
  CouplingConfig(double optical, double microwave)
      : optical_(optical), microwave_(microwave) {
    if (!(microwave_ > 0.0))
      throw InvalidParameterError("microwave coupling must be positive, got " +
                                  std::to_string(microwave_));
    if (optical_ < 0.0)
      throw InvalidParameterError("optical coupling must be nonnegative, got " +
                                  std::to_string(optical_));
    if (optical_ >= microwave_)
      throw UnsupportedRegimeError(
          "couplings G_o >= G_w give non-oscillatory dynamics (got ratio " +
          std::to_string(optical_ / microwave_) + ")");
  }

  double optical_;
  double microwave_;
};

inline CouplingConfig make_coupling_config(double optical, double microwave) {
  return CouplingConfig::from_couplings(optical, microwave);
}

inline CouplingConfig make_coupling_config_from_ratio(double ratio,
                                                      double microwave = 1.0) {
  return CouplingConfig::from_ratio(ratio, microwave);
}

inline CouplingConfig make_coupling_config(const DriveParams& drives) {
  return CouplingConfig::from_couplings(multiphoton_coupling(drives.optical),
                                        multiphoton_coupling(drives.microwave));
}

}  // namespace eomsim
