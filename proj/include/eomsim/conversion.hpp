#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "eomsim/dynamics.hpp"
#include "eomsim/fock.hpp"
#include "eomsim/model.hpp"
#include "eomsim/propagator.hpp"
#include "eomsim/states.hpp"

namespace eomsim {

enum class Direction { OpticalToMicrowave, MicrowaveToOptical };

inline const char* direction_name(Direction d) {
  return d == Direction::OpticalToMicrowave ? "optical-to-microwave"
                                            : "microwave-to-optical";
}

enum class RateMethod { ClosedForm, CoefficientBased, FockOracle };

struct ConversionReport {
  Direction direction = Direction::OpticalToMicrowave;
  double rate = 0.0;
  int dark_mode_index = 1;
  double coupling_ratio = 0.0;
  RateMethod method = RateMethod::CoefficientBased;
};

namespace detail {

inline void check_ratio(double k) {
  if (k < 0.0)
    throw InvalidParameterError("coupling ratio must be nonnegative, got " +
                                std::to_string(k));
  if (k >= 1.0)
    throw UnsupportedRegimeError(
        "coupling ratio must stay below 1 for oscillatory dynamics, got " +
        std::to_string(k));
}

}  // namespace detail

// Conversion rate between the two field channels for arbitrary first
// moments, evaluated from dark-time propagator coefficients.  The rate is
// conditional: output power in the target channel over input power in the
// source channel,
//
//   eta_ow = |h1 <c_w> + h2 <c_o>*|^2 / |<c_o>|^2,
//   eta_wo = |g1 <c_o> + g2 <c_w>*|^2 / |<c_w>|^2.
inline ConversionReport general_rate(const CouplingConfig& cfg,
                                     const PropagatorCoefficients& p,
                                     const FieldMeans& means,
                                     Direction direction,
                                     double dark_tol = kDarkTolerance) {
  if (!is_dynamically_dark(p, dark_tol))
    throw PreconditionError(
        "conversion rates are defined at dynamically dark times only "
        "(mechanical weight " +
        std::to_string(mechanical_coupling_weight(p)) + ")");
  const Complex input = direction == Direction::OpticalToMicrowave
                            ? means.optical
                            : means.microwave;
  if (input == Complex(0.0, 0.0))
    throw UndefinedRateError("conversion from the " +
                             std::string(direction ==
                                                 Direction::OpticalToMicrowave
                                             ? "optical"
                                             : "microwave") +
                             " channel needs a nonzero input mean");
  const Complex output =
      direction == Direction::OpticalToMicrowave
          ? p.h1 * means.microwave + p.h2 * std::conj(means.optical)
          : p.g1 * means.optical + p.g2 * std::conj(means.microwave);

  ConversionReport report;
  report.direction = direction;
  report.rate = std::norm(output) / std::norm(input);
  report.dark_mode_index =
      static_cast<int>(std::lround(p.t * cfg.frequency() / M_PI));
  report.coupling_ratio = cfg.ratio();
  report.method = RateMethod::CoefficientBased;
  return report;
}

// Conditional rate for a single coherent input:
// eta = |h2|^2 = |g2|^2 = 4 k^2 / (1 - k^2)^2, identical in both
// directions.
inline double cqc_rate(double k) {
  detail::check_ratio(k);
  const double d = 1.0 - k * k;
  return 4.0 * k * k / (d * d);
}

// Entanglement-assisted rate for the equal-amplitude entangled coherent
// state with alpha = beta = amplitude * exp(i phase), evaluated through the
// general first-moment machinery at the first dark time.
inline double eaqc_rate(double k, double theta, double phase,
                        double amplitude, Direction direction) {
  detail::check_ratio(k);
  if (amplitude < 0.0)
    throw InvalidParameterError("amplitude must be nonnegative");
  const CouplingConfig cfg = CouplingConfig::from_ratio(k);
  const Complex a = std::polar(amplitude, phase);
  const EntangledCoherentState state{theta, a, a};
  const PropagatorCoefficients p =
      closed_form_propagator(cfg, dark_mode_time(cfg, 1));
  return general_rate(cfg, p, field_means(state), direction).rate;
}

// Rate for the maximally entangled member of the family (equal branch
// weights), where the amplitude drops out:
// eta = |1 + k^2 + 2 k exp(-2 i phase)|^2 / (1 - k^2)^2.
inline double eaqc_max_entangled(double k, double phase) {
  detail::check_ratio(k);
  const Complex z = 1.0 + k * k +
                    2.0 * k * std::exp(Complex(0.0, -2.0 * phase));
  const double d = 1.0 - k * k;
  return std::norm(z) / (d * d);
}

// Same conversion task as eaqc_rate, but answered by evolving the full
// truncated state vector instead of first moments: prepare the entangled
// input, integrate the Schroedinger equation to the first dark time and
// read the rate off the channel expectations.  Slower and subject to the
// truncation floor, which is exactly what makes it an independent check.
inline ConversionReport oracle_rate(double k, double theta, double phase,
                                    double amplitude, Direction direction,
                                    int cutoff,
                                    std::int64_t dimension_limit = 8000) {
  detail::check_ratio(k);
  if (amplitude < 0.0)
    throw InvalidParameterError("amplitude must be nonnegative");
  const CouplingConfig cfg = CouplingConfig::from_ratio(k);
  FockBasisSpec basis;
  basis.cutoff = cutoff;
  basis.dimension_limit = dimension_limit;

  const Complex a = std::polar(amplitude, phase);
  const FockVector psi0 =
      prepare_state(EntangledCoherentState{theta, a, a}, basis,
                    Complex(0.0, 0.0), 1e-6);
  const Eigen::SparseMatrix<Complex> h = build_hamiltonian(cfg, basis);
  const FockVector psi1 = evolve(psi0, h, dark_mode_time(cfg, 1));

  const ChannelId source = direction == Direction::OpticalToMicrowave
                               ? ChannelId::Optical
                               : ChannelId::Microwave;
  const ChannelId target = direction == Direction::OpticalToMicrowave
                               ? ChannelId::Microwave
                               : ChannelId::Optical;
  const Complex input = expectation(psi0, source);
  if (input == Complex(0.0, 0.0))
    throw UndefinedRateError("conversion needs a nonzero input mean");

  ConversionReport report;
  report.direction = direction;
  report.rate = std::norm(expectation(psi1, target)) / std::norm(input);
  report.dark_mode_index = 1;
  report.coupling_ratio = k;
  report.method = RateMethod::FockOracle;
  return report;
}

enum class Regime { Enhancing, Suppressing, Neutral };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Enhancing:
      return "enhancing";
    case Regime::Suppressing:
      return "suppressing";
    case Regime::Neutral:
      return "neutral";
  }
  return "unknown";
}

// Half-width of the band around 1 inside which the factor counts as
// neutral.
inline constexpr double kRegimeBand = 1e-12;

// How the input entanglement affects conversion: the ratio of the plain
// coherent-input rate to the maximally entangled rate at the same phase.
// Below 1 the entanglement enhances conversion, above 1 it suppresses it.
struct EafReport {
  double phase = 0.0;
  double coupling_ratio = 0.0;
  double factor = 0.0;
  Regime regime = Regime::Neutral;
};

inline EafReport eaf(double k, double phase) {
  detail::check_ratio(k);
  if (k == 0.0)
    throw DegenerateRatioError(
        "the entanglement-affecting factor is undefined at zero coupling "
        "ratio");
  EafReport report;
  report.phase = phase;
  report.coupling_ratio = k;
  report.factor = cqc_rate(k) / eaqc_max_entangled(k, phase);
  if (report.factor < 1.0 - kRegimeBand)
    report.regime = Regime::Enhancing;
  else if (report.factor > 1.0 + kRegimeBand)
    report.regime = Regime::Suppressing;
  else
    report.regime = Regime::Neutral;
  return report;
}

// Coupling ratio at which the phase-pi/2 factor crosses 1, located by
// bisection.
inline double critical_coupling(double tol = 1e-12) {
  if (!(tol > 0.0))
    throw InvalidParameterError("tolerance must be positive");
  double lo = 0.1;
  double hi = 0.5;
  double flo = eaf(lo, M_PI / 2.0).factor - 1.0;
  for (int i = 0; i < 200 && (hi - lo) > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = eaf(mid, M_PI / 2.0).factor - 1.0;
    if ((flo < 0.0) == (fmid < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace eomsim
