#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "eomsim/conversion.hpp"
#include "eomsim/datasets.hpp"
#include "eomsim/dynamics.hpp"
#include "eomsim/fock.hpp"
#include "eomsim/io.hpp"
#include "eomsim/propagator.hpp"
#include "eomsim/states.hpp"

namespace eomsim {

// |a - b| measured against max(1, |a|, |b|), so small quantities are held
// to an absolute bar and large quantities to a relative one.
inline double scaled_difference(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

enum class VerifyLevel { Quick, Full };

struct VerifyCheck {
  std::string name;
  double tolerance = 0.0;
  double observed = 0.0;  // worst value seen; passes when <= tolerance
  bool pass = false;
};

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Quick;
  std::uint64_t seed = 12345;
  double ode_comparison_tol = 1e-8;
};

struct VerifyReport {
  VerifyLevel level = VerifyLevel::Quick;
  std::uint64_t seed = 0;
  std::vector<VerifyCheck> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const VerifyCheck& c) { return c.pass; });
  }
};

namespace detail {

inline void add_check(VerifyReport& report, const std::string& name,
                      double tolerance, double observed) {
  report.checks.push_back(
      {name, tolerance, observed, observed <= tolerance});
}

inline double max_coefficient_difference(const PropagatorCoefficients& a,
                                         const PropagatorCoefficients& b) {
  return std::max({std::abs(a.f1 - b.f1), std::abs(a.f2 - b.f2),
                   std::abs(a.f3 - b.f3), std::abs(a.g1 - b.g1),
                   std::abs(a.g2 - b.g2), std::abs(a.g3 - b.g3),
                   std::abs(a.h1 - b.h1), std::abs(a.h2 - b.h2),
                   std::abs(a.h3 - b.h3)});
}

}  // namespace detail

inline VerifyReport run_verify(const VerifyOptions& options = {}) {
  VerifyReport report;
  report.level = options.level;
  report.seed = options.seed;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  {  // Commutators of the analytic propagator at random (k, t).
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double k = 0.95 * unit(rng);
      const CouplingConfig cfg = CouplingConfig::from_ratio(k);
      const double t = 20.0 * unit(rng);
      worst = std::max(
          worst, commutator_residuals(closed_form_propagator(cfg, t)).max_abs());
    }
    detail::add_check(report, "closed-form-commutators", 1e-12, worst);
  }

  {  // Mechanics decoupling and field identities at the listed dark times.
    double worst = 0.0;
    for (double k : {0.1, 0.35, 0.6, 0.85}) {
      const CouplingConfig cfg = CouplingConfig::from_ratio(k);
      for (const DarkModeRecord& r : dark_mode_times(cfg, 3)) {
        worst = std::max(worst, mechanical_coupling_weight(r.coefficients));
        worst = std::max(worst,
                         dark_identity_residuals(r.coefficients).max_abs());
      }
    }
    detail::add_check(report, "dark-identities", 1e-10, worst);
  }

  {  // Frozen coherent-input rate values.
    double worst = scaled_difference(cqc_rate(0.5), 16.0 / 9.0);
    worst = std::max(worst, scaled_difference(cqc_rate(std::sqrt(2.0) - 1.0),
                                              1.0));
    worst = std::max(worst, std::abs(cqc_rate(0.0)));
    detail::add_check(report, "coherent-rate-values", 1e-12, worst);
  }

  {  // Entangled-input rate limits against independent expressions.
    double worst = scaled_difference(
        eaqc_rate(0.5, M_PI / 4.0, 0.0, 1.0, Direction::OpticalToMicrowave),
        9.0);
    worst = std::max(
        worst, scaled_difference(eaqc_rate(0.5, M_PI / 4.0, M_PI / 2.0, 1.0,
                                           Direction::OpticalToMicrowave),
                                 1.0 / 9.0));
    for (int i = 0; i < 20; ++i) {
      const double k = 0.05 + 0.9 * unit(rng);
      const double phase = 2.0 * M_PI * unit(rng);
      const double amp = 0.3 + 1.5 * unit(rng);
      worst = std::max(worst,
                       scaled_difference(eaqc_rate(k, 0.0, phase, amp,
                                                   Direction::OpticalToMicrowave),
                                         cqc_rate(k)));
      worst = std::max(worst,
                       scaled_difference(eaqc_rate(k, M_PI / 2.0, phase, amp,
                                                   Direction::MicrowaveToOptical),
                                         cqc_rate(k)));
      worst = std::max(
          worst, scaled_difference(eaqc_rate(k, -M_PI / 4.0, phase, amp,
                                             Direction::OpticalToMicrowave),
                                   eaqc_max_entangled(k, phase)));
    }
    detail::add_check(report, "entangled-rate-limits", 1e-12, worst);
  }

  {  // Same conditional rate in both directions for a bare coherent input.
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
      const double k = 0.02 + 0.93 * unit(rng);
      const CouplingConfig cfg = CouplingConfig::from_ratio(k);
      const PropagatorCoefficients p =
          closed_form_propagator(cfg, dark_mode_time(cfg, 1));
      const Complex z(2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0);
      if (std::abs(z) < 1e-3) continue;
      const double forward =
          general_rate(cfg, p, {z, Complex(0.0, 0.0)},
                       Direction::OpticalToMicrowave)
              .rate;
      const double backward =
          general_rate(cfg, p, {Complex(0.0, 0.0), z},
                       Direction::MicrowaveToOptical)
              .rate;
      worst = std::max(worst, scaled_difference(forward, cqc_rate(k)));
      worst = std::max(worst, scaled_difference(backward, cqc_rate(k)));
    }
    detail::add_check(report, "rate-reversibility", 1e-12, worst);
  }

  {  // Specialized concurrence against the generic two-branch formula.
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double theta = M_PI * (unit(rng) - 0.5);
      const Complex alpha =
          std::polar(2.0 * unit(rng), 2.0 * M_PI * unit(rng));
      const Complex beta = std::polar(2.0 * unit(rng), 2.0 * M_PI * unit(rng));
      const EntangledCoherentState s{theta, alpha, beta};
      const double direct = concurrence(s);
      const double generic = generic_concurrence(
          std::cos(theta), std::sin(theta),
          std::exp(-0.5 * std::norm(alpha)), std::exp(-0.5 * std::norm(beta)));
      worst = std::max(worst, std::abs(direct - generic));
    }
    detail::add_check(report, "concurrence-cross-check", 1e-12, worst);
  }

  {  // Bisected neutral point of the opposed-phase factor.
    const double expected = 2.0 - std::sqrt(3.0);
    detail::add_check(report, "critical-coupling", 1e-9,
                      std::abs(critical_coupling() - expected));
  }

  {  // Regime classification on both sides of the neutral point.
    const double kc = critical_coupling();
    bool ok = true;
    for (double k : {0.05, 0.15, 0.25}) {
      if (k < kc && eaf(k, M_PI / 2.0).regime != Regime::Enhancing) ok = false;
      if (eaf(k, 0.0).regime != Regime::Enhancing) ok = false;
    }
    for (double k : {0.3, 0.6, 0.9}) {
      if (eaf(k, M_PI / 2.0).regime != Regime::Suppressing) ok = false;
      if (eaf(k, 0.0).regime != Regime::Enhancing) ok = false;
    }
    detail::add_check(report, "factor-regimes", 0.0, ok ? 0.0 : 1.0);
  }

  if (options.level == VerifyLevel::Quick) return report;

  {  // Numerical coefficient integration against the analytic solution.
    ToleranceSpec tol;
    tol.relative = std::clamp(options.ode_comparison_tol / 100.0, 1e-13, 1e-6);
    tol.absolute = tol.relative * 1e-2;
    double worst_diff = 0.0;
    double worst_comm = 0.0;
    for (double k : {0.05, 0.45, 0.9}) {
      const CouplingConfig cfg = CouplingConfig::from_ratio(k);
      const GridSpec grid{0.0, 4.0 * M_PI / cfg.frequency(), 120};
      const std::vector<double> times = grid.points();
      const auto series = ode_propagator_series(cfg, times, tol);
      for (std::size_t i = 0; i < times.size(); ++i) {
        const auto exact = closed_form_propagator(cfg, times[i]);
        worst_diff = std::max(
            worst_diff, detail::max_coefficient_difference(series[i], exact));
        worst_comm =
            std::max(worst_comm, commutator_residuals(series[i]).max_abs());
      }
    }
    detail::add_check(report, "ode-closed-form-agreement",
                      options.ode_comparison_tol, worst_diff);
    detail::add_check(report, "ode-commutators", 1e-7, worst_comm);
  }

  {  // Dense eigendecomposition against adaptive integration, small basis.
    const CouplingConfig cfg = CouplingConfig::from_ratio(0.3);
    FockBasisSpec basis;
    basis.cutoff = 4;
    const auto h = build_hamiltonian(cfg, basis);
    const FockVector psi0 = prepare_product_state(
        Complex(0.4, 0.1), Complex(0.2, -0.3), Complex(0.1, 0.0), basis,
        1e-5);
    const double t = dark_mode_time(cfg, 1);
    const FockVector adaptive = evolve(psi0, h, t, 1e-9);
    const FockVector dense = evolve_expm(psi0, h, t);
    detail::add_check(report, "dense-sparse-agreement", 1e-8,
                      (adaptive.amplitudes - dense.amplitudes).norm());
  }

  {  // Forward-backward evolution returns the initial state.
    const CouplingConfig cfg = CouplingConfig::from_ratio(0.25);
    FockBasisSpec basis;
    basis.cutoff = 6;
    const auto h = build_hamiltonian(cfg, basis);
    const FockVector psi0 =
        prepare_product_state(Complex(0.5, 0.0), Complex(0.0, 0.4),
                              Complex(0.2, 0.1), basis, 1e-5);
    const FockVector there = evolve(psi0, h, 2.5);
    const FockVector back = evolve(there, h, -2.5);
    detail::add_check(report, "unitary-reversal", 1e-7,
                      (back.amplitudes - psi0.amplitudes).norm());
  }

  {  // Full state-vector conversion against the first-moment rate.
    const double k = 0.2;
    const CouplingConfig cfg = CouplingConfig::from_ratio(k);
    FockBasisSpec basis;
    basis.cutoff = 12;
    const auto h = build_hamiltonian(cfg, basis);
    const double t1 = dark_mode_time(cfg, 1);
    double worst = 0.0;
    for (double phase : {0.0, M_PI / 2.0}) {
      const Complex a = std::polar(0.5, phase);
      const EntangledCoherentState s{M_PI / 4.0, a, a};
      const FockVector psi0 = prepare_state(s, basis);
      const FockVector psi1 = evolve(psi0, h, t1);
      const double eta =
          std::norm(expectation(psi1, ChannelId::Microwave)) /
          std::norm(expectation(psi0, ChannelId::Optical));
      worst = std::max(
          worst, std::abs(eta - eaqc_rate(k, M_PI / 4.0, phase, 0.5,
                                          Direction::OpticalToMicrowave)));
    }
    detail::add_check(report, "state-vector-rate", 1e-3, worst);
  }

  return report;
}

inline Dataset to_dataset(const VerifyReport& report) {
  Dataset d;
  d.title = "self-verification";
  d.parameters = {
      {"level",
       std::string(report.level == VerifyLevel::Quick ? "quick" : "full")},
      {"seed", static_cast<std::int64_t>(report.seed)}};
  d.columns = {"check", "tolerance", "observed", "status"};
  for (const VerifyCheck& c : report.checks)
    d.add_row({c.name, c.tolerance, c.observed,
               std::string(c.pass ? "pass" : "FAIL")});
  return d;
}

}  // namespace eomsim
