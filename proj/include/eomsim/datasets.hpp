#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "eomsim/conversion.hpp"
#include "eomsim/dynamics.hpp"
#include "eomsim/io.hpp"

namespace eomsim {

// Inclusive linear grid: count points from start to stop.
struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  int count = 2;

  std::vector<double> points() const {
    if (count < 1) throw InvalidParameterError("grid needs at least 1 point");
    std::vector<double> p;
    p.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
      p.push_back(start);
      return p;
    }
    const double step = (stop - start) / (count - 1);
    for (int i = 0; i < count; ++i)
      p.push_back(i + 1 == count ? stop : start + i * step);
    return p;
  }
};

// Coherent-input conversion rate against the coupling ratio.  The rate
// must come out strictly increasing along the grid; a violation means the
// closed form regressed, so emission aborts.
inline Dataset cqc_figure(const GridSpec& grid = {0.0, 0.95, 200}) {
  Dataset d;
  d.title = "conditional conversion rate";
  d.columns = {"coupling_ratio", "rate"};
  double prev_k = -1.0;
  double prev_rate = -1.0;
  for (double k : grid.points()) {
    const double rate = cqc_rate(k);
    if (k > prev_k && rate <= prev_rate)
      throw PreconditionError("conversion rate failed to increase between k=" +
                              format_double(prev_k) + " and k=" +
                              format_double(k));
    prev_k = k;
    prev_rate = rate;
    d.add_row({k, rate});
  }
  return d;
}

// Maximally entangled rate against the branch phase, one column per
// coupling ratio.  Every emitted value is checked against its half-turn
// translate: the rate is pi-periodic in the phase, so a mismatch flags a
// broken closed form.
inline Dataset entangled_phase_figure(
    const std::vector<double>& ratios = {0.1, 0.2, 0.6, 0.9},
    const GridSpec& phase_grid = {0.0, 2.0 * M_PI, 241}) {
  if (ratios.empty())
    throw InvalidParameterError("need at least one coupling ratio");
  Dataset d;
  d.title = "entanglement-assisted conversion rate";
  d.columns = {"phase"};
  for (double k : ratios) {
    detail::check_ratio(k);
    d.columns.push_back("rate_k=" + format_double(k));
  }
  for (double phase : phase_grid.points()) {
    std::vector<Cell> row{phase};
    for (double k : ratios) {
      const double rate = eaqc_max_entangled(k, phase);
      const double translated = eaqc_max_entangled(k, phase + M_PI);
      if (std::abs(rate - translated) >
          1e-9 * std::max({1.0, rate, translated}))
        throw PreconditionError(
            "rate lost its half-turn periodicity at phase=" +
            format_double(phase) + ", k=" + format_double(k));
      row.emplace_back(rate);
    }
    d.add_row(std::move(row));
  }
  return d;
}

// Entanglement-affecting factor at the two extremal phases against the
// coupling ratio.  When the grid spans the critical ratio, the opposed
// column must cross unity inside the grid interval that contains it.
inline Dataset eaf_figure(const GridSpec& grid = {0.01, 0.95, 189}) {
  Dataset d;
  d.title = "entanglement-affecting factor";
  d.columns = {"coupling_ratio", "factor_phase_0", "factor_phase_half_pi",
               "unity_reference", "regime_phase_half_pi"};
  const std::vector<double> ks = grid.points();
  std::vector<double> opposed_factors;
  opposed_factors.reserve(ks.size());
  for (double k : ks) {
    const EafReport aligned = eaf(k, 0.0);
    const EafReport opposed = eaf(k, M_PI / 2.0);
    if (aligned.factor >= 1.0)
      throw PreconditionError("aligned-phase factor reached unity at k=" +
                              format_double(k));
    opposed_factors.push_back(opposed.factor);
    d.add_row({k, aligned.factor, opposed.factor, 1.0,
               std::string(regime_name(opposed.regime))});
  }
  const double kc = critical_coupling();
  for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
    if (ks[i] > kc || ks[i + 1] < kc) continue;
    if ((opposed_factors[i] - 1.0) * (opposed_factors[i + 1] - 1.0) > 0.0)
      throw PreconditionError(
          "opposed-phase factor misses its unity crossing between k=" +
          format_double(ks[i]) + " and k=" + format_double(ks[i + 1]));
  }
  return d;
}

// Propagator coefficients along a time grid.  method "closed" evaluates
// the analytic solution; "ode" integrates the coefficient equations.
inline Dataset propagation_figure(const CouplingConfig& cfg,
                                  const GridSpec& time_grid,
                                  const std::string& method = "closed",
                                  const ToleranceSpec& tol = {}) {
  Dataset d;
  d.title = "propagator coefficients";
  d.parameters = {{"coupling_ratio", cfg.ratio()},
                  {"microwave_coupling", cfg.microwave_coupling()},
                  {"method", method}};
  d.columns = {"t"};
  for (const char* base : {"f1", "f2", "f3", "g1", "g2", "g3", "h1", "h2",
                           "h3"}) {
    d.columns.push_back(std::string(base) + "_re");
    d.columns.push_back(std::string(base) + "_im");
  }
  d.columns.push_back("commutator_residual");

  const std::vector<double> times = time_grid.points();
  std::vector<PropagatorCoefficients> coeffs;
  if (method == "closed") {
    coeffs.reserve(times.size());
    for (double t : times) coeffs.push_back(closed_form_propagator(cfg, t));
  } else if (method == "ode") {
    coeffs = ode_propagator_series(cfg, times, tol);
  } else {
    throw InvalidParameterError("unknown propagation method '" + method +
                                "' (use closed or ode)");
  }

  for (const auto& p : coeffs) {
    std::vector<Cell> row{p.t};
    for (const Complex* c : {&p.f1, &p.f2, &p.f3, &p.g1, &p.g2, &p.g3, &p.h1,
                             &p.h2, &p.h3}) {
      row.emplace_back(c->real());
      row.emplace_back(c->imag());
    }
    row.emplace_back(commutator_residuals(p).max_abs());
    d.add_row(std::move(row));
  }
  return d;
}

// The first `count` dark times with the residuals that certify them.
inline Dataset dark_times_figure(const CouplingConfig& cfg, int count) {
  Dataset d;
  d.title = "dynamically dark times";
  d.parameters = {{"coupling_ratio", cfg.ratio()},
                  {"microwave_coupling", cfg.microwave_coupling()}};
  d.columns = {"index",
               "time",
               "f1_re",
               "g1_re",
               "g2_re",
               "h1_re",
               "h2_re",
               "mechanical_weight",
               "optical_identity_residual",
               "microwave_identity_residual"};
  for (const DarkModeRecord& r : dark_mode_times(cfg, count)) {
    const auto& p = r.coefficients;
    const DarkIdentityResiduals ids = dark_identity_residuals(p);
    d.add_row({static_cast<std::int64_t>(r.index), r.time, p.f1.real(),
               p.g1.real(), p.g2.real(), p.h1.real(), p.h2.real(),
               mechanical_coupling_weight(p), ids.optical, ids.microwave});
  }
  return d;
}

}  // namespace eomsim
