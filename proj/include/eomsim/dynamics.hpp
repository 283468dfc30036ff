#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eomsim/ode.hpp"
#include "eomsim/propagator.hpp"

namespace eomsim {

// Coefficients below this weight count as fully decoupled from the
// mechanics.
inline constexpr double kDarkTolerance = 1e-10;

namespace detail {

using CoefficientVector = Eigen::Matrix<Complex, 9, 1>;

// Right-hand side of the coupled first-order equations the nine propagator
// coefficients satisfy.  Order: f1 f2 f3 g1 g2 g3 h1 h2 h3.
struct CoefficientSystem {
  double go;
  double gw;

  void operator()(const CoefficientVector& y, CoefficientVector& dydt,
                  double) const {
    const Complex mi(0.0, -1.0);
    dydt[0] = mi * (go * std::conj(y[5]) + gw * y[8]);
    dydt[1] = mi * (go * std::conj(y[4]) + gw * y[6]);
    dydt[2] = mi * (go * std::conj(y[3]) + gw * y[7]);
    dydt[3] = mi * go * std::conj(y[2]);
    dydt[4] = mi * go * std::conj(y[1]);
    dydt[5] = mi * go * std::conj(y[0]);
    dydt[6] = mi * gw * y[1];
    dydt[7] = mi * gw * y[2];
    dydt[8] = mi * gw * y[0];
  }
};

inline CoefficientVector pack(const PropagatorCoefficients& p) {
  CoefficientVector y;
  y << p.f1, p.f2, p.f3, p.g1, p.g2, p.g3, p.h1, p.h2, p.h3;
  return y;
}

inline PropagatorCoefficients unpack(const CoefficientVector& y, double t) {
  PropagatorCoefficients p;
  p.t = t;
  p.f1 = y[0];
  p.f2 = y[1];
  p.f3 = y[2];
  p.g1 = y[3];
  p.g2 = y[4];
  p.g3 = y[5];
  p.h1 = y[6];
  p.h2 = y[7];
  p.h3 = y[8];
  return p;
}

inline void check_ode_tolerance(const ToleranceSpec& tol) {
  if (!(tol.relative > 0.0) || tol.relative > 1e-4)
    throw InvalidParameterError(
        "coefficient integration needs a relative tolerance in (0, 1e-4]");
}

}  // namespace detail

// Propagator coefficients along a time grid, obtained by numerical
// integration only -- no use of the closed form.  One integrator instance
// walks the whole grid so the step-size history carries over.
inline std::vector<PropagatorCoefficients> ode_propagator_series(
    const CouplingConfig& cfg, const std::vector<double>& times,
    const ToleranceSpec& tol = {}) {
  detail::check_ode_tolerance(tol);
  detail::CoefficientSystem system{cfg.optical_coupling(),
                                   cfg.microwave_coupling()};
  AdaptiveIntegrator<detail::CoefficientSystem, detail::CoefficientVector>
      stepper(system, detail::pack(PropagatorCoefficients{}), 0.0, tol);
  std::vector<PropagatorCoefficients> out;
  out.reserve(times.size());
  for (double t : times) {
    stepper.advance_to(t);
    out.push_back(detail::unpack(stepper.state(), t));
  }
  return out;
}

inline PropagatorCoefficients ode_propagator(const CouplingConfig& cfg,
                                             double t,
                                             const ToleranceSpec& tol = {}) {
  return ode_propagator_series(cfg, {t}, tol).front();
}

// Times t_n = n pi / Omega at which the mechanics decouples while leaving a
// nontrivial field-only transformation.  Even n give full revivals (the
// identity map), so only odd n are listed.
inline double dark_mode_time(const CouplingConfig& cfg, int index) {
  if (index <= 0 || index % 2 == 0)
    throw InvalidParameterError("dark-mode index must be a positive odd "
                                "integer, got " + std::to_string(index));
  return static_cast<double>(index) * M_PI / cfg.frequency();
}

struct DarkModeRecord {
  int index = 1;
  double time = 0.0;
  PropagatorCoefficients coefficients;
};

inline std::vector<DarkModeRecord> dark_mode_times(const CouplingConfig& cfg,
                                                   int count) {
  if (count <= 0)
    throw InvalidParameterError("dark-mode count must be positive");
  std::vector<DarkModeRecord> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int m = 0; m < count; ++m) {
    const int n = 2 * m + 1;
    const double t = dark_mode_time(cfg, n);
    out.push_back({n, t, closed_form_propagator(cfg, t)});
  }
  return out;
}

}  // namespace eomsim
