#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "eomsim/model.hpp"

namespace eomsim {

using Complex = std::complex<double>;

// Coefficients of the exact Heisenberg-picture solution.  Writing b, c_o,
// c_w for the mechanical, optical and microwave annihilation operators at
// time zero,
//
//   b(t)   = f1 b + f2 c_w + f3 c_o^dag
//   c_o(t) = g1 c_o + g2 c_w^dag + g3 b^dag
//   c_w(t) = h1 c_w + h2 c_o^dag + h3 b
//
// so the f's propagate the mechanics, the g's the optical field and the
// h's the microwave field.
struct PropagatorCoefficients {
  double t = 0.0;
  Complex f1{1.0, 0.0}, f2{0.0, 0.0}, f3{0.0, 0.0};
  Complex g1{1.0, 0.0}, g2{0.0, 0.0}, g3{0.0, 0.0};
  Complex h1{1.0, 0.0}, h2{0.0, 0.0}, h3{0.0, 0.0};
};

// Closed-form propagator on the oscillatory branch (k < 1).
inline PropagatorCoefficients closed_form_propagator(const CouplingConfig& cfg,
                                                     double t) {
  const double k = cfg.ratio();
  const double omega = cfg.frequency();
  const double k2 = k * k;
  const double denom = 1.0 - k2;
  const double root = std::sqrt(denom);
  const double c = std::cos(omega * t);
  const double s = std::sin(omega * t);

  PropagatorCoefficients p;
  p.t = t;
  p.f1 = Complex(c, 0.0);
  p.f2 = Complex(0.0, -s / root);
  p.f3 = k * p.f2;
  p.g1 = Complex((1.0 - k2 * c) / denom, 0.0);
  p.g2 = Complex(k * (1.0 - c) / denom, 0.0);
  p.g3 = Complex(0.0, -k * s / root);
  p.h1 = Complex((c - k2) / denom, 0.0);
  p.h2 = Complex(k * (c - 1.0) / denom, 0.0);
  p.h3 = Complex(0.0, -s / root);
  return p;
}

// Residuals of the bosonic commutation relations the coefficients must
// preserve at every time.  All five vanish exactly for the true solution.
struct CommutatorResiduals {
  double mechanical;     // |f1|^2 + |f2|^2 - |f3|^2 - 1
  double optical;        // |g1|^2 - |g2|^2 - |g3|^2 - 1
  double microwave;      // |h1|^2 - |h2|^2 + |h3|^2 - 1
  double cross_optical;  // |f1 g3 + f2 g2 - f3 g1|
  double cross_microwave;  // |f1 h3* + f2 h1* - f3 h2*|

  double max_abs() const {
    return std::max({std::abs(mechanical), std::abs(optical),
                     std::abs(microwave), cross_optical, cross_microwave});
  }
};

inline CommutatorResiduals commutator_residuals(
    const PropagatorCoefficients& p) {
  CommutatorResiduals r;
  r.mechanical =
      std::norm(p.f1) + std::norm(p.f2) - std::norm(p.f3) - 1.0;
  r.optical = std::norm(p.g1) - std::norm(p.g2) - std::norm(p.g3) - 1.0;
  r.microwave = std::norm(p.h1) - std::norm(p.h2) + std::norm(p.h3) - 1.0;
  r.cross_optical = std::abs(p.f1 * p.g3 + p.f2 * p.g2 - p.f3 * p.g1);
  r.cross_microwave = std::abs(p.f1 * std::conj(p.h3) +
                               p.f2 * std::conj(p.h1) -
                               p.f3 * std::conj(p.h2));
  return r;
}

// How strongly the mechanics is still admixed into the field channels:
// zero exactly at the dynamically dark times.
inline double mechanical_coupling_weight(const PropagatorCoefficients& p) {
  return std::max({std::abs(p.g3), std::abs(p.h3), std::abs(p.f2),
                   std::abs(p.f3)});
}

inline bool is_dynamically_dark(const PropagatorCoefficients& p,
                                double tol = 1e-10) {
  return mechanical_coupling_weight(p) < tol;
}

// Residuals of the two-mode-squeezing identities that hold at the dark
// times, where the field sector evolves unitarily on its own:
// |g1|^2 - |g2|^2 = 1 and |h1|^2 - |h2|^2 = 1.
struct DarkIdentityResiduals {
  double optical;
  double microwave;

  double max_abs() const {
    return std::max(std::abs(optical), std::abs(microwave));
  }
};

inline DarkIdentityResiduals dark_identity_residuals(
    const PropagatorCoefficients& p) {
  return {std::norm(p.g1) - std::norm(p.g2) - 1.0,
          std::norm(p.h1) - std::norm(p.h2) - 1.0};
}

}  // namespace eomsim
