#pragma once

#include <cmath>
#include <complex>

#include "eomsim/errors.hpp"
#include "eomsim/model.hpp"

namespace eomsim {

using Complex = std::complex<double>;

// Superposition of a coherent optical excitation and a coherent microwave
// excitation,
//
//   |psi> = N ( cos(theta) |alpha>_o |0>_w + sin(theta) |0>_o |beta>_w ),
//
// the standard entangled resource for the field-only conversion protocol.
struct EntangledCoherentState {
  double theta = 0.0;
  Complex alpha{0.0, 0.0};
  Complex beta{0.0, 0.0};
};

namespace detail {

// exp(-(|alpha|^2 + |beta|^2) / 2) = <alpha|0><0|beta> up to phase-free
// overlaps; the quantity every normalization below shares.
inline double branch_overlap(const EntangledCoherentState& s) {
  return std::exp(-0.5 * (std::norm(s.alpha) + std::norm(s.beta)));
}

}  // namespace detail

// Normalization factor N.  Throws when the two branches interfere away
// completely (theta = -pi/4 with alpha = beta = 0 and the like).
inline double normalization(const EntangledCoherentState& s) {
  const double inv_sq =
      1.0 + std::sin(2.0 * s.theta) * detail::branch_overlap(s);
  if (!(inv_sq > 0.0))
    throw DegenerateStateError(
        "entangled coherent state has vanishing norm; the branches cancel");
  return 1.0 / std::sqrt(inv_sq);
}

// Concurrence of the two-channel reduced state in the specialized
// coherent-branch form.
inline double concurrence(const EntangledCoherentState& s) {
  const double n = normalization(s);
  const double po = 1.0 - std::exp(-std::norm(s.alpha));
  const double pw = 1.0 - std::exp(-std::norm(s.beta));
  return std::abs(std::sin(2.0 * s.theta)) * std::sqrt(po * pw) * n * n;
}

// Concurrence of a general two-branch superposition
// N (mu |g1>|d1> + nu |g2>|d2>) with channel overlaps p1 = <g1|g2> and
// p2 = <d1|d2>.  Used as an independent cross-check of the specialized
// formula above.
inline double generic_concurrence(Complex mu, Complex nu, Complex p1,
                                  Complex p2) {
  if (std::abs(p1) > 1.0 + 1e-12 || std::abs(p2) > 1.0 + 1e-12)
    throw InvalidOverlapError("state overlaps must have magnitude at most 1");
  const double inv_sq =
      std::norm(mu) + std::norm(nu) +
      2.0 * std::real(std::conj(mu) * nu * p1 * p2);
  if (!(inv_sq > 0.0))
    throw DegenerateStateError("superposition has vanishing norm");
  const double po = std::max(0.0, 1.0 - std::norm(p1));
  const double pw = std::max(0.0, 1.0 - std::norm(p2));
  return 2.0 * std::abs(mu) * std::abs(nu) * std::sqrt(po * pw) / inv_sq;
}

struct FieldMeans {
  Complex optical{0.0, 0.0};
  Complex microwave{0.0, 0.0};
};

// First moments <c_o> and <c_w> of the two field channels.
inline FieldMeans field_means(const EntangledCoherentState& s) {
  const double n = normalization(s);
  const double n2 = n * n;
  const double overlap = detail::branch_overlap(s);
  const double c = std::cos(s.theta);
  const double si = std::sin(s.theta);
  const double half_cross = c * si * overlap;  // (1/2) sin(2 theta) overlap
  return {s.alpha * (n2 * (c * c + half_cross)),
          s.beta * (n2 * (si * si + half_cross))};
}

inline Complex field_mean(const EntangledCoherentState& s, ChannelId channel) {
  const FieldMeans m = field_means(s);
  switch (channel) {
    case ChannelId::Optical:
      return m.optical;
    case ChannelId::Microwave:
      return m.microwave;
    case ChannelId::Mechanical:
      break;
  }
  throw InvalidChannelError(
      "field means are defined for the optical and microwave channels only");
}

}  // namespace eomsim
