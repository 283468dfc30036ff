#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "eomsim/errors.hpp"
#include "eomsim/model.hpp"
#include "eomsim/ode.hpp"
#include "eomsim/states.hpp"

namespace eomsim {

// Truncated occupation-number basis with the same per-mode cutoff for all
// three modes.  States are indexed optical-slowest:
// index = (n_o * L + n_w) * L + n_b with L = cutoff + 1.
struct FockBasisSpec {
  int cutoff = 10;
  std::int64_t dimension_limit = 8000;

  int levels() const { return cutoff + 1; }

  std::int64_t dimension() const {
    const std::int64_t l = levels();
    return l * l * l;
  }

  int index(int n_o, int n_w, int n_b) const {
    const int l = levels();
    return (n_o * l + n_w) * l + n_b;
  }
};

namespace detail {

inline void check_basis(const FockBasisSpec& basis) {
  if (basis.cutoff < 1)
    throw InvalidParameterError("basis cutoff must be at least 1");
  if (basis.dimension() > basis.dimension_limit)
    throw ResourceLimitError(
        "basis dimension " + std::to_string(basis.dimension()) +
        " exceeds the configured limit " +
        std::to_string(basis.dimension_limit));
}

// Amplitudes <n|alpha> for n = 0..cutoff.
inline std::vector<Complex> coherent_amplitudes(Complex alpha, int cutoff) {
  std::vector<Complex> c(static_cast<std::size_t>(cutoff) + 1);
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < cutoff; ++n)
    c[static_cast<std::size_t>(n) + 1] =
        c[static_cast<std::size_t>(n)] * alpha / std::sqrt(double(n + 1));
  return c;
}

}  // namespace detail

struct FockVector {
  FockBasisSpec basis;
  Eigen::VectorXcd amplitudes;
  double leakage = 0.0;  // weight lost to truncation at preparation
};

// Interaction-picture Hamiltonian
//   H = G_o (c_o b + b' c_o') + G_w (c_w b' + b c_w')
// projected onto the truncated basis (primes denote daggers).  The
// projection keeps the matrix Hermitian.
inline Eigen::SparseMatrix<Complex> build_hamiltonian(
    const CouplingConfig& cfg, const FockBasisSpec& basis) {
  detail::check_basis(basis);
  const int l = basis.levels();
  const int n = static_cast<int>(basis.dimension());
  const double go = cfg.optical_coupling();
  const double gw = cfg.microwave_coupling();

  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(4 * n));
  for (int no = 0; no < l; ++no) {
    for (int nw = 0; nw < l; ++nw) {
      for (int nb = 0; nb < l; ++nb) {
        const int col = basis.index(no, nw, nb);
        // G_o c_o b : lowers optical and mechanical together.
        if (no >= 1 && nb >= 1)
          entries.emplace_back(basis.index(no - 1, nw, nb - 1), col,
                               Complex(go * std::sqrt(double(no) * nb), 0.0));
        // G_o b' c_o' : raises both.
        if (no + 1 < l && nb + 1 < l)
          entries.emplace_back(
              basis.index(no + 1, nw, nb + 1), col,
              Complex(go * std::sqrt(double(no + 1) * (nb + 1)), 0.0));
        // G_w c_w b' : microwave photon to phonon.
        if (nw >= 1 && nb + 1 < l)
          entries.emplace_back(
              basis.index(no, nw - 1, nb + 1), col,
              Complex(gw * std::sqrt(double(nw) * (nb + 1)), 0.0));
        // G_w b c_w' : phonon to microwave photon.
        if (nb >= 1 && nw + 1 < l)
          entries.emplace_back(
              basis.index(no, nw + 1, nb - 1), col,
              Complex(gw * std::sqrt(double(nw + 1) * nb), 0.0));
      }
    }
  }
  Eigen::SparseMatrix<Complex> h(n, n);
  h.setFromTriplets(entries.begin(), entries.end());
  h.makeCompressed();
  return h;
}

// Product of coherent states on the three modes, truncated and
// renormalized.  Throws when the truncation swallows more weight than
// leakage_threshold.
inline FockVector prepare_product_state(Complex alpha_o, Complex alpha_w,
                                        Complex alpha_b,
                                        const FockBasisSpec& basis,
                                        double leakage_threshold = 1e-8) {
  detail::check_basis(basis);
  const int l = basis.levels();
  const auto co = detail::coherent_amplitudes(alpha_o, basis.cutoff);
  const auto cw = detail::coherent_amplitudes(alpha_w, basis.cutoff);
  const auto cb = detail::coherent_amplitudes(alpha_b, basis.cutoff);

  FockVector psi;
  psi.basis = basis;
  psi.amplitudes = Eigen::VectorXcd::Zero(basis.dimension());
  for (int no = 0; no < l; ++no)
    for (int nw = 0; nw < l; ++nw)
      for (int nb = 0; nb < l; ++nb)
        psi.amplitudes[basis.index(no, nw, nb)] =
            co[static_cast<std::size_t>(no)] *
            cw[static_cast<std::size_t>(nw)] *
            cb[static_cast<std::size_t>(nb)];

  const double norm_sq = psi.amplitudes.squaredNorm();
  psi.leakage = 1.0 - norm_sq;
  if (psi.leakage > leakage_threshold)
    throw TruncationError("product state loses " +
                              std::to_string(psi.leakage) +
                              " probability weight beyond the cutoff",
                          psi.leakage);
  psi.amplitudes /= std::sqrt(norm_sq);
  return psi;
}

// Entangled coherent state on the field channels, the mechanics displaced
// to mech_amplitude.
inline FockVector prepare_state(const EntangledCoherentState& s,
                                const FockBasisSpec& basis,
                                Complex mech_amplitude = Complex(0.0, 0.0),
                                double leakage_threshold = 1e-8) {
  detail::check_basis(basis);
  const double n_factor = normalization(s);
  const int l = basis.levels();
  const auto co = detail::coherent_amplitudes(s.alpha, basis.cutoff);
  const auto cw = detail::coherent_amplitudes(s.beta, basis.cutoff);
  const auto cb = detail::coherent_amplitudes(mech_amplitude, basis.cutoff);
  const double wa = std::cos(s.theta);
  const double wb = std::sin(s.theta);

  FockVector psi;
  psi.basis = basis;
  psi.amplitudes = Eigen::VectorXcd::Zero(basis.dimension());
  for (int no = 0; no < l; ++no) {
    for (int nw = 0; nw < l; ++nw) {
      Complex field = Complex(0.0, 0.0);
      if (nw == 0) field += wa * co[static_cast<std::size_t>(no)];
      if (no == 0) field += wb * cw[static_cast<std::size_t>(nw)];
      if (field == Complex(0.0, 0.0)) continue;
      field *= n_factor;
      for (int nb = 0; nb < l; ++nb)
        psi.amplitudes[basis.index(no, nw, nb)] =
            field * cb[static_cast<std::size_t>(nb)];
    }
  }

  const double norm_sq = psi.amplitudes.squaredNorm();
  psi.leakage = 1.0 - norm_sq;
  if (psi.leakage > leakage_threshold)
    throw TruncationError("entangled state loses " +
                              std::to_string(psi.leakage) +
                              " probability weight beyond the cutoff",
                          psi.leakage);
  psi.amplitudes /= std::sqrt(norm_sq);
  return psi;
}

// Adaptive integration of d psi / dt = -i H psi up to time t (either
// sign).  The requested tolerance bounds the acceptable norm drift; the
// integrator itself runs an order tighter.
inline FockVector evolve(const FockVector& psi,
                         const Eigen::SparseMatrix<Complex>& h, double t,
                         double tol = 1e-8) {
  if (!(tol > 0.0) || tol > 1e-2)
    throw InvalidParameterError("evolution tolerance must lie in (0, 1e-2]");
  if (h.rows() != psi.amplitudes.size())
    throw InvalidParameterError(
        "state and Hamiltonian dimensions do not match");

  const auto system = [&h](const Eigen::VectorXcd& y, Eigen::VectorXcd& dydt,
                           double) {
    dydt.noalias() = h * y;
    dydt *= Complex(0.0, -1.0);
  };
  const double norm_in = psi.amplitudes.norm();

  FockVector out = psi;
  ToleranceSpec spec;
  spec.relative = 0.1 * tol;
  spec.absolute = 1e-3 * tol;
  integrate_adaptive(system, out.amplitudes, 0.0, t, spec);

  const double drift = std::abs(out.amplitudes.norm() - norm_in);
  if (drift > std::max(100.0 * tol, 1e-9) * std::max(1.0, norm_in))
    throw IntegrationFailureError(
        "evolution lost unitarity (norm drift " + std::to_string(drift) + ")",
        t);
  return out;
}

// Dense eigendecomposition path for exp(-i H t), as an independent check of
// the adaptive route on small bases.
inline FockVector evolve_expm(const FockVector& psi,
                              const Eigen::SparseMatrix<Complex>& h,
                              double t) {
  if (h.rows() != psi.amplitudes.size())
    throw InvalidParameterError(
        "state and Hamiltonian dimensions do not match");
  if (h.rows() > 1000)
    throw ResourceLimitError(
        "dense propagation is limited to dimension 1000, got " +
        std::to_string(h.rows()));
  const Eigen::MatrixXcd dense(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
  if (es.info() != Eigen::Success)
    throw IntegrationFailureError("eigendecomposition failed", 0.0);

  const Eigen::ArrayXcd phases =
      (Complex(0.0, -t) * es.eigenvalues().array().cast<Complex>()).exp();
  FockVector out = psi;
  out.amplitudes = es.eigenvectors() *
                   (phases.matrix().asDiagonal() *
                    (es.eigenvectors().adjoint() * psi.amplitudes));
  return out;
}

// <a_channel>: first moment of the annihilation operator of one mode.
inline Complex expectation(const FockVector& psi, ChannelId channel) {
  const int l = psi.basis.levels();
  Complex acc(0.0, 0.0);
  for (int no = 0; no < l; ++no) {
    for (int nw = 0; nw < l; ++nw) {
      for (int nb = 0; nb < l; ++nb) {
        const int i = psi.basis.index(no, nw, nb);
        int lowered_o = no, lowered_w = nw, lowered_b = nb, n = 0;
        switch (channel) {
          case ChannelId::Optical:
            n = no;
            lowered_o = no - 1;
            break;
          case ChannelId::Microwave:
            n = nw;
            lowered_w = nw - 1;
            break;
          case ChannelId::Mechanical:
            n = nb;
            lowered_b = nb - 1;
            break;
        }
        if (n == 0) continue;
        const int j = psi.basis.index(lowered_o, lowered_w, lowered_b);
        acc += std::conj(psi.amplitudes[j]) * std::sqrt(double(n)) *
               psi.amplitudes[i];
      }
    }
  }
  return acc;
}

// <n_channel>: mean occupation of one mode.
inline double occupation(const FockVector& psi, ChannelId channel) {
  const int l = psi.basis.levels();
  double acc = 0.0;
  for (int no = 0; no < l; ++no)
    for (int nw = 0; nw < l; ++nw)
      for (int nb = 0; nb < l; ++nb) {
        const int n = channel == ChannelId::Optical
                          ? no
                          : (channel == ChannelId::Microwave ? nw : nb);
        acc += n * std::norm(psi.amplitudes[psi.basis.index(no, nw, nb)]);
      }
  return acc;
}

// <n_o - n_w - n_b>, which the dynamics conserves exactly.
inline double conserved_charge(const FockVector& psi) {
  return occupation(psi, ChannelId::Optical) -
         occupation(psi, ChannelId::Microwave) -
         occupation(psi, ChannelId::Mechanical);
}

}  // namespace eomsim
