#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

#include "eomsim/errors.hpp"

namespace eomsim {

struct ToleranceSpec {
  double relative = 1e-10;
  double absolute = 1e-12;
};

struct IntegrationStats {
  std::int64_t accepted = 0;
  std::int64_t rejected = 0;
  std::int64_t derivative_calls = 0;
};

// Embedded Dormand-Prince 5(4) pair with the first-same-as-last property.
// The error acceptance is per unit step: a step of size h may contribute at
// most (absolute + relative * |y_i|) * min(h, 1) per component, so the
// accumulated error over an interval T stays near tol * T instead of
// growing with the step count.
template <class System, class State>
class AdaptiveIntegrator {
 public:
  AdaptiveIntegrator(System system, State y0, double t0,
                     ToleranceSpec tol = {})
      : system_(std::move(system)),
        y_(std::move(y0)),
        t_(t0),
        tol_(tol) {
    if (!(tol_.relative > 0.0))
      throw InvalidParameterError("relative tolerance must be positive");
    if (!(tol_.absolute >= 0.0))
      throw InvalidParameterError("absolute tolerance must be nonnegative");
    k1_ = y_;
    k2_ = y_;
    k3_ = y_;
    k4_ = y_;
    k5_ = y_;
    k6_ = y_;
    k7_ = y_;
    ytmp_ = y_;
    ynew_ = y_;
    yerr_ = y_;
    system_(y_, k1_, t_);
    ++stats_.derivative_calls;
  }

  // Integrates from the current time to t_target (either direction) and
  // leaves the controller's step estimate intact across calls.
  void advance_to(double t_target) {
    if (t_target == t_) return;
    const double dir = (t_target > t_) ? 1.0 : -1.0;
    if (h_ <= 0.0) h_ = initial_step(t_target);

    bool rejected_last = false;
    while (dir * (t_target - t_) > 0.0) {
      if (stats_.accepted + stats_.rejected > kMaxSteps)
        throw IntegrationFailureError("adaptive step limit exceeded", t_);

      const double remaining = std::abs(t_target - t_);
      const bool capped = h_ >= remaining;
      const double h = capped ? remaining : h_;
      if (h < 16.0 * kEps * std::max(1.0, std::abs(t_)))
        throw IntegrationFailureError("step size underflow", t_);

      const double ratio = attempt_step(dir * h);
      if (ratio <= 1.0) {
        t_ = capped ? t_target : t_ + dir * h;
        y_.swap(ynew_);
        k1_.swap(k7_);  // first-same-as-last
        ++stats_.accepted;
        if (!capped) {
          double grow = kSafety * std::pow(std::max(ratio, 1e-14), -0.2);
          grow = std::clamp(grow, kMinFactor, rejected_last ? 1.0 : kMaxFactor);
          h_ = h * grow;
        }
        rejected_last = false;
      } else {
        ++stats_.rejected;
        h_ = h * std::clamp(kSafety * std::pow(ratio, -0.2), kMinFactor, 1.0);
        rejected_last = true;
      }
    }
  }

  const State& state() const { return y_; }
  State& state() { return y_; }
  double time() const { return t_; }
  const IntegrationStats& stats() const { return stats_; }

 private:
  static constexpr double kEps = 2.220446049250313e-16;
  static constexpr double kSafety = 0.9;
  static constexpr double kMinFactor = 0.2;
  static constexpr double kMaxFactor = 5.0;
  static constexpr std::int64_t kMaxSteps = 50'000'000;

  double initial_step(double t_target) const {
    const double span = std::abs(t_target - t_);
    double d0 = 0.0, d1 = 0.0;
    for (decltype(y_.size()) i = 0; i < y_.size(); ++i) {
      const double sc = tol_.absolute + tol_.relative * std::abs(y_[i]);
      d0 = std::max(d0, std::abs(y_[i]) / sc);
      d1 = std::max(d1, std::abs(k1_[i]) / sc);
    }
    double h = (d0 > 1e-5 && d1 > 1e-5) ? 0.01 * d0 / d1 : 1e-6 * span;
    return std::min(h, span);
  }

  // Runs one trial step of signed size hs and returns the error ratio;
  // on return ynew_ holds the candidate state and k7_ its derivative.
  double attempt_step(double hs) {
    const double t = t_;
    ytmp_ = y_ + hs * (kA21 * k1_);
    system_(ytmp_, k2_, t + kC2 * hs);
    ytmp_ = y_ + hs * (kA31 * k1_ + kA32 * k2_);
    system_(ytmp_, k3_, t + kC3 * hs);
    ytmp_ = y_ + hs * (kA41 * k1_ + kA42 * k2_ + kA43 * k3_);
    system_(ytmp_, k4_, t + kC4 * hs);
    ytmp_ = y_ + hs * (kA51 * k1_ + kA52 * k2_ + kA53 * k3_ + kA54 * k4_);
    system_(ytmp_, k5_, t + kC5 * hs);
    ytmp_ = y_ + hs * (kA61 * k1_ + kA62 * k2_ + kA63 * k3_ + kA64 * k4_ +
                       kA65 * k5_);
    system_(ytmp_, k6_, t + hs);
    ynew_ = y_ + hs * (kB1 * k1_ + kB3 * k3_ + kB4 * k4_ + kB5 * k5_ +
                       kB6 * k6_);
    system_(ynew_, k7_, t + hs);
    stats_.derivative_calls += 6;

    yerr_ = hs * (kE1 * k1_ + kE3 * k3_ + kE4 * k4_ + kE5 * k5_ + kE6 * k6_ +
                  kE7 * k7_);
    const double budget = std::min(std::abs(hs), 1.0);
    double ratio = 0.0;
    for (decltype(y_.size()) i = 0; i < y_.size(); ++i) {
      const double mag = std::max(std::abs(y_[i]), std::abs(ynew_[i]));
      const double sc = (tol_.absolute + tol_.relative * mag) * budget;
      const double r = std::abs(yerr_[i]) / sc;
      if (!(r <= ratio)) ratio = r;  // NaN-aware maximum
    }
    // a non-finite ratio (overflow or NaN in the derivative) must reject
    // the step and shrink hard instead of poisoning the comparison
    return std::isfinite(ratio) ? ratio : 1e16;
  }

  static constexpr double kC2 = 1.0 / 5.0;
  static constexpr double kC3 = 3.0 / 10.0;
  static constexpr double kC4 = 4.0 / 5.0;
  static constexpr double kC5 = 8.0 / 9.0;
  static constexpr double kA21 = 1.0 / 5.0;
  static constexpr double kA31 = 3.0 / 40.0;
  static constexpr double kA32 = 9.0 / 40.0;
  static constexpr double kA41 = 44.0 / 45.0;
  static constexpr double kA42 = -56.0 / 15.0;
  static constexpr double kA43 = 32.0 / 9.0;
  static constexpr double kA51 = 19372.0 / 6561.0;
  static constexpr double kA52 = -25360.0 / 2187.0;
  static constexpr double kA53 = 64448.0 / 6561.0;
  static constexpr double kA54 = -212.0 / 729.0;
  static constexpr double kA61 = 9017.0 / 3168.0;
  static constexpr double kA62 = -355.0 / 33.0;
  static constexpr double kA63 = 46732.0 / 5247.0;
  static constexpr double kA64 = 49.0 / 176.0;
  static constexpr double kA65 = -5103.0 / 18656.0;
  static constexpr double kB1 = 35.0 / 384.0;
  static constexpr double kB3 = 500.0 / 1113.0;
  static constexpr double kB4 = 125.0 / 192.0;
  static constexpr double kB5 = -2187.0 / 6784.0;
  static constexpr double kB6 = 11.0 / 84.0;
  static constexpr double kE1 = 71.0 / 57600.0;
  static constexpr double kE3 = -71.0 / 16695.0;
  static constexpr double kE4 = 71.0 / 1920.0;
  static constexpr double kE5 = -17253.0 / 339200.0;
  static constexpr double kE6 = 22.0 / 525.0;
  static constexpr double kE7 = -1.0 / 40.0;

  System system_;
  State y_;
  double t_;
  ToleranceSpec tol_;
  double h_ = 0.0;
  IntegrationStats stats_;
  State k1_, k2_, k3_, k4_, k5_, k6_, k7_, ytmp_, ynew_, yerr_;
};

template <class System, class State>
IntegrationStats integrate_adaptive(System&& system, State& y, double t0,
                                    double t1, ToleranceSpec tol = {}) {
  AdaptiveIntegrator<std::decay_t<System>, State> stepper(
      std::forward<System>(system), y, t0, tol);
  stepper.advance_to(t1);
  y = stepper.state();
  return stepper.stats();
}

}  // namespace eomsim
