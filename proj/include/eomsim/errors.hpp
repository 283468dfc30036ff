#pragma once

#include <stdexcept>
#include <string>

namespace eomsim {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter is outside its documented range (kappa <= 0, k outside [0,1), ...).
class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

// The mechanical mode was used where a field channel is required.
class InvalidChannelError : public Error {
 public:
  using Error::Error;
};

// G_o >= G_w: the hyperbolic branch of the dynamics, which this library
// does not model.
class UnsupportedRegimeError : public Error {
 public:
  using Error::Error;
};

// The entangled-coherent-state normalization N^-2 is not positive.
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

// The entanglement-affecting factor is requested at k = 0, where both
// rates entering the ratio degenerate.
class DegenerateRatioError : public Error {
 public:
  using Error::Error;
};

// A conversion rate was requested with a vanishing input-channel mean.
class UndefinedRateError : public Error {
 public:
  using Error::Error;
};

// A state overlap with magnitude above one was supplied.
class InvalidOverlapError : public Error {
 public:
  using Error::Error;
};

// An operation's stated precondition does not hold (for example,
// conversion coefficients that are not dynamically dark).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A requested computation exceeds a configured resource bound.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// Adaptive integration could not continue; carries the last time that was
// reached successfully.
class IntegrationFailureError : public Error {
 public:
  IntegrationFailureError(const std::string& what, double last_good_time)
      : Error(what), last_good_time_(last_good_time) {}

  double last_good_time() const { return last_good_time_; }

 private:
  double last_good_time_;
};

// A state does not fit in the truncated basis; carries the probability
// weight lost beyond the cutoff.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double leakage)
      : Error(what), leakage_(leakage) {}

  double leakage() const { return leakage_; }

 private:
  double leakage_;
};

}  // namespace eomsim
