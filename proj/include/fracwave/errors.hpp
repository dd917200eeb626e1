#pragma once

#include <stdexcept>
#include <string>

namespace fracwave {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NonFiniteField : public Error {
  public:
    using Error::Error;
};

class GridMismatch : public Error {
  public:
    using Error::Error;
};

class TailBoundExceeded : public Error {
  public:
    using Error::Error;
};

class NonSmoothInput : public Error {
  public:
    using Error::Error;
};

class DerivativeMismatch : public Error {
  public:
    using Error::Error;
};

class DegenerateFit : public Error {
  public:
    using Error::Error;
};

class HypothesisViolated : public Error {
  public:
    using Error::Error;
};

class CoverageError : public Error {
  public:
    using Error::Error;
};

class NoBlowupObserved : public Error {
  public:
    using Error::Error;
};

class SupportTooLarge : public Error {
  public:
    using Error::Error;
};

class TruncationContaminated : public Error {
  public:
    using Error::Error;
};

class WindowTooShort : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Raised by the time stepper when the sup norm crosses the blow-up
/// threshold or a non-finite value appears. Carries the time of detection.
class BlowupDetected : public Error {
  public:
    BlowupDetected(double t, double sup)
        : Error("blow-up detected at t=" + std::to_string(t)), time(t), sup_norm(sup) {}
    double time;
    double sup_norm;
};

} // namespace fracwave
