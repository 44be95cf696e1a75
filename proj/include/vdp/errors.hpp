#pragma once

#include <stdexcept>
#include <string>

namespace vdp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised whenever a result cannot be certified at the working precision.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

class DifferentOrigin : public Error {
 public:
  using Error::Error;
};

class EqualHyperplanes : public Error {
 public:
  using Error::Error;
};

class NotSpecialArrow : public Error {
 public:
  using Error::Error;
};

class NonzeroSum : public Error {
 public:
  using Error::Error;
};

class FlowViolation : public Error {
 public:
  using Error::Error;
};

class NotHarmonic : public Error {
 public:
  using Error::Error;
};

class DepthExceeded : public Error {
 public:
  using Error::Error;
};

class WorkLimitExceeded : public Error {
 public:
  using Error::Error;
};

class UnresolvableAction : public Error {
 public:
  using Error::Error;
};

}  // namespace vdp
