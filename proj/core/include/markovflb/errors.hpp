#pragma once

#include <stdexcept>
#include <string>

namespace markovflb {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Support graph of the matrix is not strongly connected.
struct NotIrreducible : Error {
  using Error::Error;
};

// Power iteration exhausted its budget; signals a pathological input.
struct NoConvergence : Error {
  using Error::Error;
};

// Adaptive finite-difference step shrank below its floor without stabilizing.
struct StepUnderflow : Error {
  using Error::Error;
};

// A conditioner omits part of the support it must cover.
struct SupportViolation : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

// Operation requires a stronger structural assumption than the source satisfies.
struct AssumptionViolated : Error {
  using Error::Error;
};

struct OutOfRange : Error {
  using Error::Error;
};

// Measure family has zero varentropy; inverse functions are undefined.
struct Degenerate : Error {
  using Error::Error;
};

struct EnumerationTooLarge : Error {
  using Error::Error;
};

// Permutation family is not a group homomorphism or not bijective.
struct NotRegular : Error {
  using Error::Error;
};

struct UnknownPreset : Error {
  using Error::Error;
};

struct InvalidPrime : Error {
  using Error::Error;
};

}  // namespace markovflb
