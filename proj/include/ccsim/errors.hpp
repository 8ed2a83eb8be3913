#pragma once

#include <stdexcept>
#include <string>

namespace ccsim {

// Base for all library errors so callers can catch one type.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A random code draw was unlucky; callers retry with a fresh seed.
struct RankDeficientError : Error {
  using Error::Error;
};

struct InvalidRegimeError : Error {
  using Error::Error;
};

struct MemoryOutOfRangeError : Error {
  using Error::Error;
};

// Centralized simulation requested but F is not divisible by C(K,t).
struct GranularityMismatchError : Error {
  using Error::Error;
};

struct EmptyInputError : Error {
  using Error::Error;
};

struct NegativeDiscriminantError : Error {
  using Error::Error;
};

struct CertificationFailedError : Error {
  using Error::Error;
};

struct InfeasibleError : Error {
  using Error::Error;
};

}  // namespace ccsim
