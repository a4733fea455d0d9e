#pragma once

#include <stdexcept>
#include <string>

namespace pcext {

// Base class for every error this library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad vertex ids, edges missing from a graph, invalid colorings.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// The instance does not satisfy the hypotheses of the algorithm that was asked to run.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// An internal invariant broke. These signal bugs, never bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace pcext
