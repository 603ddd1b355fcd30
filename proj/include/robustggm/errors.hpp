#pragma once

#include <stdexcept>
#include <string>

namespace robustggm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Cholesky pivot fell below the scale-relative tolerance.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An iterative solver exhausted its iteration budget.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// The Gamma proposal of the Metropolis-within-Gibbs sampler is undefined
/// because a diagonal precision entry is not positive.
class DegenerateProposal : public Error {
 public:
  using Error::Error;
};

class InvalidScenario : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// No penalty in the searched range produces the requested edge count.
class Infeasible : public Error {
 public:
  using Error::Error;
};

}  // namespace robustggm
