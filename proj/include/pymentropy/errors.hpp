// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <stdexcept>
#include <string>

namespace pymentropy {

/// An estimator was asked to run on an empty dataset.
class EmptyDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The stated alphabet size is smaller than the number of observed symbols.
class InconsistentAlphabetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fewer than two repeat observations: the Pitman-Yor mixture posterior mean
/// of entropy is not finite, so the estimator refuses to run.
class NoCoincidencesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative numerical routine (quadrature, optimizer, root finder)
/// failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stick-breaking would need more sticks than the hard cap to reach the
/// requested tail accuracy.
class TailTruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace pymentropy
