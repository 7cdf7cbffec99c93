#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace geninv {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operand shapes are not conformable for the requested operation.
struct ShapeError : Error {
  using Error::Error;
};

/// A matrix required to be invertible is numerically rank deficient.
struct SingularError : Error {
  using Error::Error;
};

/// The corner element p*m*p is not invertible inside the corner algebra pAp.
struct CornerSingularError : Error {
  using Error::Error;
};

/// A documented operation precondition does not hold for the inputs.
/// `condition` names the violated requirement, `residual` its measured size.
struct PreconditionError : Error {
  PreconditionError(const std::string& what, std::string cond, double res)
      : Error(what), condition(std::move(cond)), residual(res) {}
  std::string condition;
  double residual = 0.0;
};

/// Requested a group inverse of a matrix whose Drazin index is >= 2.
struct NotGroupInvertibleError : Error {
  NotGroupInvertibleError(const std::string& what, std::size_t idx)
      : Error(what), index(idx) {}
  std::size_t index = 0;
};

/// A computed quantity failed its internal consistency verification.
struct NumericError : Error {
  using Error::Error;
};

/// The hypotheses of the selected condition set do not hold for the pair.
struct HypothesisError : Error {
  using Error::Error;
};

/// A scalar contraction (norm < 1) required for a finite bound failed.
struct NotContractiveError : Error {
  using Error::Error;
};

/// Random instance generation exhausted its retry budget.
struct GenerationError : Error {
  using Error::Error;
};

/// A matrix file or complex literal could not be parsed.
struct ParseError : Error {
  using Error::Error;
};

/// A bundled worked-example assertion failed to reproduce.
struct MismatchError : Error {
  using Error::Error;
};

}  // namespace geninv
