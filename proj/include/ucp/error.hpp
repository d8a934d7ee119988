#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ucp {

enum class ErrorKind {
  DimensionMismatch,
  EmptyInput,
  InvalidValue,
  NotHermitian,
  NotProjection,
  AlgebraMismatch,
  NotOrthogonal,
  NotAtom,
  ZeroEvent,
  ZeroProbabilityCondition,
  ImpossibleSequence,
  NotPredictable,
  DegenerateDenominator,
  EmptyChain,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library surfaces as an Error carrying a kind, so the
/// CLI can map it onto an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for input problems (bad files, bad specs), false for failures of a
  /// well-formed computation.
  bool is_input_error() const noexcept {
    return kind_ == ErrorKind::ParseError || kind_ == ErrorKind::ValidationError;
  }

 private:
  ErrorKind kind_;
};

/// Raised by sequential conditioning; carries the zero-based position of the
/// event whose conditional probability vanished.
class SequenceError : public Error {
 public:
  SequenceError(ErrorKind kind, std::size_t index, const std::string& what)
      : Error(kind, what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace ucp
