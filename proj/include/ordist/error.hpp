#ifndef ORDIST_ERROR_HPP
#define ORDIST_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace ordist {

enum class ErrorCode {
  // order model
  DuplicatePair,
  MissingPair,
  EmptyClass,
  IndexOutOfRange,
  UnknownPair,
  NotLinear,
  NotComplete,
  // schoenberg
  BadIndex,
  InvalidDistances,
  NonFiniteEntry,
  NotPSD,
  DimTooSmall,
  // constructions
  EpsilonExhausted,
  DegenerateHyperplane,
  DistanceMismatch,
  // verifier
  ShapeMismatch,
  // counterexamples
  UnknownName,
  BadSize,
  BadConfig,
  // io
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ordist

#endif  // ORDIST_ERROR_HPP
