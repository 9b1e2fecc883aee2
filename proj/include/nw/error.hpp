#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nw {

enum class ErrorKind {
  DuplicateSymbol,
  EmptyAlphabet,
  UnknownSymbol,
  EmptyWord,
  PositionOutOfRange,
  AlphabetMismatch,
  MalformedAutomaton,
  CallingStatesPresent,
  InvalidState,
  InvalidSphere,
  InvalidFormula,
  UnboundVariable,
  Unsupported,
  InvalidArgument,
  ParseError,
  Io,
  LengthMismatch,
  RadiusMismatch,
  MixedRadius,
  WordTooLargeForSO,
  NotAnExpandedAlphabet,
  BoundsExceeded,
  BoundTooSmall,
};

std::string_view to_string(ErrorKind kind);

// Every library failure carries a kind so the CLI can map it to an exit code
// and tests can assert on the category without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace nw
