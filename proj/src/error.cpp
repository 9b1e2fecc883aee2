#include "nw/error.hpp"

namespace nw {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateSymbol: return "DuplicateSymbol";
    case ErrorKind::EmptyAlphabet: return "EmptyAlphabet";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::EmptyWord: return "EmptyWord";
    case ErrorKind::PositionOutOfRange: return "PositionOutOfRange";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::MalformedAutomaton: return "MalformedAutomaton";
    case ErrorKind::CallingStatesPresent: return "CallingStatesPresent";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::InvalidSphere: return "InvalidSphere";
    case ErrorKind::InvalidFormula: return "InvalidFormula";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Io: return "Io";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::RadiusMismatch: return "RadiusMismatch";
    case ErrorKind::MixedRadius: return "MixedRadius";
    case ErrorKind::WordTooLargeForSO: return "WordTooLargeForSO";
    case ErrorKind::NotAnExpandedAlphabet: return "NotAnExpandedAlphabet";
    case ErrorKind::BoundsExceeded: return "BoundsExceeded";
    case ErrorKind::BoundTooSmall: return "BoundTooSmall";
  }
  return "Unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace nw
