#include "prefgraph/error.hpp"

namespace prefgraph {

ErrorCategory category_of(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kMalformedDocument:
    case ErrorKind::kDuplicateVertex:
    case ErrorKind::kEmptyVertexSet:
    case ErrorKind::kUnknownVertex:
    case ErrorKind::kSelfPreference:
    case ErrorKind::kNonpositiveWeight:
    case ErrorKind::kInvalidArgument:
      return ErrorCategory::kParse;
    case ErrorKind::kVertexSetMismatch:
    case ErrorKind::kWeightCountMismatch:
    case ErrorKind::kIdentifierSetMismatch:
    case ErrorKind::kCyclicInput:
    case ErrorKind::kTiedRanking:
      return ErrorCategory::kCompatibility;
    case ErrorKind::kOverThreshold:
    case ErrorKind::kEvaluator:
      return ErrorCategory::kCapability;
    case ErrorKind::kNumeric:
      return ErrorCategory::kNumeric;
    case ErrorKind::kIo:
      return ErrorCategory::kIo;
  }
  return ErrorCategory::kParse;
}

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kMalformedDocument: return "MalformedDocument";
    case ErrorKind::kDuplicateVertex: return "DuplicateVertex";
    case ErrorKind::kEmptyVertexSet: return "EmptyVertexSet";
    case ErrorKind::kUnknownVertex: return "UnknownVertex";
    case ErrorKind::kSelfPreference: return "SelfPreference";
    case ErrorKind::kNonpositiveWeight: return "NonpositiveWeight";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kVertexSetMismatch: return "VertexSetMismatch";
    case ErrorKind::kWeightCountMismatch: return "WeightCountMismatch";
    case ErrorKind::kIdentifierSetMismatch: return "IdentifierSetMismatch";
    case ErrorKind::kCyclicInput: return "CyclicInput";
    case ErrorKind::kTiedRanking: return "TiedRanking";
    case ErrorKind::kOverThreshold: return "OverThreshold";
    case ErrorKind::kNumeric: return "Numeric";
    case ErrorKind::kIo: return "Io";
    case ErrorKind::kEvaluator: return "Evaluator";
  }
  return "Unknown";
}

}  // namespace prefgraph
