#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace prefgraph {

/// Failure categories raised by the library. Each kind belongs to one
/// ErrorCategory, which the command-line tool maps onto its exit code.
enum class ErrorKind {
  // malformed or out-of-domain input
  kMalformedDocument,
  kDuplicateVertex,
  kEmptyVertexSet,
  kUnknownVertex,
  kSelfPreference,
  kNonpositiveWeight,
  kInvalidArgument,
  // inputs that are individually valid but do not fit together
  kVertexSetMismatch,
  kWeightCountMismatch,
  kIdentifierSetMismatch,
  kCyclicInput,
  kTiedRanking,
  // requests beyond what an algorithm supports
  kOverThreshold,
  // numeric trouble
  kNumeric,
  // filesystem
  kIo,
  // an evaluator adapter failed
  kEvaluator,
};

enum class ErrorCategory { kParse, kCompatibility, kCapability, kNumeric, kIo };

ErrorCategory category_of(ErrorKind kind) noexcept;
std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_of(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace prefgraph
