#include "nerode/errors.hpp"

namespace nerode {

const char* to_string(Violation::Kind kind) noexcept {
  switch (kind) {
    case Violation::Kind::kEmptyAlphabet: return "empty-alphabet";
    case Violation::Kind::kDuplicateSymbol: return "duplicate-symbol";
    case Violation::Kind::kDuplicateState: return "duplicate-state";
    case Violation::Kind::kNoStates: return "no-states";
    case Violation::Kind::kRestStateMissing: return "rest-state-missing";
    case Violation::Kind::kRestNotFixed: return "rest-fixed-point";
    case Violation::Kind::kMissingTransition: return "totality-transition";
    case Violation::Kind::kMissingEmission: return "totality-emission";
    case Violation::Kind::kBadTarget: return "bad-target";
    case Violation::Kind::kBadOutput: return "bad-output";
    case Violation::Kind::kMissingTableEntry: return "totality-table";
    case Violation::Kind::kBadWindow: return "bad-window";
    case Violation::Kind::kBadModulus: return "bad-modulus";
    case Violation::Kind::kBadDimension: return "bad-dimension";
  }
  return "unknown";
}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::string what = "validation failed";
  for (const auto& v : violations) {
    what += "\n  ";
    what += to_string(v.kind);
    what += ": ";
    what += v.message;
  }
  return what;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(summarize(violations)), violations_(std::move(violations)) {}

}  // namespace nerode
