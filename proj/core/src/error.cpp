#include "drs/error.hpp"

namespace drs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::malformed_synset: return "malformed-synset";
    case ErrorCode::malformed_line: return "malformed-line";
    case ErrorCode::unknown_arity: return "unknown-arity";
    case ErrorCode::bad_variable_name: return "bad-variable-name";
    case ErrorCode::malformed_item: return "malformed-item";
    case ErrorCode::illegal_clause_structure: return "illegal-clause-structure";
    case ErrorCode::not_well_formed: return "not-well-formed";
    case ErrorCode::edge_target_absent: return "edge-target-absent";
    case ErrorCode::conversion_failure: return "conversion-failure";
    case ErrorCode::gold_not_well_formed: return "gold-not-well-formed";
    case ErrorCode::mapping_mismatch: return "mapping-mismatch";
    case ErrorCode::empty_input: return "empty-input";
    case ErrorCode::alignment_mismatch: return "alignment-mismatch";
    case ErrorCode::parse_failure: return "parse-failure";
    case ErrorCode::duplicate_id: return "duplicate-id";
    case ErrorCode::empty_pool: return "empty-pool";
    case ErrorCode::unknown_language: return "unknown-language";
    case ErrorCode::unknown_regime: return "unknown-regime";
    case ErrorCode::invalid_selector: return "invalid-selector";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::rank_too_large: return "rank-too-large";
    case ErrorCode::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message,
                     std::size_t line) {
  std::string out(to_string(code));
  if (line != 0) out += " (line " + std::to_string(line) + ")";
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(decorate(code, message, line)),
      code_(code),
      message_(message),
      line_(line) {}

}  // namespace drs
