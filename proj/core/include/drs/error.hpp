#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace drs {

enum class ErrorCode {
  malformed_synset,
  malformed_line,
  unknown_arity,
  bad_variable_name,
  malformed_item,
  illegal_clause_structure,
  not_well_formed,
  edge_target_absent,
  conversion_failure,
  gold_not_well_formed,
  mapping_mismatch,
  empty_input,
  alignment_mismatch,
  parse_failure,
  duplicate_id,
  empty_pool,
  unknown_language,
  unknown_regime,
  invalid_selector,
  dimension_mismatch,
  rank_too_large,
  invalid_argument,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the toolkit. `line()` is 1-based, 0 when the
// error is not tied to a source line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0);

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }
  // The message without the code/line decoration added to what().
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::size_t line_;
};

}  // namespace drs
