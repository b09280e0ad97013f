#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "drs/clause.hpp"
#include "drs/format_io.hpp"
#include "drs/registry.hpp"
#include "drs/sequential.hpp"

namespace drs {

enum class ErrorClass {
  illegal_clause_structure,
  free_variable,
  offset_out_of_range,
  duplicate_role,
  unknown_relation,
};

std::string_view to_string(ErrorClass cls);

struct ValidationError {
  ErrorClass cls = ErrorClass::illegal_clause_structure;
  std::size_t location = 0;  // clause or item index
  std::string detail;

  bool operator==(const ValidationError&) const = default;
};

// Validation never throws; findings are reported.
struct ValidationReport {
  std::vector<ValidationError> errors;

  bool well_formed() const { return errors.empty(); }
};

// Arity/signature mismatches, unknown relations and free variables. A
// variable is introduced by a binding argument position (REF, or an
// uppercase registry argkind) or by being the box field of any clause.
ValidationReport validate_clauses(const ClauseSet& set,
                                  const RelationRegistry& registry = RelationRegistry::bundled());

// Offsets that leave [0, items) and items repeating a role name.
ValidationReport validate_sbn(const SequentialGraph& graph);

// Report for output that failed to decode at all.
ValidationReport report_for(const IllFormed& failure);

// 100 * ill-formed / total. Throws Error(empty_input).
double if_rate(std::span<const ValidationReport> reports);

// Two-decimal rendering used by every report ("0.18", "100.00").
std::string format_percent(double value);

}  // namespace drs
