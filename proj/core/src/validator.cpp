#include "drs/validator.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "drs/error.hpp"

namespace drs {

std::string_view to_string(ErrorClass cls) {
  switch (cls) {
    case ErrorClass::illegal_clause_structure: return "illegal-clause-structure";
    case ErrorClass::free_variable: return "free-variable";
    case ErrorClass::offset_out_of_range: return "offset-out-of-range";
    case ErrorClass::duplicate_role: return "duplicate-role";
    case ErrorClass::unknown_relation: return "unknown-relation";
  }
  return "illegal-clause-structure";
}

ValidationReport validate_clauses(const ClauseSet& set, const RelationRegistry& registry) {
  ValidationReport report;
  const auto clauses = set.clauses();

  std::set<std::string> introduced;
  std::vector<std::optional<RelationSignature>> signatures(clauses.size());
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    const auto& c = clauses[i];
    introduced.insert(c.box().label);
    signatures[i] = registry.signature_for(c.relation());
    if (!signatures[i] || signatures[i]->arity != c.arity()) continue;
    for (std::size_t a = 0; a < c.arity(); ++a) {
      if (signatures[i]->introduces(a) && c.args()[a].is_variable()) {
        introduced.insert(c.args()[a].label);
      }
    }
  }

  for (std::size_t i = 0; i < clauses.size(); ++i) {
    const auto& c = clauses[i];
    const auto& sig = signatures[i];
    if (!sig) {
      report.errors.push_back({ErrorClass::unknown_relation, i,
                               "relation " + c.relation() + " is not in the registry"});
    } else if (sig->arity != c.arity()) {
      report.errors.push_back({ErrorClass::illegal_clause_structure, i,
                               c.relation() + " takes " + std::to_string(sig->arity) +
                                   " argument(s), got " + std::to_string(c.arity())});
    } else {
      for (std::size_t a = 0; a < c.arity(); ++a) {
        if (!sig->accepts(a, c.args()[a])) {
          report.errors.push_back({ErrorClass::illegal_clause_structure, i,
                                   "argument " + std::to_string(a + 1) + " of " +
                                       c.relation() + " has the wrong kind: " +
                                       c.args()[a].label});
          break;
        }
      }
      if (c.category() == RelationCategory::concept_ && !c.synset()) {
        report.errors.push_back({ErrorClass::illegal_clause_structure, i,
                                 "bad sense constant " + c.args()[0].label});
      }
    }
    std::set<std::string> reported;
    for (const auto& arg : c.args()) {
      if (arg.is_variable() && introduced.count(arg.label) == 0 &&
          reported.insert(arg.label).second) {
        report.errors.push_back({ErrorClass::free_variable, i,
                                 "variable " + arg.label + " is never introduced"});
      }
    }
  }
  return report;
}

ValidationReport validate_sbn(const SequentialGraph& graph) {
  ValidationReport report;
  const auto n = static_cast<long long>(graph.items.size());
  for (std::size_t i = 0; i < graph.items.size(); ++i) {
    std::map<std::string, int> role_counts;
    for (const auto& s : graph.items[i].satellites) {
      const long long target = static_cast<long long>(i) + s.offset;
      if (s.offset == 0 || target < 0 || target >= n) {
        report.errors.push_back({ErrorClass::offset_out_of_range, i,
                                 s.role + " " + render_offset(s.offset) + " points to item " +
                                     std::to_string(target) + " of " + std::to_string(n)});
      }
      if (++role_counts[s.role] == 2) {
        report.errors.push_back(
            {ErrorClass::duplicate_role, i, "role " + s.role + " appears more than once"});
      }
    }
  }
  return report;
}

ValidationReport report_for(const IllFormed& failure) {
  ValidationReport report;
  const auto cls = failure.code == ErrorCode::malformed_item
                       ? ErrorClass::offset_out_of_range
                       : ErrorClass::illegal_clause_structure;
  report.errors.push_back({cls, failure.location, failure.detail});
  return report;
}

double if_rate(std::span<const ValidationReport> reports) {
  if (reports.empty()) throw Error(ErrorCode::empty_input, "no reports");
  std::size_t bad = 0;
  for (const auto& r : reports) bad += r.well_formed() ? 0 : 1;
  return 100.0 * static_cast<double>(bad) / static_cast<double>(reports.size());
}

std::string format_percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

}  // namespace drs
