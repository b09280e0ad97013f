#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "drs/synset.hpp"

namespace drs {

enum class TermKind { box_variable, entity_variable, constant };

// Variables are a lowercase letter followed by digits; `b` prefixes box
// variables, every other letter is an entity/event/time variable. Anything
// else is a constant (quoted in PMB clause files: "tom", "n.02").
struct Term {
  TermKind kind = TermKind::constant;
  std::string label;

  static Term from_text(std::string_view text);
  static bool looks_like_variable(std::string_view text);

  bool is_variable() const { return kind != TermKind::constant; }

  auto operator<=>(const Term&) const = default;
};

enum class RelationCategory { drs_operator, semantic_role, concept_ };

std::string_view to_string(RelationCategory category);

// All-uppercase -> operator (REF, NOT, SY1); uppercase initial -> role
// (Agent, Co-Theme); everything else -> concept lemma.
RelationCategory relation_category(std::string_view relation);

// One DRS condition: a box label, a relation and 1-3 arguments.
class Clause {
 public:
  static constexpr std::size_t kMaxArgs = 3;

  // Throws Error(bad_variable_name) when `box` is not a box variable and
  // Error(malformed_line) for an empty relation or 0 / >3 arguments.
  Clause(Term box, std::string relation, std::vector<Term> args);

  // `fields` is [box, relation, arg...].
  static Clause from_fields(std::span<const std::string> fields);

  const Term& box() const { return box_; }
  const std::string& relation() const { return relation_; }
  std::span<const Term> args() const { return args_; }
  std::size_t arity() const { return args_.size(); }

  RelationCategory category() const { return relation_category(relation_); }
  // Concept clauses whose first argument is a well-formed sense constant.
  std::optional<SynsetId> synset() const;

  std::vector<std::string> fields() const;

  auto operator<=>(const Clause&) const = default;

 private:
  Term box_;
  std::string relation_;
  std::vector<Term> args_;
};

struct VariableOccurrence {
  std::size_t clause = 0;
  std::size_t position = 0;  // 0 is the box field, 1..3 the arguments

  auto operator<=>(const VariableOccurrence&) const = default;
};

struct VariableInfo {
  TermKind kind = TermKind::entity_variable;
  std::vector<VariableOccurrence> occurrences;
};

// Set of clauses constituting one DRS. Document order is kept for
// serialization; duplicates are dropped on construction.
class ClauseSet {
 public:
  ClauseSet() = default;
  explicit ClauseSet(std::vector<Clause> clauses);

  std::span<const Clause> clauses() const { return clauses_; }
  const Clause& operator[](std::size_t i) const { return clauses_[i]; }
  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  std::size_t duplicates_dropped() const { return duplicates_dropped_; }

  const std::map<std::string, VariableInfo>& variables() const {
    return variables_;
  }

  // Ordered equality; use same_set() for set semantics.
  bool operator==(const ClauseSet& other) const {
    return clauses_ == other.clauses_;
  }
  bool same_set(const ClauseSet& other) const;

 private:
  std::vector<Clause> clauses_;
  std::map<std::string, VariableInfo> variables_;
  std::size_t duplicates_dropped_ = 0;
};

}  // namespace drs
