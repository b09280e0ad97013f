#include "drs/clause.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "drs/error.hpp"

namespace drs {

bool Term::looks_like_variable(std::string_view text) {
  if (text.size() < 2) return false;
  if (!std::islower(static_cast<unsigned char>(text[0]))) return false;
  return std::all_of(text.begin() + 1, text.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

Term Term::from_text(std::string_view text) {
  if (text.empty()) {
    throw Error(ErrorCode::bad_variable_name, "empty term");
  }
  if (looks_like_variable(text)) {
    return Term{text[0] == 'b' ? TermKind::box_variable : TermKind::entity_variable,
                std::string(text)};
  }
  return Term{TermKind::constant, std::string(text)};
}

std::string_view to_string(RelationCategory category) {
  switch (category) {
    case RelationCategory::drs_operator: return "drs-operator";
    case RelationCategory::semantic_role: return "semantic-role";
    case RelationCategory::concept_: return "concept";
  }
  return "concept";
}

RelationCategory relation_category(std::string_view relation) {
  bool has_letter = false;
  bool all_upper = true;
  for (char c : relation) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalpha(u)) {
      has_letter = true;
      if (std::islower(u)) all_upper = false;
    }
  }
  if (has_letter && all_upper) return RelationCategory::drs_operator;
  if (!relation.empty() && std::isupper(static_cast<unsigned char>(relation[0]))) {
    return RelationCategory::semantic_role;
  }
  return RelationCategory::concept_;
}

Clause::Clause(Term box, std::string relation, std::vector<Term> args)
    : box_(std::move(box)), relation_(std::move(relation)), args_(std::move(args)) {
  if (box_.kind != TermKind::box_variable) {
    throw Error(ErrorCode::bad_variable_name,
                "clause must start with a box variable, got '" + box_.label + "'");
  }
  if (relation_.empty()) {
    throw Error(ErrorCode::malformed_line, "empty relation");
  }
  if (args_.empty() || args_.size() > kMaxArgs) {
    throw Error(ErrorCode::malformed_line,
                "clause needs 1-3 arguments, got " + std::to_string(args_.size()));
  }
  for (const auto& a : args_) {
    if (a.label.empty()) throw Error(ErrorCode::malformed_line, "empty argument");
  }
}

Clause Clause::from_fields(std::span<const std::string> fields) {
  if (fields.size() < 3 || fields.size() > 2 + kMaxArgs) {
    throw Error(ErrorCode::malformed_line,
                "expected 3-5 fields, got " + std::to_string(fields.size()));
  }
  std::vector<Term> args;
  args.reserve(fields.size() - 2);
  for (std::size_t i = 2; i < fields.size(); ++i) {
    args.push_back(Term::from_text(fields[i]));
  }
  return Clause(Term::from_text(fields[0]), fields[1], std::move(args));
}

std::optional<SynsetId> Clause::synset() const {
  if (category() != RelationCategory::concept_ || args_.empty()) return std::nullopt;
  if (args_[0].kind != TermKind::constant) return std::nullopt;
  return synset_from_concept(relation_, args_[0].label);
}

std::vector<std::string> Clause::fields() const {
  std::vector<std::string> out;
  out.reserve(2 + args_.size());
  out.push_back(box_.label);
  out.push_back(relation_);
  for (const auto& a : args_) out.push_back(a.label);
  return out;
}

ClauseSet::ClauseSet(std::vector<Clause> clauses) {
  std::set<Clause> seen;
  clauses_.reserve(clauses.size());
  for (auto& c : clauses) {
    if (!seen.insert(c).second) {
      ++duplicates_dropped_;
      continue;
    }
    clauses_.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    const auto& c = clauses_[i];
    auto note = [&](const Term& t, std::size_t pos) {
      if (!t.is_variable()) return;
      auto& info = variables_[t.label];
      info.kind = t.kind;
      info.occurrences.push_back({i, pos});
    };
    note(c.box(), 0);
    for (std::size_t a = 0; a < c.arity(); ++a) note(c.args()[a], a + 1);
  }
}

bool ClauseSet::same_set(const ClauseSet& other) const {
  if (clauses_.size() != other.clauses_.size()) return false;
  std::set<Clause> mine(clauses_.begin(), clauses_.end());
  return std::all_of(other.clauses_.begin(), other.clauses_.end(),
                     [&](const Clause& c) { return mine.count(c) != 0; });
}

}  // namespace drs
