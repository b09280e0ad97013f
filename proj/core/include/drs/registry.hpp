#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "drs/clause.hpp"

namespace drs {

// Per-argument expectation, one letter each in the registry's argkinds
// column. See data/relations.tsv for the letter legend.
struct RelationSignature {
  std::size_t arity = 0;
  std::string argkinds;

  bool accepts(std::size_t position, const Term& term) const;
  bool introduces(std::size_t position) const;
};

// Data-driven relation -> signature table.
class RelationRegistry {
 public:
  RelationRegistry() = default;

  // Throws Error(parse_failure) on a malformed line.
  static RelationRegistry from_text(std::string_view text);
  static RelationRegistry from_file(const std::string& path);
  // The table compiled from data/relations.tsv.
  static const RelationRegistry& bundled();

  void add(std::string relation, RelationSignature signature);

  std::optional<RelationSignature> lookup(std::string_view relation) const;

  // Explicit entry, or the implicit `ce` signature for concept clauses.
  // nullopt means the relation is unknown to the registry.
  std::optional<RelationSignature> signature_for(std::string_view relation) const;

  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::string, RelationSignature, std::less<>> table_;
};

}  // namespace drs
