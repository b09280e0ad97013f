#pragma once

#include <string>
#include <variant>
#include <vector>

#include "drs/synset.hpp"

namespace drs {

// (role, relative item distance). Offsets are nonzero in well-formed input;
// the type can hold any value so the validator has something to flag.
struct Satellite {
  std::string role;
  int offset = 0;
  auto operator<=>(const Satellite&) const = default;
};

// Items are headed by a synset (predicate) or a constant (entity, kept
// verbatim).
using ItemHead = std::variant<SynsetId, std::string>;

struct SbnItem {
  ItemHead head;
  std::vector<Satellite> satellites;

  std::string head_text() const;
  bool is_predicate() const { return std::holds_alternative<SynsetId>(head); }
  bool operator==(const SbnItem&) const = default;
};

// Items follow the surface order of the words they come from.
struct SequentialGraph {
  std::vector<SbnItem> items;

  std::size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }
  bool operator==(const SequentialGraph&) const = default;
};

// Flat model-side encoding. The separator token never occurs inside a
// clause or item payload.
struct SymbolSequence {
  static constexpr const char* kDefaultSeparator = "<sep>";

  std::vector<std::string> tokens;

  bool operator==(const SymbolSequence&) const = default;
};

}  // namespace drs
