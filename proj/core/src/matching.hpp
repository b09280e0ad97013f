#pragma once

// Mapping search shared by clause and graph scoring. Both reduce to: two
// lists of facts (relation + slots), slots being namespaced variables or
// constants; find an injective, namespace-preserving partial map from
// prediction variables to gold variables maximizing the number of
// prediction facts whose image is a gold fact.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "drs/metrics.hpp"

namespace drs::detail {

inline constexpr std::size_t kMaxSlots = 4;

struct Fact {
  int relation = 0;
  std::size_t arity = 0;
  // >= 0: variable index; < 0: ~constant id
  std::array<int, kMaxSlots> slots{};
};

class Interner {
 public:
  int id(const std::string& text) {
    auto [it, fresh] = ids_.try_emplace(text, static_cast<int>(ids_.size()));
    return it->second;
  }

 private:
  std::unordered_map<std::string, int> ids_;
};

class FactTable {
 public:
  explicit FactTable(Interner& interner) : interner_(&interner) {}

  int variable(const std::string& name, int name_space);
  int constant(const std::string& text) { return ~interner_->id(text); }
  void add(const std::string& relation, std::initializer_list<int> slots);

  const std::vector<Fact>& facts() const { return facts_; }
  std::size_t variable_count() const { return names_.size(); }
  const std::string& name(std::size_t v) const { return names_[v]; }
  int name_space(std::size_t v) const { return spaces_[v]; }
  int find(const std::string& name) const;

 private:
  Interner* interner_;
  std::vector<Fact> facts_;
  std::vector<std::string> names_;
  std::vector<int> spaces_;
  std::unordered_map<std::string, int> index_;
};

struct MappingOutcome {
  std::size_t matched = 0;
  std::vector<int> mapping;  // per prediction variable: gold variable or -1
};

MappingOutcome best_mapping(const FactTable& pred, const FactTable& gold,
                            const SearchConfig& search);

}  // namespace drs::detail
