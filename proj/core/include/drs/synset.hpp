#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace drs {

enum class PartOfSpeech : char { noun = 'n', verb = 'v', adjective = 'a', adverb = 'r' };

// A sense-disambiguated concept, rendered `lemma.pos.sense` (climb_up.v.01).
struct SynsetId {
  std::string lemma;
  PartOfSpeech pos = PartOfSpeech::noun;
  int sense = 0;  // 0..99, always rendered with two digits

  auto operator<=>(const SynsetId&) const = default;
};

// Throws Error(malformed_synset).
SynsetId synset_parse(std::string_view text);
std::optional<SynsetId> try_synset_parse(std::string_view text);
std::string synset_render(const SynsetId& id);

std::optional<PartOfSpeech> pos_from_char(char c);

// Builds the synset of a concept clause: relation `male` plus sense constant
// `"n.02"` (quotes included) gives male.n.02.
std::optional<SynsetId> synset_from_concept(std::string_view lemma,
                                            std::string_view sense_constant);
// Inverse of the above: the quoted sense constant `"n.02"`.
std::string sense_constant(const SynsetId& id);

}  // namespace drs
