#include "drs/synset.hpp"

#include <cctype>

#include "drs/error.hpp"

namespace drs {

std::optional<PartOfSpeech> pos_from_char(char c) {
  switch (c) {
    case 'n': return PartOfSpeech::noun;
    case 'v': return PartOfSpeech::verb;
    case 'a': return PartOfSpeech::adjective;
    case 'r': return PartOfSpeech::adverb;
    default: return std::nullopt;
  }
}

namespace {

// Parses the `pos.NN` tail shared by synsets and sense constants.
std::optional<std::pair<PartOfSpeech, int>> parse_pos_sense(
    std::string_view tail) {
  if (tail.size() != 4 || tail[1] != '.') return std::nullopt;
  auto pos = pos_from_char(tail[0]);
  if (!pos) return std::nullopt;
  const char hi = tail[2];
  const char lo = tail[3];
  if (!std::isdigit(static_cast<unsigned char>(hi)) ||
      !std::isdigit(static_cast<unsigned char>(lo))) {
    return std::nullopt;
  }
  return std::pair{*pos, (hi - '0') * 10 + (lo - '0')};
}

std::string two_digits(int sense) {
  std::string out(2, '0');
  out[0] = static_cast<char>('0' + (sense / 10) % 10);
  out[1] = static_cast<char>('0' + sense % 10);
  return out;
}

}  // namespace

std::optional<SynsetId> try_synset_parse(std::string_view text) {
  // lemma may itself contain dots; pos and sense are the last two fields.
  if (text.size() < 6) return std::nullopt;
  const auto tail = text.substr(text.size() - 4);
  if (text[text.size() - 5] != '.') return std::nullopt;
  auto ps = parse_pos_sense(tail);
  if (!ps) return std::nullopt;
  auto lemma = text.substr(0, text.size() - 5);
  if (lemma.empty()) return std::nullopt;
  for (char c : lemma) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '"') return std::nullopt;
  }
  return SynsetId{std::string(lemma), ps->first, ps->second};
}

SynsetId synset_parse(std::string_view text) {
  auto id = try_synset_parse(text);
  if (!id) {
    throw Error(ErrorCode::malformed_synset,
                "expected lemma.pos.NN, got '" + std::string(text) + "'");
  }
  return *id;
}

std::string synset_render(const SynsetId& id) {
  std::string out = id.lemma;
  out += '.';
  out += static_cast<char>(id.pos);
  out += '.';
  out += two_digits(id.sense);
  return out;
}

std::optional<SynsetId> synset_from_concept(std::string_view lemma,
                                            std::string_view sense_constant) {
  if (sense_constant.size() != 6 || sense_constant.front() != '"' ||
      sense_constant.back() != '"') {
    return std::nullopt;
  }
  auto ps = parse_pos_sense(sense_constant.substr(1, 4));
  if (!ps || lemma.empty()) return std::nullopt;
  return SynsetId{std::string(lemma), ps->first, ps->second};
}

std::string sense_constant(const SynsetId& id) {
  std::string out = "\"";
  out += static_cast<char>(id.pos);
  out += '.';
  out += two_digits(id.sense);
  out += '"';
  return out;
}

}  // namespace drs
