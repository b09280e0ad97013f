#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "drs/clause.hpp"
#include "drs/error.hpp"
#include "drs/registry.hpp"
#include "drs/sequential.hpp"

namespace drs {

// Strict parsing enforces the arity registry (gold data); lenient parsing
// only checks structure and leaves the rest to the validator (model output).
enum class ParseMode { strict, lenient };

struct ParseOptions {
  ParseMode mode = ParseMode::strict;
  const RelationRegistry* registry = nullptr;  // null means bundled()
  std::size_t line_offset = 0;                 // added to reported line numbers

  const RelationRegistry& relations() const {
    return registry != nullptr ? *registry : RelationRegistry::bundled();
  }
};

// Whitespace tokenizer shared by every grammar. Double-quoted strings are
// single tokens and may contain spaces; `%` outside quotes starts a comment.
// Throws Error(malformed_line) on an unterminated quote.
std::vector<std::string> split_fields(std::string_view line, std::size_t lineno = 0);

// ---- clause files: one clause per line, `%` comments, blank lines ignored

ClauseSet parse_clause_file(std::string_view text, const ParseOptions& options = {});
std::string serialize_clause_file(const ClauseSet& set);

// ---- SBN files: `head (role signed-offset)*` per line

// Throws Error(malformed_item).
SequentialGraph parse_sbn_file(std::string_view text, std::size_t line_offset = 0);
std::string serialize_sbn_file(const SequentialGraph& graph);
std::string render_offset(int offset);

// ---- symbol sequences

// What a model-output decoder could not turn into structure. `location` is
// the clause/item index at which decoding failed.
struct IllFormed {
  ErrorCode code = ErrorCode::illegal_clause_structure;
  std::size_t location = 0;
  std::string detail;
  std::size_t token_count = 0;
};

template <typename T>
using Decoded = std::variant<T, IllFormed>;

template <typename T>
bool is_ill_formed(const Decoded<T>& d) {
  return std::holds_alternative<IllFormed>(d);
}

// Throw Error(invalid_argument) when a payload token equals the separator.
SymbolSequence linearize_clauses(const ClauseSet& set,
                                 std::string_view separator = SymbolSequence::kDefaultSeparator);
SymbolSequence linearize_sbn(const SequentialGraph& graph,
                             std::string_view separator = SymbolSequence::kDefaultSeparator);

Decoded<ClauseSet> delinearize_clauses(
    const SymbolSequence& seq, const RelationRegistry& registry = RelationRegistry::bundled(),
    std::string_view separator = SymbolSequence::kDefaultSeparator);
Decoded<SequentialGraph> delinearize_sbn(
    const SymbolSequence& seq, std::string_view separator = SymbolSequence::kDefaultSeparator);

// Interchange text. Tokens are joined with `joiner` (space or newline);
// reading splits on any whitespace, honoring quotes.
std::string symbols_to_text(const SymbolSequence& seq, char joiner = ' ');
SymbolSequence symbols_from_text(std::string_view text);

// ---- documents and corpus files

enum class Representation { clause, sbn };

struct Provenance {
  std::string file;
  std::size_t first_line = 0;
  std::size_t last_line = 0;
};

// `%%%` comment lines carry the source sentence, as in PMB releases.
struct ParsedDocument {
  std::string source_text;
  std::variant<ClauseSet, SequentialGraph> representation;
  Provenance provenance;
};

struct DocumentChunk {
  std::string text;
  std::size_t first_line = 0;  // 1-based
  std::size_t last_line = 0;
};

// Corpus files hold several documents separated by blank lines.
std::vector<DocumentChunk> split_documents(std::string_view text);

std::string extract_source_text(std::string_view text);

ParsedDocument parse_document(const DocumentChunk& chunk, Representation representation,
                              const std::string& file, const ParseOptions& options = {});

}  // namespace drs
