#include "drs/format_io.hpp"

#include <cctype>
#include <charconv>
#include <limits>

namespace drs {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Calls `fn(line, lineno)` for every line of `text`, without the newline.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    auto end = nl == std::string_view::npos ? text.size() : nl;
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++lineno;
    if (nl == std::string_view::npos) {
      if (!line.empty()) fn(line, lineno);
      break;
    }
    fn(line, lineno);
    start = nl + 1;
  }
}

std::optional<int> parse_offset(std::string_view token) {
  if (token.size() < 2 || (token[0] != '+' && token[0] != '-')) return std::nullopt;
  long long magnitude = 0;
  auto digits = token.substr(1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), magnitude);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
  if (magnitude > std::numeric_limits<int>::max()) return std::nullopt;
  return token[0] == '-' ? -static_cast<int>(magnitude) : static_cast<int>(magnitude);
}

void check_against_registry(const Clause& clause, const RelationRegistry& registry,
                            std::size_t lineno) {
  auto sig = registry.signature_for(clause.relation());
  if (!sig) {
    throw Error(ErrorCode::unknown_arity, "relation " + clause.relation() +
                                              " is not in the arity registry",
                lineno);
  }
  if (sig->arity != clause.arity()) {
    throw Error(ErrorCode::malformed_line,
                clause.relation() + " takes " + std::to_string(sig->arity) +
                    " argument(s), got " + std::to_string(clause.arity()),
                lineno);
  }
  for (std::size_t i = 0; i < clause.arity(); ++i) {
    if (!sig->accepts(i, clause.args()[i])) {
      throw Error(ErrorCode::bad_variable_name,
                  "argument " + std::to_string(i + 1) + " of " + clause.relation() +
                      " has the wrong kind: '" + clause.args()[i].label + "'",
                  lineno);
    }
  }
  if (clause.category() == RelationCategory::concept_ && !clause.synset()) {
    throw Error(ErrorCode::malformed_line,
                "bad sense constant " + clause.args()[0].label, lineno);
  }
}

void check_payload(std::string_view token, std::string_view separator) {
  if (token == separator) {
    throw Error(ErrorCode::invalid_argument,
                "payload token collides with separator " + std::string(separator));
  }
}

// Splits tokens at separators; empty groups are skipped.
std::vector<std::vector<std::string>> group_tokens(const SymbolSequence& seq,
                                                   std::string_view separator) {
  std::vector<std::vector<std::string>> groups;
  std::vector<std::string> current;
  for (const auto& t : seq.tokens) {
    if (t == separator) {
      if (!current.empty()) groups.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(t);
    }
  }
  if (!current.empty()) groups.push_back(std::move(current));
  return groups;
}

// Parses one SBN item from `fields`; throws Error(malformed_item).
SbnItem parse_item(const std::vector<std::string>& fields, std::size_t lineno) {
  if (parse_offset(fields[0])) {
    throw Error(ErrorCode::malformed_item, "item starts with offset " + fields[0], lineno);
  }
  if ((fields.size() - 1) % 2 != 0) {
    throw Error(ErrorCode::malformed_item,
                "dangling role " + fields.back() + " without an offset", lineno);
  }
  SbnItem item;
  if (auto synset = try_synset_parse(fields[0])) {
    item.head = std::move(*synset);
  } else {
    item.head = fields[0];
  }
  for (std::size_t i = 1; i < fields.size(); i += 2) {
    auto offset = parse_offset(fields[i + 1]);
    if (!offset) {
      throw Error(ErrorCode::malformed_item,
                  "unparsable offset '" + fields[i + 1] + "' for role " + fields[i], lineno);
    }
    if (*offset == 0) {
      throw Error(ErrorCode::malformed_item, "zero offset for role " + fields[i], lineno);
    }
    if (parse_offset(fields[i])) {
      throw Error(ErrorCode::malformed_item, "offset " + fields[i] + " where a role belongs",
                  lineno);
    }
    item.satellites.push_back({fields[i], *offset});
  }
  return item;
}

}  // namespace

std::string SbnItem::head_text() const {
  if (const auto* s = std::get_if<SynsetId>(&head)) return synset_render(*s);
  return std::get<std::string>(head);
}

std::vector<std::string> split_fields(std::string_view line, std::size_t lineno) {
  std::vector<std::string> out;
  std::string current;
  bool in_token = false;
  bool in_quote = false;
  for (char c : line) {
    if (in_quote) {
      current += c;
      if (c == '"') in_quote = false;
      continue;
    }
    if (c == '%') break;
    if (is_space(c)) {
      if (in_token) out.push_back(std::move(current));
      current.clear();
      in_token = false;
      continue;
    }
    in_token = true;
    current += c;
    if (c == '"') in_quote = true;
  }
  if (in_quote) throw Error(ErrorCode::malformed_line, "unterminated quote", lineno);
  if (in_token) out.push_back(std::move(current));
  return out;
}

ClauseSet parse_clause_file(std::string_view text, const ParseOptions& options) {
  std::vector<Clause> clauses;
  for_each_line(text, [&](std::string_view line, std::size_t lineno) {
    const auto where = lineno + options.line_offset;
    auto fields = split_fields(line, where);
    if (fields.empty()) return;
    try {
      clauses.push_back(Clause::from_fields(fields));
    } catch (const Error& e) {
      throw Error(e.code(), std::string(line) + ": " + e.message(), where);
    }
    if (options.mode == ParseMode::strict) {
      check_against_registry(clauses.back(), options.relations(), where);
    }
  });
  return ClauseSet(std::move(clauses));
}

std::string serialize_clause_file(const ClauseSet& set) {
  std::string out;
  for (const auto& c : set.clauses()) {
    auto fields = c.fields();
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i != 0) out += ' ';
      out += fields[i];
    }
    out += '\n';
  }
  return out;
}

std::string render_offset(int offset) {
  return (offset < 0 ? "-" : "+") + std::to_string(offset < 0 ? -static_cast<long long>(offset)
                                                               : static_cast<long long>(offset));
}

SequentialGraph parse_sbn_file(std::string_view text, std::size_t line_offset) {
  SequentialGraph graph;
  for_each_line(text, [&](std::string_view line, std::size_t lineno) {
    const auto where = lineno + line_offset;
    std::vector<std::string> fields;
    try {
      fields = split_fields(line, where);
    } catch (const Error&) {
      throw Error(ErrorCode::malformed_item, "unterminated quote", where);
    }
    if (fields.empty()) return;
    graph.items.push_back(parse_item(fields, where));
  });
  return graph;
}

std::string serialize_sbn_file(const SequentialGraph& graph) {
  std::string out;
  for (const auto& item : graph.items) {
    out += item.head_text();
    for (const auto& s : item.satellites) {
      out += ' ';
      out += s.role;
      out += ' ';
      out += render_offset(s.offset);
    }
    out += '\n';
  }
  return out;
}

SymbolSequence linearize_clauses(const ClauseSet& set, std::string_view separator) {
  SymbolSequence seq;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i != 0) seq.tokens.emplace_back(separator);
    for (auto& f : set[i].fields()) {
      check_payload(f, separator);
      seq.tokens.push_back(std::move(f));
    }
  }
  return seq;
}

SymbolSequence linearize_sbn(const SequentialGraph& graph, std::string_view separator) {
  SymbolSequence seq;
  for (std::size_t i = 0; i < graph.items.size(); ++i) {
    if (i != 0) seq.tokens.emplace_back(separator);
    const auto& item = graph.items[i];
    seq.tokens.push_back(item.head_text());
    check_payload(seq.tokens.back(), separator);
    for (const auto& s : item.satellites) {
      check_payload(s.role, separator);
      seq.tokens.push_back(s.role);
      seq.tokens.push_back(render_offset(s.offset));
    }
  }
  return seq;
}

Decoded<ClauseSet> delinearize_clauses(const SymbolSequence& seq,
                                       const RelationRegistry& registry,
                                       std::string_view separator) {
  auto groups = group_tokens(seq, separator);
  std::vector<Clause> clauses;
  clauses.reserve(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& fields = groups[g];
    auto ill = [&](std::string detail) -> Decoded<ClauseSet> {
      return IllFormed{ErrorCode::illegal_clause_structure, g, std::move(detail),
                       seq.tokens.size()};
    };
    if (fields.size() < 3 || fields.size() > 2 + Clause::kMaxArgs) {
      return ill("clause has " + std::to_string(fields.size()) + " field(s)");
    }
    if (Term::from_text(fields[0]).kind != TermKind::box_variable) {
      return ill("clause starts with '" + fields[0] + "', not a box variable");
    }
    if (auto sig = registry.signature_for(fields[1]); sig && sig->arity != fields.size() - 2) {
      return ill(fields[1] + " takes " + std::to_string(sig->arity) + " argument(s), got " +
                 std::to_string(fields.size() - 2));
    }
    clauses.push_back(Clause::from_fields(fields));
  }
  return ClauseSet(std::move(clauses));
}

Decoded<SequentialGraph> delinearize_sbn(const SymbolSequence& seq,
                                         std::string_view separator) {
  auto groups = group_tokens(seq, separator);
  SequentialGraph graph;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    try {
      graph.items.push_back(parse_item(groups[g], 0));
    } catch (const Error& e) {
      return IllFormed{ErrorCode::malformed_item, g, e.message(), seq.tokens.size()};
    }
  }
  return graph;
}

std::string symbols_to_text(const SymbolSequence& seq, char joiner) {
  std::string out;
  for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
    if (i != 0) out += joiner;
    out += seq.tokens[i];
  }
  return out;
}

SymbolSequence symbols_from_text(std::string_view text) {
  SymbolSequence seq;
  std::string current;
  bool in_token = false;
  bool in_quote = false;
  for (char c : text) {
    if (!in_quote && is_space(c)) {
      if (in_token) seq.tokens.push_back(std::move(current));
      current.clear();
      in_token = false;
      continue;
    }
    in_token = true;
    current += c;
    if (c == '"') in_quote = !in_quote;
  }
  if (in_token) seq.tokens.push_back(std::move(current));
  return seq;
}

std::vector<DocumentChunk> split_documents(std::string_view text) {
  std::vector<DocumentChunk> docs;
  DocumentChunk current;
  bool open = false;
  for_each_line(text, [&](std::string_view line, std::size_t lineno) {
    bool blank = line.find_first_not_of(" \t\r") == std::string_view::npos;
    if (blank) {
      if (open) docs.push_back(std::move(current));
      current = {};
      open = false;
      return;
    }
    if (!open) {
      current.first_line = lineno;
      open = true;
    }
    current.text.append(line);
    current.text += '\n';
    current.last_line = lineno;
  });
  if (open) docs.push_back(std::move(current));
  return docs;
}

std::string extract_source_text(std::string_view text) {
  std::string out;
  for_each_line(text, [&](std::string_view line, std::size_t) {
    if (!out.empty()) return;
    auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line.substr(first, 3) != "%%%") return;
    auto rest = line.substr(first + 3);
    auto b = rest.find_first_not_of(" \t");
    auto e = rest.find_last_not_of(" \t");
    if (b != std::string_view::npos) out = std::string(rest.substr(b, e - b + 1));
  });
  return out;
}

ParsedDocument parse_document(const DocumentChunk& chunk, Representation representation,
                              const std::string& file, const ParseOptions& options) {
  ParsedDocument doc;
  doc.source_text = extract_source_text(chunk.text);
  doc.provenance = {file, chunk.first_line, chunk.last_line};
  const std::size_t offset = chunk.first_line == 0 ? 0 : chunk.first_line - 1;
  if (representation == Representation::clause) {
    ParseOptions opts = options;
    opts.line_offset = options.line_offset + offset;
    doc.representation = parse_clause_file(chunk.text, opts);
  } else {
    doc.representation = parse_sbn_file(chunk.text, options.line_offset + offset);
  }
  return doc;
}

}  // namespace drs
