#include "drs/registry.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "drs/error.hpp"

namespace drs {

extern const char* const kBundledRegistryText;

bool RelationSignature::accepts(std::size_t position, const Term& term) const {
  if (position >= argkinds.size()) return false;
  switch (std::tolower(static_cast<unsigned char>(argkinds[position]))) {
    case 'b': return term.kind == TermKind::box_variable;
    case 'e': return term.kind == TermKind::entity_variable;
    case 'c': return term.kind == TermKind::constant;
    case 't': return term.kind != TermKind::box_variable;
    default: return false;
  }
}

bool RelationSignature::introduces(std::size_t position) const {
  return position < argkinds.size() &&
         std::isupper(static_cast<unsigned char>(argkinds[position]));
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

bool valid_kind_letter(char c) {
  switch (c) {
    case 'b': case 'e': case 'c': case 't': case 'B': case 'E': return true;
    default: return false;
  }
}

}  // namespace

RelationRegistry RelationRegistry::from_text(std::string_view text) {
  RelationRegistry reg;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    auto cols = split_tabs(line);
    if (cols.size() != 3 || cols[0].empty()) {
      throw Error(ErrorCode::parse_failure, "registry lines need 3 tab-separated columns",
                  lineno);
    }
    std::size_t arity = 0;
    try {
      arity = std::stoul(cols[1]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::parse_failure, "bad arity '" + cols[1] + "'", lineno);
    }
    if (arity < 1 || arity > Clause::kMaxArgs || cols[2].size() != arity) {
      throw Error(ErrorCode::parse_failure,
                  "arity and argkinds disagree for " + cols[0], lineno);
    }
    for (char c : cols[2]) {
      if (!valid_kind_letter(c)) {
        throw Error(ErrorCode::parse_failure,
                    std::string("unknown argkind letter '") + c + "'", lineno);
      }
    }
    reg.add(cols[0], RelationSignature{arity, cols[2]});
  }
  return reg;
}

RelationRegistry RelationRegistry::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_failure, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

const RelationRegistry& RelationRegistry::bundled() {
  static const RelationRegistry reg = from_text(kBundledRegistryText);
  return reg;
}

void RelationRegistry::add(std::string relation, RelationSignature signature) {
  table_.insert_or_assign(std::move(relation), std::move(signature));
}

std::optional<RelationSignature> RelationRegistry::lookup(
    std::string_view relation) const {
  auto it = table_.find(relation);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

std::optional<RelationSignature> RelationRegistry::signature_for(
    std::string_view relation) const {
  if (auto sig = lookup(relation)) return sig;
  if (relation_category(relation) == RelationCategory::concept_) {
    return RelationSignature{2, "ce"};
  }
  return std::nullopt;
}

}  // namespace drs
