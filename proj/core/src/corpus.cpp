#include "drs/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "drs/error.hpp"

namespace drs {

namespace fs = std::filesystem;

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::parse_failure, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

std::vector<fs::path> corpus_files(const fs::path& path, const std::string& text_extension) {
  if (!fs::exists(path)) throw Error(ErrorCode::parse_failure, path.string() + " does not exist");
  if (!fs::is_directory(path)) return {path};
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(path)) {
    if (!e.is_regular_file()) continue;
    const auto ext = e.path().extension().string();
    if (ext == text_extension || ext == ".seq") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::size_t count_tokens(const std::string& text) {
  std::size_t n = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    try {
      n += split_fields(line).size();
    } catch (const Error&) {
      std::istringstream words(line);
      for (std::string w; words >> w;) ++n;
    }
  }
  return n;
}

struct RawDocument {
  std::string id;
  std::string source_text;
  std::string file;
  std::size_t line = 0;
  bool linear = false;
  std::string text;
};

std::vector<RawDocument> raw_documents(const fs::path& path, const std::string& text_extension) {
  const auto files = corpus_files(path, text_extension);
  const bool directory = fs::is_directory(path);
  std::vector<RawDocument> out;
  for (const auto& file : files) {
    const auto text = read_text_file(file);
    const auto rel = directory ? fs::relative(file, path).generic_string() : std::string();
    const bool linear = file.extension() == ".seq";
    std::vector<RawDocument> docs;
    if (linear) {
      std::istringstream in(text);
      std::size_t lineno = 0;
      for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        docs.push_back({"", "", file.string(), lineno, true, line});
      }
    } else {
      for (auto& chunk : split_documents(text)) {
        docs.push_back({"", extract_source_text(chunk.text), file.string(), chunk.first_line,
                        false, std::move(chunk.text)});
      }
    }
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const auto number = std::to_string(i + 1);
      if (!directory) {
        docs[i].id = number;
      } else if (docs.size() == 1) {
        docs[i].id = rel;
      } else {
        docs[i].id = rel + "#" + number;
      }
      out.push_back(std::move(docs[i]));
    }
  }
  return out;
}

[[noreturn]] void rethrow_in(const RawDocument& doc, const Error& e) {
  const auto line = doc.linear ? doc.line : e.line();
  throw Error(e.code(), doc.file + ": document " + doc.id + ": " + e.message(), line);
}

IllFormed ill_formed_from(const RawDocument& doc, const Error& e) {
  IllFormed f;
  f.code = e.code();
  f.location = e.line() >= doc.line ? e.line() - doc.line : 0;
  f.detail = e.message();
  f.token_count = count_tokens(doc.text);
  return f;
}

}  // namespace

std::vector<ClauseDocument> load_clause_corpus(const fs::path& path, CorpusRole role,
                                               const RelationRegistry& registry) {
  ParseOptions options;
  options.mode = role == CorpusRole::gold ? ParseMode::strict : ParseMode::lenient;
  options.registry = &registry;
  std::vector<ClauseDocument> out;
  for (const auto& doc : raw_documents(path, ".clf")) {
    ClauseDocument d{doc.id, doc.source_text, ClauseSet{}};
    if (doc.linear) {
      d.drs = delinearize_clauses(symbols_from_text(doc.text), registry);
      if (const auto* ill = std::get_if<IllFormed>(&d.drs); ill && role == CorpusRole::gold) {
        throw Error(ErrorCode::parse_failure,
                    doc.file + ": gold sequence " + doc.id + ": " + ill->detail, doc.line);
      }
    } else {
      try {
        DocumentChunk chunk{doc.text, doc.line, 0};
        d.drs = std::get<ClauseSet>(
            parse_document(chunk, Representation::clause, doc.file, options).representation);
      } catch (const Error& e) {
        if (role == CorpusRole::gold) rethrow_in(doc, e);
        d.drs = ill_formed_from(doc, e);
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<SbnDocument> load_sbn_corpus(const fs::path& path, CorpusRole role) {
  std::vector<SbnDocument> out;
  for (const auto& doc : raw_documents(path, ".sbn")) {
    SbnDocument d{doc.id, doc.source_text, SequentialGraph{}};
    if (doc.linear) {
      d.sbn = delinearize_sbn(symbols_from_text(doc.text));
      if (const auto* ill = std::get_if<IllFormed>(&d.sbn); ill && role == CorpusRole::gold) {
        throw Error(ErrorCode::parse_failure,
                    doc.file + ": gold sequence " + doc.id + ": " + ill->detail, doc.line);
      }
    } else {
      try {
        DocumentChunk chunk{doc.text, doc.line, 0};
        d.sbn = std::get<SequentialGraph>(
            parse_document(chunk, Representation::sbn, doc.file).representation);
      } catch (const Error& e) {
        if (role == CorpusRole::gold) rethrow_in(doc, e);
        d.sbn = ill_formed_from(doc, e);
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace drs
