#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "drs/metrics.hpp"
#include "drs/registry.hpp"

namespace drs {

// Gold corpora are parsed strictly and any failure is an error. Prediction
// corpora are parsed leniently and a document that cannot be decoded becomes
// an IllFormed entry, so it still counts toward IF.
enum class CorpusRole { gold, prediction };

// A corpus is a file or a directory. Text files (.clf, .sbn) hold documents
// separated by blank lines; ids are 1-based document numbers. Linear files
// (.seq) hold one symbol sequence per line. A directory contributes every
// matching file below it in path order, ids prefixed by the relative path
// ("a/b.clf#2"); a directory of single-document files uses the bare path.
std::vector<ClauseDocument> load_clause_corpus(
    const std::filesystem::path& path, CorpusRole role,
    const RelationRegistry& registry = RelationRegistry::bundled());
std::vector<SbnDocument> load_sbn_corpus(const std::filesystem::path& path, CorpusRole role);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace drs
