#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drs/clause.hpp"
#include "drs/format_io.hpp"
#include "drs/graph.hpp"
#include "drs/registry.hpp"
#include "drs/sequential.hpp"
#include "drs/validator.hpp"

namespace drs {

// Mapping search. Up to `exact_threshold` prediction variables (or nodes)
// the search is exhaustive branch-and-bound; above it, hill-climbing from a
// greedy start plus `restarts` seeded random starts.
struct SearchConfig {
  std::uint64_t seed = 0;
  int restarts = 4;
  std::size_t exact_threshold = 7;
};

struct MatchResult {
  std::size_t matched = 0;
  std::size_t pred_total = 0;
  std::size_t gold_total = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // prediction variable/node -> gold variable/node, for mapped entries only
  std::vector<std::pair<std::string, std::string>> mapping;

  static MatchResult from_counts(std::size_t matched, std::size_t pred_total,
                                 std::size_t gold_total);
};

// Clause-level F1 under the best injective, namespace-preserving variable
// mapping. An ill-formed prediction scores matched = 0 and pred_total = 0.
// Throws Error(gold_not_well_formed).
MatchResult counter_f1(const ClauseSet& pred, const ClauseSet& gold,
                       const SearchConfig& search = {},
                       const RelationRegistry& registry = RelationRegistry::bundled());
MatchResult counter_f1(const Decoded<ClauseSet>& pred, const ClauseSet& gold,
                       const SearchConfig& search = {},
                       const RelationRegistry& registry = RelationRegistry::bundled());

// Triples of a graph as scored by smatch_f1: one instance triple per node,
// one per edge. Nodes are named "n<id>".
struct Triple {
  std::string relation;
  std::string source;
  std::string target;  // node name, or a label for instance triples
  auto operator<=>(const Triple&) const = default;
};
std::vector<Triple> graph_triples(const DrsGraph& graph);

// Graph-level F1 over triples under the best node correspondence.
MatchResult smatch_f1(const DrsGraph& pred, const DrsGraph& gold, const SearchConfig& search = {});
MatchResult smatch_f1(const Decoded<DrsGraph>& pred, const DrsGraph& gold,
                      const SearchConfig& search = {});

// ---- fine-grained breakdown

enum class FineCategory {
  drs_operator,
  semantic_role,
  concept_,
  synset_noun,
  synset_verb,
  synset_adjective,
  synset_adverb,
};
inline constexpr std::size_t kFineCategoryCount = 7;
std::string_view to_string(FineCategory category);

struct MatchCounts {
  std::size_t matched = 0;
  std::size_t pred_total = 0;
  std::size_t gold_total = 0;

  MatchCounts& operator+=(const MatchCounts& o) {
    matched += o.matched;
    pred_total += o.pred_total;
    gold_total += o.gold_total;
    return *this;
  }
  MatchResult result() const { return MatchResult::from_counts(matched, pred_total, gold_total); }
  bool empty() const { return pred_total == 0 && gold_total == 0; }
};

// Operator, role and concept rows partition the clauses; the synset rows
// split the concept clauses carrying a well-formed sense by part of speech.
struct FineGrainedReport {
  MatchCounts overall;
  std::array<MatchCounts, kFineCategoryCount> categories{};

  // nullopt for a category with no clause on either side.
  std::optional<MatchResult> row(FineCategory category) const;
  FineGrainedReport& operator+=(const FineGrainedReport& other);
};

// Throws Error(mapping_mismatch) if `mapping` names a variable absent from
// the respective set.
FineGrainedReport fine_grained(const ClauseSet& pred, const ClauseSet& gold,
                               const std::vector<std::pair<std::string, std::string>>& mapping);

// ---- length buckets

struct LengthRow {
  std::size_t length = 0;  // whitespace tokens in the source text
  double mean_f1 = 0.0;
  std::size_t count = 0;
};

// Throws Error(empty_input).
std::vector<LengthRow> length_report(
    const std::vector<std::pair<std::string, MatchResult>>& pairs);

// ---- corpus scoring

enum class ScoreMode { clause, graph };
std::string_view to_string(ScoreMode mode);

struct ClauseDocument {
  std::string id;
  std::string source_text;
  Decoded<ClauseSet> drs;
};

struct SbnDocument {
  std::string id;
  std::string source_text;
  Decoded<SequentialGraph> sbn;
};

struct DocumentScore {
  std::string id;
  bool well_formed = true;
  ValidationReport report;
  MatchResult result;
};

struct CorpusScore {
  ScoreMode mode = ScoreMode::clause;
  std::size_t documents = 0;
  std::size_t ill_formed = 0;
  MatchResult micro;  // summed counts; mapping left empty
  double macro_f1 = 0.0;
  double if_percent = 0.0;
  std::optional<FineGrainedReport> fine_grained;  // clause mode only
  std::vector<LengthRow> lengths;
  std::vector<DocumentScore> per_document;
};

// Seed used for document `index`, so parallel and serial runs agree.
std::uint64_t document_seed(std::uint64_t master, std::size_t index);

// Documents are aligned by position and must carry equal ids. Ill-formed
// predictions (decode failure or validator findings) count toward IF and
// score matched = 0, pred_total = 0. Throws Error(alignment_mismatch) and
// Error(gold_not_well_formed).
CorpusScore corpus_score(const std::vector<ClauseDocument>& pred,
                         const std::vector<ClauseDocument>& gold, const SearchConfig& search = {},
                         unsigned jobs = 1,
                         const RelationRegistry& registry = RelationRegistry::bundled());
CorpusScore corpus_score(const std::vector<SbnDocument>& pred,
                         const std::vector<SbnDocument>& gold, const SearchConfig& search = {},
                         unsigned jobs = 1);

}  // namespace drs
