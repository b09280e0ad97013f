#pragma once

// Test-only generators, fault injectors and oracles. The oracles do not
// call into the mapping search; they enumerate every admissible mapping.

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "drs/clause.hpp"
#include "drs/graph.hpp"
#include "drs/random.hpp"
#include "drs/report.hpp"
#include "drs/sequential.hpp"
#include "drs/validator.hpp"

namespace drs::testing {

std::filesystem::path source_dir();  // repository root
std::filesystem::path data_dir();    // tests/data
std::filesystem::path golden_dir();  // tests/golden

// ---- clause sets

struct ClauseGen {
  std::size_t min_boxes = 1, max_boxes = 3;
  std::size_t min_entities = 1, max_entities = 5;
  std::size_t max_roles = 5;
  // Small pools make many clauses look alike, which is what makes the
  // mapping search non-trivial.
  std::size_t lemma_pool = 3;
  bool operators = true;
};

// Well-formed under the bundled registry.
ClauseSet random_clause_set(Rng& rng, const ClauseGen& gen = {});
// Random edits that keep the variable inventory (no new variables):
// deletions, sense/lemma changes, argument swaps, role renames.
ClauseSet perturb_clauses(const ClauseSet& set, Rng& rng, std::size_t edits);
// Fresh names, kind-preserving, in a shuffled order.
ClauseSet rename_variables(const ClauseSet& set, Rng& rng);
std::size_t variable_count(const ClauseSet& set);

// ---- graphs

struct GraphGen {
  std::size_t min_content = 1, max_content = 5;  // predicate + entity nodes
  std::size_t boxes = 1;
  std::size_t max_roles = 6;
  std::size_t label_pool = 3;
  double entity_rate = 0.25;
};

DrsGraph random_graph(Rng& rng, const GraphGen& gen = {});
// Same graph with node ids permuted.
DrsGraph permute_nodes(const DrsGraph& graph, Rng& rng);
// Relabels, drops and adds edges; node count unchanged.
DrsGraph perturb_graph(const DrsGraph& graph, Rng& rng, std::size_t edits);
// Single-box graph with every predicate in it, suitable for SBN round trips.
DrsGraph random_sbn_graph(Rng& rng, std::size_t min_nodes, std::size_t max_nodes);

// Order-insensitive description: node labels in id order plus sorted edges.
std::string describe(const DrsGraph& graph);

// ---- SBN

// Well-formed, satellites in ascending offset order.
SequentialGraph random_sbn(Rng& rng, std::size_t min_items, std::size_t max_items);

// ---- fault injection

struct Injection {
  ClauseSet clauses;
  SequentialGraph sbn;
  ErrorClass cls = ErrorClass::illegal_clause_structure;
  std::size_t location = 0;
};

// Exactly one fault of the given class, at a recorded clause/item index.
Injection inject_clause_fault(const ClauseSet& set, ErrorClass cls, Rng& rng);
Injection inject_sbn_fault(const SequentialGraph& sbn, ErrorClass cls, Rng& rng);

// ---- oracles

// Best matched-clause count over every injective, kind-preserving partial
// map of prediction variables onto gold variables.
std::size_t brute_force_clause_matches(const ClauseSet& pred, const ClauseSet& gold);

// Best matched-triple count over every injective partial map of
// prediction nodes onto gold nodes.
std::size_t brute_force_graph_matches(const DrsGraph& pred, const DrsGraph& gold);

// (W0 + B A) x with plain loops.
Eigen::VectorXd dense_forward(const Eigen::MatrixXd& w0, const Eigen::MatrixXd& b,
                              const Eigen::MatrixXd& a, const Eigen::VectorXd& x);

Eigen::MatrixXd random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);

// ---- bundled scoring fixtures

// Scores every row of a model<TAB>language<TAB>pred<TAB>gold file with
// library calls only; paths are relative to the file.
std::vector<ScoredRun> score_runs_file(const std::filesystem::path& runs, ScoreMode mode,
                                       const SearchConfig& search = {});

// ---- golden files

// Compares `actual` with tests/golden/<name>; with DRS_UPDATE_GOLDEN=1 in
// the environment the file is rewritten instead. Returns a diff summary,
// empty on match.
std::string check_golden(const std::string& name, const std::string& actual);

}  // namespace drs::testing
