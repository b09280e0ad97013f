#pragma once

#include <optional>
#include <vector>

#include "drs/clause.hpp"
#include "drs/graph.hpp"
#include "drs/registry.hpp"
#include "drs/sequential.hpp"

namespace drs {

// Clause set -> variable-free graph.
//
// Each concept clause yields a predicate node that stands for its variable;
// constants in role/operator arguments yield entity nodes (one per
// occurrence); variables with no concept become anonymous entity nodes
// labelled "". Role clauses and two-place operators over non-box terms
// (TPR t1 "now") become semantic-role edges. Box operators become discourse
// edges. Boxes linked by PRESUPPOSITION are merged, so interpretation boxes
// collapse into the membership box as in the graph form.
//
// Throws Error(not_well_formed) if the set does not validate, and
// Error(conversion_failure) for a variable with several concepts.
DrsGraph clauses_to_graph(const ClauseSet& set,
                          const RelationRegistry& registry = RelationRegistry::bundled());

// One item per node in `order` (predicate and entity nodes). Each role edge
// becomes a satellite on its source item with offset target - source;
// satellites are listed by ascending offset, edge order breaking ties. An
// SBN whose satellites are already in that order survives
// sbn_to_graph + graph_to_sbn unchanged. Box nodes, membership and discourse edges have no SBN counterpart.
// Throws Error(edge_target_absent) when a role edge touches a node missing
// from `order`.
SequentialGraph graph_to_sbn(const DrsGraph& graph, const std::vector<NodeId>& order);

// Same, with the fallback order: topological over role edges, ties and
// cycles broken lexicographically by label, then by node id.
SequentialGraph graph_to_sbn(const DrsGraph& graph);
std::vector<NodeId> default_order(const DrsGraph& graph);

// Items become nodes in item order (node i is item i); predicates share one
// default box appended last. Throws Error(not_well_formed) if `sbn` does
// not validate.
DrsGraph sbn_to_graph(const SequentialGraph& sbn);

}  // namespace drs
