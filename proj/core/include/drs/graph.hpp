#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "drs/synset.hpp"

namespace drs {

using NodeId = std::size_t;

struct PredicateNode {
  SynsetId synset;
  auto operator<=>(const PredicateNode&) const = default;
};
// Label is kept verbatim, e.g. "tom" with its quotes.
struct EntityNode {
  std::string label;
  auto operator<=>(const EntityNode&) const = default;
};
struct BoxNode {
  int id = 0;
  auto operator<=>(const BoxNode&) const = default;
};
using Node = std::variant<PredicateNode, EntityNode, BoxNode>;

enum class NodeKind { predicate, entity, box };

struct RoleEdge {
  NodeId from = 0;
  NodeId to = 0;
  std::string role;
  auto operator<=>(const RoleEdge&) const = default;
};
struct DiscourseEdge {
  NodeId from = 0;
  NodeId to = 0;
  std::string relation;
  auto operator<=>(const DiscourseEdge&) const = default;
};
struct MembershipEdge {
  NodeId predicate = 0;
  NodeId box = 0;
  auto operator<=>(const MembershipEdge&) const = default;
};
using Edge = std::variant<RoleEdge, DiscourseEdge, MembershipEdge>;

// Variable-free DRS graph. Only GraphBuilder creates non-empty graphs, so a
// DrsGraph always satisfies the edge typing invariants.
class DrsGraph {
 public:
  DrsGraph() = default;

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  NodeKind kind(NodeId id) const;
  // predicate: synset rendering; entity: verbatim label; box: "box".
  std::string label(NodeId id) const;

  std::size_t count(NodeKind kind) const;
  std::vector<RoleEdge> role_edges() const;

  bool operator==(const DrsGraph&) const = default;

 private:
  friend class GraphBuilder;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
};

NodeKind kind_of(const Node& node);

// Checked construction. Every add_* throws Error(not_well_formed) when an
// invariant would break; build() checks that each predicate has exactly one
// membership edge.
class GraphBuilder {
 public:
  NodeId add_predicate(SynsetId synset);
  NodeId add_entity(std::string label);
  NodeId add_box(int id);

  void add_role(NodeId from, NodeId to, std::string role);
  void add_discourse(NodeId from, NodeId to, std::string relation);
  void add_membership(NodeId predicate, NodeId box);

  std::size_t node_count() const { return graph_.nodes_.size(); }
  NodeKind kind(NodeId id) const { return graph_.kind(id); }

  DrsGraph build() &&;

 private:
  void check_node(NodeId id) const;
  DrsGraph graph_;
  std::vector<int> membership_count_;
};

}  // namespace drs
