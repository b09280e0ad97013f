#include "drs/graph.hpp"

#include <algorithm>

#include "drs/error.hpp"

namespace drs {

NodeKind kind_of(const Node& node) {
  return static_cast<NodeKind>(node.index());
}

NodeKind DrsGraph::kind(NodeId id) const { return kind_of(nodes_.at(id)); }

std::string DrsGraph::label(NodeId id) const {
  const auto& node = nodes_.at(id);
  if (const auto* p = std::get_if<PredicateNode>(&node)) return synset_render(p->synset);
  if (const auto* e = std::get_if<EntityNode>(&node)) return e->label;
  return "box";
}

std::size_t DrsGraph::count(NodeKind k) const {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [k](const Node& n) { return kind_of(n) == k; }));
}

std::vector<RoleEdge> DrsGraph::role_edges() const {
  std::vector<RoleEdge> out;
  for (const auto& e : edges_) {
    if (const auto* r = std::get_if<RoleEdge>(&e)) out.push_back(*r);
  }
  return out;
}

void GraphBuilder::check_node(NodeId id) const {
  if (id >= graph_.nodes_.size()) {
    throw Error(ErrorCode::not_well_formed, "edge endpoint " + std::to_string(id) +
                                                " does not exist");
  }
}

NodeId GraphBuilder::add_predicate(SynsetId synset) {
  graph_.nodes_.emplace_back(PredicateNode{std::move(synset)});
  membership_count_.push_back(0);
  return graph_.nodes_.size() - 1;
}

NodeId GraphBuilder::add_entity(std::string label) {
  graph_.nodes_.emplace_back(EntityNode{std::move(label)});
  membership_count_.push_back(0);
  return graph_.nodes_.size() - 1;
}

NodeId GraphBuilder::add_box(int id) {
  graph_.nodes_.emplace_back(BoxNode{id});
  membership_count_.push_back(0);
  return graph_.nodes_.size() - 1;
}

void GraphBuilder::add_role(NodeId from, NodeId to, std::string role) {
  check_node(from);
  check_node(to);
  if (kind(from) == NodeKind::box || kind(to) == NodeKind::box) {
    throw Error(ErrorCode::not_well_formed,
                "semantic-role edge " + role + " touches a box node");
  }
  if (from == to) {
    throw Error(ErrorCode::not_well_formed, "semantic-role edge " + role + " is a self-loop");
  }
  for (const auto& e : graph_.edges_) {
    const auto* r = std::get_if<RoleEdge>(&e);
    if (r != nullptr && r->from == from && r->role == role) {
      throw Error(ErrorCode::not_well_formed,
                  "duplicate role " + role + " out of node " + std::to_string(from));
    }
  }
  graph_.edges_.emplace_back(RoleEdge{from, to, std::move(role)});
}

void GraphBuilder::add_discourse(NodeId from, NodeId to, std::string relation) {
  check_node(from);
  check_node(to);
  if (kind(from) != NodeKind::box || kind(to) != NodeKind::box) {
    throw Error(ErrorCode::not_well_formed,
                "discourse edge " + relation + " must connect box nodes");
  }
  DiscourseEdge edge{from, to, std::move(relation)};
  for (const auto& e : graph_.edges_) {
    const auto* d = std::get_if<DiscourseEdge>(&e);
    if (d != nullptr && *d == edge) {
      throw Error(ErrorCode::not_well_formed, "duplicate discourse edge " + edge.relation);
    }
  }
  graph_.edges_.emplace_back(std::move(edge));
}

void GraphBuilder::add_membership(NodeId predicate, NodeId box) {
  check_node(predicate);
  check_node(box);
  if (kind(predicate) != NodeKind::predicate || kind(box) != NodeKind::box) {
    throw Error(ErrorCode::not_well_formed,
                "membership edges run from a predicate to a box node");
  }
  if (membership_count_[predicate]++ != 0) {
    throw Error(ErrorCode::not_well_formed,
                "predicate " + graph_.label(predicate) + " already has a box");
  }
  graph_.edges_.emplace_back(MembershipEdge{predicate, box});
}

DrsGraph GraphBuilder::build() && {
  for (NodeId i = 0; i < graph_.nodes_.size(); ++i) {
    if (kind(i) == NodeKind::predicate && membership_count_[i] != 1) {
      throw Error(ErrorCode::not_well_formed,
                  "predicate " + graph_.label(i) + " has no membership edge");
    }
  }
  return std::move(graph_);
}

}  // namespace drs
