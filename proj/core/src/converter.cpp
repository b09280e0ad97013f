#include "drs/converter.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "drs/error.hpp"
#include "drs/validator.hpp"

namespace drs {

namespace {

constexpr const char* kAnonymousEntity = "\"\"";

// Union-find over box labels; the earliest-seen label of a group is its root.
class BoxGroups {
 public:
  std::size_t index(const std::string& label) {
    auto [it, fresh] = ids_.try_emplace(label, parent_.size());
    if (fresh) parent_.push_back(parent_.size());
    return it->second;
  }
  std::size_t root(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void merge(std::size_t a, std::size_t b) {
    a = root(a);
    b = root(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }
  std::size_t size() const { return parent_.size(); }

 private:
  std::map<std::string, std::size_t> ids_;
  std::vector<std::size_t> parent_;
};

}  // namespace

DrsGraph clauses_to_graph(const ClauseSet& set, const RelationRegistry& registry) {
  const auto report = validate_clauses(set, registry);
  if (!report.well_formed()) {
    const auto& e = report.errors.front();
    throw Error(ErrorCode::not_well_formed, std::string(to_string(e.cls)) + " at clause " +
                                                std::to_string(e.location) + ": " + e.detail);
  }

  BoxGroups boxes;
  for (const auto& c : set.clauses()) {
    boxes.index(c.box().label);
    for (const auto& a : c.args()) {
      if (a.kind == TermKind::box_variable) boxes.index(a.label);
    }
  }
  for (const auto& c : set.clauses()) {
    if (c.relation() == "PRESUPPOSITION" && c.arity() == 1 &&
        c.args()[0].kind == TermKind::box_variable) {
      boxes.merge(boxes.index(c.box().label), boxes.index(c.args()[0].label));
    }
  }

  GraphBuilder builder;
  std::map<std::string, NodeId> variable_node;
  std::vector<std::pair<NodeId, std::size_t>> memberships;  // predicate, box group

  for (const auto& c : set.clauses()) {
    auto synset = c.synset();
    if (!synset) continue;
    const auto& var = c.args()[1].label;
    if (variable_node.count(var) != 0) {
      throw Error(ErrorCode::conversion_failure,
                  "variable " + var + " carries more than one concept");
    }
    const auto node = builder.add_predicate(std::move(*synset));
    variable_node.emplace(var, node);
    memberships.emplace_back(node, boxes.root(boxes.index(c.box().label)));
  }

  auto node_for = [&](const Term& term) -> NodeId {
    if (term.kind == TermKind::constant) return builder.add_entity(term.label);
    auto it = variable_node.find(term.label);
    if (it != variable_node.end()) return it->second;
    const auto node = builder.add_entity(kAnonymousEntity);
    variable_node.emplace(term.label, node);
    return node;
  };

  struct PendingRole {
    NodeId from;
    NodeId to;
    std::string role;
  };
  std::vector<PendingRole> roles;
  struct PendingDiscourse {
    std::size_t from;
    std::size_t to;
    std::string relation;
  };
  std::vector<PendingDiscourse> discourse;

  for (const auto& c : set.clauses()) {
    const auto category = c.category();
    if (category == RelationCategory::concept_ || c.relation() == "REF" ||
        c.relation() == "PRESUPPOSITION") {
      continue;
    }
    const auto args = c.args();
    const bool all_boxes = std::all_of(args.begin(), args.end(), [](const Term& t) {
      return t.kind == TermKind::box_variable;
    });
    const bool no_boxes = std::none_of(args.begin(), args.end(), [](const Term& t) {
      return t.kind == TermKind::box_variable;
    });
    if (all_boxes && args.size() == 1) {
      discourse.push_back({boxes.root(boxes.index(c.box().label)),
                           boxes.root(boxes.index(args[0].label)), c.relation()});
    } else if (all_boxes && args.size() == 2) {
      discourse.push_back({boxes.root(boxes.index(args[0].label)),
                           boxes.root(boxes.index(args[1].label)), c.relation()});
    } else if (no_boxes && args.size() == 2) {
      const auto from = node_for(args[0]);
      const auto to = node_for(args[1]);
      roles.push_back({from, to, c.relation()});
    }
    // Mixed entity/box operators (PRP x1 b2) have no edge type in the graph.
  }

  std::map<std::size_t, NodeId> box_node;
  int next_box_id = 0;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (boxes.root(i) == i) box_node.emplace(i, builder.add_box(next_box_id++));
  }

  try {
    for (const auto& r : roles) builder.add_role(r.from, r.to, r.role);
    for (const auto& [pred, group] : memberships) builder.add_membership(pred, box_node.at(group));
    std::set<std::tuple<std::size_t, std::size_t, std::string>> seen;
    for (const auto& d : discourse) {
      if (!seen.emplace(d.from, d.to, d.relation).second) continue;
      builder.add_discourse(box_node.at(d.from), box_node.at(d.to), d.relation);
    }
  } catch (const Error& e) {
    throw Error(ErrorCode::conversion_failure, e.message());
  }
  return std::move(builder).build();
}

SequentialGraph graph_to_sbn(const DrsGraph& graph, const std::vector<NodeId>& order) {
  std::map<NodeId, std::size_t> position;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto id = order[i];
    if (id >= graph.node_count() || graph.kind(id) == NodeKind::box) {
      throw Error(ErrorCode::invalid_argument,
                  "order may only list predicate and entity nodes");
    }
    if (!position.emplace(id, i).second) {
      throw Error(ErrorCode::invalid_argument,
                  "node " + std::to_string(id) + " listed twice in order");
    }
  }

  SequentialGraph sbn;
  sbn.items.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& node = graph.nodes()[order[i]];
    if (const auto* p = std::get_if<PredicateNode>(&node)) {
      sbn.items[i].head = p->synset;
    } else {
      sbn.items[i].head = std::get<EntityNode>(node).label;
    }
  }
  for (const auto& edge : graph.edges()) {
    const auto* r = std::get_if<RoleEdge>(&edge);
    if (r == nullptr) continue;
    auto from = position.find(r->from);
    auto to = position.find(r->to);
    if (from == position.end() || to == position.end()) {
      throw Error(ErrorCode::edge_target_absent,
                  "role edge " + r->role + " touches node " +
                      std::to_string(from == position.end() ? r->from : r->to) +
                      " which is not in the order");
    }
    const auto offset = static_cast<int>(to->second) - static_cast<int>(from->second);
    sbn.items[from->second].satellites.push_back({r->role, offset});
  }
  // Satellites read left to right, nearest preceding first.
  for (auto& item : sbn.items) {
    std::stable_sort(item.satellites.begin(), item.satellites.end(),
                     [](const Satellite& a, const Satellite& b) { return a.offset < b.offset; });
  }
  return sbn;
}

std::vector<NodeId> default_order(const DrsGraph& graph) {
  std::vector<NodeId> remaining;
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    if (graph.kind(i) != NodeKind::box) remaining.push_back(i);
  }
  std::map<NodeId, int> indegree;
  for (auto id : remaining) indegree[id] = 0;
  const auto roles = graph.role_edges();
  for (const auto& r : roles) ++indegree[r.to];

  auto before = [&](NodeId a, NodeId b) {
    const auto la = graph.label(a);
    const auto lb = graph.label(b);
    return la != lb ? la < lb : a < b;
  };

  std::vector<NodeId> order;
  std::set<NodeId> placed;
  while (order.size() < remaining.size()) {
    std::optional<NodeId> pick;
    for (auto id : remaining) {
      if (placed.count(id) != 0 || indegree[id] != 0) continue;
      if (!pick || before(id, *pick)) pick = id;
    }
    if (!pick) {
      // Cycle: take the smallest remaining node.
      for (auto id : remaining) {
        if (placed.count(id) != 0) continue;
        if (!pick || before(id, *pick)) pick = id;
      }
    }
    order.push_back(*pick);
    placed.insert(*pick);
    for (const auto& r : roles) {
      if (r.from == *pick && placed.count(r.to) == 0) --indegree[r.to];
    }
  }
  return order;
}

SequentialGraph graph_to_sbn(const DrsGraph& graph) {
  return graph_to_sbn(graph, default_order(graph));
}

DrsGraph sbn_to_graph(const SequentialGraph& sbn) {
  const auto report = validate_sbn(sbn);
  if (!report.well_formed()) {
    const auto& e = report.errors.front();
    throw Error(ErrorCode::not_well_formed, std::string(to_string(e.cls)) + " at item " +
                                                std::to_string(e.location) + ": " + e.detail);
  }
  GraphBuilder builder;
  bool any_predicate = false;
  for (const auto& item : sbn.items) {
    if (const auto* s = std::get_if<SynsetId>(&item.head)) {
      builder.add_predicate(*s);
      any_predicate = true;
    } else {
      builder.add_entity(std::get<std::string>(item.head));
    }
  }
  if (any_predicate) {
    const auto box = builder.add_box(0);
    for (NodeId i = 0; i < sbn.items.size(); ++i) {
      if (sbn.items[i].is_predicate()) builder.add_membership(i, box);
    }
  }
  for (std::size_t i = 0; i < sbn.items.size(); ++i) {
    for (const auto& s : sbn.items[i].satellites) {
      builder.add_role(i, static_cast<NodeId>(static_cast<long long>(i) + s.offset), s.role);
    }
  }
  return std::move(builder).build();
}

}  // namespace drs
