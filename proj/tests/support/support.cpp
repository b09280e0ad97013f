#include "support.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "drs/corpus.hpp"
#include "drs/error.hpp"
#include "drs/format_io.hpp"

namespace drs::testing {

namespace {

const std::vector<std::string> kLemmas = {"male", "female", "door", "car", "open", "red", "pole"};
const std::vector<std::string> kRoles = {"Agent", "Theme", "Patient", "Time", "Manner"};
const std::vector<std::string> kNames = {"\"tom\"", "\"mary\"", "\"now\""};
const std::vector<std::string> kBoxRelations = {"NOT", "POS", "NEC", "PRESUPPOSITION"};
const std::vector<std::string> kBoxPairRelations = {"CONTINUATION", "CONTRAST", "IMP"};
const char kEntityLetters[] = {'x', 'e', 's', 't'};

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[rng.below(items.size())];
}

bool coin(Rng& rng, double p) { return rng.unit() < p; }

std::size_t between(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + rng.below(hi - lo + 1);
}

Term box_term(const std::string& label) { return {TermKind::box_variable, label}; }
Term entity_term(const std::string& label) { return {TermKind::entity_variable, label}; }
Term constant(const std::string& label) { return {TermKind::constant, label}; }

std::string sense(Rng& rng, char pos) {
  return std::string("\"") + pos + ".0" + std::to_string(1 + rng.below(2)) + "\"";
}

}  // namespace

std::filesystem::path source_dir() { return DRS_TEST_SOURCE_DIR; }
std::filesystem::path data_dir() { return source_dir() / "tests" / "data"; }
std::filesystem::path golden_dir() { return source_dir() / "tests" / "golden"; }

// ---- clause sets

ClauseSet random_clause_set(Rng& rng, const ClauseGen& gen) {
  const auto n_boxes = between(rng, gen.min_boxes, gen.max_boxes);
  const auto n_entities = between(rng, gen.min_entities, gen.max_entities);
  std::vector<std::string> boxes, entities;
  for (std::size_t i = 0; i < n_boxes; ++i) boxes.push_back("b" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n_entities; ++i) {
    entities.push_back(kEntityLetters[rng.below(4)] + std::to_string(i + 1));
  }
  const std::vector<std::string> lemmas(kLemmas.begin(),
                                        kLemmas.begin() + std::min(gen.lemma_pool, kLemmas.size()));

  std::vector<Clause> out;
  // Every box shows up as a box field so operator arguments stay bound.
  std::vector<std::string> home(n_entities);
  for (std::size_t i = 0; i < n_entities; ++i) {
    home[i] = i < n_boxes ? boxes[i] : pick(rng, boxes);
    out.emplace_back(box_term(home[i]), "REF", std::vector<Term>{entity_term(entities[i])});
    if (coin(rng, 0.8)) {
      out.emplace_back(box_term(home[i]), pick(rng, lemmas),
                       std::vector<Term>{constant(sense(rng, "nvar"[rng.below(4)])),
                                         entity_term(entities[i])});
    }
  }
  for (std::size_t i = n_entities; i < n_boxes; ++i) {
    out.emplace_back(box_term(boxes[i]), "REF", std::vector<Term>{entity_term(pick(rng, entities))});
  }
  const auto n_roles = rng.below(gen.max_roles + 1);
  for (std::size_t i = 0; i < n_roles; ++i) {
    const auto from = rng.below(n_entities);
    Term target = constant(pick(rng, kNames));
    if (n_entities > 1 && coin(rng, 0.7)) {
      auto to = rng.below(n_entities - 1);
      if (to >= from) ++to;
      target = entity_term(entities[to]);
    }
    const auto relation = coin(rng, 0.15) ? std::string("Name") : pick(rng, kRoles);
    out.emplace_back(box_term(home[from]), relation,
                     std::vector<Term>{entity_term(entities[from]), target});
  }
  if (gen.operators && n_boxes > 1) {
    for (std::size_t i = 1; i < n_boxes; ++i) {
      const auto& parent = boxes[rng.below(i)];
      if (coin(rng, 0.5)) {
        out.emplace_back(box_term(parent), pick(rng, kBoxRelations),
                         std::vector<Term>{box_term(boxes[i])});
      } else {
        out.emplace_back(box_term(parent), pick(rng, kBoxPairRelations),
                         std::vector<Term>{box_term(parent), box_term(boxes[i])});
      }
    }
  }
  if (coin(rng, 0.3)) {
    const auto i = rng.below(n_entities);
    out.emplace_back(box_term(home[i]), "TPR",
                     std::vector<Term>{entity_term(entities[i]), constant("\"now\"")});
  }
  rng.shuffle(out);
  return ClauseSet(std::move(out));
}

ClauseSet perturb_clauses(const ClauseSet& set, Rng& rng, std::size_t edits) {
  std::vector<Clause> clauses(set.clauses().begin(), set.clauses().end());
  std::vector<std::string> boxes;
  for (const auto& [name, info] : set.variables()) {
    if (info.kind == TermKind::box_variable) boxes.push_back(name);
  }
  for (std::size_t e = 0; e < edits && clauses.size() > 1; ++e) {
    const auto i = rng.below(clauses.size());
    const auto& c = clauses[i];
    std::vector<Term> args(c.args().begin(), c.args().end());
    switch (rng.below(5)) {
      case 0:
        clauses.erase(clauses.begin() + static_cast<std::ptrdiff_t>(i));
        break;
      case 1:
        if (c.category() == RelationCategory::concept_) {
          args[0] = constant(sense(rng, "nvar"[rng.below(4)]));
          clauses[i] = Clause(c.box(), pick(rng, kLemmas), args);
        }
        break;
      case 2:
        if (args.size() == 2 && args[0].kind == args[1].kind) {
          std::swap(args[0], args[1]);
          clauses[i] = Clause(c.box(), c.relation(), args);
        }
        break;
      case 3:
        if (c.category() == RelationCategory::semantic_role) {
          clauses[i] = Clause(c.box(), pick(rng, kRoles), args);
        }
        break;
      default:
        clauses[i] = Clause(box_term(pick(rng, boxes)), c.relation(), args);
        break;
    }
  }
  return ClauseSet(std::move(clauses));
}

ClauseSet rename_variables(const ClauseSet& set, Rng& rng) {
  // Fresh names drawn without collisions, then assigned in random order.
  std::vector<std::string> box_names, entity_names;
  for (const auto& [name, info] : set.variables()) {
    (info.kind == TermKind::box_variable ? box_names : entity_names).push_back(name);
  }
  std::map<std::string, std::string> renamed;
  std::vector<std::size_t> numbers(box_names.size() + entity_names.size());
  for (std::size_t i = 0; i < numbers.size(); ++i) numbers[i] = 10 + i;
  rng.shuffle(numbers);
  std::size_t next = 0;
  for (const auto& name : box_names) renamed[name] = "b" + std::to_string(numbers[next++]);
  for (const auto& name : entity_names) {
    renamed[name] = kEntityLetters[rng.below(4)] + std::to_string(numbers[next++]);
  }
  auto rename = [&](const Term& t) {
    return t.is_variable() ? Term{t.kind, renamed.at(t.label)} : t;
  };
  std::vector<Clause> out;
  for (const auto& c : set.clauses()) {
    std::vector<Term> args;
    for (const auto& a : c.args()) args.push_back(rename(a));
    out.emplace_back(rename(c.box()), c.relation(), std::move(args));
  }
  rng.shuffle(out);
  return ClauseSet(std::move(out));
}

std::size_t variable_count(const ClauseSet& set) { return set.variables().size(); }

// ---- graphs

namespace {

struct GraphPlan {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

GraphPlan spec_of(const DrsGraph& g) { return {g.nodes(), g.edges()}; }

DrsGraph build(const GraphPlan& plan) {
  GraphBuilder b;
  for (const auto& n : plan.nodes) {
    if (const auto* p = std::get_if<PredicateNode>(&n)) {
      b.add_predicate(p->synset);
    } else if (const auto* e = std::get_if<EntityNode>(&n)) {
      b.add_entity(e->label);
    } else {
      b.add_box(std::get<BoxNode>(n).id);
    }
  }
  for (const auto& e : plan.edges) {
    if (const auto* r = std::get_if<RoleEdge>(&e)) {
      b.add_role(r->from, r->to, r->role);
    } else if (const auto* d = std::get_if<DiscourseEdge>(&e)) {
      b.add_discourse(d->from, d->to, d->relation);
    } else {
      const auto& m = std::get<MembershipEdge>(e);
      b.add_membership(m.predicate, m.box);
    }
  }
  return std::move(b).build();
}

Node random_content_node(Rng& rng, std::size_t label_pool, double entity_rate) {
  if (coin(rng, entity_rate)) return EntityNode{pick(rng, kNames)};
  SynsetId s;
  s.lemma = kLemmas[rng.below(std::min(label_pool, kLemmas.size()))];
  s.pos = coin(rng, 0.5) ? PartOfSpeech::noun : PartOfSpeech::verb;
  s.sense = 1 + static_cast<int>(rng.below(2));
  return PredicateNode{s};
}

bool has_role(const std::vector<Edge>& edges, NodeId from, const std::string& role) {
  return std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
    const auto* r = std::get_if<RoleEdge>(&e);
    return r != nullptr && r->from == from && r->role == role;
  });
}

bool has_edge(const std::vector<Edge>& edges, const Edge& edge) {
  return std::find(edges.begin(), edges.end(), edge) != edges.end();
}

// Random role edge between distinct content nodes, if one fits.
void add_random_role(GraphPlan& plan, Rng& rng, const std::vector<NodeId>& content) {
  if (content.size() < 2) return;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const auto from = content[rng.below(content.size())];
    const auto to = content[rng.below(content.size())];
    const auto& role = kRoles[rng.below(3)];
    if (from == to || has_role(plan.edges, from, role)) continue;
    plan.edges.emplace_back(RoleEdge{from, to, role});
    return;
  }
}

}  // namespace

DrsGraph random_graph(Rng& rng, const GraphGen& gen) {
  GraphPlan plan;
  const auto n_content = between(rng, gen.min_content, gen.max_content);
  std::vector<NodeId> content, boxes;
  std::vector<Node> pool;
  for (std::size_t i = 0; i < n_content; ++i) {
    pool.push_back(random_content_node(rng, gen.label_pool, gen.entity_rate));
  }
  for (std::size_t i = 0; i < gen.boxes; ++i) pool.emplace_back(BoxNode{static_cast<int>(i)});
  rng.shuffle(pool);
  for (NodeId i = 0; i < pool.size(); ++i) {
    (kind_of(pool[i]) == NodeKind::box ? boxes : content).push_back(i);
  }
  plan.nodes = pool;
  for (auto id : content) {
    if (kind_of(pool[id]) == NodeKind::predicate) {
      plan.edges.emplace_back(MembershipEdge{id, boxes[rng.below(boxes.size())]});
    }
  }
  const auto n_roles = rng.below(gen.max_roles + 1);
  for (std::size_t i = 0; i < n_roles; ++i) add_random_role(plan, rng, content);
  if (boxes.size() > 1) {
    for (std::size_t i = 1; i < boxes.size(); ++i) {
      plan.edges.emplace_back(DiscourseEdge{boxes[i - 1], boxes[i], pick(rng, kBoxPairRelations)});
    }
  }
  rng.shuffle(plan.edges);
  return build(plan);
}

DrsGraph permute_nodes(const DrsGraph& graph, Rng& rng) {
  std::vector<NodeId> perm(graph.node_count());
  for (NodeId i = 0; i < perm.size(); ++i) perm[i] = i;
  rng.shuffle(perm);  // old id -> new id
  GraphPlan plan;
  plan.nodes.resize(perm.size());
  for (NodeId i = 0; i < perm.size(); ++i) plan.nodes[perm[i]] = graph.nodes()[i];
  for (const auto& e : graph.edges()) {
    if (const auto* r = std::get_if<RoleEdge>(&e)) {
      plan.edges.emplace_back(RoleEdge{perm[r->from], perm[r->to], r->role});
    } else if (const auto* d = std::get_if<DiscourseEdge>(&e)) {
      plan.edges.emplace_back(DiscourseEdge{perm[d->from], perm[d->to], d->relation});
    } else {
      const auto& m = std::get<MembershipEdge>(e);
      plan.edges.emplace_back(MembershipEdge{perm[m.predicate], perm[m.box]});
    }
  }
  rng.shuffle(plan.edges);
  return build(plan);
}

DrsGraph perturb_graph(const DrsGraph& graph, Rng& rng, std::size_t edits) {
  auto plan = spec_of(graph);
  std::vector<NodeId> content, boxes;
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    (graph.kind(i) == NodeKind::box ? boxes : content).push_back(i);
  }
  for (std::size_t e = 0; e < edits; ++e) {
    switch (rng.below(4)) {
      case 0:
        if (!content.empty()) {
          const auto id = content[rng.below(content.size())];
          if (auto* p = std::get_if<PredicateNode>(&plan.nodes[id])) {
            p->synset.sense = p->synset.sense == 1 ? 2 : 1;
          } else {
            std::get<EntityNode>(plan.nodes[id]).label = pick(rng, kNames);
          }
        }
        break;
      case 1: {
        std::vector<std::size_t> droppable;
        for (std::size_t i = 0; i < plan.edges.size(); ++i) {
          if (!std::holds_alternative<MembershipEdge>(plan.edges[i])) droppable.push_back(i);
        }
        if (!droppable.empty()) {
          plan.edges.erase(plan.edges.begin() +
                           static_cast<std::ptrdiff_t>(droppable[rng.below(droppable.size())]));
        }
        break;
      }
      case 2:
        add_random_role(plan, rng, content);
        break;
      default:
        for (auto& edge : plan.edges) {
          if (auto* m = std::get_if<MembershipEdge>(&edge); m != nullptr && coin(rng, 0.5)) {
            m->box = boxes[rng.below(boxes.size())];
          } else if (auto* r = std::get_if<RoleEdge>(&edge); r != nullptr && coin(rng, 0.3)) {
            const auto& role = kRoles[rng.below(3)];
            if (!has_role(plan.edges, r->from, role)) r->role = role;
          }
        }
        break;
    }
  }
  // Relabelling can recreate an identical discourse edge; drop repeats.
  std::vector<Edge> unique;
  for (const auto& e : plan.edges) {
    if (!has_edge(unique, e)) unique.push_back(e);
  }
  plan.edges = std::move(unique);
  return build(plan);
}

DrsGraph random_sbn_graph(Rng& rng, std::size_t min_nodes, std::size_t max_nodes) {
  GraphPlan plan;
  const auto n = between(rng, min_nodes, max_nodes);
  std::vector<NodeId> content;
  bool any_predicate = false;
  for (NodeId i = 0; i < n; ++i) {
    plan.nodes.push_back(random_content_node(rng, kLemmas.size(), 0.25));
    any_predicate = any_predicate || kind_of(plan.nodes.back()) == NodeKind::predicate;
    content.push_back(i);
  }
  // Same layout sbn_to_graph produces: the box last, memberships in node
  // order, role edges grouped by source and ordered by target.
  if (any_predicate) {
    plan.nodes.emplace_back(BoxNode{0});
    for (NodeId i = 0; i < n; ++i) {
      if (kind_of(plan.nodes[i]) == NodeKind::predicate) plan.edges.emplace_back(MembershipEdge{i, n});
    }
  }
  GraphPlan roles;
  const auto n_roles = rng.below(2 * n + 1);
  for (std::size_t i = 0; i < n_roles; ++i) add_random_role(roles, rng, content);
  std::stable_sort(roles.edges.begin(), roles.edges.end(), [](const Edge& a, const Edge& b) {
    const auto& x = std::get<RoleEdge>(a);
    const auto& y = std::get<RoleEdge>(b);
    return std::tie(x.from, x.to) < std::tie(y.from, y.to);
  });
  plan.edges.insert(plan.edges.end(), roles.edges.begin(), roles.edges.end());
  return build(plan);
}

std::string describe(const DrsGraph& graph) {
  std::ostringstream out;
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    out << i << ':' << static_cast<int>(graph.kind(i)) << ':' << graph.label(i) << '\n';
  }
  std::vector<std::string> edges;
  for (const auto& e : graph.edges()) {
    std::ostringstream line;
    if (const auto* r = std::get_if<RoleEdge>(&e)) {
      line << "role " << r->role << ' ' << r->from << ' ' << r->to;
    } else if (const auto* d = std::get_if<DiscourseEdge>(&e)) {
      line << "drel " << d->relation << ' ' << d->from << ' ' << d->to;
    } else {
      const auto& m = std::get<MembershipEdge>(e);
      line << "member " << m.predicate << ' ' << m.box;
    }
    edges.push_back(line.str());
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) out << e << '\n';
  return out.str();
}

// ---- SBN

SequentialGraph random_sbn(Rng& rng, std::size_t min_items, std::size_t max_items) {
  SequentialGraph sbn;
  const auto n = between(rng, min_items, max_items);
  for (std::size_t i = 0; i < n; ++i) {
    SbnItem item;
    if (coin(rng, 0.25)) {
      item.head = pick(rng, kNames);
    } else {
      SynsetId s;
      s.lemma = pick(rng, kLemmas);
      s.pos = *pos_from_char("nvar"[rng.below(4)]);
      s.sense = 1 + static_cast<int>(rng.below(12));
      item.head = s;
    }
    if (n > 1) {
      std::vector<std::string> roles = kRoles;
      rng.shuffle(roles);
      const auto k = rng.below(3);
      for (std::size_t r = 0; r < k; ++r) {
        auto target = rng.below(n - 1);
        if (target >= i) ++target;
        item.satellites.push_back(
            {roles[r], static_cast<int>(target) - static_cast<int>(i)});
      }
      std::stable_sort(item.satellites.begin(), item.satellites.end(),
                       [](const Satellite& a, const Satellite& b) { return a.offset < b.offset; });
    }
    sbn.items.push_back(std::move(item));
  }
  return sbn;
}

// ---- fault injection

Injection inject_clause_fault(const ClauseSet& set, ErrorClass cls, Rng& rng) {
  std::vector<Clause> clauses(set.clauses().begin(), set.clauses().end());
  std::vector<std::string> boxes, entities;
  for (const auto& [name, info] : set.variables()) {
    (info.kind == TermKind::box_variable ? boxes : entities).push_back(name);
  }
  if (entities.empty()) throw Error(ErrorCode::invalid_argument, "fault base has no entity");
  const auto box = box_term(pick(rng, boxes));
  const auto subject = entity_term(pick(rng, entities));
  Injection inj;
  inj.cls = cls;
  inj.location = rng.below(clauses.size() + 1);
  switch (cls) {
    case ErrorClass::illegal_clause_structure:
      // A role clause missing its second argument.
      clauses.insert(clauses.begin() + static_cast<std::ptrdiff_t>(inj.location),
                     Clause(box, pick(rng, kRoles), {subject}));
      break;
    case ErrorClass::free_variable:
      clauses.insert(clauses.begin() + static_cast<std::ptrdiff_t>(inj.location),
                     Clause(box, pick(rng, kRoles), {subject, entity_term("x99")}));
      break;
    case ErrorClass::unknown_relation:
      clauses.insert(clauses.begin() + static_cast<std::ptrdiff_t>(inj.location),
                     Clause(box, "FOO", {subject}));
      break;
    default:
      throw Error(ErrorCode::invalid_argument, "not a clause error class");
  }
  inj.clauses = ClauseSet(std::move(clauses));
  return inj;
}

Injection inject_sbn_fault(const SequentialGraph& sbn, ErrorClass cls, Rng& rng) {
  if (sbn.size() < 2) throw Error(ErrorCode::invalid_argument, "fault base needs two items");
  Injection inj;
  inj.cls = cls;
  inj.sbn = sbn;
  const auto n = static_cast<int>(sbn.size());
  inj.location = rng.below(sbn.size());
  const auto i = static_cast<int>(inj.location);
  auto& sats = inj.sbn.items[inj.location].satellites;
  auto valid_offset = [&] {
    auto target = static_cast<int>(rng.below(sbn.size() - 1));
    if (target >= i) ++target;
    return target - i;
  };
  switch (cls) {
    case ErrorClass::offset_out_of_range: {
      // Fresh role name so the fault cannot double as a duplicate.
      std::string role = "Extent";
      int offset = 0;
      switch (rng.below(3)) {
        case 0: offset = n - i + static_cast<int>(rng.below(4)); break;
        case 1: offset = -i - 1 - static_cast<int>(rng.below(4)); break;
        default: offset = 0; break;
      }
      sats.insert(sats.begin() + static_cast<std::ptrdiff_t>(rng.below(sats.size() + 1)),
                  {role, offset});
      break;
    }
    case ErrorClass::duplicate_role:
      if (sats.empty()) sats.push_back({pick(rng, kRoles), valid_offset()});
      sats.insert(sats.begin() + static_cast<std::ptrdiff_t>(rng.below(sats.size() + 1)),
                  {sats[rng.below(sats.size())].role, valid_offset()});
      break;
    default:
      throw Error(ErrorCode::invalid_argument, "not an SBN error class");
  }
  return inj;
}

// ---- oracles

namespace {

using Fields = std::vector<std::string>;

struct ClauseOracle {
  std::vector<Fields> pred;
  std::set<Fields> gold;
  std::vector<std::string> pred_vars;
  std::vector<TermKind> pred_kinds;
  std::vector<std::string> gold_vars;
  std::vector<TermKind> gold_kinds;
  std::vector<bool> used;
  std::map<std::string, std::string> image;
  std::size_t best = 0;

  std::size_t score() const {
    std::size_t matched = 0;
    for (const auto& f : pred) {
      Fields mapped;
      bool ok = true;
      for (std::size_t k = 0; k < f.size() && ok; ++k) {
        if (k == 1 || !Term::looks_like_variable(f[k])) {
          mapped.push_back(f[k]);
        } else if (auto it = image.find(f[k]); it != image.end()) {
          mapped.push_back(it->second);
        } else {
          ok = false;
        }
      }
      if (ok && gold.count(mapped) != 0) ++matched;
    }
    return matched;
  }

  void search(std::size_t v) {
    if (v == pred_vars.size()) {
      best = std::max(best, score());
      return;
    }
    search(v + 1);  // left unmapped
    for (std::size_t g = 0; g < gold_vars.size(); ++g) {
      if (used[g] || gold_kinds[g] != pred_kinds[v]) continue;
      used[g] = true;
      image[pred_vars[v]] = gold_vars[g];
      search(v + 1);
      image.erase(pred_vars[v]);
      used[g] = false;
    }
  }
};

}  // namespace

std::size_t brute_force_clause_matches(const ClauseSet& pred, const ClauseSet& gold) {
  ClauseOracle o;
  for (const auto& c : pred.clauses()) o.pred.push_back(c.fields());
  for (const auto& c : gold.clauses()) o.gold.insert(c.fields());
  for (const auto& [name, info] : pred.variables()) {
    o.pred_vars.push_back(name);
    o.pred_kinds.push_back(info.kind);
  }
  for (const auto& [name, info] : gold.variables()) {
    o.gold_vars.push_back(name);
    o.gold_kinds.push_back(info.kind);
  }
  o.used.assign(o.gold_vars.size(), false);
  o.search(0);
  return o.best;
}

namespace {

// Triples over node indices; instance triples carry the label in `target`
// and use to = -1.
struct OracleTriple {
  std::string relation;
  long from = 0;
  long to = 0;
  std::string label;
  auto operator<=>(const OracleTriple&) const = default;
};

std::vector<OracleTriple> oracle_triples(const DrsGraph& g) {
  std::vector<OracleTriple> out;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    out.push_back({"instance", static_cast<long>(i), -1,
                   std::to_string(static_cast<int>(g.kind(i))) + ":" + g.label(i)});
  }
  for (const auto& e : g.edges()) {
    if (const auto* r = std::get_if<RoleEdge>(&e)) {
      out.push_back({"role:" + r->role, static_cast<long>(r->from), static_cast<long>(r->to), ""});
    } else if (const auto* d = std::get_if<DiscourseEdge>(&e)) {
      out.push_back({"drel:" + d->relation, static_cast<long>(d->from), static_cast<long>(d->to), ""});
    } else {
      const auto& m = std::get<MembershipEdge>(e);
      out.push_back({"member", static_cast<long>(m.predicate), static_cast<long>(m.box), ""});
    }
  }
  return out;
}

}  // namespace

std::size_t brute_force_graph_matches(const DrsGraph& pred, const DrsGraph& gold) {
  const auto p = oracle_triples(pred);
  const auto gv = oracle_triples(gold);
  const std::set<OracleTriple> g(gv.begin(), gv.end());
  const auto n = pred.node_count();
  const auto m = gold.node_count();
  std::vector<long> image(n, -1);
  std::vector<bool> used(m, false);
  std::size_t best = 0;

  auto score = [&] {
    std::size_t matched = 0;
    for (const auto& t : p) {
      const long from = image[static_cast<std::size_t>(t.from)];
      if (from < 0) continue;
      long to = -1;
      if (t.to >= 0) {
        to = image[static_cast<std::size_t>(t.to)];
        if (to < 0) continue;
      }
      if (g.count({t.relation, from, to, t.label}) != 0) ++matched;
    }
    return matched;
  };
  auto rec = [&](auto&& self, std::size_t v) -> void {
    if (v == n) {
      best = std::max(best, score());
      return;
    }
    self(self, v + 1);
    for (std::size_t j = 0; j < m; ++j) {
      if (used[j]) continue;
      used[j] = true;
      image[v] = static_cast<long>(j);
      self(self, v + 1);
      image[v] = -1;
      used[j] = false;
    }
  };
  rec(rec, 0);
  return best;
}

Eigen::VectorXd dense_forward(const Eigen::MatrixXd& w0, const Eigen::MatrixXd& b,
                              const Eigen::MatrixXd& a, const Eigen::VectorXd& x) {
  const auto d = w0.rows();
  const auto k = w0.cols();
  const auto r = a.rows();
  Eigen::VectorXd h = Eigen::VectorXd::Zero(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      double w = w0(i, j);
      for (Eigen::Index q = 0; q < r; ++q) w += b(i, q) * a(q, j);
      h(i) += w * x(j);
    }
  }
  return h;
}

Eigen::MatrixXd random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = 2.0 * rng.unit() - 1.0;
  }
  return m;
}

// ---- bundled scoring fixtures

std::vector<ScoredRun> score_runs_file(const std::filesystem::path& runs, ScoreMode mode,
                                       const SearchConfig& search) {
  std::istringstream lines(read_text_file(runs));
  std::vector<ScoredRun> out;
  for (std::string line; std::getline(lines, line);) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream fields(line);
    for (std::string x; std::getline(fields, x, '\t');) f.push_back(x);
    const auto pred = runs.parent_path() / f.at(2);
    const auto gold = runs.parent_path() / f.at(3);
    if (mode == ScoreMode::graph) {
      out.push_back({f[0], f[1],
                     corpus_score(load_sbn_corpus(pred, CorpusRole::prediction),
                                  load_sbn_corpus(gold, CorpusRole::gold), search)});
    } else {
      out.push_back({f[0], f[1],
                     corpus_score(load_clause_corpus(pred, CorpusRole::prediction),
                                  load_clause_corpus(gold, CorpusRole::gold), search)});
    }
  }
  return out;
}

// ---- golden files

std::string check_golden(const std::string& name, const std::string& actual) {
  const auto path = golden_dir() / name;
  const char* update = std::getenv("DRS_UPDATE_GOLDEN");
  if (update != nullptr && std::string(update) == "1") {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream(path, std::ios::binary) << actual;
    return {};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return "missing golden file " + path.string() + " (rerun with DRS_UPDATE_GOLDEN=1)";
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto expected = buf.str();
  if (expected == actual) return {};
  std::istringstream e(expected), a(actual);
  std::string el, al;
  for (std::size_t line = 1;; ++line) {
    const bool more_e = static_cast<bool>(std::getline(e, el));
    const bool more_a = static_cast<bool>(std::getline(a, al));
    if (!more_e && !more_a) break;
    if (!more_e || !more_a || el != al) {
      return name + " differs at line " + std::to_string(line) + "\n  expected: " +
             (more_e ? el : "<eof>") + "\n  actual:   " + (more_a ? al : "<eof>");
    }
  }
  return name + " differs in trailing bytes";
}

}  // namespace drs::testing
