#include "drs/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "drs/converter.hpp"
#include "drs/error.hpp"
#include "drs/random.hpp"
#include "matching.hpp"

namespace drs {

MatchResult MatchResult::from_counts(std::size_t matched, std::size_t pred_total,
                                     std::size_t gold_total) {
  MatchResult r;
  r.matched = matched;
  r.pred_total = pred_total;
  r.gold_total = gold_total;
  r.precision = pred_total == 0 ? 0.0 : static_cast<double>(matched) / pred_total;
  r.recall = gold_total == 0 ? 0.0 : static_cast<double>(matched) / gold_total;
  const double sum = r.precision + r.recall;
  r.f1 = sum == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / sum;
  return r;
}

namespace {

constexpr int kBoxSpace = 0;
constexpr int kContentSpace = 1;

int slot_for(detail::FactTable& table, const Term& term) {
  switch (term.kind) {
    case TermKind::box_variable: return table.variable(term.label, kBoxSpace);
    case TermKind::entity_variable: return table.variable(term.label, kContentSpace);
    case TermKind::constant: return table.constant(term.label);
  }
  return table.constant(term.label);
}

void add_clauses(detail::FactTable& table, const ClauseSet& set) {
  for (const auto& c : set.clauses()) {
    const int box = slot_for(table, c.box());
    const auto args = c.args();
    switch (args.size()) {
      case 1: table.add(c.relation(), {box, slot_for(table, args[0])}); break;
      case 2:
        table.add(c.relation(), {box, slot_for(table, args[0]), slot_for(table, args[1])});
        break;
      default:
        table.add(c.relation(), {box, slot_for(table, args[0]), slot_for(table, args[1]),
                                 slot_for(table, args[2])});
        break;
    }
  }
}

std::string node_name(NodeId id) { return "n" + std::to_string(id); }

std::string instance_label(const DrsGraph& g, NodeId id) {
  switch (g.kind(id)) {
    case NodeKind::predicate: return "pred:" + g.label(id);
    case NodeKind::entity: return "entity:" + g.label(id);
    case NodeKind::box: return "box";
  }
  return "box";
}

void add_graph(detail::FactTable& table, const DrsGraph& g) {
  std::vector<int> vars(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) {
    vars[i] = table.variable(node_name(i),
                             g.kind(i) == NodeKind::box ? kBoxSpace : kContentSpace);
  }
  for (NodeId i = 0; i < g.node_count(); ++i) {
    table.add("instance", {vars[i], table.constant(instance_label(g, i))});
  }
  for (const auto& e : g.edges()) {
    if (const auto* r = std::get_if<RoleEdge>(&e)) {
      table.add("role:" + r->role, {vars[r->from], vars[r->to]});
    } else if (const auto* d = std::get_if<DiscourseEdge>(&e)) {
      table.add("drel:" + d->relation, {vars[d->from], vars[d->to]});
    } else {
      const auto& m = std::get<MembershipEdge>(e);
      table.add("member", {vars[m.predicate], vars[m.box]});
    }
  }
}

MatchResult run_search(const detail::FactTable& pred, const detail::FactTable& gold,
                       const SearchConfig& search) {
  auto outcome = detail::best_mapping(pred, gold, search);
  auto result = MatchResult::from_counts(outcome.matched, pred.facts().size(),
                                         gold.facts().size());
  for (std::size_t v = 0; v < outcome.mapping.size(); ++v) {
    if (outcome.mapping[v] >= 0) {
      result.mapping.emplace_back(pred.name(v), gold.name(outcome.mapping[v]));
    }
  }
  return result;
}

}  // namespace

MatchResult counter_f1(const ClauseSet& pred, const ClauseSet& gold, const SearchConfig& search,
                       const RelationRegistry& registry) {
  if (!validate_clauses(gold, registry).well_formed()) {
    throw Error(ErrorCode::gold_not_well_formed, "gold clause set does not validate");
  }
  detail::Interner interner;
  detail::FactTable p(interner);
  detail::FactTable g(interner);
  add_clauses(p, pred);
  add_clauses(g, gold);
  return run_search(p, g, search);
}

MatchResult counter_f1(const Decoded<ClauseSet>& pred, const ClauseSet& gold,
                       const SearchConfig& search, const RelationRegistry& registry) {
  if (const auto* set = std::get_if<ClauseSet>(&pred)) {
    return counter_f1(*set, gold, search, registry);
  }
  if (!validate_clauses(gold, registry).well_formed()) {
    throw Error(ErrorCode::gold_not_well_formed, "gold clause set does not validate");
  }
  return MatchResult::from_counts(0, 0, gold.size());
}

std::vector<Triple> graph_triples(const DrsGraph& g) {
  std::vector<Triple> out;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    out.push_back({"instance", node_name(i), instance_label(g, i)});
  }
  for (const auto& e : g.edges()) {
    if (const auto* r = std::get_if<RoleEdge>(&e)) {
      out.push_back({"role:" + r->role, node_name(r->from), node_name(r->to)});
    } else if (const auto* d = std::get_if<DiscourseEdge>(&e)) {
      out.push_back({"drel:" + d->relation, node_name(d->from), node_name(d->to)});
    } else {
      const auto& m = std::get<MembershipEdge>(e);
      out.push_back({"member", node_name(m.predicate), node_name(m.box)});
    }
  }
  return out;
}

MatchResult smatch_f1(const DrsGraph& pred, const DrsGraph& gold, const SearchConfig& search) {
  detail::Interner interner;
  detail::FactTable p(interner);
  detail::FactTable g(interner);
  add_graph(p, pred);
  add_graph(g, gold);
  return run_search(p, g, search);
}

MatchResult smatch_f1(const Decoded<DrsGraph>& pred, const DrsGraph& gold,
                      const SearchConfig& search) {
  if (const auto* graph = std::get_if<DrsGraph>(&pred)) return smatch_f1(*graph, gold, search);
  return MatchResult::from_counts(0, 0, graph_triples(gold).size());
}

// ---- fine-grained

std::string_view to_string(FineCategory category) {
  switch (category) {
    case FineCategory::drs_operator: return "drs-operator";
    case FineCategory::semantic_role: return "semantic-role";
    case FineCategory::concept_: return "concept";
    case FineCategory::synset_noun: return "synset-n";
    case FineCategory::synset_verb: return "synset-v";
    case FineCategory::synset_adjective: return "synset-a";
    case FineCategory::synset_adverb: return "synset-r";
  }
  return "concept";
}

std::optional<MatchResult> FineGrainedReport::row(FineCategory category) const {
  const auto& c = categories[static_cast<std::size_t>(category)];
  if (c.empty()) return std::nullopt;
  return c.result();
}

FineGrainedReport& FineGrainedReport::operator+=(const FineGrainedReport& other) {
  overall += other.overall;
  for (std::size_t i = 0; i < kFineCategoryCount; ++i) categories[i] += other.categories[i];
  return *this;
}

namespace {

std::vector<FineCategory> categories_of(const Clause& c) {
  std::vector<FineCategory> out;
  switch (c.category()) {
    case RelationCategory::drs_operator: out.push_back(FineCategory::drs_operator); break;
    case RelationCategory::semantic_role: out.push_back(FineCategory::semantic_role); break;
    case RelationCategory::concept_: out.push_back(FineCategory::concept_); break;
  }
  if (auto s = c.synset()) {
    switch (s->pos) {
      case PartOfSpeech::noun: out.push_back(FineCategory::synset_noun); break;
      case PartOfSpeech::verb: out.push_back(FineCategory::synset_verb); break;
      case PartOfSpeech::adjective: out.push_back(FineCategory::synset_adjective); break;
      case PartOfSpeech::adverb: out.push_back(FineCategory::synset_adverb); break;
    }
  }
  return out;
}

void count_gold(FineGrainedReport& report, const ClauseSet& gold) {
  for (const auto& c : gold.clauses()) {
    ++report.overall.gold_total;
    for (auto cat : categories_of(c)) ++report.categories[static_cast<std::size_t>(cat)].gold_total;
  }
}

}  // namespace

FineGrainedReport fine_grained(const ClauseSet& pred, const ClauseSet& gold,
                               const std::vector<std::pair<std::string, std::string>>& mapping) {
  std::map<std::string, std::string> map;
  for (const auto& [p, g] : mapping) {
    if (pred.variables().count(p) == 0) {
      throw Error(ErrorCode::mapping_mismatch, "mapping names unknown prediction variable " + p);
    }
    if (gold.variables().count(g) == 0) {
      throw Error(ErrorCode::mapping_mismatch, "mapping names unknown gold variable " + g);
    }
    map[p] = g;
  }
  std::set<Clause> gold_set(gold.clauses().begin(), gold.clauses().end());

  FineGrainedReport report;
  count_gold(report, gold);
  for (const auto& c : pred.clauses()) {
    const auto cats = categories_of(c);
    ++report.overall.pred_total;
    for (auto cat : cats) ++report.categories[static_cast<std::size_t>(cat)].pred_total;

    bool complete = true;
    auto image = [&](const Term& t) {
      if (!t.is_variable()) return t;
      auto it = map.find(t.label);
      if (it == map.end()) {
        complete = false;
        return t;
      }
      return Term{t.kind, it->second};
    };
    Term box = image(c.box());
    std::vector<Term> args;
    for (const auto& a : c.args()) args.push_back(image(a));
    if (!complete) continue;
    if (gold_set.count(Clause(std::move(box), c.relation(), std::move(args))) == 0) continue;
    ++report.overall.matched;
    for (auto cat : cats) ++report.categories[static_cast<std::size_t>(cat)].matched;
  }
  return report;
}

// ---- length buckets

std::vector<LengthRow> length_report(
    const std::vector<std::pair<std::string, MatchResult>>& pairs) {
  if (pairs.empty()) throw Error(ErrorCode::empty_input, "no documents for length report");
  std::map<std::size_t, std::pair<double, std::size_t>> buckets;
  for (const auto& [text, result] : pairs) {
    std::istringstream in(text);
    std::size_t length = 0;
    std::string word;
    while (in >> word) ++length;
    auto& b = buckets[length];
    b.first += result.f1;
    ++b.second;
  }
  std::vector<LengthRow> rows;
  for (const auto& [length, b] : buckets) {
    rows.push_back({length, b.first / static_cast<double>(b.second), b.second});
  }
  return rows;
}

// ---- corpus scoring

std::string_view to_string(ScoreMode mode) {
  return mode == ScoreMode::clause ? "clause" : "graph";
}

std::uint64_t document_seed(std::uint64_t master, std::size_t index) {
  return splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(index)));
}

namespace {

template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  const auto count = std::min<std::size_t>(jobs, n);
  for (std::size_t w = 0; w < count; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

template <typename Doc>
void check_alignment(const std::vector<Doc>& pred, const std::vector<Doc>& gold) {
  if (pred.size() != gold.size()) {
    throw Error(ErrorCode::alignment_mismatch, std::to_string(pred.size()) +
                                                   " predicted vs " + std::to_string(gold.size()) +
                                                   " gold documents");
  }
  if (gold.empty()) throw Error(ErrorCode::empty_input, "no documents to score");
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i].id != gold[i].id) {
      throw Error(ErrorCode::alignment_mismatch,
                  "document " + std::to_string(i) + ": id " + pred[i].id + " vs " + gold[i].id);
    }
  }
}

SearchConfig for_document(const SearchConfig& search, std::size_t i) {
  SearchConfig c = search;
  c.seed = document_seed(search.seed, i);
  return c;
}

template <typename Doc>
void finish(CorpusScore& score, const std::vector<Doc>& gold) {
  MatchCounts total;
  double f1_sum = 0.0;
  std::vector<ValidationReport> reports;
  std::vector<std::pair<std::string, MatchResult>> by_length;
  for (std::size_t i = 0; i < score.per_document.size(); ++i) {
    const auto& d = score.per_document[i];
    total += MatchCounts{d.result.matched, d.result.pred_total, d.result.gold_total};
    f1_sum += d.result.f1;
    reports.push_back(d.report);
    score.ill_formed += d.well_formed ? 0 : 1;
    by_length.emplace_back(gold[i].source_text, d.result);
  }
  score.documents = score.per_document.size();
  score.micro = total.result();
  score.macro_f1 = f1_sum / static_cast<double>(score.documents);
  score.if_percent = if_rate(reports);
  score.lengths = length_report(by_length);
}

}  // namespace

CorpusScore corpus_score(const std::vector<ClauseDocument>& pred,
                         const std::vector<ClauseDocument>& gold, const SearchConfig& search,
                         unsigned jobs, const RelationRegistry& registry) {
  check_alignment(pred, gold);
  for (const auto& g : gold) {
    const auto* set = std::get_if<ClauseSet>(&g.drs);
    if (set == nullptr || !validate_clauses(*set, registry).well_formed()) {
      throw Error(ErrorCode::gold_not_well_formed, "gold document " + g.id + " does not validate");
    }
  }

  CorpusScore score;
  score.mode = ScoreMode::clause;
  score.per_document.resize(gold.size());
  std::vector<FineGrainedReport> fine(gold.size());
  parallel_for(gold.size(), jobs, [&](std::size_t i) {
    const auto& gold_set = std::get<ClauseSet>(gold[i].drs);
    auto& doc = score.per_document[i];
    doc.id = gold[i].id;
    if (const auto* ill = std::get_if<IllFormed>(&pred[i].drs)) {
      doc.report = report_for(*ill);
    } else {
      doc.report = validate_clauses(std::get<ClauseSet>(pred[i].drs), registry);
    }
    doc.well_formed = doc.report.well_formed();
    if (!doc.well_formed) {
      doc.result = MatchResult::from_counts(0, 0, gold_set.size());
      fine[i] = fine_grained(ClauseSet{}, gold_set, {});
      return;
    }
    const auto& pred_set = std::get<ClauseSet>(pred[i].drs);
    doc.result = counter_f1(pred_set, gold_set, for_document(search, i), registry);
    fine[i] = fine_grained(pred_set, gold_set, doc.result.mapping);
  });

  FineGrainedReport all;
  for (const auto& f : fine) all += f;
  score.fine_grained = all;
  finish(score, gold);
  return score;
}

CorpusScore corpus_score(const std::vector<SbnDocument>& pred,
                         const std::vector<SbnDocument>& gold, const SearchConfig& search,
                         unsigned jobs) {
  check_alignment(pred, gold);
  std::vector<DrsGraph> gold_graphs(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto* sbn = std::get_if<SequentialGraph>(&gold[i].sbn);
    if (sbn == nullptr || !validate_sbn(*sbn).well_formed()) {
      throw Error(ErrorCode::gold_not_well_formed,
                  "gold document " + gold[i].id + " does not validate");
    }
    gold_graphs[i] = sbn_to_graph(*sbn);
  }

  CorpusScore score;
  score.mode = ScoreMode::graph;
  score.per_document.resize(gold.size());
  parallel_for(gold.size(), jobs, [&](std::size_t i) {
    auto& doc = score.per_document[i];
    doc.id = gold[i].id;
    if (const auto* ill = std::get_if<IllFormed>(&pred[i].sbn)) {
      doc.report = report_for(*ill);
    } else {
      doc.report = validate_sbn(std::get<SequentialGraph>(pred[i].sbn));
    }
    doc.well_formed = doc.report.well_formed();
    if (!doc.well_formed) {
      doc.result = MatchResult::from_counts(0, 0, graph_triples(gold_graphs[i]).size());
      return;
    }
    const auto pred_graph = sbn_to_graph(std::get<SequentialGraph>(pred[i].sbn));
    doc.result = smatch_f1(pred_graph, gold_graphs[i], for_document(search, i));
  });
  finish(score, gold);
  return score;
}

}  // namespace drs
