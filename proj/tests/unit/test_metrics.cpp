#include "doctest.h"

#include <set>

#include "drs/converter.hpp"
#include "drs/error.hpp"
#include "drs/format_io.hpp"
#include "drs/metrics.hpp"
#include "support.hpp"

using namespace drs;

namespace {

const char* kGold =
    "b1 REF x1\nb1 male \"n.02\" x1\nb1 Name x1 \"tom\"\nb2 REF e1\nb2 climb_up \"v.01\" e1\n"
    "b2 Agent e1 x1\nb2 Theme e1 x2\nb3 REF x2\nb3 telephone_pole \"n.02\" x2\n";

testing::ClauseGen small() {
  testing::ClauseGen gen;
  gen.max_boxes = 2;
  gen.max_entities = 3;
  return gen;
}

ClauseDocument doc(const std::string& id, const std::string& text, Decoded<ClauseSet> drs) {
  return {id, text, std::move(drs)};
}

}  // namespace

TEST_CASE("identity and renaming give F1 1") {
  const auto gold = parse_clause_file(kGold);
  const auto same = counter_f1(gold, gold);
  CHECK(same.f1 == 1.0);
  CHECK(same.matched == gold.size());

  std::string renamed = kGold;
  for (auto [from, to] : {std::pair{"x1", "x9"}, {"b1", "b7"}, {"e1", "e4"}}) {
    for (auto pos = renamed.find(from); pos != std::string::npos; pos = renamed.find(from)) {
      renamed.replace(pos, 2, to);
    }
  }
  CHECK(counter_f1(parse_clause_file(renamed), gold).f1 == 1.0);
}

TEST_CASE("empty prediction") {
  const auto gold = parse_clause_file(kGold);
  const auto r = counter_f1(ClauseSet{}, gold);
  CHECK(r.matched == 0);
  CHECK(r.precision == 0.0);
  CHECK(r.recall == 0.0);
  CHECK(r.f1 == 0.0);
  CHECK(r.gold_total == gold.size());
}

TEST_CASE("ill-formed predictions keep the gold denominator") {
  const auto gold = parse_clause_file(kGold);
  const Decoded<ClauseSet> bad = IllFormed{};
  const auto r = counter_f1(bad, gold);
  CHECK(r.matched == 0);
  CHECK(r.pred_total == 0);
  CHECK(r.gold_total == gold.size());

  const auto bad_gold = parse_clause_file("b1 Agent e1 x1\n", {ParseMode::lenient, nullptr, 0});
  CHECK_THROWS_AS(counter_f1(gold, bad_gold), Error);
}

TEST_CASE("counter agrees with the brute-force oracle") {
  Rng rng(101);
  for (int i = 0; i < 150; ++i) {
    const auto gold = testing::random_clause_set(rng, small());
    const auto pred = i % 2 == 0 ? testing::perturb_clauses(gold, rng, 1 + rng.below(3))
                                 : testing::random_clause_set(rng, small());
    const auto oracle = testing::brute_force_clause_matches(pred, gold);
    CHECK(counter_f1(pred, gold).matched == oracle);
    SearchConfig climb;
    climb.exact_threshold = 0;
    climb.seed = static_cast<std::uint64_t>(i);
    CHECK(counter_f1(pred, gold, climb).matched <= oracle);
  }
}

TEST_CASE("mapping is admissible and reproduces the count") {
  Rng rng(103);
  for (int i = 0; i < 150; ++i) {
    const auto gold = testing::random_clause_set(rng);
    const auto pred = testing::perturb_clauses(testing::rename_variables(gold, rng), rng, 2);
    for (std::size_t threshold : {std::size_t{7}, std::size_t{0}}) {
      SearchConfig search;
      search.exact_threshold = threshold;
      const auto r = counter_f1(pred, gold, search);
      std::set<std::string> sources, targets;
      for (const auto& [p, g] : r.mapping) {
        CHECK(sources.insert(p).second);
        CHECK(targets.insert(g).second);
        CHECK(pred.variables().at(p).kind == gold.variables().at(g).kind);
      }
      CHECK(fine_grained(pred, gold, r.mapping).overall.matched == r.matched);
    }
  }
}

TEST_CASE("swap duality, determinism and monotonicity") {
  Rng rng(107);
  for (int i = 0; i < 150; ++i) {
    const auto a = testing::random_clause_set(rng, small());
    const auto b = testing::perturb_clauses(a, rng, 1 + rng.below(3));
    if (!validate_clauses(b).well_formed()) continue;
    const auto ab = counter_f1(a, b);
    const auto ba = counter_f1(b, a);
    CHECK(ab.precision == doctest::Approx(ba.recall));
    CHECK(ab.recall == doctest::Approx(ba.precision));

    SearchConfig climb;
    climb.exact_threshold = 0;
    climb.seed = 99;
    const auto r1 = counter_f1(b, a, climb);
    const auto r2 = counter_f1(b, a, climb);
    CHECK(r1.matched == r2.matched);
    CHECK(r1.mapping == r2.mapping);

    // Adding back a gold clause under the found mapping never hurts.
    std::vector<Clause> more(b.clauses().begin(), b.clauses().end());
    more.push_back(a[rng.below(a.size())]);
    CHECK(counter_f1(ClauseSet(more), a).matched >= ba.matched);
  }
}

TEST_CASE("smatch identity, permutation and oracle") {
  Rng rng(109);
  for (int i = 0; i < 100; ++i) {
    const auto g = testing::random_graph(rng);
    CHECK(smatch_f1(g, g).f1 == 1.0);
    CHECK(smatch_f1(testing::permute_nodes(g, rng), g).f1 == 1.0);
    const auto p = testing::perturb_graph(g, rng, 1 + rng.below(3));
    const auto oracle = testing::brute_force_graph_matches(p, g);
    CHECK(smatch_f1(p, g).matched == oracle);
  }
}

TEST_CASE("graph triples") {
  const auto g = sbn_to_graph(parse_sbn_file("male.n.02\nclimb_up.v.01 Agent -1\n"));
  const auto triples = graph_triples(g);
  // three nodes, two memberships, one role
  CHECK(triples.size() == 6);
  CHECK(triples[0].relation == "instance");
  CHECK(triples[0].source == "n0");
}

TEST_CASE("fine-grained breakdown") {
  const auto gold = parse_clause_file(kGold);
  const auto same = counter_f1(gold, gold);
  const auto report = fine_grained(gold, gold, same.mapping);
  for (auto c : {FineCategory::drs_operator, FineCategory::semantic_role, FineCategory::concept_,
                 FineCategory::synset_noun, FineCategory::synset_verb}) {
    REQUIRE(report.row(c).has_value());
    CHECK(report.row(c)->f1 == 1.0);
  }
  CHECK_FALSE(report.row(FineCategory::synset_adverb).has_value());
  CHECK_FALSE(report.row(FineCategory::synset_adjective).has_value());

  std::string edited = kGold;
  edited.replace(edited.find("\"v.01\""), 6, "\"v.02\"");
  const auto pred = parse_clause_file(edited);
  const auto r = counter_f1(pred, gold);
  const auto diff = fine_grained(pred, gold, r.mapping);
  CHECK(diff.row(FineCategory::synset_verb)->f1 == 0.0);
  CHECK(diff.row(FineCategory::synset_noun)->f1 == 1.0);
  CHECK(diff.row(FineCategory::concept_)->f1 < 1.0);

  const std::vector<std::pair<std::string, std::string>> bogus = {{"x42", "x1"}};
  try {
    fine_grained(pred, gold, bogus);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::mapping_mismatch);
  }
}

TEST_CASE("length buckets") {
  const auto full = MatchResult::from_counts(3, 3, 3);
  const auto half = MatchResult::from_counts(1, 2, 2);
  const auto rows = length_report({{"a b c", full}, {"x y z", full}, {"one", half}, {"two", full}});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].length == 1);
  CHECK(rows[0].count == 2);
  CHECK(rows[0].mean_f1 == doctest::Approx(0.75));
  CHECK(rows[1].length == 3);
  CHECK(rows[1].mean_f1 == 1.0);
  CHECK_THROWS_AS(length_report({}), Error);
}

TEST_CASE("corpus scoring with one corruption in 547") {
  const auto gold_set = parse_clause_file(kGold);
  std::vector<ClauseDocument> gold, pred;
  for (int i = 0; i < 547; ++i) {
    const auto id = std::to_string(i + 1);
    gold.push_back(doc(id, "Tom climbed up the pole .", gold_set));
    if (i == 200) {
      pred.push_back(doc(id, "", IllFormed{ErrorCode::illegal_clause_structure, 2, "cut", 7}));
    } else {
      pred.push_back(doc(id, "", gold_set));
    }
  }
  const auto score = corpus_score(pred, gold);
  CHECK(score.documents == 547);
  CHECK(score.ill_formed == 1);
  CHECK(format_percent(score.if_percent) == "0.18");
  CHECK(score.micro.pred_total == 546 * gold_set.size());
  CHECK(score.micro.gold_total == 547 * gold_set.size());
  CHECK(score.micro.precision == 1.0);
  CHECK_FALSE(score.per_document[200].well_formed);

  const auto parallel = corpus_score(pred, gold, {}, 4);
  CHECK(parallel.micro.matched == score.micro.matched);
  CHECK(parallel.macro_f1 == score.macro_f1);
}

TEST_CASE("validator findings make a parsed prediction ill-formed") {
  const auto gold_set = parse_clause_file(kGold);
  const auto bad = parse_clause_file("b1 Agent e1 x1\n", {ParseMode::lenient, nullptr, 0});
  const std::vector<ClauseDocument> gold = {doc("1", "a", gold_set), doc("2", "b", gold_set)};
  const std::vector<ClauseDocument> pred = {doc("1", "", gold_set), doc("2", "", bad)};
  const auto score = corpus_score(pred, gold);
  CHECK(score.ill_formed == 1);
  CHECK(format_percent(score.if_percent) == "50.00");
  CHECK(score.micro.matched == gold_set.size());
}

TEST_CASE("corpus alignment is enforced") {
  const auto gold_set = parse_clause_file(kGold);
  const std::vector<ClauseDocument> gold = {doc("1", "a", gold_set)};
  const std::vector<ClauseDocument> other = {doc("2", "a", gold_set)};
  const std::vector<ClauseDocument> none;
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::invalid_argument;
  };
  CHECK(code([&] { corpus_score(other, gold); }) == ErrorCode::alignment_mismatch);
  CHECK(code([&] { corpus_score(none, gold); }) == ErrorCode::alignment_mismatch);
  CHECK(code([&] { corpus_score(none, none); }) == ErrorCode::empty_input);
}

TEST_CASE("graph mode corpus scoring") {
  const auto sbn = parse_sbn_file("male.n.02\nclimb_up.v.01 Agent -1 Time +1\ntime.n.08\n");
  const std::vector<SbnDocument> gold = {{"1", "Tom climbed .", sbn}};
  std::vector<SbnDocument> pred = gold;
  const auto score = corpus_score(pred, gold);
  CHECK(score.mode == ScoreMode::graph);
  CHECK(score.micro.f1 == 1.0);
  CHECK_FALSE(score.fine_grained.has_value());

  auto far = sbn;
  far.items[1].satellites[1].offset = 5;
  pred[0].sbn = far;
  const auto bad = corpus_score(pred, gold);
  CHECK(bad.ill_formed == 1);
  CHECK(bad.micro.pred_total == 0);
}
