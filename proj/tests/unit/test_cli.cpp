#include "doctest.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "drs/corpus.hpp"
#include "drs/datamix.hpp"
#include "drs/report.hpp"
#include "support.hpp"

using namespace drs;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run drs_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return (testing::data_dir() / rel).string(); }
std::string manifest() { return (testing::source_dir() / "data" / "manifest").string(); }

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(drs_run({}).code == cli::kExitUsageError);
  CHECK(drs_run({"frobnicate"}).code == cli::kExitUsageError);
  CHECK(drs_run({"score", "--mode", "tree", "a", "b"}).code == cli::kExitUsageError);
  CHECK(drs_run({"score", "only-one"}).code == cli::kExitUsageError);
  CHECK(drs_run({"validate"}).code == cli::kExitUsageError);
}

TEST_CASE("data errors exit 1") {
  CHECK(drs_run({"validate", "/nonexistent.clf"}).code == cli::kExitDataError);
  CHECK(drs_run({"mix", manifest(), "--regime", "base+", "--language", "it"}).code ==
        cli::kExitDataError);
  CHECK(drs_run({"mix", manifest(), "--regime", "multilingual"}).code == cli::kExitDataError);
  CHECK(drs_run({"lora-demo", "--d", "8", "--k", "8", "--r", "8"}).code == cli::kExitDataError);
}

TEST_CASE("help shows defaults") {
  const auto help = drs_run({"score", "--help"});
  CHECK(help.code == cli::kExitOk);
  CHECK(help.out.find("--seed") != std::string::npos);
  CHECK(help.out.find("DRS_SEED") != std::string::npos);
  CHECK(help.out.find("[0]") != std::string::npos);
  CHECK(help.out.find("[4]") != std::string::npos);
  CHECK(help.out.find("[7]") != std::string::npos);
}

TEST_CASE("the run banner echoes the effective config") {
  const auto r = drs_run({"score", data("fig3.clf"), data("fig3.clf"), "--seed", "7"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.err.find("seed=7") != std::string::npos);
  CHECK(r.err.find("restarts=4") != std::string::npos);
  CHECK(r.out.find("100.00") != std::string::npos);
}

TEST_CASE("scoring is byte-identical across runs and job counts") {
  const auto pred = data("runs/pred/base/en.clf");
  const auto gold = data("runs/gold/en.clf");
  const auto a = drs_run({"score", "--mode", "clause", pred, gold, "--seed", "7"});
  const auto b = drs_run({"score", "--mode", "clause", pred, gold, "--seed", "7"});
  const auto c = drs_run({"score", "--mode", "clause", pred, gold, "--seed", "7", "--jobs", "4"});
  CHECK(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  const auto m1 = drs_run({"score", pred, gold, "--seed", "7", "--format", "machine"});
  const auto m2 = drs_run({"score", pred, gold, "--seed", "7", "--format", "machine", "--jobs", "3"});
  CHECK(m1.out == m2.out);
}

TEST_CASE("validation names the offending class") {
  const auto r = drs_run({"validate", "--mode", "sbn", data("bad_offset.sbn")});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("offset-out-of-range") != std::string::npos);
  CHECK(drs_run({"validate", "--mode", "sbn", "--strict", data("bad_offset.sbn")}).code ==
        cli::kExitDataError);
  CHECK(drs_run({"validate", "--strict", data("fig3.clf")}).code == cli::kExitOk);
}

TEST_CASE("subcommands are thin adapters") {
  const auto stats = drs_run({"stats", manifest()});
  CHECK(stats.out == render_stats_table(corpus_stats(CorpusManifest::load(manifest()))));

  const auto runs = drs_run({"score", "--runs", data("runs/clause_runs.tsv")});
  CHECK(runs.out == render_runs_human(testing::score_runs_file(
                        testing::data_dir() / "runs" / "clause_runs.tsv", ScoreMode::clause)));
  const auto graph = drs_run({"score", "--mode", "graph", "--runs", data("runs/graph_runs.tsv"),
                              "--format", "machine"});
  CHECK(graph.out == runs_json(testing::score_runs_file(testing::data_dir() / "runs" /
                                                            "graph_runs.tsv",
                                                        ScoreMode::graph),
                               {}));

  std::vector<NamedReport> reports;
  for (const auto& d : load_sbn_corpus(data("bad_offset.sbn"), CorpusRole::prediction)) {
    reports.push_back({d.id, validate_sbn(std::get<SequentialGraph>(d.sbn))});
  }
  CHECK(drs_run({"validate", "--mode", "sbn", data("bad_offset.sbn")}).out ==
        render_validation_human(reports));

  const auto schedule = drs_run({"mix", manifest(), "--regime", "base+", "--language", "de",
                                 "--schedule-only"});
  CHECK(schedule.out == render_schedule_human(
                            regime_schedule(Regime::base_plus, CorpusManifest::load(manifest()),
                                            "de"),
                            "base+"));
}

TEST_CASE("mix streams one JSON record per batch") {
  const auto a = drs_run({"mix", manifest(), "--regime", "cross-lingual", "--epochs", "1",
                          "--batch-size", "4", "--seed", "3"});
  const auto b = drs_run({"mix", manifest(), "--regime", "cross-lingual", "--epochs", "1",
                          "--batch-size", "4", "--seed", "3"});
  CHECK(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  // pool: en 12+6, de 5+3, it 4, nl 3 = 33 instances -> 9 batches of 4
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 9);
  CHECK(a.out.find("\"stage\":0") != std::string::npos);
}

TEST_CASE("convert produces the requested form") {
  const auto r = drs_run({"convert", "--from", "clause", "--to", "clause-seq", data("fig3.clf")});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("<sep>") != std::string::npos);
  CHECK(drs_run({"convert", "--from", "sbn", "--to", "clause", data("fig3.sbn")}).code ==
        cli::kExitUsageError);
}

TEST_CASE("flags override the config file") {
  const auto path = std::filesystem::temp_directory_path() / "drs_cli_config.toml";
  {
    std::ofstream cfg(path);
    cfg << "[score]\nseed = 11\nrestarts = 2\n";
  }
  const auto r = drs_run({"--config", path.string(), "score", data("fig3.clf"), data("fig3.clf"),
                          "--seed", "5"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.err.find("seed=5") != std::string::npos);
  CHECK(r.err.find("restarts=2") != std::string::npos);
  std::filesystem::remove(path);
}
