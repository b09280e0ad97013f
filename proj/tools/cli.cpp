#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "drs/converter.hpp"
#include "drs/corpus.hpp"
#include "drs/datamix.hpp"
#include "drs/error.hpp"
#include "drs/format_io.hpp"
#include "drs/lora.hpp"
#include "drs/metrics.hpp"
#include "drs/random.hpp"
#include "drs/report.hpp"
#include "drs/validator.hpp"

namespace drs::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::vector<std::string> inputs;
  std::string output;
  std::string mode = "clause";
  std::string format = "human";
  std::string registry;
  bool strict = false;

  // score
  std::uint64_t seed = 0;
  int restarts = 4;
  std::size_t exact_threshold = 7;
  unsigned jobs = 1;
  std::string model = "model";
  std::string language = "corpus";
  std::string runs;
  bool macro = false;

  // convert
  std::string from = "clause";
  std::string to = "sbn";

  // mix
  std::string regime = "cross-lingual";
  std::string mix_language;
  std::size_t batch_size = 8;
  std::size_t epochs = 0;
  bool with_replacement = false;
  bool schedule_only = false;
  bool silver_only_mix = false;

  // lora-demo
  std::uint64_t d = 1024;
  std::uint64_t k = 1024;
  std::uint64_t r = 32;
  std::size_t layers = 100;
};

// Writes to the named file, or to `fallback` when no file was given.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw Error(ErrorCode::invalid_argument, "cannot write " + path);
    stream_ = file_.get();
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

bool machine(const RunConfig& c) { return c.format == "machine"; }

SearchConfig search_of(const RunConfig& c) {
  return SearchConfig{c.seed, c.restarts, c.exact_threshold};
}

const RelationRegistry& registry_of(const RunConfig& c, std::optional<RelationRegistry>& holder) {
  if (c.registry.empty()) return RelationRegistry::bundled();
  holder = RelationRegistry::from_file(c.registry);
  return *holder;
}

bool sbn_mode(const std::string& mode) { return mode == "sbn" || mode == "graph"; }

// ---- validate

int do_validate(const RunConfig& c, std::ostream& out) {
  std::optional<RelationRegistry> holder;
  const auto& registry = registry_of(c, holder);
  std::vector<NamedReport> reports;
  if (sbn_mode(c.mode)) {
    for (const auto& d : load_sbn_corpus(c.inputs.at(0), CorpusRole::prediction)) {
      const auto* ill = std::get_if<IllFormed>(&d.sbn);
      reports.push_back({d.id, ill ? report_for(*ill) : validate_sbn(std::get<SequentialGraph>(d.sbn))});
    }
  } else {
    for (const auto& d : load_clause_corpus(c.inputs.at(0), CorpusRole::prediction, registry)) {
      const auto* ill = std::get_if<IllFormed>(&d.drs);
      reports.push_back(
          {d.id, ill ? report_for(*ill) : validate_clauses(std::get<ClauseSet>(d.drs), registry)});
    }
  }
  Sink sink(c.output, out);
  sink.get() << (machine(c) ? validation_json(reports, sbn_mode(c.mode) ? "sbn" : "clause")
                            : render_validation_human(reports));
  if (c.strict) {
    for (const auto& r : reports) {
      if (!r.report.well_formed()) return kExitDataError;
    }
  }
  return kExitOk;
}

// ---- convert

std::string with_source(const std::string& source, const std::string& body) {
  return source.empty() ? body : "%%% " + source + "\n" + body;
}

int do_convert(const RunConfig& c, std::ostream& out) {
  std::optional<RelationRegistry> holder;
  const auto& registry = registry_of(c, holder);
  const bool from_seq = c.from == "clause-seq" || c.from == "sbn-seq";
  const bool from_clause = c.from == "clause" || c.from == "clause-seq";
  const bool to_clause = c.to == "clause" || c.to == "clause-seq";
  if (!from_clause && to_clause) {
    throw CLI::ValidationError("--to", "graph/SBN input cannot be converted back to clauses");
  }

  // Documents are decoded from the input form; a .seq file is read as
  // linear form whatever its extension says.
  const fs::path input = c.inputs.at(0);
  if (from_seq && !fs::is_directory(input) && input.extension() != ".seq") {
    throw Error(ErrorCode::invalid_argument, "linear input must be a .seq file");
  }

  std::vector<std::string> pieces;
  bool linear_output = c.to == "clause-seq" || c.to == "sbn-seq";
  if (from_clause) {
    for (const auto& d : load_clause_corpus(input, CorpusRole::gold, registry)) {
      const auto& set = std::get<ClauseSet>(d.drs);
      if (c.to == "clause") {
        pieces.push_back(with_source(d.source_text, serialize_clause_file(set)));
      } else if (c.to == "clause-seq") {
        pieces.push_back(symbols_to_text(linearize_clauses(set)));
      } else {
        const auto sbn = graph_to_sbn(clauses_to_graph(set, registry));
        pieces.push_back(c.to == "sbn" ? with_source(d.source_text, serialize_sbn_file(sbn))
                                       : symbols_to_text(linearize_sbn(sbn)));
      }
    }
  } else {
    for (const auto& d : load_sbn_corpus(input, CorpusRole::gold)) {
      const auto& sbn = std::get<SequentialGraph>(d.sbn);
      pieces.push_back(c.to == "sbn" ? with_source(d.source_text, serialize_sbn_file(sbn))
                                     : symbols_to_text(linearize_sbn(sbn)));
    }
  }

  Sink sink(c.output, out);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (linear_output) {
      sink.get() << pieces[i] << "\n";
    } else {
      if (i != 0) sink.get() << "\n";
      sink.get() << pieces[i];
    }
  }
  return kExitOk;
}

// ---- score

CorpusScore score_pair(const RunConfig& c, const fs::path& pred, const fs::path& gold,
                       const RelationRegistry& registry) {
  if (sbn_mode(c.mode)) {
    return corpus_score(load_sbn_corpus(pred, CorpusRole::prediction),
                        load_sbn_corpus(gold, CorpusRole::gold), search_of(c), c.jobs);
  }
  return corpus_score(load_clause_corpus(pred, CorpusRole::prediction, registry),
                      load_clause_corpus(gold, CorpusRole::gold, registry), search_of(c), c.jobs,
                      registry);
}

int do_score(const RunConfig& c, std::ostream& out) {
  std::optional<RelationRegistry> holder;
  const auto& registry = registry_of(c, holder);
  Sink sink(c.output, out);
  if (c.runs.empty()) {
    if (c.inputs.size() != 2) {
      throw CLI::ValidationError("score", "expects PRED and GOLD, or --runs FILE");
    }
    const auto score = score_pair(c, c.inputs[0], c.inputs[1], registry);
    sink.get() << (machine(c) ? score_json(score, search_of(c))
                              : render_score_human(score, c.model, c.language, c.macro));
    return kExitOk;
  }

  if (!c.inputs.empty()) throw CLI::ValidationError("score", "--runs takes no positional inputs");
  const fs::path runs_file = c.runs;
  std::istringstream lines(read_text_file(runs_file));
  std::vector<ScoredRun> runs;
  std::size_t lineno = 0;
  for (std::string line; std::getline(lines, line);) {
    ++lineno;
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> f;
    std::istringstream fields(line);
    for (std::string x; std::getline(fields, x, '\t');) f.push_back(x);
    if (f.size() != 4) {
      throw Error(ErrorCode::parse_failure,
                  c.runs + ": expected model<TAB>language<TAB>pred<TAB>gold", lineno);
    }
    const auto base = runs_file.parent_path();
    runs.push_back({f[0], f[1], score_pair(c, base / f[2], base / f[3], registry)});
  }
  sink.get() << (machine(c) ? runs_json(runs, search_of(c)) : render_runs_human(runs, c.macro));
  return kExitOk;
}

// ---- mix and stats

int do_mix(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto manifest = CorpusManifest::load(c.inputs.at(0));
  ScheduleOptions options;
  options.batch_size = c.batch_size;
  options.mixed_includes_train = !c.silver_only_mix;
  std::optional<std::string> language;
  if (!c.mix_language.empty()) language = c.mix_language;
  const auto schedule = regime_schedule(regime_from_string(c.regime), manifest, language, options);

  Sink sink(c.output, out);
  if (c.schedule_only) {
    sink.get() << (machine(c) ? schedule_json(schedule, c.regime)
                              : render_schedule_human(schedule, c.regime));
    return kExitOk;
  }
  err << render_schedule_human(schedule, c.regime);
  for (std::size_t s = 0; s < schedule.stages.size(); ++s) {
    const auto& stage = schedule.stages[s];
    BatchOptions bo;
    bo.batch_size = c.batch_size;
    bo.seed = document_seed(c.seed, s);
    bo.with_replacement = c.with_replacement;
    const BatchStream stream(manifest, stage.selector, bo);
    const auto epochs = c.epochs == 0 ? static_cast<std::size_t>(stage.epochs)
                                      : std::min<std::size_t>(c.epochs, stage.epochs);
    for (std::size_t e = 0; e < epochs; ++e) {
      for (const auto& batch : stream.epoch(e)) sink.get() << batch_record(batch, s);
    }
  }
  return kExitOk;
}

int do_stats(const RunConfig& c, std::ostream& out) {
  const auto stats = corpus_stats(CorpusManifest::load(c.inputs.at(0)));
  Sink sink(c.output, out);
  sink.get() << (machine(c) ? stats_json(stats) : render_stats_table(stats));
  return kExitOk;
}

int do_lora(const RunConfig& c, std::ostream& out) {
  const auto result = run_lora_demo(c.d, c.k, c.r, c.layers, c.seed);
  Sink sink(c.output, out);
  sink.get() << (machine(c) ? lora_json(result) : render_lora_human(result));
  return result.passed() ? kExitOk : kExitDataError;
}

// ---- wiring

void add_format(CLI::App* sub, RunConfig& c) {
  sub->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"human", "machine"}))
      ->capture_default_str();
  sub->add_option("-o,--output", c.output, "Write the report here instead of stdout");
}

void add_search(CLI::App* sub, RunConfig& c) {
  sub->add_option("--seed", c.seed, "Master seed (env DRS_SEED)")
      ->envname("DRS_SEED")
      ->capture_default_str();
  sub->add_option("--restarts", c.restarts, "Random restarts for hill-climbing")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_option("--exact-threshold", c.exact_threshold,
                  "Exhaustive search up to this many prediction variables/nodes")
      ->capture_default_str();
  sub->add_option("--jobs", c.jobs, "Worker threads (env DRS_JOBS)")
      ->envname("DRS_JOBS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

std::string banner(const std::string& sub, const RunConfig& c) {
  std::ostringstream b;
  b << "drs " << sub;
  if (sub == "validate" || sub == "score") b << " mode=" << c.mode;
  if (sub == "score") {
    b << " seed=" << c.seed << " restarts=" << c.restarts
      << " exact_threshold=" << c.exact_threshold << " jobs=" << c.jobs
      << " average=" << (c.macro ? "macro" : "micro");
  }
  if (sub == "convert") b << " from=" << c.from << " to=" << c.to;
  if (sub == "mix") {
    b << " regime=" << c.regime << " language=" << (c.mix_language.empty() ? "-" : c.mix_language)
      << " batch_size=" << c.batch_size << " seed=" << c.seed
      << " epochs=" << (c.epochs == 0 ? std::string("schedule") : std::to_string(c.epochs))
      << " with_replacement=" << (c.with_replacement ? "yes" : "no");
  }
  if (sub == "lora-demo") {
    b << " d=" << c.d << " k=" << c.k << " r=" << c.r << " layers=" << c.layers
      << " seed=" << c.seed;
  }
  if (sub == "validate" || sub == "score" || sub == "convert") {
    b << " registry=" << (c.registry.empty() ? "bundled" : c.registry);
  }
  if (sub != "convert") b << " format=" << c.format;
  if (sub == "validate") b << " strict=" << (c.strict ? "yes" : "no");
  return b.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"DRS toolkit: validate, convert and score DRS clause/graph data, "
               "plan cross-lingual batches, check LoRA numerics."};
  app.name("drs");
  app.set_config("--config", "", "Optional TOML/INI config file; flags override it");
  app.require_subcommand(1, 1);
  app.fallthrough();

  auto* validate = app.add_subcommand("validate", "Check well-formedness of clause or SBN documents");
  validate->add_option("input", c.inputs, "Corpus file or directory")->required()->expected(1);
  validate->add_option("--mode", c.mode, "Representation")
      ->check(CLI::IsMember({"clause", "sbn", "graph"}))
      ->capture_default_str();
  validate->add_flag("--strict", c.strict, "Exit 1 when any document is ill-formed");
  validate->add_option("--registry", c.registry, "Arity registry TSV (default: bundled)");
  add_format(validate, c);

  auto* convert = app.add_subcommand("convert", "Convert between clause, SBN and linear forms");
  convert->add_option("input", c.inputs, "Input file or directory")->required()->expected(1);
  const std::vector<std::string> forms{"clause", "sbn", "clause-seq", "sbn-seq"};
  convert->add_option("--from", c.from, "Input form")->check(CLI::IsMember(forms))->capture_default_str();
  convert->add_option("--to", c.to, "Output form")->check(CLI::IsMember(forms))->capture_default_str();
  convert->add_option("--registry", c.registry, "Arity registry TSV (default: bundled)");
  convert->add_option("-o,--output", c.output, "Write here instead of stdout");

  auto* score = app.add_subcommand("score", "Score predictions against gold");
  score->add_option("inputs", c.inputs, "PRED GOLD (files or directories)")->expected(0, 2);
  score->add_option("--mode", c.mode, "clause (clause F1) or graph (SBN, graph F1)")
      ->check(CLI::IsMember({"clause", "graph", "sbn"}))
      ->capture_default_str();
  score->add_option("--model", c.model, "Row label in the results table")->capture_default_str();
  score->add_option("--language", c.language, "Column label in the results table")
      ->capture_default_str();
  score->add_option("--runs", c.runs,
                    "TSV of model, language, pred, gold (paths relative to the file)");
  score->add_flag("--macro", c.macro, "Macro-averaged F1 in the results table");
  score->add_option("--registry", c.registry, "Arity registry TSV (default: bundled)");
  add_search(score, c);
  add_format(score, c);

  auto* mix = app.add_subcommand("mix", "Emit a regime's stage schedule and its training batches");
  mix->add_option("manifest", c.inputs, "Corpus manifest directory")->required()->expected(1);
  mix->add_option("--regime", c.regime, "base, base+, cross-lingual or cross-lingual+")
      ->capture_default_str();
  mix->add_option("--language", c.mix_language, "Target language (all regimes but cross-lingual)");
  mix->add_option("--batch-size", c.batch_size, "Instances per batch")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mix->add_option("--seed", c.seed, "Master seed (env DRS_SEED)")
      ->envname("DRS_SEED")
      ->capture_default_str();
  mix->add_option("--epochs", c.epochs, "Cap epochs per stage (0: the schedule's count)")
      ->capture_default_str();
  mix->add_flag("--with-replacement", c.with_replacement, "Sample with replacement per epoch");
  mix->add_flag("--schedule-only", c.schedule_only, "Print the schedule, no batches");
  mix->add_flag("--silver-only-mix", c.silver_only_mix,
                "Mixed stage pools silver data only (default: train + silver)");
  add_format(mix, c);

  auto* stats = app.add_subcommand("stats", "Corpus statistics per language and split");
  stats->add_option("manifest", c.inputs, "Corpus manifest directory")->required()->expected(1);
  add_format(stats, c);

  auto* lora = app.add_subcommand("lora-demo", "LoRA parameter counts and gradient check");
  lora->add_option("--d", c.d, "Output dimension")->capture_default_str();
  lora->add_option("--k", c.k, "Input dimension")->capture_default_str();
  lora->add_option("--r", c.r, "Rank")->capture_default_str();
  lora->add_option("--layers", c.layers, "Random small layers to check")->capture_default_str();
  lora->add_option("--seed", c.seed, "Seed (env DRS_SEED)")->envname("DRS_SEED")->capture_default_str();
  add_format(lora, c);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  CLI::App* sub = app.get_subcommands().front();
  const auto name = sub->get_name();
  err << banner(name, c) << "\n";
  try {
    if (sub == validate) return do_validate(c, out);
    if (sub == convert) return do_convert(c, out);
    if (sub == score) return do_score(c, out);
    if (sub == mix) return do_mix(c, out, err);
    if (sub == stats) return do_stats(c, out);
    return do_lora(c, out);
  } catch (const CLI::ParseError& e) {
    err << "drs " << name << ": " << e.what() << "\n";
    return kExitUsageError;
  } catch (const Error& e) {
    err << "drs " << name << ": " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "drs " << name << ": " << e.what() << "\n";
    return kExitDataError;
  }
}

}  // namespace drs::cli
