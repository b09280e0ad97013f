#include "drs/report.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace drs {

using nlohmann::ordered_json;

std::string group_thousands(std::uint64_t n) {
  auto digits = std::to_string(n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i != 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

namespace {

// Code points, which is what a terminal column count needs for the arrows.
std::size_t display_width(const std::string& s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

enum class Align { left, right };

class TextTable {
 public:
  explicit TextTable(std::vector<Align> align) : align_(std::move(align)) {}

  void row(std::vector<std::string> cells) { rows_.push_back({std::move(cells), false, false}); }
  // Every cell left-aligned, for labels sitting over right-aligned numbers.
  void header(std::vector<std::string> cells) {
    rows_.push_back({std::move(cells), false, true});
  }
  void rule() { rows_.push_back({{}, true, false}); }

  std::string render() const {
    std::vector<std::size_t> width(align_.size(), 0);
    for (const auto& r : rows_) {
      for (std::size_t c = 0; c < r.cells.size(); ++c) {
        width[c] = std::max(width[c], display_width(r.cells[c]));
      }
    }
    std::size_t total = 0;
    for (auto w : width) total += w;
    total += 2 * (width.size() - 1);

    std::string out;
    for (const auto& r : rows_) {
      if (r.is_rule) {
        out += std::string(total, '-') + "\n";
        continue;
      }
      std::string line;
      for (std::size_t c = 0; c < width.size(); ++c) {
        const std::string cell = c < r.cells.size() ? r.cells[c] : std::string();
        const auto pad = std::string(width[c] - display_width(cell), ' ');
        if (c != 0) line += "  ";
        line += r.left || align_[c] == Align::left ? cell + pad : pad + cell;
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line + "\n";
    }
    return out;
  }

 private:
  struct Row {
    std::vector<std::string> cells;
    bool is_rule;
    bool left;
  };
  std::vector<Align> align_;
  std::vector<Row> rows_;
};

std::string pct(double fraction) { return format_percent(100.0 * fraction); }

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

ordered_json result_json(const MatchResult& r) {
  return {{"matched", r.matched}, {"pred_total", r.pred_total}, {"gold_total", r.gold_total},
          {"precision", r.precision}, {"recall", r.recall}, {"f1", r.f1}};
}

ordered_json errors_json(const ValidationReport& report) {
  auto arr = ordered_json::array();
  for (const auto& e : report.errors) {
    arr.push_back({{"class", std::string(to_string(e.cls))},
                   {"location", e.location},
                   {"detail", e.detail}});
  }
  return arr;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

// ---- corpus statistics

std::string render_stats_table(const CorpusStats& stats) {
  std::vector<Align> align{Align::left};
  align.insert(align.end(), stats.languages.size(), Align::right);
  TextTable t(align);
  std::vector<std::string> head{""};
  head.insert(head.end(), stats.languages.begin(), stats.languages.end());
  t.row(head);
  t.rule();
  for (auto split : kSplits) {
    std::vector<std::string> row{std::string(to_string(split))};
    for (const auto& c : stats.counts) {
      const auto& v = c[static_cast<std::size_t>(split)];
      row.push_back(v ? group_thousands(*v) : "/");
    }
    t.row(row);
  }
  t.rule();
  std::vector<std::string> all{"all"};
  for (std::size_t l = 0; l < stats.languages.size(); ++l) {
    all.push_back(group_thousands(stats.total(l)));
  }
  t.row(all);
  return t.render();
}

std::string stats_json(const CorpusStats& stats) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "stats";
  auto langs = ordered_json::array();
  for (std::size_t l = 0; l < stats.languages.size(); ++l) {
    ordered_json entry;
    entry["language"] = stats.languages[l];
    for (auto split : kSplits) {
      const auto& v = stats.counts[l][static_cast<std::size_t>(split)];
      entry[std::string(to_string(split))] = v ? ordered_json(*v) : ordered_json(nullptr);
    }
    entry["all"] = stats.total(l);
    langs.push_back(entry);
  }
  j["languages"] = langs;
  return dump(j);
}

// ---- F1 / IF tables

std::string render_results_table(const ResultsTable& table) {
  std::vector<Align> align{Align::left};
  align.insert(align.end(), 2 * (table.languages.size() + 1), Align::right);
  TextTable t(align);
  std::vector<std::string> langs{""};
  std::vector<std::string> metrics{""};
  for (const auto& l : table.languages) {
    langs.insert(langs.end(), {l, ""});
    metrics.insert(metrics.end(), {"F1↑", "IF↓"});
  }
  langs.insert(langs.end(), {"average", ""});
  metrics.insert(metrics.end(), {"F1↑", "IF↓"});
  t.header(langs);
  t.row(metrics);
  t.rule();
  for (const auto& r : table.rows) {
    std::vector<std::string> row{r.model};
    double f1_sum = 0.0;
    double if_sum = 0.0;
    bool complete = !r.scores.empty();
    for (std::size_t l = 0; l < table.languages.size(); ++l) {
      const auto& s = l < r.scores.size() ? r.scores[l] : std::nullopt;
      if (s) {
        row.insert(row.end(), {pct(s->f1), format_percent(s->if_percent)});
        f1_sum += s->f1;
        if_sum += s->if_percent;
      } else {
        row.insert(row.end(), {"/", "/"});
        complete = false;
      }
    }
    if (complete && !table.languages.empty()) {
      const auto n = static_cast<double>(table.languages.size());
      row.insert(row.end(), {pct(f1_sum / n), format_percent(if_sum / n)});
    } else {
      row.insert(row.end(), {"/", "/"});
    }
    t.row(row);
  }
  std::string out;
  if (!table.title.empty()) out += table.title + "\n";
  return out + t.render();
}

std::string render_fine_grained_table(
    const std::vector<std::pair<std::string, FineGrainedReport>>& columns) {
  std::vector<Align> align{Align::left};
  align.insert(align.end(), columns.size(), Align::right);
  TextTable t(align);
  std::vector<std::string> head{""};
  for (const auto& [language, report] : columns) head.push_back(upper(language));
  t.row(head);
  t.rule();

  auto overall = [](const FineGrainedReport& r) -> std::string {
    return r.overall.empty() ? "/" : pct(r.overall.result().f1);
  };
  std::vector<std::string> all{"All"};
  for (const auto& c : columns) all.push_back(overall(c.second));
  t.row(all);
  t.rule();

  const std::pair<FineCategory, const char*> rows[] = {
      {FineCategory::drs_operator, "DRS operator"},
      {FineCategory::semantic_role, "Semantic Role"},
      {FineCategory::concept_, "Concept"},
      {FineCategory::synset_noun, "Synset-Noun"},
      {FineCategory::synset_verb, "    -Verb"},
      {FineCategory::synset_adjective, "    -Adjective"},
      {FineCategory::synset_adverb, "    -Adverb"},
  };
  for (const auto& [category, name] : rows) {
    std::vector<std::string> row{name};
    for (const auto& c : columns) {
      const auto r = c.second.row(category);
      row.push_back(r ? pct(r->f1) : "/");
    }
    t.row(row);
  }
  return t.render();
}

std::string render_length_table(const std::vector<LengthRow>& rows) {
  TextTable t({Align::right, Align::right, Align::right});
  t.row({"length", "mean F1", "count"});
  t.rule();
  for (const auto& r : rows) {
    t.row({std::to_string(r.length), pct(r.mean_f1), std::to_string(r.count)});
  }
  return t.render();
}

namespace {

ordered_json corpus_json(const CorpusScore& score) {
  ordered_json j;
  j["mode"] = std::string(to_string(score.mode));
  j["documents"] = score.documents;
  j["ill_formed"] = score.ill_formed;
  j["if_percent"] = format_percent(score.if_percent);
  j["micro"] = result_json(score.micro);
  j["macro_f1"] = score.macro_f1;
  if (score.fine_grained) {
    ordered_json fg;
    fg["overall"] = result_json(score.fine_grained->overall.result());
    for (std::size_t c = 0; c < kFineCategoryCount; ++c) {
      const auto cat = static_cast<FineCategory>(c);
      const auto r = score.fine_grained->row(cat);
      fg[std::string(to_string(cat))] = r ? result_json(*r) : ordered_json(nullptr);
    }
    j["fine_grained"] = fg;
  } else {
    j["fine_grained"] = nullptr;
  }
  auto lengths = ordered_json::array();
  for (const auto& r : score.lengths) {
    lengths.push_back({{"length", r.length}, {"mean_f1", r.mean_f1}, {"count", r.count}});
  }
  j["lengths"] = lengths;
  auto docs = ordered_json::array();
  for (const auto& d : score.per_document) {
    ordered_json doc;
    doc["id"] = d.id;
    doc["well_formed"] = d.well_formed;
    doc["errors"] = errors_json(d.report);
    doc["matched"] = d.result.matched;
    doc["pred_total"] = d.result.pred_total;
    doc["gold_total"] = d.result.gold_total;
    doc["f1"] = d.result.f1;
    docs.push_back(doc);
  }
  j["per_document"] = docs;
  return j;
}

ordered_json search_json(const SearchConfig& search) {
  return {{"seed", search.seed},
          {"restarts", search.restarts},
          {"exact_threshold", search.exact_threshold}};
}

}  // namespace

std::string render_score_human(const CorpusScore& score, const std::string& model,
                               const std::string& language, bool macro) {
  std::vector<ScoredRun> runs{{model, language, score}};
  return render_runs_human(runs, macro);
}

std::string score_json(const CorpusScore& score, const SearchConfig& search) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "score";
  j["search"] = search_json(search);
  j.update(corpus_json(score));
  return dump(j);
}

std::string render_runs_human(const std::vector<ScoredRun>& runs, bool macro) {
  std::vector<std::string> languages;
  std::vector<std::string> models;
  for (const auto& r : runs) {
    if (std::find(languages.begin(), languages.end(), r.language) == languages.end()) {
      languages.push_back(r.language);
    }
    if (std::find(models.begin(), models.end(), r.model) == models.end()) {
      models.push_back(r.model);
    }
  }
  auto find = [&](const std::string& model, const std::string& language) -> const ScoredRun* {
    for (const auto& r : runs) {
      if (r.model == model && r.language == language) return &r;
    }
    return nullptr;
  };

  std::string out;
  for (auto mode : {ScoreMode::clause, ScoreMode::graph}) {
    ResultsTable table;
    table.title = std::string(to_string(mode)) + (macro ? " (macro F1)" : "");
    table.languages = languages;
    bool any = false;
    for (const auto& m : models) {
      ResultsRow row{m, {}};
      bool has_row = false;
      for (const auto& l : languages) {
        const auto* r = find(m, l);
        if (r != nullptr && r->score.mode == mode) {
          row.scores.push_back(LanguageScore{macro ? r->score.macro_f1 : r->score.micro.f1,
                                             r->score.if_percent});
          has_row = true;
        } else {
          row.scores.push_back(std::nullopt);
        }
      }
      if (has_row) {
        table.rows.push_back(std::move(row));
        any = true;
      }
    }
    if (any) out += render_results_table(table) + "\n";
  }

  for (const auto& m : models) {
    std::vector<std::pair<std::string, FineGrainedReport>> columns;
    for (const auto& l : languages) {
      const auto* r = find(m, l);
      if (r != nullptr && r->score.fine_grained) columns.emplace_back(l, *r->score.fine_grained);
    }
    if (columns.empty()) continue;
    out += "fine-grained F1 (" + m + ")\n" + render_fine_grained_table(columns) + "\n";
  }

  for (const auto& r : runs) {
    out += "length (" + r.model + ", " + r.language + ")\n" + render_length_table(r.score.lengths) +
           "\n";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

std::string runs_json(const std::vector<ScoredRun>& runs, const SearchConfig& search) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "score-runs";
  j["search"] = search_json(search);
  auto arr = ordered_json::array();
  for (const auto& r : runs) {
    ordered_json run;
    run["model"] = r.model;
    run["language"] = r.language;
    run.update(corpus_json(r.score));
    arr.push_back(run);
  }
  j["runs"] = arr;
  return dump(j);
}

// ---- validation

std::string render_validation_human(const std::vector<NamedReport>& reports) {
  std::string out;
  std::vector<ValidationReport> plain;
  for (const auto& r : reports) {
    plain.push_back(r.report);
    if (r.report.well_formed()) {
      out += r.id + "  ok\n";
      continue;
    }
    for (const auto& e : r.report.errors) {
      out += r.id + "  " + std::string(to_string(e.cls)) + " at " + std::to_string(e.location) +
             ": " + e.detail + "\n";
    }
  }
  const auto ill = static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(),
                    [](const NamedReport& r) { return !r.report.well_formed(); }));
  out += "IF " + format_percent(if_rate(plain)) + " (" + std::to_string(ill) + " of " +
         std::to_string(reports.size()) + " ill-formed)\n";
  return out;
}

std::string validation_json(const std::vector<NamedReport>& reports, const std::string& mode) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "validation";
  j["mode"] = mode;
  std::vector<ValidationReport> plain;
  std::size_t ill = 0;
  auto docs = ordered_json::array();
  for (const auto& r : reports) {
    plain.push_back(r.report);
    ill += r.report.well_formed() ? 0 : 1;
    docs.push_back(
        {{"id", r.id}, {"well_formed", r.report.well_formed()}, {"errors", errors_json(r.report)}});
  }
  j["documents"] = reports.size();
  j["ill_formed"] = ill;
  j["if_percent"] = format_percent(if_rate(plain));
  j["reports"] = docs;
  return dump(j);
}

// ---- schedules and batches

std::string render_schedule_human(const StageSchedule& schedule, const std::string& regime) {
  TextTable t({Align::right, Align::left, Align::right, Align::left, Align::left});
  t.row({"#", "stage", "epochs", "data", "note"});
  t.rule();
  for (std::size_t i = 0; i < schedule.stages.size(); ++i) {
    const auto& s = schedule.stages[i];
    t.row({std::to_string(i + 1), s.name, std::to_string(s.epochs), s.selector.describe(), s.note});
  }
  return "regime " + regime + ", batch size " + std::to_string(schedule.batch_size) + "\n" +
         t.render();
}

std::string schedule_json(const StageSchedule& schedule, const std::string& regime) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "schedule";
  j["regime"] = regime;
  j["batch_size"] = schedule.batch_size;
  auto stages = ordered_json::array();
  for (const auto& s : schedule.stages) {
    auto parts = ordered_json::array();
    for (const auto& [language, split] : s.selector.parts) {
      parts.push_back({{"language", language}, {"split", std::string(to_string(split))}});
    }
    stages.push_back(
        {{"name", s.name}, {"epochs", s.epochs}, {"data", parts}, {"note", s.note}});
  }
  j["stages"] = stages;
  return dump(j);
}

std::string batch_record(const Batch& batch, std::size_t stage) {
  ordered_json j;
  j["stage"] = stage;
  j["epoch"] = batch.epoch;
  j["batch"] = batch.index;
  auto arr = ordered_json::array();
  for (const auto& inst : batch.instances) {
    arr.push_back({{"x", inst.input}, {"y", inst.output.tokens}});
  }
  j["instances"] = arr;
  return j.dump() + "\n";
}

// ---- LoRA

namespace {

std::string scientific(double v) {
  std::ostringstream s;
  s.precision(2);
  s << std::scientific << v;
  return s.str();
}

}  // namespace

std::string render_lora_human(const LoraDemoResult& r) {
  std::ostringstream out;
  out << "d=" << r.d << " k=" << r.k << " r=" << r.r << "\n"
      << "full parameters      " << group_thousands(r.counts.full) << "\n"
      << "trainable (LoRA)     " << group_thousands(r.counts.lora) << "\n"
      << "ratio                " << format_percent(100.0 * r.counts.ratio) << "%\n"
      << "toy model (q,v)      " << group_thousands(r.toy_model.lora) << " of "
      << group_thousands(r.toy_model.full) << "\n"
      << "layers checked       " << r.layers_checked << "\n"
      << "forward rel. error   " << scientific(r.worst_forward_error) << " (tol "
      << scientific(r.forward_tolerance) << ")\n"
      << "gradient rel. error  " << scientific(r.worst_gradient_error) << " (tol "
      << scientific(r.gradient_tolerance) << ")\n"
      << (r.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string lora_json(const LoraDemoResult& r) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "lora-demo";
  j["d"] = r.d;
  j["k"] = r.k;
  j["r"] = r.r;
  j["full"] = r.counts.full;
  j["lora"] = r.counts.lora;
  j["ratio"] = r.counts.ratio;
  j["toy_model"] = {{"full", r.toy_model.full}, {"lora", r.toy_model.lora}};
  j["layers_checked"] = r.layers_checked;
  j["worst_forward_error"] = r.worst_forward_error;
  j["worst_gradient_error"] = r.worst_gradient_error;
  j["passed"] = r.passed();
  return dump(j);
}

}  // namespace drs
