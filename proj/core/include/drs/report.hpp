#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drs/datamix.hpp"
#include "drs/lora.hpp"
#include "drs/metrics.hpp"
#include "drs/validator.hpp"

namespace drs {

// Version of every machine-readable report. Bump on any schema change.
inline constexpr int kReportSchemaVersion = 1;

// "127303" -> "127,303"
std::string group_thousands(std::uint64_t n);

// ---- corpus statistics (silver/train/dev/test rows, one column per language)

std::string render_stats_table(const CorpusStats& stats);
std::string stats_json(const CorpusStats& stats);

// ---- F1 / IF tables

struct LanguageScore {
  double f1 = 0.0;  // fraction
  double if_percent = 0.0;
};

struct ResultsRow {
  std::string model;
  std::vector<std::optional<LanguageScore>> scores;  // one per language
};

struct ResultsTable {
  std::string title;  // optional caption line, e.g. "clause"
  std::vector<std::string> languages;
  std::vector<ResultsRow> rows;
};

// F1 and IF per language plus an average column; "/" for a missing run and
// for the average of an incomplete row.
std::string render_results_table(const ResultsTable& table);

// Fine-grained F1 per category, one column per language; "/" for a
// category with no clause on either side.
std::string render_fine_grained_table(
    const std::vector<std::pair<std::string, FineGrainedReport>>& columns);

std::string render_length_table(const std::vector<LengthRow>& rows);

// Single corpus: results row, fine-grained table (clause mode) and lengths.
// `macro` puts the macro-averaged F1 in the results table instead of micro.
std::string render_score_human(const CorpusScore& score, const std::string& model,
                               const std::string& language, bool macro = false);
std::string score_json(const CorpusScore& score, const SearchConfig& search);

// Several runs; each run is scored independently.
struct ScoredRun {
  std::string model;
  std::string language;
  CorpusScore score;
};
std::string render_runs_human(const std::vector<ScoredRun>& runs, bool macro = false);
std::string runs_json(const std::vector<ScoredRun>& runs, const SearchConfig& search);

// ---- validation

struct NamedReport {
  std::string id;
  ValidationReport report;
};

std::string render_validation_human(const std::vector<NamedReport>& reports);
std::string validation_json(const std::vector<NamedReport>& reports, const std::string& mode);

// ---- schedules and batches

std::string render_schedule_human(const StageSchedule& schedule, const std::string& regime);
std::string schedule_json(const StageSchedule& schedule, const std::string& regime);

// One JSON object per line:
// {"stage":..,"epoch":..,"batch":..,"instances":[{"x":[..],"y":[..]}]}
std::string batch_record(const Batch& batch, std::size_t stage);

// ---- LoRA

std::string render_lora_human(const LoraDemoResult& result);
std::string lora_json(const LoraDemoResult& result);

}  // namespace drs
