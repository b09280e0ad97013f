#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "drs/format_io.hpp"
#include "drs/sequential.hpp"

namespace drs {

enum class Split { silver, train, dev, test };
inline constexpr std::array<Split, 4> kSplits{Split::silver, Split::train, Split::dev, Split::test};

std::string_view to_string(Split split);
// Throws Error(invalid_selector).
Split split_from_string(std::string_view text);
inline bool trainable(Split split) { return split == Split::silver || split == Split::train; }

struct InstanceRecord {
  std::string id;
  std::string source_text;
  SymbolSequence target;
};

// Per-language gold/silver splits. A split with no index file is absent,
// which is different from present and empty.
//
// On disk: <root>/<lang>/<split>.idx, one `id<TAB>path` line per instance,
// paths relative to the index file. A .clf path is read as a clause
// document, a .sbn path as an SBN document; the source sentence comes from
// the `%%%` line. An optional <root>/languages file fixes the column order
// (one code per line); otherwise languages are sorted.
class CorpusManifest {
 public:
  // Throws Error(parse_failure) and Error(duplicate_id).
  static CorpusManifest load(const std::filesystem::path& root, const ParseOptions& options = {});

  void add_language(const std::string& language);
  // Marks a split present even if it ends up with no records.
  void declare(const std::string& language, Split split);
  // Throws Error(duplicate_id).
  void add(const std::string& language, Split split, InstanceRecord record);

  const std::vector<std::string>& languages() const { return languages_; }
  bool has_language(std::string_view language) const;
  bool has_split(std::string_view language, Split split) const;
  // Empty for an absent split. Throws Error(unknown_language).
  const std::vector<InstanceRecord>& records(std::string_view language, Split split) const;
  std::size_t size() const;

 private:
  struct Entry {
    std::array<std::optional<std::vector<InstanceRecord>>, 4> splits;
    std::array<std::unordered_set<std::string>, 4> ids;
  };
  const Entry& entry(std::string_view language) const;

  std::vector<std::string> languages_;
  std::map<std::string, Entry, std::less<>> entries_;
};

// ---- selectors and batches

// Which (language, split) parts form a training pool.
struct DataSelector {
  std::vector<std::pair<std::string, Split>> parts;

  static DataSelector of(const std::vector<std::string>& languages, const std::vector<Split>& splits);
  bool empty() const { return parts.empty(); }
  // "en:train+en:silver" style rendering.
  std::string describe() const;
  bool operator==(const DataSelector&) const = default;
};

// Language-blind record: nothing identifies where the instance came from.
struct TrainingInstance {
  std::vector<std::string> input;  // X, whitespace tokens of the source text
  SymbolSequence output;           // Y
  std::size_t pool_index = 0;
};

struct Batch {
  std::size_t epoch = 0;
  std::size_t index = 0;  // within the epoch
  std::vector<TrainingInstance> instances;
};

struct BatchOptions {
  std::size_t batch_size = 8;
  std::uint64_t seed = 0;
  // Draw each epoch's instances uniformly with replacement instead of
  // shuffling the pool.
  bool with_replacement = false;
};

// Deterministic stream over the pooled selection. Each epoch is a seeded
// permutation of the pool cut into batches; the last short batch is kept.
class BatchStream {
 public:
  // Throws Error(invalid_selector) for dev/test parts or an empty selector,
  // Error(unknown_language) and Error(empty_pool).
  BatchStream(const CorpusManifest& manifest, const DataSelector& selector, BatchOptions options);

  std::size_t pool_size() const { return pool_.size(); }
  std::size_t batches_per_epoch() const;
  std::vector<Batch> epoch(std::size_t e) const;
  // Sequential access across epochs.
  Batch next();

  // Audit only: where a pool instance came from. Not part of any batch.
  const std::pair<std::string, Split>& origin(std::size_t pool_index) const {
    return origins_[pool_index];
  }
  const std::string& instance_id(std::size_t pool_index) const { return ids_[pool_index]; }

 private:
  std::vector<std::size_t> order(std::size_t e) const;

  BatchOptions options_;
  std::vector<TrainingInstance> pool_;
  std::vector<std::pair<std::string, Split>> origins_;
  std::vector<std::string> ids_;
  std::size_t epoch_ = 0;
  std::size_t cursor_ = 0;
  std::vector<std::size_t> current_;
};

// Throws Error(invalid_argument) on an empty source text or target.
TrainingInstance make_instance(const InstanceRecord& record, std::size_t pool_index);

// Same as constructing a BatchStream; kept as the operation name.
BatchStream cross_lingual_batches(const CorpusManifest& manifest, const DataSelector& selector,
                                  BatchOptions options);

// ---- stage schedules

struct Stage {
  std::string name;
  DataSelector selector;
  int epochs = 0;
  std::string note;
};

struct StageSchedule {
  std::vector<Stage> stages;
  std::size_t batch_size = 8;
};

enum class Regime { base, base_plus, cross_lingual, cross_lingual_plus };
std::string_view to_string(Regime regime);
// Throws Error(unknown_regime).
Regime regime_from_string(std::string_view text);

struct ScheduleOptions {
  int mixed_epochs = 20;
  int finetune_epochs = 100;
  std::size_t batch_size = 8;
  // Mixed stage pools gold train + silver of every language; when false it
  // pools silver only.
  bool mixed_includes_train = true;
};

// Language-specific stage: gold train, or silver when train is absent or
// empty. Throws Error(unknown_language).
StageSchedule finetune_stage(const CorpusManifest& manifest, const std::string& language,
                             const std::string& base_checkpoint,
                             const ScheduleOptions& options = {});

// Throws Error(unknown_regime), Error(unknown_language), and
// Error(invalid_selector) for base+ on a language without gold train.
StageSchedule regime_schedule(Regime regime, const CorpusManifest& manifest,
                              const std::optional<std::string>& language,
                              const ScheduleOptions& options = {});

// ---- statistics

struct CorpusStats {
  std::vector<std::string> languages;
  // counts[language index][split]; nullopt for an absent split
  std::vector<std::array<std::optional<std::size_t>, 4>> counts;

  std::size_t total(std::size_t language) const;
};

CorpusStats corpus_stats(const CorpusManifest& manifest);

}  // namespace drs
