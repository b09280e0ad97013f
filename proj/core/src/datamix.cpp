#include "drs/datamix.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "drs/error.hpp"
#include "drs/random.hpp"

namespace drs {

namespace fs = std::filesystem;

std::string_view to_string(Split split) {
  switch (split) {
    case Split::silver: return "silver";
    case Split::train: return "train";
    case Split::dev: return "dev";
    case Split::test: return "test";
  }
  return "silver";
}

Split split_from_string(std::string_view text) {
  for (auto s : kSplits) {
    if (to_string(s) == text) return s;
  }
  throw Error(ErrorCode::invalid_selector, "unknown split '" + std::string(text) + "'");
}

// ---- manifest

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::parse_failure, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> read_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

InstanceRecord load_record(const std::string& id, const fs::path& path,
                           const ParseOptions& options) {
  Representation repr;
  if (path.extension() == ".clf") {
    repr = Representation::clause;
  } else if (path.extension() == ".sbn") {
    repr = Representation::sbn;
  } else {
    throw Error(ErrorCode::parse_failure, path.string() + ": expected a .clf or .sbn file");
  }
  const auto text = read_file(path);
  const auto chunks = split_documents(text);
  if (chunks.size() != 1) {
    throw Error(ErrorCode::parse_failure,
                path.string() + ": expected one document, found " + std::to_string(chunks.size()));
  }
  ParsedDocument doc;
  try {
    doc = parse_document(chunks.front(), repr, path.string(), options);
  } catch (const Error& e) {
    throw Error(ErrorCode::parse_failure, path.string() + ": " + e.what(), e.line());
  }
  InstanceRecord record;
  record.id = id;
  record.source_text = doc.source_text;
  if (const auto* set = std::get_if<ClauseSet>(&doc.representation)) {
    record.target = linearize_clauses(*set);
  } else {
    record.target = linearize_sbn(std::get<SequentialGraph>(doc.representation));
  }
  return record;
}

void load_index(CorpusManifest& manifest, const std::string& language, Split split,
                const fs::path& index, const ParseOptions& options) {
  manifest.declare(language, split);
  const auto lines = read_lines(read_file(index));
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto& line = lines[n];
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos || tab == 0 ||
        tab + 1 == line.size()) {
      throw Error(ErrorCode::parse_failure, index.string() + ": expected id<TAB>path", n + 1);
    }
    const auto id = line.substr(0, tab);
    const auto path = index.parent_path() / line.substr(tab + 1);
    manifest.add(language, split, load_record(id, path, options));
  }
}

}  // namespace

CorpusManifest CorpusManifest::load(const fs::path& root, const ParseOptions& options) {
  if (!fs::is_directory(root)) {
    throw Error(ErrorCode::parse_failure, root.string() + " is not a directory");
  }
  std::vector<std::string> languages;
  if (fs::exists(root / "languages")) {
    for (const auto& line : read_lines(read_file(root / "languages"))) {
      if (line.empty() || line.front() == '#') continue;
      if (!fs::is_directory(root / line)) {
        throw Error(ErrorCode::parse_failure, "listed language '" + line + "' has no directory");
      }
      languages.push_back(line);
    }
  } else {
    for (const auto& e : fs::directory_iterator(root)) {
      if (e.is_directory()) languages.push_back(e.path().filename().string());
    }
    std::sort(languages.begin(), languages.end());
  }

  CorpusManifest manifest;
  for (const auto& language : languages) {
    manifest.add_language(language);
    for (auto split : kSplits) {
      const auto index = root / language / (std::string(to_string(split)) + ".idx");
      if (fs::exists(index)) load_index(manifest, language, split, index, options);
    }
  }
  return manifest;
}

void CorpusManifest::add_language(const std::string& language) {
  if (entries_.try_emplace(language).second) languages_.push_back(language);
}

void CorpusManifest::declare(const std::string& language, Split split) {
  add_language(language);
  auto& slot = entries_.find(language)->second.splits[static_cast<std::size_t>(split)];
  if (!slot) slot.emplace();
}

void CorpusManifest::add(const std::string& language, Split split, InstanceRecord record) {
  declare(language, split);
  auto& e = entries_.find(language)->second;
  const auto i = static_cast<std::size_t>(split);
  if (!e.ids[i].insert(record.id).second) {
    throw Error(ErrorCode::duplicate_id, "duplicate id '" + record.id + "' in " + language + "/" +
                                             std::string(to_string(split)));
  }
  e.splits[i]->push_back(std::move(record));
}

bool CorpusManifest::has_language(std::string_view language) const {
  return entries_.find(language) != entries_.end();
}

const CorpusManifest::Entry& CorpusManifest::entry(std::string_view language) const {
  auto it = entries_.find(language);
  if (it == entries_.end()) {
    throw Error(ErrorCode::unknown_language, "language '" + std::string(language) + "' not in manifest");
  }
  return it->second;
}

bool CorpusManifest::has_split(std::string_view language, Split split) const {
  auto it = entries_.find(language);
  return it != entries_.end() && it->second.splits[static_cast<std::size_t>(split)].has_value();
}

const std::vector<InstanceRecord>& CorpusManifest::records(std::string_view language,
                                                           Split split) const {
  static const std::vector<InstanceRecord> none;
  const auto& slot = entry(language).splits[static_cast<std::size_t>(split)];
  return slot ? *slot : none;
}

std::size_t CorpusManifest::size() const {
  std::size_t n = 0;
  for (const auto& [language, e] : entries_) {
    for (const auto& s : e.splits) n += s ? s->size() : 0;
  }
  return n;
}

// ---- selectors and batches

DataSelector DataSelector::of(const std::vector<std::string>& languages,
                              const std::vector<Split>& splits) {
  DataSelector s;
  for (const auto& l : languages) {
    for (auto split : splits) s.parts.emplace_back(l, split);
  }
  return s;
}

std::string DataSelector::describe() const {
  std::string out;
  for (const auto& [language, split] : parts) {
    if (!out.empty()) out += '+';
    out += language + ":" + std::string(to_string(split));
  }
  return out;
}

TrainingInstance make_instance(const InstanceRecord& record, std::size_t pool_index) {
  TrainingInstance t;
  std::istringstream in(record.source_text);
  for (std::string w; in >> w;) t.input.push_back(std::move(w));
  if (t.input.empty()) {
    throw Error(ErrorCode::invalid_argument, "instance " + record.id + " has no source tokens");
  }
  if (record.target.tokens.empty()) {
    throw Error(ErrorCode::invalid_argument, "instance " + record.id + " has an empty target");
  }
  t.output = record.target;
  t.pool_index = pool_index;
  return t;
}

BatchStream::BatchStream(const CorpusManifest& manifest, const DataSelector& selector,
                         BatchOptions options)
    : options_(options) {
  if (options_.batch_size == 0) throw Error(ErrorCode::invalid_argument, "batch size must be >= 1");
  if (selector.empty()) throw Error(ErrorCode::invalid_selector, "empty selector");
  for (const auto& [language, split] : selector.parts) {
    if (!trainable(split)) {
      throw Error(ErrorCode::invalid_selector,
                  std::string(to_string(split)) + " data is not allowed in training batches");
    }
    for (const auto& r : manifest.records(language, split)) {
      pool_.push_back(make_instance(r, pool_.size()));
      origins_.emplace_back(language, split);
      ids_.push_back(r.id);
    }
  }
  if (pool_.empty()) {
    throw Error(ErrorCode::empty_pool, "selector " + selector.describe() + " selects nothing");
  }
}

std::size_t BatchStream::batches_per_epoch() const {
  return (pool_.size() + options_.batch_size - 1) / options_.batch_size;
}

std::vector<std::size_t> BatchStream::order(std::size_t e) const {
  Rng rng(splitmix64(options_.seed ^ splitmix64(static_cast<std::uint64_t>(e))));
  std::vector<std::size_t> idx(pool_.size());
  if (options_.with_replacement) {
    for (auto& i : idx) i = rng.below(pool_.size());
  } else {
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    rng.shuffle(idx);
  }
  return idx;
}

std::vector<Batch> BatchStream::epoch(std::size_t e) const {
  const auto idx = order(e);
  std::vector<Batch> out;
  for (std::size_t start = 0; start < idx.size(); start += options_.batch_size) {
    Batch b;
    b.epoch = e;
    b.index = out.size();
    const auto end = std::min(idx.size(), start + options_.batch_size);
    for (std::size_t i = start; i < end; ++i) b.instances.push_back(pool_[idx[i]]);
    out.push_back(std::move(b));
  }
  return out;
}

Batch BatchStream::next() {
  if (current_.empty() || cursor_ >= current_.size()) {
    if (!current_.empty()) ++epoch_;
    current_ = order(epoch_);
    cursor_ = 0;
  }
  Batch b;
  b.epoch = epoch_;
  b.index = cursor_ / options_.batch_size;
  const auto end = std::min(current_.size(), cursor_ + options_.batch_size);
  for (; cursor_ < end; ++cursor_) b.instances.push_back(pool_[current_[cursor_]]);
  return b;
}

BatchStream cross_lingual_batches(const CorpusManifest& manifest, const DataSelector& selector,
                                  BatchOptions options) {
  return BatchStream(manifest, selector, options);
}

// ---- schedules

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::base: return "base";
    case Regime::base_plus: return "base+";
    case Regime::cross_lingual: return "cross-lingual";
    case Regime::cross_lingual_plus: return "cross-lingual+";
  }
  return "base";
}

Regime regime_from_string(std::string_view text) {
  for (auto r : {Regime::base, Regime::base_plus, Regime::cross_lingual,
                 Regime::cross_lingual_plus}) {
    if (to_string(r) == text) return r;
  }
  throw Error(ErrorCode::unknown_regime, "unknown regime '" + std::string(text) + "'");
}

namespace {

bool has_gold_train(const CorpusManifest& manifest, const std::string& language) {
  return !manifest.records(language, Split::train).empty();
}

// Gold train, or silver when there is none.
Stage monolingual_stage(const CorpusManifest& manifest, const std::string& language,
                        const std::string& name, int epochs) {
  Stage s;
  s.name = name;
  s.epochs = epochs;
  if (has_gold_train(manifest, language)) {
    s.selector = DataSelector::of({language}, {Split::train});
  } else {
    s.selector = DataSelector::of({language}, {Split::silver});
    s.note = "no gold train data; silver used instead";
  }
  return s;
}

Stage mixed_stage(const CorpusManifest& manifest, const ScheduleOptions& options) {
  Stage s;
  s.name = "cross-lingual";
  s.epochs = options.mixed_epochs;
  s.note = "language-blind pool; keep the last-epoch checkpoint";
  for (const auto& language : manifest.languages()) {
    if (options.mixed_includes_train && manifest.has_split(language, Split::train)) {
      s.selector.parts.emplace_back(language, Split::train);
    }
    if (manifest.has_split(language, Split::silver)) {
      s.selector.parts.emplace_back(language, Split::silver);
    }
  }
  return s;
}

const std::string& require_language(const CorpusManifest& manifest,
                                    const std::optional<std::string>& language, Regime regime) {
  if (!language) {
    throw Error(ErrorCode::unknown_language,
                "regime " + std::string(to_string(regime)) + " needs a language");
  }
  if (!manifest.has_language(*language)) {
    throw Error(ErrorCode::unknown_language, "language '" + *language + "' not in manifest");
  }
  return *language;
}

}  // namespace

StageSchedule finetune_stage(const CorpusManifest& manifest, const std::string& language,
                             const std::string& base_checkpoint, const ScheduleOptions& options) {
  if (!manifest.has_language(language)) {
    throw Error(ErrorCode::unknown_language, "language '" + language + "' not in manifest");
  }
  StageSchedule schedule;
  schedule.batch_size = options.batch_size;
  auto stage = monolingual_stage(manifest, language, "fine-tune", options.finetune_epochs);
  const auto from = "starts from " + base_checkpoint;
  stage.note = stage.note.empty() ? from : from + "; " + stage.note;
  schedule.stages.push_back(std::move(stage));
  return schedule;
}

StageSchedule regime_schedule(Regime regime, const CorpusManifest& manifest,
                              const std::optional<std::string>& language,
                              const ScheduleOptions& options) {
  StageSchedule schedule;
  schedule.batch_size = options.batch_size;
  switch (regime) {
    case Regime::base: {
      const auto& lang = require_language(manifest, language, regime);
      schedule.stages.push_back(monolingual_stage(manifest, lang, "base", options.finetune_epochs));
      break;
    }
    case Regime::base_plus: {
      const auto& lang = require_language(manifest, language, regime);
      if (!has_gold_train(manifest, lang)) {
        throw Error(ErrorCode::invalid_selector, "base+ needs gold train data for " + lang);
      }
      Stage first{"base+ pretrain", DataSelector::of({lang}, {Split::train, Split::silver}),
                  options.finetune_epochs, ""};
      if (!manifest.has_split(lang, Split::silver)) first.selector = DataSelector::of({lang}, {Split::train});
      schedule.stages.push_back(std::move(first));
      schedule.stages.push_back(
          {"base+ fine-tune", DataSelector::of({lang}, {Split::train}), options.finetune_epochs, ""});
      break;
    }
    case Regime::cross_lingual:
      schedule.stages.push_back(mixed_stage(manifest, options));
      break;
    case Regime::cross_lingual_plus: {
      const auto& lang = require_language(manifest, language, regime);
      schedule.stages.push_back(mixed_stage(manifest, options));
      auto tail = finetune_stage(manifest, lang, "cross-lingual", options);
      schedule.stages.push_back(std::move(tail.stages.front()));
      break;
    }
  }
  return schedule;
}

// ---- statistics

std::size_t CorpusStats::total(std::size_t language) const {
  std::size_t n = 0;
  for (const auto& c : counts[language]) n += c.value_or(0);
  return n;
}

CorpusStats corpus_stats(const CorpusManifest& manifest) {
  CorpusStats stats;
  stats.languages = manifest.languages();
  for (const auto& language : stats.languages) {
    std::array<std::optional<std::size_t>, 4> row{};
    for (auto split : kSplits) {
      if (manifest.has_split(language, split)) {
        row[static_cast<std::size_t>(split)] = manifest.records(language, split).size();
      }
    }
    stats.counts.push_back(row);
  }
  return stats;
}

}  // namespace drs
