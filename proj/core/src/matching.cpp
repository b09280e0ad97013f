#include "matching.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <unordered_set>

#include "drs/error.hpp"
#include "drs/random.hpp"

namespace drs::detail {

int FactTable::variable(const std::string& name, int name_space) {
  auto [it, fresh] = index_.try_emplace(name, static_cast<int>(names_.size()));
  if (fresh) {
    names_.push_back(name);
    spaces_.push_back(name_space);
  }
  return it->second;
}

int FactTable::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

void FactTable::add(const std::string& relation, std::initializer_list<int> slots) {
  if (slots.size() > kMaxSlots) {
    throw Error(ErrorCode::invalid_argument, "fact has too many slots");
  }
  Fact f;
  f.relation = interner_->id(relation);
  f.arity = slots.size();
  std::copy(slots.begin(), slots.end(), f.slots.begin());
  facts_.push_back(f);
}

namespace {

using Key = std::array<int, kMaxSlots + 2>;

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::uint64_t h = 0x84222325cbf29ce4ULL;
    for (int v : k) h = splitmix64(h ^ static_cast<std::uint32_t>(v));
    return static_cast<std::size_t>(h);
  }
};

Key key_of(const Fact& f) {
  Key k;
  k.fill(INT_MIN);
  k[0] = f.relation;
  k[1] = static_cast<int>(f.arity);
  for (std::size_t i = 0; i < f.arity; ++i) k[i + 2] = f.slots[i];
  return k;
}

bool compatible(const Fact& p, const Fact& g, const FactTable& pred, const FactTable& gold) {
  if (p.relation != g.relation || p.arity != g.arity) return false;
  for (std::size_t i = 0; i < p.arity; ++i) {
    const int a = p.slots[i];
    const int b = g.slots[i];
    if ((a < 0) != (b < 0)) return false;
    if (a < 0) {
      if (a != b) return false;
      continue;
    }
    if (pred.name_space(a) != gold.name_space(b)) return false;
    for (std::size_t j = i + 1; j < p.arity; ++j) {
      if ((p.slots[j] == a) != (g.slots[j] == b)) return false;
    }
  }
  return true;
}

class Searcher {
 public:
  Searcher(const FactTable& pred, const FactTable& gold)
      : pred_(pred),
        gold_(gold),
        pvars_(pred.variable_count()),
        gvars_(gold.variable_count()),
        facts_of_var_(pvars_),
        candidates_(pvars_),
        compat_(pvars_ * gvars_, 0) {
    for (const auto& g : gold.facts()) gold_keys_.insert(key_of(g));

    std::map<std::pair<int, std::size_t>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < gold.facts().size(); ++i) {
      const auto& g = gold.facts()[i];
      groups[{g.relation, g.arity}].push_back(i);
    }

    const auto& facts = pred.facts();
    potential_.assign(facts.size(), false);
    last_var_.assign(facts.size(), -1);
    for (std::size_t f = 0; f < facts.size(); ++f) {
      const auto& p = facts[f];
      std::vector<int> vars;
      for (std::size_t i = 0; i < p.arity; ++i) {
        const int v = p.slots[i];
        if (v >= 0 && std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
      }
      if (vars.empty()) {
        if (gold_keys_.count(key_of(p)) != 0) ++constant_matches_;
        continue;
      }
      variable_facts_.push_back(f);
      last_var_[f] = *std::max_element(vars.begin(), vars.end());
      for (int v : vars) facts_of_var_[v].push_back(f);
      auto it = groups.find({p.relation, p.arity});
      if (it == groups.end()) continue;
      for (auto gi : it->second) {
        const auto& g = gold.facts()[gi];
        if (!compatible(p, g, pred, gold)) continue;
        potential_[f] = true;
        for (std::size_t i = 0; i < p.arity; ++i) {
          const int v = p.slots[i];
          if (v < 0) continue;
          bool first = true;
          for (std::size_t j = 0; j < i; ++j) first = first && p.slots[j] != v;
          if (first) ++compat_[v * gvars_ + g.slots[i]];
        }
      }
    }
    for (std::size_t v = 0; v < pvars_; ++v) {
      for (std::size_t u = 0; u < gvars_; ++u) {
        if (compat_[v * gvars_ + u] > 0) candidates_[v].push_back(static_cast<int>(u));
      }
    }
  }

  MappingOutcome exact() {
    completing_.assign(pvars_, {});
    suffix_.assign(pvars_ + 1, 0);
    for (auto f : variable_facts_) {
      completing_[last_var_[f]].push_back(f);
      if (potential_[f]) ++suffix_[last_var_[f]];
    }
    for (std::size_t v = pvars_; v-- > 0;) suffix_[v] += suffix_[v + 1];

    mapping_.assign(pvars_, -1);
    owner_.assign(gvars_, -1);
    best_ = -1;
    dfs(0, 0);
    return {static_cast<std::size_t>(best_) + constant_matches_, best_mapping_};
  }

  MappingOutcome hill_climb(const SearchConfig& search) {
    Rng rng(search.seed);
    MappingOutcome best;
    bool have_best = false;
    const int starts = 1 + std::max(0, search.restarts);
    for (int s = 0; s < starts; ++s) {
      if (s == 0) {
        greedy_start();
      } else {
        random_start(rng);
      }
      climb();
      if (!have_best || static_cast<std::size_t>(score_) > best.matched) {
        best.matched = static_cast<std::size_t>(score_);
        best.mapping = mapping_;
        have_best = true;
      }
    }
    best.matched += constant_matches_;
    return best;
  }

 private:
  bool matches(std::size_t f, int v, int mv, int w, int mw) const {
    const auto& p = pred_.facts()[f];
    Fact image = p;
    for (std::size_t i = 0; i < p.arity; ++i) {
      const int x = p.slots[i];
      if (x < 0) continue;
      const int y = x == v ? mv : (x == w ? mw : mapping_[x]);
      if (y < 0) return false;
      image.slots[i] = y;
    }
    return gold_keys_.count(key_of(image)) != 0;
  }
  bool matches(std::size_t f) const { return matches(f, -1, -1, -1, -1); }

  void dfs(std::size_t v, long current) {
    if (current + static_cast<long>(suffix_[v]) <= best_) return;
    if (v == pvars_) {
      best_ = current;
      best_mapping_ = mapping_;
      return;
    }
    for (int u : candidates_[v]) {
      if (owner_[u] != -1) continue;
      mapping_[v] = u;
      owner_[u] = static_cast<int>(v);
      long gain = 0;
      for (auto f : completing_[v]) gain += matches(f) ? 1 : 0;
      dfs(v + 1, current + gain);
      owner_[u] = -1;
      mapping_[v] = -1;
    }
    dfs(v + 1, current);
  }

  void reset_state() {
    owner_.assign(gvars_, -1);
    for (std::size_t v = 0; v < pvars_; ++v) {
      if (mapping_[v] >= 0) owner_[mapping_[v]] = static_cast<int>(v);
    }
    ok_.assign(pred_.facts().size(), false);
    score_ = 0;
    for (auto f : variable_facts_) {
      ok_[f] = matches(f);
      score_ += ok_[f] ? 1 : 0;
    }
  }

  void greedy_start() {
    struct Pair {
      std::size_t count;
      int v;
      int u;
    };
    std::vector<Pair> pairs;
    for (std::size_t v = 0; v < pvars_; ++v) {
      for (int u : candidates_[v]) {
        pairs.push_back({compat_[v * gvars_ + u], static_cast<int>(v), u});
      }
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      if (a.count != b.count) return a.count > b.count;
      if (a.v != b.v) return a.v < b.v;
      return a.u < b.u;
    });
    mapping_.assign(pvars_, -1);
    std::vector<bool> taken(gvars_, false);
    for (const auto& p : pairs) {
      if (mapping_[p.v] != -1 || taken[p.u]) continue;
      mapping_[p.v] = p.u;
      taken[p.u] = true;
    }
    reset_state();
  }

  void random_start(Rng& rng) {
    std::vector<int> order(pvars_);
    for (std::size_t v = 0; v < pvars_; ++v) order[v] = static_cast<int>(v);
    rng.shuffle(order);
    mapping_.assign(pvars_, -1);
    std::vector<bool> taken(gvars_, false);
    std::vector<int> free;
    for (int v : order) {
      free.clear();
      for (int u : candidates_[v]) {
        if (!taken[u]) free.push_back(u);
      }
      if (free.empty()) continue;
      const int u = free[rng.below(free.size())];
      mapping_[v] = u;
      taken[u] = true;
    }
    reset_state();
  }

  // Change in score if v takes gold variable u (-1: unmapped). When u is
  // held by another variable w, the two swap targets.
  long delta(int v, int u, int& w, int& mw) {
    w = -1;
    mw = -1;
    if (u >= 0 && owner_[u] != -1) {
      w = owner_[u];
      mw = mapping_[v];
    }
    ++stamp_;
    if (seen_.size() < pred_.facts().size()) seen_.assign(pred_.facts().size(), 0);
    long d = 0;
    auto visit = [&](int x) {
      for (auto f : facts_of_var_[x]) {
        if (seen_[f] == stamp_) continue;
        seen_[f] = stamp_;
        const bool now = matches(f, v, u, w, mw);
        d += static_cast<long>(now) - static_cast<long>(ok_[f]);
      }
    };
    visit(v);
    if (w >= 0) visit(w);
    return d;
  }

  void apply(int v, int u, int w, int mw) {
    if (mapping_[v] >= 0) owner_[mapping_[v]] = -1;
    if (w >= 0) {
      owner_[u] = -1;
      mapping_[w] = mw;
      if (mw >= 0) owner_[mw] = w;
    }
    mapping_[v] = u;
    if (u >= 0) owner_[u] = v;
    for (int x : {v, w}) {
      if (x < 0) continue;
      for (auto f : facts_of_var_[x]) {
        const bool now = matches(f);
        score_ += static_cast<long>(now) - static_cast<long>(ok_[f]);
        ok_[f] = now;
      }
    }
  }

  void climb() {
    while (true) {
      long best_delta = 0;
      int bv = -1, bu = -1, bw = -1, bmw = -1;
      for (std::size_t vi = 0; vi < pvars_; ++vi) {
        const int v = static_cast<int>(vi);
        auto consider = [&](int u) {
          if (u == mapping_[v]) return;
          int w = -1, mw = -1;
          const long d = delta(v, u, w, mw);
          if (d > best_delta) {
            best_delta = d;
            bv = v;
            bu = u;
            bw = w;
            bmw = mw;
          }
        };
        for (int u : candidates_[v]) consider(u);
        consider(-1);
      }
      if (bv < 0) return;
      apply(bv, bu, bw, bmw);
    }
  }

  const FactTable& pred_;
  const FactTable& gold_;
  std::size_t pvars_;
  std::size_t gvars_;
  std::unordered_set<Key, KeyHash> gold_keys_;
  std::vector<std::vector<std::size_t>> facts_of_var_;
  std::vector<std::vector<int>> candidates_;
  std::vector<std::size_t> compat_;
  std::vector<std::size_t> variable_facts_;
  std::vector<bool> potential_;
  std::vector<int> last_var_;
  std::size_t constant_matches_ = 0;

  // exact search
  std::vector<std::vector<std::size_t>> completing_;
  std::vector<std::size_t> suffix_;
  long best_ = -1;
  std::vector<int> best_mapping_;

  // shared search state
  std::vector<int> mapping_;
  std::vector<int> owner_;
  std::vector<bool> ok_;
  long score_ = 0;
  std::vector<unsigned> seen_;
  unsigned stamp_ = 0;
};

}  // namespace

MappingOutcome best_mapping(const FactTable& pred, const FactTable& gold,
                            const SearchConfig& search) {
  Searcher searcher(pred, gold);
  if (pred.variable_count() <= search.exact_threshold) return searcher.exact();
  return searcher.hill_climb(search);
}

}  // namespace drs::detail
