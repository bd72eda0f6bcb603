#include "twqbf/choice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "twqbf/error.hpp"

namespace twqbf {

Relation::Relation(unsigned arity, bool full) : arity_(arity), words_(arity >= 6 ? (std::size_t{1} << (arity - 6)) : 1, 0) {
  if (!full) return;
  if (arity >= 6)
    std::fill(words_.begin(), words_.end(), ~std::uint64_t{0});
  else
    words_[0] = (std::uint64_t{1} << (std::uint64_t{1} << arity)) - 1;
}

bool Relation::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::uint64_t Relation::count() const {
  std::uint64_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

bool Relation::subset_of(const Relation& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

Relation& Relation::operator|=(const Relation& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

Relation& Relation::operator&=(const Relation& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

std::size_t Relation::hash() const {
  std::uint64_t h = 1469598103934665603ull ^ arity_;
  for (std::uint64_t w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

std::size_t ChoiceConstraint::node_count() const {
  std::size_t n = leaves.size();
  for (const auto& level : levels) n += level.size();
  return n;
}

double GrowthBound::g(unsigned r, double k) {
  double x = k;
  for (unsigned i = 0; i < r; ++i) x = x >= 1024.0 ? std::numeric_limits<double>::infinity() : std::exp2(x);
  return x;
}

double GrowthBound::envelope(unsigned depth, unsigned arity) {
  double total = 1.0;
  const double leaves = arity >= 1024 ? std::numeric_limits<double>::infinity() : std::exp2(arity);
  for (unsigned h = 0; h < depth; ++h) total += g(h + 1, leaves);
  return total;
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint32_t x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

struct RelHash {
  std::size_t operator()(const Relation& r) const { return r.hash(); }
};

// Interning store: identical children sets and identical relations share ids.
class Builder {
 public:
  explicit Builder(std::uint32_t depth) : depth_(depth), levels_(depth), index_(depth) {}

  std::uint32_t leaf(const Relation& r) {
    auto [it, inserted] = leaf_index_.try_emplace(r, static_cast<std::uint32_t>(leaves_.size()));
    if (inserted) leaves_.push_back(r);
    return it->second;
  }

  std::uint32_t node(std::uint32_t level, std::vector<std::uint32_t> kids) {
    std::sort(kids.begin(), kids.end());
    kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
    auto [it, inserted] = index_[level].try_emplace(kids, static_cast<std::uint32_t>(levels_[level].size()));
    if (inserted) levels_[level].push_back(std::move(kids));
    return it->second;
  }

  const std::vector<std::uint32_t>& children(std::uint32_t level, std::uint32_t id) const {
    return levels_[level][id];
  }
  const Relation& relation(std::uint32_t id) const { return leaves_[id]; }

  // Copies the part reachable from `root` into canonical numbering.
  ChoiceConstraint finish(std::vector<Var> scope, std::uint32_t root) const {
    Builder out(depth_);
    std::vector<std::unordered_map<std::uint32_t, std::uint32_t>> memo(depth_ + 1);
    auto copy = [&](auto&& self, std::uint32_t level, std::uint32_t id) -> std::uint32_t {
      auto found = memo[level].find(id);
      if (found != memo[level].end()) return found->second;
      std::uint32_t made;
      if (level == depth_) {
        made = out.leaf(leaves_[id]);
      } else {
        std::vector<std::uint32_t> kids;
        for (std::uint32_t c : levels_[level][id]) kids.push_back(self(self, level + 1, c));
        made = out.node(level, std::move(kids));
      }
      memo[level].emplace(id, made);
      return made;
    };
    copy(copy, 0, root);
    ChoiceConstraint c;
    c.scope = std::move(scope);
    c.depth = depth_;
    c.levels = std::move(out.levels_);
    c.leaves = std::move(out.leaves_);
    return c;
  }

 private:
  std::uint32_t depth_;
  std::vector<std::vector<std::vector<std::uint32_t>>> levels_;
  std::vector<Relation> leaves_;
  std::vector<std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash>> index_;
  std::unordered_map<Relation, std::uint32_t, RelHash> leaf_index_;
};

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }

}  // namespace

ChoiceSystem::ChoiceSystem(std::vector<Quantifier> blocks, std::vector<std::uint32_t> level_of,
                           ChoiceOptions options)
    : blocks_(std::move(blocks)), level_of_(std::move(level_of)), options_(options) {}

void ChoiceSystem::record(const ChoiceConstraint& c) {
  stats_.max_nodes = std::max(stats_.max_nodes, c.node_count());
  stats_.max_scope = std::max(stats_.max_scope, c.scope.size());
  if (static_cast<double>(c.node_count()) > GrowthBound::envelope(c.depth, static_cast<unsigned>(c.scope.size())))
    ++stats_.budget_violations;
}

ChoiceConstraint ChoiceSystem::chain(std::vector<Var> scope, Relation relation) {
  if (scope.size() > options_.max_arity) throw CapExceeded("constraint scope exceeds the arity limit");
  for (Var v : scope)
    if (level(v) == kUnquantified || level(v) > depth())
      throw InvalidInput("variable " + std::to_string(v) + " has no quantifier block");
  Builder b(depth());
  std::uint32_t id = b.leaf(relation);
  for (std::uint32_t level = depth(); level-- > 0;) id = b.node(level, {id});
  auto c = b.finish(std::move(scope), id);
  record(c);
  return c;
}

ChoiceConstraint ChoiceSystem::from_clause(const Clause& clause) {
  std::vector<Var> scope;
  for (Lit l : clause) scope.push_back(l.var());
  std::sort(scope.begin(), scope.end());
  if (scope.size() > options_.max_arity) throw CapExceeded("clause exceeds the arity limit");
  Relation r(static_cast<unsigned>(scope.size()));
  std::vector<std::pair<unsigned, bool>> bits;
  for (Lit l : clause) {
    const auto pos = std::lower_bound(scope.begin(), scope.end(), l.var()) - scope.begin();
    bits.emplace_back(static_cast<unsigned>(pos), l.negative());
  }
  for (std::uint64_t m = 0; m < r.size(); ++m)
    for (auto [pos, negative] : bits)
      if (((m >> pos) & 1u) != static_cast<std::uint64_t>(negative)) {
        r.set(m);
        break;
      }
  stats_.ops += r.size();
  return chain(std::move(scope), std::move(r));
}

ChoiceConstraint ChoiceSystem::join(const ChoiceConstraint& a, const ChoiceConstraint& b) {
  if (a.depth != b.depth || a.depth != depth()) throw InvalidInput("join: constraint depths differ");
  ++stats_.joins;
  std::vector<Var> scope;
  std::set_union(a.scope.begin(), a.scope.end(), b.scope.begin(), b.scope.end(), std::back_inserter(scope));
  if (scope.size() > options_.max_arity) throw CapExceeded("join: scope exceeds the arity limit");
  const std::uint64_t total = std::uint64_t{1} << scope.size();
  auto table = [&](const std::vector<Var>& part) {
    std::vector<unsigned> pos;
    for (Var v : part) pos.push_back(static_cast<unsigned>(std::lower_bound(scope.begin(), scope.end(), v) - scope.begin()));
    std::vector<std::uint32_t> t(total);
    for (std::uint64_t m = 0; m < total; ++m) {
      std::uint32_t x = 0;
      for (unsigned i = 0; i < pos.size(); ++i) x |= static_cast<std::uint32_t>((m >> pos[i]) & 1u) << i;
      t[m] = x;
    }
    return t;
  };
  const auto ia = table(a.scope), ib = table(b.scope);
  stats_.ops += total;

  Builder out(depth());
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> memo(depth() + 1);
  auto rec = [&](auto&& self, std::uint32_t level, std::uint32_t x, std::uint32_t y) -> std::uint32_t {
    auto found = memo[level].find(pair_key(x, y));
    if (found != memo[level].end()) return found->second;
    std::uint32_t made;
    if (level == depth()) {
      const Relation& ra = a.leaves[x];
      const Relation& rb = b.leaves[y];
      Relation r(static_cast<unsigned>(scope.size()));
      if (!ra.empty() && !rb.empty())
        for (std::uint64_t m = 0; m < total; ++m)
          if (ra.test(ia[m]) && rb.test(ib[m])) r.set(m);
      stats_.ops += total;
      made = out.leaf(r);
    } else {
      std::vector<std::uint32_t> kids;
      for (std::uint32_t cx : a.levels[level][x])
        for (std::uint32_t cy : b.levels[level][y]) kids.push_back(self(self, level + 1, cx, cy));
      stats_.ops += kids.size();
      made = out.node(level, std::move(kids));
    }
    memo[level].emplace(pair_key(x, y), made);
    return made;
  };
  const std::uint32_t root = rec(rec, 0, 0, 0);
  auto joined = out.finish(std::move(scope), root);
  return normalize(joined);
}

ChoiceConstraint ChoiceSystem::forget(const ChoiceConstraint& c, Var v) {
  const auto it = std::lower_bound(c.scope.begin(), c.scope.end(), v);
  if (it == c.scope.end() || *it != v) throw InvalidInput("forget: variable " + std::to_string(v) + " not in scope");
  const std::uint32_t lv = level(v);
  if (lv == kUnquantified || lv > depth()) throw InvalidInput("forget: variable has no quantifier block");
  ++stats_.forgets;
  const unsigned p = static_cast<unsigned>(it - c.scope.begin());
  std::vector<Var> scope = c.scope;
  scope.erase(scope.begin() + p);
  const std::uint64_t half = std::uint64_t{1} << scope.size();
  const std::uint64_t low = (std::uint64_t{1} << p) - 1;

  Builder out(depth());
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> rmemo(depth() + 1);
  auto restrict = [&](auto&& self, std::uint32_t level, std::uint32_t id, std::uint32_t bit) -> std::uint32_t {
    auto found = rmemo[level].find(pair_key(id, bit));
    if (found != rmemo[level].end()) return found->second;
    std::uint32_t made;
    if (level == depth()) {
      const Relation& src = c.leaves[id];
      Relation r(static_cast<unsigned>(scope.size()));
      for (std::uint64_t m = 0; m < half; ++m) {
        const std::uint64_t full = (m & low) | (std::uint64_t{bit} << p) | ((m & ~low) << 1);
        if (src.test(full)) r.set(m);
      }
      stats_.ops += half;
      made = out.leaf(r);
    } else {
      std::vector<std::uint32_t> kids;
      for (std::uint32_t k : c.levels[level][id]) kids.push_back(self(self, level + 1, k, bit));
      stats_.ops += kids.size();
      made = out.node(level, std::move(kids));
    }
    rmemo[level].emplace(pair_key(id, bit), made);
    return made;
  };
  std::vector<std::unordered_map<std::uint32_t, std::uint32_t>> fmemo(depth());
  auto fold = [&](auto&& self, std::uint32_t level, std::uint32_t id) -> std::uint32_t {
    auto found = fmemo[level].find(id);
    if (found != fmemo[level].end()) return found->second;
    std::vector<std::uint32_t> kids;
    for (std::uint32_t k : c.levels[level][id]) {
      if (level + 1 == lv) {
        kids.push_back(restrict(restrict, level + 1, k, 0));
        kids.push_back(restrict(restrict, level + 1, k, 1));
      } else {
        kids.push_back(self(self, level + 1, k));
      }
    }
    stats_.ops += kids.size();
    const std::uint32_t made = out.node(level, std::move(kids));
    fmemo[level].emplace(id, made);
    return made;
  };
  const std::uint32_t root = fold(fold, 0, 0);
  auto folded = out.finish(std::move(scope), root);
  return normalize(folded);
}

ChoiceConstraint ChoiceSystem::normalize(const ChoiceConstraint& c) {
  ++stats_.normalizations;
  const std::uint32_t depth = c.depth;
  Builder out(depth);
  std::vector<std::unordered_map<std::uint64_t, bool>> leq_memo(depth + 1);
  // a <= b: b is at least as good for the existential player.
  auto leq = [&](auto&& self, std::uint32_t level, std::uint32_t a, std::uint32_t b) -> bool {
    if (a == b) return true;
    ++stats_.ops;
    if (level == depth) return out.relation(a).subset_of(out.relation(b));
    auto found = leq_memo[level].find(pair_key(a, b));
    if (found != leq_memo[level].end()) return found->second;
    const auto& ka = out.children(level, a);
    const auto& kb = out.children(level, b);
    bool result = true;
    if (blocks_[level] == Quantifier::exists) {
      for (std::uint32_t x : ka)
        if (std::none_of(kb.begin(), kb.end(), [&](std::uint32_t y) { return self(self, level + 1, x, y); })) {
          result = false;
          break;
        }
    } else {
      for (std::uint32_t y : kb)
        if (std::none_of(ka.begin(), ka.end(), [&](std::uint32_t x) { return self(self, level + 1, x, y); })) {
          result = false;
          break;
        }
    }
    leq_memo[level].emplace(pair_key(a, b), result);
    return result;
  };
  auto prune = [&](std::uint32_t level, std::vector<std::uint32_t>& kids) {
    if (kids.size() < 2) return;
    const bool maximize = blocks_[level] == Quantifier::exists;
    std::vector<std::uint32_t> kept;
    for (std::uint32_t x : kids) {
      bool dominated = false;
      for (std::uint32_t y : kids) {
        if (y == x) continue;
        const bool worse = maximize ? leq(leq, level + 1, x, y) : leq(leq, level + 1, y, x);
        if (!worse) continue;
        const bool back = maximize ? leq(leq, level + 1, y, x) : leq(leq, level + 1, x, y);
        if (!back || y < x) {
          dominated = true;
          break;
        }
      }
      if (!dominated) kept.push_back(x);
    }
    kids = std::move(kept);
  };

  std::vector<std::unordered_map<std::uint32_t, std::uint32_t>> memo(depth + 1);
  auto rebuild = [&](auto&& self, std::uint32_t level, std::uint32_t id) -> std::uint32_t {
    auto found = memo[level].find(id);
    if (found != memo[level].end()) return found->second;
    std::uint32_t made;
    if (level == depth) {
      made = out.leaf(c.leaves[id]);
    } else if (options_.reduce && level + 1 == depth) {
      const auto& kids = c.levels[level][id];
      const bool any = blocks_[level] == Quantifier::exists;
      Relation r(static_cast<unsigned>(c.scope.size()), !any);
      for (std::uint32_t k : kids) {
        if (any)
          r |= c.leaves[k];
        else
          r &= c.leaves[k];
      }
      stats_.ops += kids.size();
      made = out.node(level, {out.leaf(r)});
    } else {
      std::vector<std::uint32_t> kids;
      for (std::uint32_t k : c.levels[level][id]) kids.push_back(self(self, level + 1, k));
      std::sort(kids.begin(), kids.end());
      kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
      if (options_.reduce) prune(level, kids);
      stats_.ops += kids.size();
      made = out.node(level, std::move(kids));
    }
    memo[level].emplace(id, made);
    return made;
  };
  const std::uint32_t root = rebuild(rebuild, 0, 0);
  auto result = out.finish(c.scope, root);
  record(result);
  return result;
}

bool ChoiceSystem::evaluate(const ChoiceConstraint& c) const {
  if (!c.scope.empty()) throw InvalidInput("evaluate: constraint still has variables in scope");
  std::vector<std::vector<std::int8_t>> memo(c.depth);
  for (std::uint32_t l = 0; l < c.depth; ++l) memo[l].assign(c.levels[l].size(), -1);
  auto value = [&](auto&& self, std::uint32_t level, std::uint32_t id) -> bool {
    if (level == c.depth) return c.leaves[id].test(0);
    auto& slot = memo[level][id];
    if (slot >= 0) return slot != 0;
    const auto& kids = c.levels[level][id];
    bool v;
    if (blocks_[level] == Quantifier::exists)
      v = std::any_of(kids.begin(), kids.end(), [&](std::uint32_t k) { return self(self, level + 1, k); });
    else
      v = std::all_of(kids.begin(), kids.end(), [&](std::uint32_t k) { return self(self, level + 1, k); });
    slot = v ? 1 : 0;
    return v;
  };
  return value(value, 0, 0);
}

bool brute_force_choice(const ChoiceSystem& system, std::span<const ChoiceConstraint> constraints) {
  const std::uint32_t depth = system.depth();
  std::vector<std::vector<Var>> vars_at(depth + 1);
  Var hi = 0;
  for (const auto& c : constraints) {
    if (c.depth != depth) throw InvalidInput("brute_force_choice: constraint depth differs from the prefix");
    for (Var v : c.scope) {
      vars_at[system.level(v)].push_back(v);
      hi = std::max(hi, v);
    }
  }
  for (auto& vs : vars_at) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  }
  std::vector<std::uint8_t> value(hi + 1, 0);
  std::vector<std::uint32_t> at(constraints.size(), 0);

  auto accepted = [&] {
    for (std::size_t j = 0; j < constraints.size(); ++j) {
      const auto& c = constraints[j];
      std::uint64_t m = 0;
      for (std::size_t i = 0; i < c.scope.size(); ++i) m |= std::uint64_t{value[c.scope[i]]} << i;
      if (!c.leaves[at[j]].test(m)) return false;
    }
    return true;
  };

  auto play = [&](auto&& self, std::uint32_t level) -> bool {
    if (level == depth) return accepted();
    const bool exists = system.chooser(level) == Quantifier::exists;
    const auto& vs = vars_at[level + 1];
    const std::vector<std::uint32_t> saved = at;
    for (std::size_t j = 0; j < constraints.size(); ++j)
      if (constraints[j].levels[level][saved[j]].empty()) return !exists;
    std::vector<std::size_t> pick(constraints.size(), 0);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << vs.size()); ++m) {
      for (std::size_t i = 0; i < vs.size(); ++i) value[vs[i]] = (m >> i) & 1u;
      std::fill(pick.begin(), pick.end(), 0);
      while (true) {
        for (std::size_t j = 0; j < constraints.size(); ++j)
          at[j] = constraints[j].levels[level][saved[j]][pick[j]];
        const bool r = self(self, level + 1);
        at = saved;
        if (exists && r) return true;
        if (!exists && !r) return false;
        std::size_t j = 0;
        for (; j < constraints.size(); ++j) {
          if (++pick[j] < constraints[j].levels[level][saved[j]].size()) break;
          pick[j] = 0;
        }
        if (j == constraints.size()) break;
      }
    }
    return !exists;
  };
  return play(play, 0);
}

}  // namespace twqbf
