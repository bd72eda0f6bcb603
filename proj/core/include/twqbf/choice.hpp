#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "twqbf/cnf.hpp"
#include "twqbf/qbf.hpp"

namespace twqbf {

/// Set of assignments to an ordered scope of `arity` variables; assignment m
/// gives scope[i] the value of bit i.
class Relation {
 public:
  Relation() : words_(1, 0) {}
  explicit Relation(unsigned arity, bool full = false);

  unsigned arity() const { return arity_; }
  std::uint64_t size() const { return std::uint64_t{1} << arity_; }
  bool test(std::uint64_t m) const { return (words_[m >> 6] >> (m & 63)) & 1u; }
  void set(std::uint64_t m) { words_[m >> 6] |= std::uint64_t{1} << (m & 63); }
  bool empty() const;
  std::uint64_t count() const;
  bool subset_of(const Relation& other) const;
  Relation& operator|=(const Relation& other);
  Relation& operator&=(const Relation& other);
  std::size_t hash() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  unsigned arity_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Scoped tree of depth r stored as a DAG with one node table per level.
/// levels[i][id] lists the children (ids at level i+1) of a node at depth i;
/// the nodes at depth r are the leaves and carry relations. The root is
/// node 0 of level 0, or leaf 0 when the depth is 0.
struct ChoiceConstraint {
  std::vector<Var> scope;  // ascending
  std::uint32_t depth = 0;
  std::vector<std::vector<std::vector<std::uint32_t>>> levels;
  std::vector<Relation> leaves;

  std::size_t node_count() const;

  friend bool operator==(const ChoiceConstraint&, const ChoiceConstraint&) = default;
};

struct ChoiceOptions {
  /// Collapse the innermost level and drop dominated children.
  bool reduce = true;
  /// Largest scope a relation may have.
  unsigned max_arity = 24;
};

struct ChoiceStats {
  std::uint64_t joins = 0;
  std::uint64_t forgets = 0;
  std::uint64_t normalizations = 0;
  std::uint64_t ops = 0;
  std::uint64_t budget_violations = 0;
  std::size_t max_nodes = 0;
  std::size_t max_scope = 0;
};

/// Tower function with g(0,k) = k and g(r+1,k) = 2^g(r,k), saturating at
/// infinity.
struct GrowthBound {
  static double g(unsigned r, double k);
  /// Node budget of a normal constraint of the given depth and arity:
  /// 1 + sum over h < depth of g(h+1, 2^arity).
  static double envelope(unsigned depth, unsigned arity);
};

/// Operations on choice constraints for one quantifier prefix. Block i
/// (1-based) chooses the children of nodes at depth i-1 together with the
/// values of its variables.
class ChoiceSystem {
 public:
  ChoiceSystem(std::vector<Quantifier> blocks, std::vector<std::uint32_t> level_of, ChoiceOptions options = {});

  std::uint32_t depth() const { return static_cast<std::uint32_t>(blocks_.size()); }
  Quantifier chooser(std::uint32_t depth_of_parent) const { return blocks_[depth_of_parent]; }
  std::uint32_t level(Var v) const { return v < level_of_.size() ? level_of_[v] : kUnquantified; }
  const ChoiceOptions& options() const { return options_; }

  /// Single path whose leaf holds the satisfying assignments of the clause.
  ChoiceConstraint from_clause(const Clause& clause);
  ChoiceConstraint chain(std::vector<Var> scope, Relation relation);

  /// Product of the trees with joined leaf relations.
  ChoiceConstraint join(const ChoiceConstraint& a, const ChoiceConstraint& b);

  /// Removes v from the scope by folding its values into the choice at
  /// depth level(v)-1.
  ChoiceConstraint forget(const ChoiceConstraint& c, Var v);

  /// Merges equivalent siblings (and, with reduce, collapses the innermost
  /// level and drops dominated children). Canonical node numbering.
  ChoiceConstraint normalize(const ChoiceConstraint& c);

  /// Game value of a constraint with empty scope.
  bool evaluate(const ChoiceConstraint& c) const;

  ChoiceStats& stats() { return stats_; }
  const ChoiceStats& stats() const { return stats_; }

 private:
  void record(const ChoiceConstraint& c);

  std::vector<Quantifier> blocks_;
  std::vector<std::uint32_t> level_of_;
  ChoiceOptions options_;
  ChoiceStats stats_;
};

/// Exhaustive play of the choice game on a set of constraints; the oracle for
/// the constraint operations.
bool brute_force_choice(const ChoiceSystem& system, std::span<const ChoiceConstraint> constraints);

}  // namespace twqbf
