#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace twqbf {

/// Variables are the positive DIMACS indices 1..n and double as dense
/// array keys.
using Var = std::uint32_t;
using ClauseId = std::uint32_t;

class Lit {
 public:
  constexpr Lit() = default;

  static constexpr Lit pos(Var v) { return Lit(static_cast<std::int32_t>(v)); }
  static constexpr Lit neg(Var v) { return Lit(-static_cast<std::int32_t>(v)); }
  static constexpr Lit make(Var v, bool negative) {
    return negative ? neg(v) : pos(v);
  }
  static constexpr Lit from_dimacs(std::int32_t code) { return Lit(code); }

  constexpr Var var() const { return static_cast<Var>(code_ < 0 ? -code_ : code_); }
  constexpr bool negative() const { return code_ < 0; }
  constexpr std::int32_t dimacs() const { return code_; }

  /// Value of the literal when its variable is assigned `value`.
  constexpr bool eval(bool value) const { return negative() ? !value : value; }

  constexpr Lit operator~() const { return Lit(-code_); }
  friend constexpr bool operator==(Lit, Lit) = default;
  friend constexpr auto operator<=>(Lit, Lit) = default;

 private:
  explicit constexpr Lit(std::int32_t code) : code_(code) {}
  std::int32_t code_ = 0;
};

using Clause = std::vector<Lit>;

/// Occurrence lists of the incidence graph, mirrored so that an edge can be
/// removed in O(1) from either side. Entry i of `clause_entries(c)` stores
/// the position of its twin inside `var_entries(v)` and vice versa.
class OccurrenceLists {
 public:
  struct VarEntry {
    ClauseId clause;
    bool negative;
    std::uint32_t mirror;  // index into clause_entries(clause)
  };
  struct ClauseEntry {
    Var var;
    bool negative;
    std::uint32_t mirror;    // index into var_entries(var)
    std::uint32_t position;  // position of the literal inside the clause
  };

  OccurrenceLists(std::size_t num_vars, std::span<const Clause> clauses);

  std::span<const VarEntry> var_entries(Var v) const { return by_var_[v]; }
  std::span<const ClauseEntry> clause_entries(ClauseId c) const { return by_clause_[c]; }

  /// Removes the edge stored at `index` of var v's list (and its twin).
  void erase_from_var(Var v, std::uint32_t index);
  /// Removes the edge stored at `index` of clause c's list (and its twin).
  void erase_from_clause(ClauseId c, std::uint32_t index);

  std::size_t edge_count() const { return edges_; }

  /// Every entry's twin points back at it.
  bool mirrors_consistent() const;

 private:
  std::vector<std::vector<VarEntry>> by_var_;  // index 0 unused
  std::vector<std::vector<ClauseEntry>> by_clause_;
  std::size_t edges_ = 0;
};

class CnfFormula {
 public:
  CnfFormula() = default;
  explicit CnfFormula(Var num_vars) : num_vars_(num_vars) {}

  Var num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& clause(ClauseId c) const { return clauses_[c]; }

  /// Raises the declared variable count to at least `n`.
  void ensure_vars(Var n) {
    if (n > num_vars_) num_vars_ = n;
  }

  /// Appends a clause, merging duplicate literals in first-seen order.
  /// Throws std::invalid_argument on complementary literals or on a
  /// variable index of 0; grows num_vars() as needed.
  ClauseId add_clause(std::span<const Lit> lits);
  ClauseId add_clause(std::initializer_list<Lit> lits) {
    return add_clause(std::span<const Lit>(lits.begin(), lits.size()));
  }

  std::size_t total_literals() const;
  std::size_t max_clause_size() const;

  /// Variables that occur in at least one clause, ascending.
  std::vector<Var> occurring_vars() const;

  bool satisfied_by(std::span<const std::uint8_t> assignment) const;

  OccurrenceLists occurrences() const { return OccurrenceLists(num_vars_ + 1, clauses_); }

  std::vector<std::string>& comments() { return comments_; }
  const std::vector<std::string>& comments() const { return comments_; }

  friend bool operator==(const CnfFormula& a, const CnfFormula& b) {
    return a.num_vars_ == b.num_vars_ && a.clauses_ == b.clauses_;
  }

 private:
  Var num_vars_ = 0;
  std::vector<Clause> clauses_;
  std::vector<std::string> comments_;  // comment bodies, without the leading "c"
};

/// Parses DIMACS cnf. Comment lines are kept (text after "c"). Errors carry
/// the offending line number.
CnfFormula parse_dimacs(std::string_view text);
CnfFormula read_dimacs_file(const std::string& path);

struct DimacsWriteOptions {
  bool comments = false;
};
std::string write_dimacs(const CnfFormula& f, DimacsWriteOptions options = {});

/// Shared tokenizer state for the DIMACS family of formats.
namespace detail {
struct DimacsHeader {
  Var num_vars = 0;
  std::size_t num_clauses = 0;
};
struct LineCursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool next(std::string_view& line);
};
std::vector<std::string_view> split_ws(std::string_view line);
long long parse_int(std::string_view token, std::size_t line_no);
DimacsHeader parse_header(std::string_view line, std::size_t line_no);
/// Called for each body line before clause parsing with (line, line number,
/// whether clause data has started); returning true consumes the line.
using LineHook = std::function<bool(std::string_view, std::size_t, bool)>;
CnfFormula parse_dimacs_with(std::string_view text, const LineHook& hook);
}  // namespace detail

std::string read_text_file(const std::string& path);

}  // namespace twqbf
