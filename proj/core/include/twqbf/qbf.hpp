#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twqbf/cnf.hpp"
#include "twqbf/transform.hpp"
#include "twqbf/treedec.hpp"

namespace twqbf {

enum class Quantifier : std::uint8_t { exists, forall };

inline Quantifier flip(Quantifier q) { return q == Quantifier::exists ? Quantifier::forall : Quantifier::exists; }
std::string_view to_string(Quantifier q);

struct QuantifierBlock {
  Quantifier quantifier = Quantifier::exists;
  std::vector<Var> vars;

  friend bool operator==(const QuantifierBlock&, const QuantifierBlock&) = default;
};

inline constexpr std::uint32_t kUnquantified = 0;

/// Closed prenex formula Q1 X1 ... Qr Xr . matrix.
struct QbfFormula {
  std::vector<QuantifierBlock> prefix;
  CnfFormula matrix;
  std::optional<IncidenceDecomposition> incidence_hint;
  std::optional<TreeDecomposition> primal_hint;

  /// Block number (1-based) of every variable 0..num_vars; kUnquantified if
  /// the variable is bound by no block.
  std::vector<std::uint32_t> level_of() const;

  /// Merges adjacent blocks with equal quantifiers and drops empty blocks.
  void normalize_prefix();

  /// Throws InvalidInput on a variable bound twice, an out-of-range or zero
  /// variable, an empty block, equal adjacent quantifiers, or a free matrix
  /// variable.
  void check() const;

  std::size_t num_quantified() const;
};

/// QDIMACS: DIMACS header, "a ... 0"/"e ... 0" lines, then clauses. Adjacent
/// blocks with the same quantifier are merged.
QbfFormula parse_qdimacs(std::string_view text);
QbfFormula read_qdimacs_file(const std::string& path);
std::string write_qdimacs(const QbfFormula& q, DimacsWriteOptions options = {});

struct BruteForceOptions {
  std::size_t cap = 24;
};

/// Expansion over the prefix; throws CapExceeded above `cap` bound variables.
bool brute_force_eval(const QbfFormula& q, BruteForceOptions options = {});

}  // namespace twqbf
