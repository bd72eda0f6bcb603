#pragma once

#include <cstdint>

#include "twqbf/qbf.hpp"

namespace twqbf {

/// forall-exists QBF over n variables whose clauses each lie inside a window
/// of k+1 consecutive variables; every pair in a window shares a clause, so
/// the primal width is k. Signs come from `seed`; every third variable is
/// universal.
QbfFormula chain_family(std::size_t n, int k, std::uint64_t seed = 1);

/// forall-exists QBF on a k-row grid with ceil(n/k) columns: one clause per
/// cell over the cell, its right and its lower neighbour. Primal width k.
QbfFormula grid_family(std::size_t n, int k, std::uint64_t seed = 1);

}  // namespace twqbf
