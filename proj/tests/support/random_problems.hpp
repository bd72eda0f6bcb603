#pragma once

#include <vector>

#include "random_instances.hpp"
#include "twqbf/problems.hpp"

namespace twqbf::testing {

/// Arguments a0..a{n-1}, each ordered pair (self-attacks included) an attack
/// with the given probability.
ArgumentationFramework random_af(Rng& rng, std::size_t n, double attack_probability);

/// Framework whose attacks are the set bits of `code` (bit a*n+b is (a,b)).
ArgumentationFramework af_from_code(std::size_t n, std::uint32_t code);

/// One code per isomorphism class of frameworks on n <= 4 arguments, the
/// smallest in each class.
std::vector<std::uint32_t> nonisomorphic_af_codes(std::size_t n);

/// Every element of `universe` kept with probability p, ascending.
std::vector<Var> random_subset(Rng& rng, const std::vector<Var>& universe, double p);

/// Theory over n variables, disjoint nonempty hypotheses and manifestations.
PapInstance random_pap(Rng& rng, Var n, std::size_t num_clauses);

/// Theory and query over n variables, random partition into P, Q, Z.
CircumscriptionInstance random_circ(Rng& rng, Var n, std::size_t num_clauses);

/// Formula with the query clause drawn uniformly.
MusQuery random_mus(Rng& rng, Var n, std::size_t num_clauses);

}  // namespace twqbf::testing
