#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "random_instances.hpp"
#include "twqbf/error.hpp"
#include "twqbf/transform.hpp"

namespace twqbf {
namespace {

using testing::projection;
using testing::Rng;

std::vector<Var> first_vars(Var n) {
  std::vector<Var> v(n);
  std::iota(v.begin(), v.end(), Var{1});
  return v;
}

std::vector<std::uint64_t> all_masks(std::size_t bits) {
  std::vector<std::uint64_t> out(std::size_t{1} << bits);
  std::iota(out.begin(), out.end(), std::uint64_t{0});
  return out;
}

std::vector<std::uint64_t> complement(const std::vector<std::uint64_t>& set, std::size_t bits) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m : all_masks(bits))
    if (!std::binary_search(set.begin(), set.end(), m)) out.push_back(m);
  return out;
}

IncidenceDecomposition path(std::vector<std::vector<Var>> vars, std::vector<std::vector<ClauseId>> clauses) {
  IncidenceDecomposition d;
  for (std::uint32_t i = 0; i < vars.size(); ++i) d.add_node(i == 0 ? kNoNode : i - 1, vars[i], clauses[i]);
  return d;
}

void expect_valid(const ProjectionCertificate& cert) {
  const auto report = validate(cert.decomposition, cert.target);
  EXPECT_TRUE(report.ok()) << report.summary();
}

TEST(IncidenceDecomposition, GraphRoundTrip) {
  CnfFormula f(4);
  f.add_clause({Lit::neg(1), Lit::pos(3)});
  f.add_clause({Lit::pos(1), Lit::pos(2), Lit::neg(4)});
  f.add_clause({Lit::neg(3), Lit::pos(4)});
  const auto d = decompose_incidence(f, Strategy::min_fill);
  EXPECT_TRUE(validate(d, f).ok());
  EXPECT_EQ(IncidenceDecomposition::from_graph(d.to_graph(4), 4, 3), d);
  EXPECT_TRUE(validate(d.to_primal(f), primal_graph(f)).ok());
}

TEST(IncidenceDecomposition, FromPrimalWidthPlusOne) {
  Rng rng(11);
  for (int round = 0; round < 100; ++round) {
    const auto f = testing::random_banded_cnf(rng, 12, 10, 4, 1, 4);
    const auto primal = decompose(primal_graph(f), Strategy::min_fill);
    const auto d = incidence_from_primal(primal, f);
    ASSERT_TRUE(validate(d, f).ok()) << validate(d, f).summary();
    EXPECT_LE(d.width(), width(primal) + 1);
  }
}

TEST(IncidenceDecomposition, MakeNiceKeepsWidthAndShape) {
  Rng rng(12);
  for (int round = 0; round < 100; ++round) {
    const auto f = testing::random_cnf(rng, 7, 6, 1, 5);
    const auto d = decompose_incidence(f, Strategy::min_degree);
    const auto nice = make_nice(d, f);
    ASSERT_TRUE(validate(nice, f).ok());
    EXPECT_EQ(nice.width(), d.width());
    EXPECT_TRUE(is_nice_shape(nice));
  }
}

TEST(FreshVars, MonotoneAndNamed) {
  FreshVars fresh(10);
  const Var a = fresh.make("a"), b = fresh.make("b");
  EXPECT_EQ(a, 11u);
  EXPECT_EQ(b, 12u);
  EXPECT_EQ(fresh.name(b), "b");
  EXPECT_EQ(fresh.name(3), "");
}

TEST(To3Cnf, WideClauseOnPath) {
  CnfFormula f(4);
  f.add_clause({Lit::pos(1), Lit::pos(2), Lit::pos(3), Lit::pos(4)});
  const auto d = path({{3, 4}, {1, 2}}, {{0}, {0}});
  FreshVars fresh(4);
  const auto cert = to_3cnf(f, d, fresh);
  expect_valid(cert);
  ASSERT_EQ(cert.target.num_clauses(), 2u);
  const Var z = 5;
  EXPECT_EQ(cert.target.clause(0), (Clause{Lit::pos(1), Lit::pos(2), Lit::pos(z)}));
  EXPECT_EQ(cert.target.clause(1), (Clause{Lit::neg(z), Lit::pos(3), Lit::pos(4)}));
  EXPECT_EQ(projection(cert.target, first_vars(4)), projection(f, first_vars(4)));
}

TEST(To3Cnf, ThreeCnfIsUnchanged) {
  CnfFormula f(4);
  f.add_clause({Lit::neg(1), Lit::pos(3)});
  f.add_clause({Lit::pos(1), Lit::pos(2), Lit::neg(4)});
  f.add_clause({Lit::neg(3), Lit::pos(4)});
  FreshVars fresh(4);
  const auto cert = to_3cnf(f, decompose_incidence(f, Strategy::min_fill), fresh);
  EXPECT_EQ(cert.target, f);
  EXPECT_TRUE(cert.fresh.empty());
  EXPECT_EQ(projection(cert.target, first_vars(4)), projection(f, first_vars(4)));
}

TEST(To3Cnf, RejectsInvalidDecomposition) {
  CnfFormula f(2);
  f.add_clause({Lit::pos(1), Lit::pos(2)});
  FreshVars fresh(2);
  EXPECT_THROW(to_3cnf(f, path({{1}}, {{0}}), fresh), InvalidInput);
}

TEST(To3Cnf, RandomProjectionAndWidth) {
  Rng rng(13);
  for (int round = 0; round < 300; ++round) {
    const Var n = 3 + round % 6;
    const auto f = testing::random_cnf(rng, n, 1 + round % 5, 1, 7);
    auto d = decompose_incidence(f, round % 2 ? Strategy::min_fill : Strategy::min_degree);
    if (round % 3 == 0) d = make_nice(d, f);
    FreshVars fresh(n);
    const auto cert = to_3cnf(f, d, fresh);
    expect_valid(cert);
    EXPECT_LE(cert.target.max_clause_size(), 3u);
    EXPECT_LE(cert.decomposition.width(), to_3cnf_width_bound(d.width()));
    for (Var z : cert.fresh) EXPECT_GT(z, n);
    ASSERT_EQ(projection(cert.target, first_vars(n)), projection(f, first_vars(n))) << write_dimacs(f);
  }
}

TEST(To3Cnf, DefinedSplitIsFunctional) {
  Rng rng(17);
  for (int round = 0; round < 300; ++round) {
    const Var n = 3 + round % 5;
    const auto f = testing::random_cnf(rng, n, 1 + round % 5, 1, 7);
    auto d = decompose_incidence(f, round % 2 ? Strategy::min_fill : Strategy::min_degree);
    if (round % 3 == 0) d = make_nice(d, f);
    FreshVars fresh(n);
    const auto cert = to_3cnf(f, d, fresh, SplitStyle::defined);
    expect_valid(cert);
    EXPECT_LE(cert.target.max_clause_size(), 3u);
    EXPECT_LE(cert.decomposition.width(), to_3cnf_width_bound(d.width(), SplitStyle::defined));
    ASSERT_EQ(cert.image.size(), f.num_clauses());
    std::vector<std::uint8_t> is_image(cert.target.num_clauses(), 0);
    for (ClauseId c : cert.image) is_image[c] = 1;
    CnfFormula defs(cert.target.num_vars());
    for (ClauseId c = 0; c < cert.target.num_clauses(); ++c)
      if (!is_image[c]) defs.add_clause(cert.target.clause(c));
    for (std::uint64_t mask : all_masks(n)) {
      std::vector<std::int8_t> fixed(defs.num_vars() + 1, -1);
      for (Var v = 1; v <= n; ++v) fixed[v] = static_cast<std::int8_t>(mask >> (v - 1) & 1u);
      ASSERT_TRUE(testing::extendable(defs, fixed));
      const auto a = testing::assignment_from_mask(mask, n);
      for (ClauseId c = 0; c < f.num_clauses(); ++c) {
        CnfFormula probe = defs;
        for (Lit l : cert.target.clause(cert.image[c])) probe.add_clause({~l});
        CnfFormula one(n);
        one.add_clause(f.clause(c));
        ASSERT_EQ(testing::extendable(probe, fixed), !one.satisfied_by(a)) << write_dimacs(f);
      }
    }
  }
}

TEST(To3Cnf, WorkIsLinear) {
  auto chain = [](Var n) {
    CnfFormula f(n + 4);
    for (Var i = 1; i <= n; ++i)
      f.add_clause({Lit::pos(i), Lit::neg(i + 1), Lit::pos(i + 2), Lit::pos(i + 3), Lit::neg(i + 4)});
    return f;
  };
  std::vector<double> work;
  for (Var n : {1000u, 2000u, 4000u}) {
    const auto f = chain(n);
    FreshVars fresh(f.num_vars());
    work.push_back(static_cast<double>(to_3cnf(f, decompose_incidence(f, Strategy::min_fill), fresh).work));
  }
  EXPECT_NEAR(work[1] / work[0], 2.0, 0.3);
  EXPECT_NEAR(work[2] / work[1], 2.0, 0.3);
}

TEST(Negate, Unit) {
  CnfFormula f(1);
  f.add_clause({Lit::pos(1)});
  FreshVars fresh(1);
  const auto cert = negate_projection(f, decompose_incidence(f, Strategy::min_fill), fresh);
  expect_valid(cert);
  EXPECT_EQ(projection(cert.target, first_vars(1)), (std::vector<std::uint64_t>{0}));
}

TEST(Negate, Xor) {
  CnfFormula f(2);
  f.add_clause({Lit::pos(1), Lit::pos(2)});
  f.add_clause({Lit::neg(1), Lit::neg(2)});
  FreshVars fresh(2);
  const auto cert = negate_projection(f, decompose_incidence(f, Strategy::min_fill), fresh);
  EXPECT_EQ(projection(cert.target, first_vars(2)), (std::vector<std::uint64_t>{0, 3}));
}

TEST(Negate, Contradiction) {
  CnfFormula f(1);
  f.add_clause({Lit::pos(1)});
  f.add_clause({Lit::neg(1)});
  FreshVars fresh(1);
  const auto cert = negate_projection(f, decompose_incidence(f, Strategy::min_fill), fresh);
  EXPECT_EQ(projection(cert.target, first_vars(1)), (std::vector<std::uint64_t>{0, 1}));
}

TEST(Negate, RejectsWideClause) {
  CnfFormula f(4);
  f.add_clause({Lit::pos(1), Lit::pos(2), Lit::pos(3), Lit::pos(4)});
  FreshVars fresh(4);
  EXPECT_THROW(negate_projection(f, decompose_incidence(f, Strategy::min_fill), fresh), InvalidInput);
}

TEST(Negate, RandomProjectionAndWidth) {
  Rng rng(14);
  for (int round = 0; round < 300; ++round) {
    const Var n = 2 + round % 6;
    const auto f = testing::random_cnf(rng, n, round % 6, 1, 3);
    const auto d = binarize(decompose_incidence(f, Strategy::min_fill));
    FreshVars fresh(n);
    const auto cert = negate_projection(f, d, fresh);
    expect_valid(cert);
    EXPECT_LE(cert.target.max_clause_size(), 3u);
    EXPECT_LE(cert.decomposition.width(), reify_width_bound(d.width()));
    for (std::size_t t = 0; t < d.size(); ++t) {
      std::vector<Var> original;
      for (Var v : cert.decomposition.vars[t])
        if (v <= n) original.push_back(v);
      for (Var v : d.vars[t]) EXPECT_TRUE(std::binary_search(original.begin(), original.end(), v));
    }
    ASSERT_EQ(projection(cert.target, first_vars(n)), complement(projection(f, first_vars(n)), n))
        << write_dimacs(f);
  }
}

TEST(Conjoin, WithEmptyFormula) {
  CnfFormula f(2);
  f.add_clause({Lit::pos(1), Lit::neg(2)});
  const auto d = decompose_incidence(f, Strategy::min_fill);
  IncidenceDecomposition empty = restrict_vars(d, [](Var) { return false; });
  const auto out = conjoin({f, d}, {CnfFormula(2), empty});
  EXPECT_EQ(out.formula, f);
  EXPECT_EQ(out.td, d);
}

TEST(Conjoin, DisjointFormulas) {
  CnfFormula a(4), b(4);
  a.add_clause({Lit::pos(1), Lit::pos(2)});
  b.add_clause({Lit::neg(3), Lit::pos(4)});
  const auto da = path({{1, 2}, {}}, {{0}, {}});
  const auto db = path({{}, {3, 4}}, {{}, {0}});
  const auto out = conjoin({a, da}, {b, db});
  EXPECT_EQ(out.formula.num_clauses(), 2u);
  EXPECT_EQ(out.formula.clause(1), b.clause(0));
  EXPECT_TRUE(validate(out.td, out.formula).ok());
  EXPECT_LE(out.td.width(), da.width() + db.width() + 1);
}

TEST(Conjoin, RejectsIncompatiblePlacement) {
  CnfFormula a(1), b(1);
  a.add_clause({Lit::pos(1)});
  b.add_clause({Lit::neg(1)});
  const auto da = path({{1}, {}}, {{0}, {}});
  const auto db = path({{}, {1}}, {{}, {0}});
  EXPECT_THROW(conjoin({a, da}, {b, db}), InvalidInput);
  const auto other = path({{1}}, {{0}});
  EXPECT_THROW(conjoin({a, da}, {b, other}), InvalidInput);
}

TEST(Conjoin, RandomSplitsThroughTo3Cnf) {
  Rng rng(15);
  for (int round = 0; round < 200; ++round) {
    const Var n = 3 + round % 5;
    const auto f = testing::random_cnf(rng, n, 2 + round % 4, 1, 6);
    const auto nice = make_nice(decompose_incidence(f, Strategy::min_fill), f);
    CnfFormula parts[2] = {CnfFormula(n), CnfFormula(n)};
    std::vector<ClauseId> renumber(f.num_clauses());
    std::vector<int> side(f.num_clauses());
    for (ClauseId c = 0; c < f.num_clauses(); ++c) {
      side[c] = static_cast<int>(rng() % 2);
      renumber[c] = parts[side[c]].add_clause(f.clause(c));
    }
    IncidenceDecomposition halves[2] = {nice, nice};
    for (int s = 0; s < 2; ++s)
      for (auto& bag : halves[s].clauses) {
        std::vector<ClauseId> kept;
        for (ClauseId c : bag)
          if (side[c] == s) kept.push_back(renumber[c]);
        std::sort(kept.begin(), kept.end());
        bag = kept;
      }
    FreshVars fresh(n);
    const auto a = to_3cnf(parts[0], halves[0], fresh);
    const auto b = to_3cnf(parts[1], halves[1], fresh);
    const auto both = conjoin(a.decomposed(), b.decomposed());
    ASSERT_TRUE(validate(both.td, both.formula).ok());
    EXPECT_LE(both.td.width(), a.decomposition.width() + b.decomposition.width() + 1);
    ASSERT_EQ(projection(both.formula, first_vars(n)), projection(f, first_vars(n)));
  }
}

TEST(Subset, SingleSubseteq) {
  const auto carrier = path({{1, 2}}, {{}});
  FreshVars fresh(2);
  const Var x[] = {1}, y[] = {2};
  const auto cert = subset_constraint(x, y, SubsetMode::subseteq, carrier, fresh);
  ASSERT_EQ(cert.target.num_clauses(), 1u);
  EXPECT_EQ(cert.target.clause(0), (Clause{Lit::neg(1), Lit::pos(2)}));
  EXPECT_EQ(projection(cert.target, first_vars(2)), (std::vector<std::uint64_t>{0, 2, 3}));
}

TEST(Subset, SingleStrict) {
  const auto carrier = path({{1, 2}}, {{}});
  FreshVars fresh(2);
  const Var x[] = {1}, y[] = {2};
  const auto cert = subset_constraint(x, y, SubsetMode::strict, carrier, fresh);
  expect_valid(cert);
  EXPECT_EQ(projection(cert.target, first_vars(2)), (std::vector<std::uint64_t>{2}));
}

TEST(Subset, StrictSelfIsUnsatisfiable) {
  const auto carrier = path({{1, 2}}, {{}});
  FreshVars fresh(2);
  const Var x[] = {1, 2};
  const auto cert = subset_constraint(x, x, SubsetMode::strict, carrier, fresh);
  EXPECT_TRUE(projection(cert.target, first_vars(2)).empty());
}

TEST(Subset, RejectsSeparatedPair) {
  const auto carrier = path({{1}, {2}}, {{}, {}});
  FreshVars fresh(2);
  const Var x[] = {1}, y[] = {2};
  EXPECT_THROW(subset_constraint(x, y, SubsetMode::subseteq, carrier, fresh), InvalidInput);
}

TEST(Subset, RandomProjection) {
  Rng rng(16);
  for (int round = 0; round < 300; ++round) {
    const Var n = 2 + round % 7;
    const std::size_t len = 1 + rng() % 4;
    std::vector<Var> x(len), y(len);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < len; ++i) {
      x[i] = 1 + static_cast<Var>(rng() % n);
      y[i] = 1 + static_cast<Var>(rng() % n);
      edges.emplace_back(x[i] - 1, y[i] - 1);
    }
    const auto g = Graph(n, edges);
    const auto carrier = incidence_from_primal(decompose(g, Strategy::min_fill), CnfFormula(n));
    const auto mode = round % 2 ? SubsetMode::strict : SubsetMode::subseteq;
    FreshVars fresh(n);
    const auto cert = subset_constraint(x, y, mode, carrier, fresh);
    expect_valid(cert);
    std::vector<std::uint64_t> expected;
    const auto& src = cert.source_vars;
    for (std::uint64_t m : all_masks(src.size())) {
      auto value = [&](Var v) {
        const auto at = std::lower_bound(src.begin(), src.end(), v) - src.begin();
        return (m >> at) & 1u;
      };
      bool sub = true, differ = false;
      for (std::size_t i = 0; i < len; ++i) {
        if (value(x[i]) > value(y[i])) sub = false;
        if (value(x[i]) != value(y[i])) differ = true;
      }
      if (sub && (mode == SubsetMode::subseteq || differ)) expected.push_back(m);
    }
    ASSERT_EQ(projection(cert.target, src), expected);
  }
}

TEST(Guards, DisjoinAndAttach) {
  CnfFormula f(2);
  f.add_clause({Lit::pos(1)});
  f.add_clause({Lit::neg(1), Lit::pos(2)});
  DecomposedCnf d{f, decompose_incidence(f, Strategy::min_fill)};
  auto guarded = disjoin_literal(d, Lit::pos(3));
  ASSERT_TRUE(validate(guarded.td, guarded.formula).ok());
  EXPECT_EQ(projection(guarded.formula, first_vars(3)), (std::vector<std::uint64_t>{3, 4, 5, 6, 7}));
  const Lit top[] = {Lit::neg(3), Lit::neg(2)};
  attach_clause(guarded, top);
  ASSERT_TRUE(validate(guarded.td, guarded.formula).ok()) << validate(guarded.td, guarded.formula).summary();
  EXPECT_EQ(projection(guarded.formula, first_vars(3)), (std::vector<std::uint64_t>{3, 4, 5}));
}

TEST(Guards, AttachRoutesVariables) {
  Rng rng(17);
  for (int round = 0; round < 200; ++round) {
    const Var n = 8;
    const auto f = testing::random_banded_cnf(rng, n, 6, 3, 1, 3);
    DecomposedCnf d{f, decompose_incidence(f, Strategy::min_fill)};
    const auto extra = testing::random_clause(rng, n, 1 + rng() % 4);
    attach_clause(d, extra);
    ASSERT_TRUE(validate(d.td, d.formula).ok()) << validate(d.td, d.formula).summary();
  }
}

TEST(Guards, RenameKeepsValidity) {
  CnfFormula f(2);
  f.add_clause({Lit::pos(1), Lit::neg(2)});
  DecomposedCnf d{f, decompose_incidence(f, Strategy::min_fill)};
  const Var map[] = {0, 5, 4};
  const auto r = rename_vars(d, map);
  EXPECT_EQ(r.formula.clause(0), (Clause{Lit::pos(5), Lit::neg(4)}));
  EXPECT_EQ(r.formula.num_vars(), 5u);
  EXPECT_TRUE(validate(r.td, r.formula).ok());
}

}  // namespace
}  // namespace twqbf
