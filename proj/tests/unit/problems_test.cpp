#include <gtest/gtest.h>

#include <algorithm>

#include "random_problems.hpp"
#include "twqbf/error.hpp"
#include "twqbf/problems.hpp"

namespace twqbf {
namespace {

using testing::Rng;

ArgumentationFramework named_af(std::size_t n, std::initializer_list<std::pair<Argument, Argument>> attacks) {
  ArgumentationFramework f;
  for (std::size_t i = 0; i < n; ++i) f.add_argument(std::string(1, static_cast<char>('a' + i)));
  for (auto [a, b] : attacks) f.add_attack(a, b);
  return f;
}

std::vector<std::uint64_t> admissible_masks(const ArgumentationFramework& f) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << f.size()); ++m) {
    ArgumentSet s;
    for (Argument a = 0; a < f.size(); ++a)
      if (m >> a & 1u) s.push_back(a);
    if (af_admissible(f, s)) out.push_back(m);
  }
  return out;
}

std::vector<std::uint64_t> encoded_admissible_masks(const ArgumentationFramework& f, const DecomposedCnf& enc) {
  std::vector<Var> members;
  for (Argument a = 0; a < f.size(); ++a) members.push_back(af_member_var(a));
  return testing::projection(enc.formula, members);
}

QbfFormula parse_q(const char* text) { return parse_qdimacs(text); }

TEST(Af, ParseWriteRoundTrip) {
  const std::string text = "arg a\narg b\narg c\natt a b\natt b a\natt c c\nquery a c\n";
  const auto doc = parse_af(text);
  EXPECT_EQ(doc.framework.size(), 3u);
  EXPECT_TRUE(doc.framework.attacks(2, 2));
  EXPECT_EQ(doc.query, (ArgumentSet{0, 2}));
  EXPECT_EQ(write_af(doc), text);
  EXPECT_EQ(write_af(parse_af("# comment\narg x\n\natt x x\n")), "arg x\natt x x\n");
}

TEST(Af, ParseErrors) {
  EXPECT_THROW(parse_af("arg a\narg a\n"), ParseError);
  EXPECT_THROW(parse_af("arg a\natt a b\n"), ParseError);
  EXPECT_THROW(parse_af("argument a\n"), ParseError);
  EXPECT_THROW(parse_af("arg a b\n"), ParseError);
  try {
    parse_af("arg a\n\natt a z\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Af, AdmissibleEncodingExamples) {
  const auto single = named_af(1, {});
  const auto mutual = named_af(2, {{0, 1}, {1, 0}});
  const auto cycle = named_af(3, {{0, 1}, {1, 2}, {2, 0}});
  for (const auto* f : {&single, &mutual, &cycle}) {
    const auto d = decompose(f->graph(), Strategy::min_fill);
    const auto enc = encode_admissible(*f, d);
    EXPECT_TRUE(validate(enc.td, enc.formula).ok());
    EXPECT_EQ(encoded_admissible_masks(*f, enc), admissible_masks(*f));
  }
  EXPECT_EQ(admissible_masks(single), (std::vector<std::uint64_t>{0, 1}));
  EXPECT_EQ(admissible_masks(mutual), (std::vector<std::uint64_t>{0, 1, 2}));
  EXPECT_EQ(admissible_masks(cycle), (std::vector<std::uint64_t>{0}));
}

TEST(Af, AdmissibleEncodingRandom) {
  Rng rng(101);
  for (int round = 0; round < 80; ++round) {
    const auto f = testing::random_af(rng, 1 + rng() % 7, 0.25);
    const auto d = decompose(f.graph(), Strategy::min_fill);
    const auto enc = encode_admissible(f, d);
    ASSERT_TRUE(validate(enc.td, enc.formula).ok());
    EXPECT_LE(enc.td.width(), admissible_width_bound(width(d)));
    EXPECT_EQ(encoded_admissible_masks(f, enc), admissible_masks(f)) << write_af({f, {}});
  }
}

TEST(Af, AcceptanceExamples) {
  const auto single = named_af(1, {});
  const auto mutual = named_af(2, {{0, 1}, {1, 0}});
  const auto cycle = named_af(3, {{0, 1}, {1, 2}, {2, 0}});
  EXPECT_TRUE(credulous(cycle, {}));
  EXPECT_FALSE(credulous(cycle, {0}));
  EXPECT_TRUE(credulous(mutual, {0}));
  EXPECT_TRUE(skeptical(single, {0}));
  EXPECT_FALSE(skeptical(mutual, {0}));
  EXPECT_TRUE(skeptical(cycle, {}));
  EXPECT_THROW(credulous(mutual, {5}), InvalidInput);

  EXPECT_EQ(af_oracle(single), (std::vector<ArgumentSet>{{0}}));
  EXPECT_EQ(af_oracle(mutual), (std::vector<ArgumentSet>{{0}, {1}}));
  EXPECT_EQ(af_oracle(ArgumentationFramework{}), (std::vector<ArgumentSet>{{}}));
  EXPECT_THROW(af_oracle(testing::af_from_code(17, 0)), CapExceeded);
}

TEST(Af, AcceptanceMatchesOracle) {
  Rng rng(102);
  for (int round = 0; round < 60; ++round) {
    const auto f = testing::random_af(rng, 1 + rng() % 4, 0.3);
    ArgumentSet s;
    for (Argument a = 0; a < f.size(); ++a)
      if (rng() % 3 == 0) s.push_back(a);
    EXPECT_EQ(credulous(f, s), af_credulous_oracle(f, s)) << write_af({f, s});
    EXPECT_EQ(skeptical(f, s), af_skeptical_oracle(f, s)) << write_af({f, s});
  }
}

TEST(Af, CredulousIsMonotone) {
  Rng rng(103);
  for (int round = 0; round < 40; ++round) {
    const auto f = testing::random_af(rng, 2 + rng() % 4, 0.3);
    ArgumentSet big;
    for (Argument a = 0; a < f.size(); ++a)
      if (rng() % 2) big.push_back(a);
    ArgumentSet small;
    for (Argument a : big)
      if (rng() % 2) small.push_back(a);
    if (credulous(f, big)) EXPECT_TRUE(credulous(f, small));
  }
}

TEST(Af, GivenDecompositionIsChecked) {
  const auto f = named_af(3, {{0, 1}, {1, 2}});
  TreeDecomposition bad;
  bad.add_node(kNoNode, {0, 1});
  EXPECT_THROW(encode_admissible(f, bad), InvalidInput);
}

PapInstance pap(const char* text) { return parse_pap(text); }

TEST(Abduction, Examples) {
  // T=(m), H={h}, M={m}; h=1, m=2.
  const auto p1 = pap("c pap h 1 0\nc pap m 2 0\np cnf 2 1\n2 0\n");
  EXPECT_TRUE(abduction(p1, AbductionQuery::solvable));
  EXPECT_TRUE(abduction(p1, AbductionQuery::relevance, 1));
  EXPECT_FALSE(abduction(p1, AbductionQuery::necessity, 1));
  EXPECT_FALSE(abduction_subset(p1, AbductionQuery::subset_relevance, 1));
  EXPECT_FALSE(abduction_subset(p1, AbductionQuery::subset_necessity, 1));

  // T=(-h v m) & (h): the empty set is already a solution.
  const auto p2 = pap("c pap h 1 0\nc pap m 2 0\np cnf 2 2\n-1 2 0\n1 0\n");
  EXPECT_TRUE(abduction(p2, AbductionQuery::solvable));
  EXPECT_FALSE(abduction(p2, AbductionQuery::necessity, 1));
  EXPECT_FALSE(abduction_oracle(p2, AbductionQuery::necessity, 1));

  // T=(-h v m): {h} is the only solution.
  const auto p3 = pap("c pap h 1 0\nc pap m 2 0\np cnf 2 1\n-1 2 0\n");
  EXPECT_TRUE(abduction(p3, AbductionQuery::necessity, 1));
  EXPECT_TRUE(abduction_subset(p3, AbductionQuery::subset_necessity, 1));
  EXPECT_TRUE(abduction_subset(p3, AbductionQuery::subset_relevance, 1));
  const auto sols = pap_oracle(p3);
  EXPECT_EQ(sols.solutions, (std::vector<std::vector<Var>>{{1}}));
  EXPECT_EQ(sols.minimal, (std::vector<std::vector<Var>>{{1}}));

  // Inconsistent hypothesis: T=(-h), M={m} unreachable.
  const auto p4 = pap("c pap h 1 0\nc pap m 2 0\np cnf 2 1\n-1 0\n");
  EXPECT_FALSE(abduction(p4, AbductionQuery::solvable));
}

TEST(Abduction, Errors) {
  const auto p = pap("c pap h 1 0\nc pap m 2 0\np cnf 3 1\n2 0\n");
  EXPECT_THROW(abduction(p, AbductionQuery::relevance, 3), InvalidInput);
  EXPECT_THROW(abduction_subset(p, AbductionQuery::relevance, 1), InvalidInput);
  EXPECT_THROW(pap("c pap h 4 0\np cnf 3 0\n"), ParseError);
  EXPECT_THROW(pap("c pap x 1 0\np cnf 3 0\n"), ParseError);
  EXPECT_EQ(parse_abduction_query("subset-necessity"), AbductionQuery::subset_necessity);
  EXPECT_FALSE(parse_abduction_query("bogus").has_value());
}

TEST(Abduction, FormatRoundTrip) {
  Rng rng(104);
  for (int round = 0; round < 20; ++round) {
    const auto p = testing::random_pap(rng, 2 + rng() % 6, 1 + rng() % 6);
    const auto text = write_pap(p);
    const auto back = parse_pap(text);
    EXPECT_EQ(back.hypotheses, p.hypotheses);
    EXPECT_EQ(back.manifestations, p.manifestations);
    EXPECT_EQ(write_pap(back), text);
  }
}

TEST(Abduction, MatchesOracle) {
  Rng rng(105);
  for (int round = 0; round < 40; ++round) {
    const auto p = testing::random_pap(rng, 2 + rng() % 3, 1 + rng() % 5);
    const Var h = p.hypotheses[rng() % p.hypotheses.size()];
    for (auto q : {AbductionQuery::solvable, AbductionQuery::relevance, AbductionQuery::necessity,
                   AbductionQuery::subset_relevance, AbductionQuery::subset_necessity})
      EXPECT_EQ(abduction(p, q, h), abduction_oracle(p, q, h)) << to_string(q) << "\n" << write_pap(p) << "h=" << h;
  }
}

CircumscriptionInstance circ(const char* text) { return parse_circ(text); }

TEST(Circumscription, Examples) {
  const auto c1 = circ("c circ p 1 2 0\nc circ q 0\nc circ z 0\nc circ f -1 -2 0\np cnf 2 1\n1 2 0\n");
  EXPECT_TRUE(circumscription_entails(c1));
  EXPECT_EQ(circ_oracle(c1), (std::vector<std::uint64_t>{1, 2}));
  const auto c2 = circ("c circ p 1 2 0\nc circ f 1 0\np cnf 2 1\n1 2 0\n");
  EXPECT_FALSE(circumscription_entails(c2));
  const auto c3 = circ("c circ p 1 2 0\np cnf 2 1\n1 2 0\n");
  EXPECT_TRUE(circumscription_entails(c3));
  // Z varies freely: T = (x v z), P={x}, Z={z}; the minimal model has x=0.
  const auto c4 = circ("c circ p 1 0\nc circ z 2 0\nc circ f -1 0\np cnf 2 1\n1 2 0\n");
  EXPECT_TRUE(circumscription_entails(c4));
  EXPECT_EQ(circ_oracle(c4), (std::vector<std::uint64_t>{2}));
  // With z fixed in Q instead, x=1,z=0 is minimal among models with z=0.
  const auto c5 = circ("c circ p 1 0\nc circ q 2 0\nc circ f -1 0\np cnf 2 1\n1 2 0\n");
  EXPECT_FALSE(circumscription_entails(c5));
}

TEST(Circumscription, Errors) {
  EXPECT_THROW(circ("c circ p 1 0\np cnf 2 1\n1 2 0\n"), InvalidInput);
  EXPECT_THROW(circ("c circ p 1 2 0\nc circ q 2 0\np cnf 2 1\n1 2 0\n"), InvalidInput);
  EXPECT_THROW(circ("c circ p 1 2 0\nc circ f 3 0\np cnf 2 1\n1 2 0\n"), ParseError);
  EXPECT_THROW(circ("c circ w 1 0\np cnf 2 0\n"), ParseError);
}

TEST(Circumscription, FormatRoundTrip) {
  Rng rng(106);
  for (int round = 0; round < 20; ++round) {
    const auto c = testing::random_circ(rng, 2 + rng() % 6, 1 + rng() % 6);
    const auto text = write_circ(c);
    EXPECT_EQ(write_circ(parse_circ(text)), text);
  }
}

TEST(Circumscription, MatchesOracle) {
  Rng rng(107);
  for (int round = 0; round < 80; ++round) {
    const auto c = testing::random_circ(rng, 2 + rng() % 5, 1 + rng() % 6);
    EXPECT_EQ(circumscription_entails(c), circumscription_oracle(c)) << write_circ(c);
  }
}

TEST(Mus, Examples) {
  const auto f = parse_dimacs("p cnf 2 3\n1 0\n-1 0\n2 0\n");
  EXPECT_TRUE(mus_membership({f, 0}));
  EXPECT_FALSE(mus_membership({f, 2}));
  EXPECT_EQ(mus_oracle(f), (std::vector<std::vector<ClauseId>>{{0, 1}}));
  const auto sat = parse_dimacs("p cnf 2 2\n1 2 0\n-1 0\n");
  EXPECT_FALSE(mus_membership({sat, 0}));
  EXPECT_FALSE(mus_membership({sat, 1}));
  EXPECT_TRUE(mus_oracle(sat).empty());
  EXPECT_THROW(mus_membership({sat, 2}), InvalidInput);
}

TEST(Mus, Format) {
  const std::string text = "c mus clause 2\np cnf 2 3\n1 0\n-1 0\n2 0\n";
  const auto q = parse_mus(text);
  EXPECT_EQ(q.clause, 1u);
  EXPECT_EQ(write_mus(q), text);
  EXPECT_THROW(parse_mus("p cnf 1 1\n1 0\n"), ParseError);
  EXPECT_THROW(parse_mus("c mus clause 2\np cnf 1 1\n1 0\n"), ParseError);
  EXPECT_THROW(parse_mus("c mus clause 1\nc mus clause 1\np cnf 1 1\n1 0\n"), ParseError);
}

TEST(Mus, MatchesOracle) {
  Rng rng(108);
  for (int round = 0; round < 60; ++round) {
    const Var n = 2 + rng() % 3;
    const auto q = testing::random_mus(rng, n, 2 + rng() % (2 * n));
    EXPECT_EQ(mus_membership(q), mus_membership_oracle(q)) << write_mus(q);
  }
}

TEST(Generators, AfExamples) {
  const auto iff = parse_q("p cnf 2 2\na 1 0\ne 2 0\n-1 2 0\n1 -2 0\n");
  const auto conj = parse_q("p cnf 2 2\na 1 0\ne 2 0\n1 0\n2 0\n");
  for (const auto* q : {&iff, &conj}) {
    const auto g = generate_af_from_qbf(*q);
    EXPECT_TRUE(validate(g.decomposition, g.doc.framework.graph()).ok());
    EXPECT_EQ(af_skeptical_oracle(g.doc.framework, g.doc.query), brute_force_eval(*q));
    EXPECT_EQ(skeptical(g.doc.framework, g.doc.query), brute_force_eval(*q));
  }
  EXPECT_TRUE(brute_force_eval(iff));
  EXPECT_FALSE(brute_force_eval(conj));
}

TEST(Generators, RejectWrongPrefix) {
  const auto ea = parse_q("p cnf 2 1\ne 1 0\na 2 0\n1 2 0\n");
  EXPECT_THROW(generate_af_from_qbf(ea), InvalidInput);
  EXPECT_THROW(generate_pap_from_qbf(ea), InvalidInput);
  EXPECT_THROW(generate_circ_from_qbf(ea), InvalidInput);
  EXPECT_THROW(generate_mus_from_qbf(ea), InvalidInput);
  // Existential-only and empty prefixes are accepted.
  const auto e = parse_q("p cnf 1 1\ne 1 0\n1 0\n");
  EXPECT_EQ(af_skeptical_oracle(generate_af_from_qbf(e).doc.framework, {0}), true);
  EXPECT_EQ(abduction_oracle(generate_pap_from_qbf(e), AbductionQuery::solvable, 0), false);
}

TEST(Generators, RoundTripAndWidth) {
  Rng rng(109);
  for (int round = 0; round < 60; ++round) {
    const Var n = 1 + rng() % 3;
    const auto q = testing::random_qbf(rng, n, 1 + rng() % 4, 1, 3, {Quantifier::forall, Quantifier::exists});
    const bool truth = brute_force_eval(q);
    const Graph g = primal_graph(q.matrix);
    const auto primal = decompose(g, Strategy::min_fill);
    const int k = width(primal);

    const auto af = generate_af_from_qbf(q, primal);
    ASSERT_TRUE(validate(af.decomposition, af.doc.framework.graph()).ok());
    EXPECT_LE(width(af.decomposition), generated_af_width_bound(k));
    EXPECT_EQ(af_skeptical_oracle(af.doc.framework, af.doc.query), truth) << write_qdimacs(q);

    const auto pap = generate_pap_from_qbf(q);
    EXPECT_EQ(abduction_oracle(pap, AbductionQuery::solvable, 0), !truth);
    EXPECT_EQ(abduction(pap, AbductionQuery::solvable), !truth);

    const auto c = generate_circ_from_qbf(q);
    EXPECT_EQ(circumscription_oracle(c), truth);
    EXPECT_EQ(circumscription_entails(c), truth);

    const auto mus = generate_mus_from_qbf(q, primal);
    ASSERT_TRUE(validate(mus.decomposition, primal_graph(mus.query.formula)).ok());
    EXPECT_LE(width(mus.decomposition), k + 1);
    EXPECT_EQ(mus_membership_oracle(mus.query), !truth);
    EXPECT_EQ(mus_membership(mus.query), !truth);
  }
}

TEST(Common, Satisfiable) {
  const auto f = parse_dimacs("p cnf 4 4\n-4 3 0\n1 0\n4 0\n4 0\n");
  EXPECT_TRUE(satisfiable(f));
  EXPECT_TRUE(satisfiable(f, {-1, -1, -1, 1, -1}));
  EXPECT_FALSE(satisfiable(f, {-1, -1, -1, 0, -1}));
  EXPECT_FALSE(satisfiable(parse_dimacs("p cnf 1 2\n1 0\n-1 0\n")));
}

TEST(Common, ForallExistsSplit) {
  const auto [xs, ys] = forall_exists_split(parse_q("p cnf 3 1\na 2 0\ne 1 3 0\n1 2 3 0\n"));
  EXPECT_EQ(xs, (std::vector<Var>{2}));
  EXPECT_EQ(ys, (std::vector<Var>{1, 3}));
  EXPECT_THROW(forall_exists_split(parse_q("p cnf 3 1\na 1 0\ne 2 0\na 3 0\n1 2 3 0\n")), InvalidInput);
}

}  // namespace
}  // namespace twqbf
