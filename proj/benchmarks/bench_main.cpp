#include <benchmark/benchmark.h>

#include <random>

#include "twqbf/families.hpp"
#include "twqbf/problems.hpp"

namespace {

using namespace twqbf;

void report(benchmark::State& state, const SolveStats& s) {
  state.counters["ops"] = static_cast<double>(s.choice.ops);
  state.counters["ops_per_forget"] = s.forget_nodes ? static_cast<double>(s.choice.ops) / s.forget_nodes : 0.0;
  state.counters["width"] = s.width;
}

void BM_ChainFamily(benchmark::State& state) {
  const QbfFormula q = chain_family(static_cast<std::size_t>(state.range(0)), static_cast<int>(state.range(1)));
  SolveOptions options;
  options.early_exit = false;
  SolveStats stats;
  for (auto _ : state) {
    const SolveResult r = chen_solve(q, options);
    benchmark::DoNotOptimize(r.value);
    stats = r.stats;
  }
  report(state, stats);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ChainFamily)
    ->ArgsProduct({{1000, 2000, 4000}, {3}})
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oN);

void BM_GridFamily(benchmark::State& state) {
  const QbfFormula q = grid_family(120, static_cast<int>(state.range(0)));
  SolveOptions options;
  options.early_exit = false;
  options.reduce = state.range(1) != 0;
  SolveStats stats;
  for (auto _ : state) {
    const SolveResult r = chen_solve(q, options);
    benchmark::DoNotOptimize(r.value);
    stats = r.stats;
  }
  report(state, stats);
}
BENCHMARK(BM_GridFamily)->ArgsProduct({{2, 3, 4, 5}, {0, 1}})->Unit(benchmark::kMillisecond);

CnfFormula banded(Var n, std::size_t window, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CnfFormula f(n);
  for (Var start = 1; start + window <= n + 1; ++start) {
    Clause c;
    for (Var v = start; v < start + window; ++v)
      if (v == start || rng() % 2) c.push_back(Lit::make(v, rng() % 2));
    f.add_clause(c);
  }
  return f;
}

void BM_To3Cnf(benchmark::State& state) {
  const CnfFormula f = banded(static_cast<Var>(state.range(0)), 6, 1);
  const auto d = decompose_incidence(f, Strategy::min_fill);
  for (auto _ : state) {
    FreshVars fresh(f.num_vars());
    const auto cert = to_3cnf(f, d, fresh);
    benchmark::DoNotOptimize(cert.target.num_clauses());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_To3Cnf)->RangeMultiplier(2)->Range(256, 4096)->Complexity(benchmark::oN);

void BM_MinFill(benchmark::State& state) {
  const CnfFormula f = banded(static_cast<Var>(state.range(0)), 5, 2);
  const Graph g = primal_graph(f);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(g, Strategy::min_fill).size());
}
BENCHMARK(BM_MinFill)->RangeMultiplier(4)->Range(256, 4096);

QbfFormula small_forall_exists(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  QbfFormula q;
  q.matrix = CnfFormula(4);
  for (int i = 0; i < 4; ++i) {
    const Var a = 1 + static_cast<Var>(rng() % 4), b = 1 + static_cast<Var>(rng() % 4);
    if (a == b) continue;
    q.matrix.add_clause({Lit::make(a, rng() % 2), Lit::make(b, rng() % 2)});
  }
  q.prefix = {{Quantifier::forall, {1, 2}}, {Quantifier::exists, {3, 4}}};
  return q;
}

void BM_AbductionFromQbf(benchmark::State& state) {
  const PapInstance p = generate_pap_from_qbf(small_forall_exists(3));
  for (auto _ : state) benchmark::DoNotOptimize(abduction(p, AbductionQuery::solvable));
}
BENCHMARK(BM_AbductionFromQbf)->Unit(benchmark::kMillisecond);

void BM_CircumscriptionFromQbf(benchmark::State& state) {
  const CircumscriptionInstance c = generate_circ_from_qbf(small_forall_exists(3));
  for (auto _ : state) benchmark::DoNotOptimize(circumscription_entails(c));
}
BENCHMARK(BM_CircumscriptionFromQbf)->Unit(benchmark::kMillisecond);

void BM_MusFromQbf(benchmark::State& state) {
  const GeneratedMus g = generate_mus_from_qbf(small_forall_exists(3));
  for (auto _ : state) benchmark::DoNotOptimize(mus_membership(g.query));
}
BENCHMARK(BM_MusFromQbf)->Unit(benchmark::kMillisecond);

void BM_SkepticalAf(benchmark::State& state) {
  ArgumentationFramework f;
  const auto n = static_cast<Argument>(state.range(0));
  for (Argument a = 0; a < n; ++a) f.add_argument("a" + std::to_string(a));
  for (Argument a = 0; a < n; ++a) f.add_attack(a, (a + 1) % n);
  for (auto _ : state) benchmark::DoNotOptimize(skeptical(f, {0}));
}
BENCHMARK(BM_SkepticalAf)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
