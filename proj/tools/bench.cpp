#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>

#include "commands.hpp"
#include "io.hpp"
#include "json.hpp"
#include "twqbf/error.hpp"
#include "twqbf/families.hpp"
#include "twqbf/solver.hpp"

namespace twqbf::cli {

namespace {

template <class T>
T median(std::vector<T> xs) {
  std::sort(xs.begin(), xs.end());
  return xs[(xs.size() - 1) / 2];
}

}  // namespace

std::vector<BenchRow> bench_rows(const BenchArgs& a) {
  if (a.family != "chain" && a.family != "grid-width-capped") throw InvalidInput("unknown family: " + a.family);
  if (a.reps == 0) throw InvalidInput("--reps must be positive");
  SolveOptions options;
  options.early_exit = false;
  options.reduce = !a.no_reduce;
  std::vector<BenchRow> rows;
  for (int k : a.widths) {
    for (std::size_t n : a.sizes) {
      const QbfFormula q = a.family == "chain" ? chain_family(n, k, a.seed) : grid_family(n, k, a.seed);
      std::vector<std::uint64_t> ops, forgets, max_forget;
      std::vector<double> ms;
      int w = -1;
      for (std::size_t r = 0; r < a.reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        const SolveResult res = chen_solve(q, options);
        ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
        ops.push_back(res.stats.choice.ops);
        forgets.push_back(res.stats.forget_nodes);
        max_forget.push_back(res.stats.max_forget_ops);
        w = res.stats.width;
      }
      rows.push_back({a.family, n, k, w, median(ops), median(forgets), median(max_forget), median(ms)});
    }
  }
  return rows;
}

int run_bench(const BenchArgs& a) {
  const auto rows = bench_rows(a);
  std::printf("%-18s %8s %3s %6s %14s %10s %12s %8s %10s\n", "family", "n", "k", "width", "ops", "forgets",
              "ops/forget", "ratio", "ms");
  const BenchRow* prev = nullptr;
  for (const auto& r : rows) {
    // chain: growth over the previous size; grid: growth of ops per forget over the previous width.
    double ratio = 0;
    if (prev && a.family == "chain" && prev->k == r.k && prev->ops) ratio = double(r.ops) / double(prev->ops);
    if (prev && a.family != "chain" && prev->n == r.n && prev->ops_per_forget() > 0)
      ratio = r.ops_per_forget() / prev->ops_per_forget();
    std::printf("%-18s %8zu %3d %6d %14llu %10llu %12.1f %8s %10.1f\n", r.family.c_str(), r.n, r.k, r.width,
                static_cast<unsigned long long>(r.ops), static_cast<unsigned long long>(r.forget_nodes),
                r.ops_per_forget(), ratio > 0 ? std::to_string(ratio).substr(0, 6).c_str() : "-", r.ms);
    prev = &r;
  }
  for (const auto& r : rows) {
    const nlohmann::ordered_json j{{"family", r.family},           {"n", r.n},
                           {"k", r.k},                     {"width", r.width},
                           {"ops", r.ops},                 {"forget_nodes", r.forget_nodes},
                           {"max_forget_ops", r.max_forget_ops}, {"ops_per_forget", r.ops_per_forget()},
                           {"median_ms", r.ms},            {"reps", a.reps},
                           {"reduce", !a.no_reduce}};
    std::cout << j.dump() << '\n';
    append_line(a.report, j.dump());
  }
  return kOk;
}

}  // namespace twqbf::cli
