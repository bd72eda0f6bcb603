#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace twqbf::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kParse = 2, kCap = 3, kDisagreement = 4 };

struct SolveArgs {
  std::string problem;
  std::string input;
  std::string td;
  std::string strategy = "min_fill";
  bool oracle = false;
  std::size_t max_oracle_vars = 20;
  std::string query;
  std::uint32_t hyp = 0;
  std::vector<std::string> set;
  std::uint32_t clause = 0;  // 1-based, 0 keeps the file's choice
  bool no_reduce = false;
  std::string report;
};
int run_solve(const SolveArgs& a);

struct ConvertArgs {
  std::string op;
  std::string input;
  std::string output;
  std::string td;
  std::string strategy = "min_fill";
  std::string style = "chain";
  bool incidence = false;
};
int run_convert(const ConvertArgs& a);

struct GenerateArgs {
  std::string kind;
  std::string input;
  std::string output;
  std::string manifest;
  std::size_t max_oracle_vars = 20;
};
int run_generate(const GenerateArgs& a);

struct BenchArgs {
  std::string family;
  std::vector<std::size_t> sizes{1000, 2000, 4000};
  std::vector<int> widths{3};
  std::size_t reps = 1;
  std::uint64_t seed = 1;
  bool no_reduce = false;
  std::string report;
};
int run_bench(const BenchArgs& a);

/// One row per (size, width): medians over the repetitions.
struct BenchRow {
  std::string family;
  std::size_t n = 0;
  int k = 0;
  int width = 0;
  std::uint64_t ops = 0;
  std::uint64_t forget_nodes = 0;
  std::uint64_t max_forget_ops = 0;
  double ms = 0;
  double ops_per_forget() const { return forget_nodes ? static_cast<double>(ops) / forget_nodes : 0.0; }
};
std::vector<BenchRow> bench_rows(const BenchArgs& a);

}  // namespace twqbf::cli
