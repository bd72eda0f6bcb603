#include "twqbf/families.hpp"

#include "twqbf/error.hpp"

namespace twqbf {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

class SignSource {
 public:
  explicit SignSource(std::uint64_t seed) : state_(mix(seed)) {}
  bool next() {
    state_ = mix(state_);
    return state_ & 1u;
  }

 private:
  std::uint64_t state_;
};

QbfFormula close_forall_exists(CnfFormula matrix) {
  QbfFormula q;
  QuantifierBlock outer{Quantifier::forall, {}}, inner{Quantifier::exists, {}};
  for (Var v = 1; v <= matrix.num_vars(); ++v) (v % 3 == 1 ? outer : inner).vars.push_back(v);
  q.matrix = std::move(matrix);
  q.prefix = {outer, inner};
  q.normalize_prefix();
  return q;
}

}  // namespace

QbfFormula chain_family(std::size_t n, int k, std::uint64_t seed) {
  if (k < 1) throw InvalidInput("chain_family: width must be positive");
  if (n < static_cast<std::size_t>(k) + 1) throw InvalidInput("chain_family: need at least k+1 variables");
  const Var nv = static_cast<Var>(n);
  const Var kk = static_cast<Var>(k);
  CnfFormula f(nv);
  SignSource sign(seed);
  for (Var i = 1; i + kk <= nv; ++i) {
    if (kk == 1) {
      f.add_clause({Lit::make(i, sign.next()), Lit::make(i + 1, sign.next())});
      continue;
    }
    for (Var j = 1; j < kk; ++j)
      f.add_clause({Lit::make(i, sign.next()), Lit::make(i + j, sign.next()), Lit::make(i + kk, sign.next())});
  }
  return close_forall_exists(std::move(f));
}

QbfFormula grid_family(std::size_t n, int k, std::uint64_t seed) {
  if (k < 1) throw InvalidInput("grid_family: width must be positive");
  const std::size_t rows = static_cast<std::size_t>(k);
  const std::size_t cols = (n + rows - 1) / rows;
  if (cols < rows) throw InvalidInput("grid_family: need at least k columns");
  auto id = [&](std::size_t r, std::size_t c) { return static_cast<Var>(c * rows + r + 1); };
  CnfFormula f(static_cast<Var>(rows * cols));
  SignSource sign(seed);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) {
      Clause cl{Lit::make(id(r, c), sign.next())};
      if (c + 1 < cols) cl.push_back(Lit::make(id(r, c + 1), sign.next()));
      if (r + 1 < rows) cl.push_back(Lit::make(id(r + 1, c), sign.next()));
      if (cl.size() > 1) f.add_clause(cl);
    }
  return close_forall_exists(std::move(f));
}

}  // namespace twqbf
