#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "itsets/formula.hpp"
#include "itsets/mset.hpp"

namespace itsets {

// Seeded generator for property tests. All draws go through eng() with
// modulo reduction — mt19937_64's output sequence is fixed by the
// standard, so generated cases are reproducible across toolchains
// (std::uniform_int_distribution would not be).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return eng_() % n; }  // n >= 1
  bool coin() { return below(2) == 1; }

private:
  std::mt19937_64 eng_;
};

// Random interned multiset: up to `width` children per node, nesting at
// most `depth` deep.
inline MsetId random_mset(Rng& rng, Store& store, std::uint32_t depth,
                          std::uint32_t width) {
  if (depth == 0) return store.empty_mset();
  std::uint64_t n = rng.below(width + 1);
  std::vector<MsetId> kids;
  for (std::uint64_t i = 0; i < n; ++i)
    kids.push_back(random_mset(rng, store, depth - 1, width));
  return store.mk_sup(kids);
}

struct FormulaGenOptions {
  std::uint32_t max_depth = 4;
  bool allow_pred = false;  // predicate symbols need an environment
};

namespace detail {

inline Formula random_formula_rec(Rng& rng, std::uint32_t depth,
                                  std::vector<std::string>& scope,
                                  const FormulaGenOptions& opt) {
  // leaves only when out of depth, weighted toward structure otherwise
  bool leaf = depth == 0 || rng.below(4) == 0;
  if (leaf) {
    std::uint64_t pick = rng.below(scope.empty() ? 2 : (opt.allow_pred ? 5 : 4));
    switch (pick) {
      case 0:
        return f_bot();
      case 1:
        return f_top();
      case 2:
        return f_member(scope[rng.below(scope.size())],
                        scope[rng.below(scope.size())]);
      case 3:
        return f_equal(scope[rng.below(scope.size())],
                       scope[rng.below(scope.size())]);
      default:
        return f_pred("P", {scope[rng.below(scope.size())]});
    }
  }
  switch (rng.below(5)) {
    case 0:
      return f_and(random_formula_rec(rng, depth - 1, scope, opt),
                   random_formula_rec(rng, depth - 1, scope, opt));
    case 1:
      return f_or(random_formula_rec(rng, depth - 1, scope, opt),
                  random_formula_rec(rng, depth - 1, scope, opt));
    case 2:
      return f_implies(random_formula_rec(rng, depth - 1, scope, opt),
                       random_formula_rec(rng, depth - 1, scope, opt));
    default: {
      bool universal = rng.coin();
      std::string var = "v" + std::to_string(scope.size());
      scope.push_back(var);
      Formula body = random_formula_rec(rng, depth - 1, scope, opt);
      scope.pop_back();
      return f_quant(universal ? FormulaKind::Forall : FormulaKind::Exists,
                     var, std::move(body));
    }
  }
}

}  // namespace detail

// Well-scoped closed formula: every variable an atom mentions was
// introduced by an enclosing quantifier.
inline Formula random_formula(Rng& rng, const FormulaGenOptions& opt = {}) {
  std::vector<std::string> scope;
  return detail::random_formula_rec(rng, opt.max_depth, scope, opt);
}

}  // namespace itsets
