#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "itsets/bignat.hpp"
#include "itsets/formula.hpp"
#include "itsets/model.hpp"
#include "itsets/mset.hpp"
#include "itsets/proof_enum.hpp"

using namespace itsets;

// The enumerator is the independent oracle for the counting evaluator, so
// its own outputs are pinned here against hand-counted values.

namespace {
std::size_t proofs_of(Store& store, const Carrier& carrier, const char* text,
                      const Valuation& val = {}) {
  auto list = enumerate_proofs(store, parse_formula(text), carrier, val);
  REQUIRE(list.has_value());
  // descriptors must be pairwise distinct to count anything
  std::vector<std::string> sorted = *list;
  std::sort(sorted.begin(), sorted.end());
  REQUIRE(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  return list->size();
}
}  // namespace

TEST_CASE("hand-counted proof lists") {
  Store store;
  Carrier two = make_vset_carrier(store, 1);  // ∅ and {∅}
  CHECK(proofs_of(store, two, "bot") == 0);
  CHECK(proofs_of(store, two, "top") == 1);
  CHECK(proofs_of(store, two, "top /\\ top") == 1);
  CHECK(proofs_of(store, two, "top \\/ top") == 2);
  CHECK(proofs_of(store, two, "top \\/ bot") == 1);
  // tables: 2 proofs of lhs, 2 of rhs → 2^2
  CHECK(proofs_of(store, two, "top \\/ top -> top \\/ top") == 4);
  // empty lhs: exactly the empty table
  CHECK(proofs_of(store, two, "bot -> bot") == 1);
  CHECK(proofs_of(store, two, "top -> bot") == 0);
  // dependent tables over the carrier
  CHECK(proofs_of(store, two, "forall x. x = x") == 1);
  CHECK(proofs_of(store, two, "forall x. top \\/ top") == 4);
  CHECK(proofs_of(store, two, "exists x. x = x") == 2);
  CHECK(proofs_of(store, two, "exists x. exists y. x = y") == 2);
  // multiplicities are occurrences
  MsetId e = store.empty_mset();
  MsetId xx = store.mk_sup({e, e});
  Carrier bag = make_list_carrier(store, std::vector<MsetId>{e, xx});
  CHECK(proofs_of(store, bag, "z in x", {{"z", e}, {"x", xx}}) == 2);
  CHECK(proofs_of(store, bag, "exists y. y in x", {{"x", xx}}) == 2);
}

TEST_CASE("empty carrier") {
  Store store;
  Carrier none = make_list_carrier(store, std::vector<MsetId>{});
  CHECK(proofs_of(store, none, "forall x. bot") == 1);  // the empty table
  CHECK(proofs_of(store, none, "exists x. top") == 0);
}

TEST_CASE("budget exhaustion returns nothing rather than lying") {
  Store store;
  Carrier two = make_vset_carrier(store, 1);
  // six proofs on each side of the arrow: 6^6 = 46656 tables
  Formula f = parse_formula(
      "top \\/ top \\/ top \\/ top \\/ top \\/ top -> "
      "top \\/ top \\/ top \\/ top \\/ top \\/ top");
  CHECK_FALSE(
      enumerate_proofs(store, f, two, {}, {}, 10000).has_value());
  // the same formula fits a roomier budget, and the count matches
  auto list = enumerate_proofs(store, f, two, {}, {}, 50000);
  REQUIRE(list.has_value());
  CHECK(list->size() == 46656);
  CHECK(sigma_count(store, f, two) == BigNat(46656));
}

TEST_CASE("counting evaluator agrees on the squares law") {
  Store store;
  Carrier two = make_vset_carrier(store, 1);
  for (const char* text :
       {"top \\/ top", "exists x. x = x", "forall x. x = x \\/ top"}) {
    Formula f = parse_formula(text);
    Formula doubled = f_and(f, f);
    BigNat single = sigma_count(store, f, two);
    CHECK(sigma_count(store, doubled, two) == single * single);
    auto list = enumerate_proofs(store, doubled, two);
    REQUIRE(list.has_value());
    CHECK(BigNat(list->size()) == single * single);
  }
}
