#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "itsets/errors.hpp"
#include "itsets/literal.hpp"
#include "itsets/mset.hpp"
#include "itsets/set_ops.hpp"
#include "itsets/vset.hpp"

using namespace itsets;

namespace {
VsetId lit(Store& store, const char* text) {
  return to_vset(store, parse_mset_literal(store, text));
}
}  // namespace

TEST_CASE("numerals") {
  Store store;
  CHECK(nat(store, 0) == empty_set(store));
  CHECK(to_literal(store, nat(store, 1).mset()) == "{{}}");
  CHECK(to_literal(store, nat(store, 2).mset()) == "{{},{{}}}");
  // n = {0, ..., n-1}: each numeral contains all smaller ones
  VsetId five = nat(store, 5);
  CHECK(elements(store, five).size() == 5);
  for (std::uint32_t k = 0; k < 5; ++k)
    CHECK(member(store, nat(store, k), five));
  CHECK(store.rank(five.mset()) == 5);
}

TEST_CASE("pairing collapses equal components") {
  Store store;
  VsetId e = empty_set(store);
  VsetId se = lit(store, "{{}}");
  CHECK(to_literal(store, pair_set(store, e, se).mset()) == "{{},{{}}}");
  CHECK(to_literal(store, pair_set(store, e, e).mset()) == "{{}}");
  CHECK(pair_set(store, e, se) == pair_set(store, se, e));
}

TEST_CASE("union flattens one level") {
  Store store;
  VsetId x = lit(store, "{{{}},{{},{{}}}}");  // { {∅}, {∅,{∅}} }
  CHECK(to_literal(store, union_set(store, x).mset()) == "{{},{{}}}");
  CHECK(union_set(store, empty_set(store)) == empty_set(store));
  // union of {{}} is {}
  CHECK(union_set(store, lit(store, "{{}}")) == empty_set(store));
}

TEST_CASE("separation keeps exactly the matching elements") {
  Store store;
  VsetId x = lit(store, "{{},{{}},{{},{{}}}}");
  VsetId only_empty = separation(
      store, x, [&](VsetId z) { return elements(store, z).empty(); });
  CHECK(to_literal(store, only_empty.mset()) == "{{}}");
  VsetId none = separation(store, x, [](VsetId) { return false; });
  CHECK(none == empty_set(store));
  VsetId all = separation(store, x, [](VsetId) { return true; });
  CHECK(all == x);
}

TEST_CASE("ordered pairs encode and decode") {
  Store store;
  VsetId e = empty_set(store);
  VsetId se = lit(store, "{{}}");
  CHECK(to_literal(store, ordered_pair(store, e, e).mset()) == "{{{}}}");
  VsetId p = ordered_pair(store, e, se);
  auto dec = decode_pair(store, p);
  REQUIRE(dec.has_value());
  CHECK(dec->first == e);
  CHECK(dec->second == se);
  // asymmetric: ⟨x,y⟩ != ⟨y,x⟩ for x != y
  CHECK(p != ordered_pair(store, se, e));
  // non-pairs decode to nothing
  CHECK_FALSE(decode_pair(store, e).has_value());
  CHECK_FALSE(decode_pair(store, lit(store, "{{},{{}},{{{}}}}")).has_value());
}

TEST_CASE("graph decoding and the function predicate") {
  Store store;
  VsetId e = empty_set(store);
  VsetId se = lit(store, "{{}}");
  VsetId a = pair_set(store, e, se);
  VsetId b = pair_set(store, e, se);
  // identity on {∅, {∅}}
  VsetId ident = image(
      store, {ordered_pair(store, e, e), ordered_pair(store, se, se)});
  CHECK(is_fun(store, a, b, ident));
  auto graph = decode_graph(store, ident);
  REQUIRE(graph.has_value());
  CHECK(graph->size() == 2);
  // partial map: misses se
  VsetId partial = image(store, {ordered_pair(store, e, e)});
  CHECK_FALSE(is_fun(store, a, b, partial));
  // multi-valued at e
  VsetId multi = image(
      store, {ordered_pair(store, e, e), ordered_pair(store, e, se),
              ordered_pair(store, se, se)});
  CHECK_FALSE(is_fun(store, a, b, multi));
  // value escapes the codomain
  VsetId escape = image(
      store, {ordered_pair(store, e, a), ordered_pair(store, se, se)});
  CHECK_FALSE(is_fun(store, a, b, escape));
  // not even a set of pairs
  CHECK_FALSE(is_fun(store, a, b, se));
  // the empty function is the unique map out of the empty set
  CHECK(is_fun(store, e, b, e));
  CHECK_FALSE(is_fun(store, a, e, e));
}

TEST_CASE("function spaces") {
  Store store;
  VsetId e = empty_set(store);
  VsetId se = lit(store, "{{}}");
  VsetId two = pair_set(store, e, se);
  // b^∅ = {∅} for every b
  CHECK(to_literal(store, exp_set(store, e, two).mset()) == "{{}}");
  CHECK(exp_set(store, e, e) == lit(store, "{{}}"));
  // ∅^a = ∅ for inhabited a
  CHECK(exp_set(store, two, e) == e);
  // |two -> two| = 4, all satisfying is_fun
  VsetId ee = exp_set(store, two, two);
  auto fns = elements(store, ee);
  CHECK(fns.size() == 4);
  for (VsetId f : fns) CHECK(is_fun(store, two, two, f));
  // singleton -> singleton: exactly one map
  VsetId one = pair_set(store, e, e);  // {∅}
  CHECK(elements(store, exp_set(store, one, one)).size() == 1);
  // cap: 4^4 = 256 graphs exceeds a cap of 10
  CHECK_THROWS_AS(
      exp_set(store, lit(store, "{{},{{}},{{{}}},{{},{{}}}}"),
              lit(store, "{{},{{}},{{{}}},{{},{{}}}}"), 10),
      resource_limit);
}

TEST_CASE("membership recursion combinator") {
  Store store;
  // cardinality of the transitive closure, plus one for the node itself
  std::uint64_t calls = 0;
  auto count_nodes = eps_induction<std::uint64_t>(
      store, [&calls](VsetId, std::span<const std::uint64_t> kids) {
        ++calls;
        std::uint64_t n = 1;
        (void)kids;
        return n;
      });
  VsetId three = nat(store, 3);
  count_nodes(three);
  CHECK(calls == 4);  // {}, 1, 2, 3 — one call per distinct node
  // a second traversal over the same fragment reuses the memo entirely
  count_nodes(nat(store, 2));
  CHECK(calls == 4);
  // new nodes cost exactly the new entries
  count_nodes(nat(store, 4));
  CHECK(calls == 5);
}

TEST_CASE("witnessed choice") {
  Store store;
  VsetId e = empty_set(store);
  VsetId se = lit(store, "{{}}");
  VsetId a = pair_set(store, e, se);
  WitnessMap w = {{e, se, "picked"}, {se, e, "picked"}};
  VsetId f = choice_function(store, a, a, w);
  CHECK(is_fun(store, a, a, f));
  auto graph = decode_graph(store, f);
  REQUIRE(graph.has_value());
  for (const auto& [x, y] : *graph) {
    if (x == e) CHECK(y == se);
    if (x == se) CHECK(y == e);
  }
  // duplicate consistent entries are tolerated
  WitnessMap wdup = {{e, se, "a"}, {e, se, "b"}, {se, e, "c"}};
  CHECK(choice_function(store, a, a, wdup) == f);
  // conflicting duplicates are rejected
  WitnessMap wconf = {{e, se, "a"}, {e, e, "b"}, {se, e, "c"}};
  CHECK_THROWS_AS(choice_function(store, a, a, wconf), domain_mismatch);
  // missing key
  WitnessMap wmiss = {{e, se, "a"}};
  CHECK_THROWS_AS(choice_function(store, a, a, wmiss), domain_mismatch);
  // stray key outside the domain
  WitnessMap wstray = {{e, se, "a"}, {se, e, "b"}, {a, e, "c"}};
  CHECK_THROWS_AS(choice_function(store, a, a, wstray), domain_mismatch);
  // witness outside the codomain
  WitnessMap wesc = {{e, a, "a"}, {se, e, "b"}};
  CHECK_THROWS_AS(choice_function(store, a, a, wesc), codomain_violation);
}

TEST_CASE("collection from witnesses") {
  Store store;
  VsetId e = empty_set(store);
  VsetId se = lit(store, "{{}}");
  VsetId a = pair_set(store, e, se);
  WitnessMap w = {{e, se, "t"}, {se, se, "t"}};
  VsetId b = strong_collection(store, a, w);
  CHECK(to_literal(store, b.mset()) == "{{{}}}");  // just {∅} collected
  // totality is required
  WitnessMap partial = {{e, se, "t"}};
  CHECK_THROWS_AS(strong_collection(store, a, partial), domain_mismatch);
  // over the empty domain the collected set is empty
  CHECK(strong_collection(store, e, {}) == e);
}

TEST_CASE("fullness families") {
  Store store;
  VsetId e = empty_set(store);
  VsetId se = lit(store, "{{}}");
  VsetId two = pair_set(store, e, se);
  // ranges of all maps two -> two: {∅}, {{∅}}, {∅,{∅}} (each total map's
  // image, deduplicated)
  VsetId fam = subset_collection(store, two, two);
  auto members = elements(store, fam);
  CHECK(members.size() == 3);
  CHECK(member(store, image(store, {e}), fam));
  CHECK(member(store, image(store, {se}), fam));
  CHECK(member(store, two, fam));
  CHECK_FALSE(member(store, e, fam));  // no map has an empty range
  // empty domain: only the empty range
  CHECK(to_literal(store, subset_collection(store, e, two).mset()) ==
        "{{}}");
}

TEST_CASE("replacement along functions and relations") {
  Store store;
  VsetId e = empty_set(store);
  VsetId se = lit(store, "{{}}");
  VsetId two = pair_set(store, e, se);
  // x ↦ {x}
  VsetId singletons = replacement_fun(
      store, two, [&](VsetId x) { return image(store, {x}); });
  CHECK(member(store, image(store, {e}), singletons));
  CHECK(member(store, image(store, {se}), singletons));
  CHECK(elements(store, singletons).size() == 2);
  // collapsing map: everything to ∅
  VsetId collapsed =
      replacement_fun(store, two, [&](VsetId) { return e; });
  CHECK(to_literal(store, collapsed.mset()) == "{{}}");
  // relational route with the default candidate fragment: y = {x}
  VsetId rel = replacement_rel(store, two, [&](VsetId x, VsetId z) {
    return z == image(store, {x});
  });
  CHECK(rel == singletons);
  // a relation with no image in the fragment
  CHECK_THROWS_AS(
      replacement_rel(store, two,
                      [](VsetId, VsetId) { return false; }),
      no_witness);
  // a relation with two images
  CHECK_THROWS_AS(
      replacement_rel(store, two,
                      [](VsetId, VsetId) { return true; }),
      not_unique);
}
