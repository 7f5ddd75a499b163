#include <catch2/catch_amalgamated.hpp>

#include "itsets/bisim.hpp"
#include "itsets/literal.hpp"
#include "itsets/mset.hpp"
#include "itsets/vset.hpp"

using namespace itsets;

TEST_CASE("bisimilarity ignores multiplicities") {
  Store store;
  MsetId e = store.empty_mset();
  MsetId se = store.mk_sup({e});
  MsetId see = store.mk_sup({e, e});
  CHECK(bisim(store, e, e));
  CHECK(bisim(store, see, se));
  CHECK_FALSE(bisim(store, se, store.mk_sup({se})));
  CHECK_FALSE(bisim(store, e, se));
  // asymmetric children: {∅,{∅}} vs {{∅}} — ∅ has no match on the right
  CHECK_FALSE(bisim(store, store.mk_sup({e, se}), store.mk_sup({se})));
  // deep: {{∅,∅}} ≈ {{∅}}
  CHECK(bisim(store, store.mk_sup({see}), store.mk_sup({se})));
  // mixed multiplicities both ways: {{∅},{∅},∅} ≈ {{∅},∅,∅}
  CHECK(bisim(store, store.mk_sup({se, se, e}), store.mk_sup({se, e, e})));
}

TEST_CASE("iterative image hereditarily deduplicates") {
  Store store;
  MsetId e = store.empty_mset();
  MsetId see = store.mk_sup({e, e});
  CHECK(iterative_image(store, e).mset() == e);
  CHECK(to_literal(store, iterative_image(store, see).mset()) == "{{}}");
  // {{∅,∅},{∅}} → both children collapse to {∅} → {{∅}}
  MsetId se = store.mk_sup({e});
  MsetId m = store.mk_sup({see, se});
  CHECK(to_literal(store, iterative_image(store, m).mset()) == "{{{}}}");
  // already a set: image is the identity
  MsetId nested = store.mk_sup({se, e});
  CHECK(iterative_image(store, nested).mset() == nested);
  // the image is always certified
  CHECK(store.is_itset(iterative_image(store, m).mset()));
}

TEST_CASE("quotient of the small fragment") {
  Store store;
  std::vector<MsetId> frag = enumerate_msets(store, 1, 2);
  auto classes = quotient(store, frag);
  REQUIRE(classes.size() == 2);
  // the ∅ class is a singleton; the {∅} class holds {∅} and {∅,∅}
  CHECK(classes[0].members.size() == 1);
  CHECK(to_literal(store, classes[0].representative) == "{}");
  CHECK(classes[1].members.size() == 2);
  CHECK(to_literal(store, classes[1].image.mset()) == "{{}}");
}

TEST_CASE("quotient of a single element") {
  Store store;
  auto classes =
      quotient(store, std::vector<MsetId>{store.empty_mset()});
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].representative == store.empty_mset());
}
