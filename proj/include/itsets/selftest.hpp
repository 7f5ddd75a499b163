#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "itsets/bignat.hpp"
#include "itsets/bisim.hpp"
#include "itsets/errors.hpp"
#include "itsets/formula.hpp"
#include "itsets/gen.hpp"
#include "itsets/literal.hpp"
#include "itsets/model.hpp"
#include "itsets/mset.hpp"
#include "itsets/proof_enum.hpp"
#include "itsets/set_ops.hpp"
#include "itsets/vset.hpp"

// The acceptance suite: thirteen self-contained criteria, each checking
// one advertised property of the kernel against values derived by hand
// or by an independent in-test oracle. Shared between the CLI `selftest`
// subcommand and the standalone acceptance binary.

namespace itsets::selftest {

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string detail;  // summary on pass, first failure on fail
  double millis = 0.0;
};

struct SelftestOptions {
  std::string only;  // substring filter on criterion names; empty = all
};

// How the suite invokes the CLI for the byte-identity checks; injected
// to keep this header independent of the argument-parsing layer.
using CliRunner = std::function<int(const std::vector<std::string>& args,
                                    std::string& out, std::string& err)>;

namespace detail {

struct check_failure : error {
  using error::error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw check_failure(msg);
}

inline std::uint64_t pow_u64(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= b;
  return r;
}

// ---- criterion 1: rank-fragment cardinalities ------------------------

inline std::string crit_hierarchy_counts() {
  Store store;
  const std::uint64_t expected[] = {1, 2, 4, 16, 65536};
  std::vector<VsetId> prev;
  for (std::uint32_t n = 0; n <= 4; ++n) {
    std::vector<VsetId> level = enumerate_vsets(store, n);
    require(level.size() == expected[n],
            "rank fragment " + std::to_string(n) + " has " +
                std::to_string(level.size()) + " sets, expected " +
                std::to_string(expected[n]));
    // the level is exactly the powerset of the previous level: every
    // entry is a subset of it, entries are pairwise distinct, and the
    // count matches 2^|prev| — which pins the bijection
    if (n > 0) {
      require(level.size() == (std::uint64_t{1} << prev.size()),
              "level is not 2^previous in size");
      std::vector<MsetId> ids;
      for (VsetId v : level) {
        ids.push_back(v.mset());
        for (const auto& [child, mult] : store.children_of(v.mset())) {
          require(mult == 1, "set-like level contains a repeated child");
          bool in_prev = false;
          for (VsetId p : prev)
            if (p.mset() == child) in_prev = true;
          require(in_prev, "level element is not a subset of the previous "
                           "level");
        }
      }
      std::sort(ids.begin(), ids.end());
      require(std::adjacent_find(ids.begin(), ids.end()) == ids.end(),
              "level contains duplicates");
    }
    prev = std::move(level);
  }
  return "fragment sizes 1, 2, 4, 16, 65536; each level is exactly the "
         "powerset of the one before";
}

// ---- criterion 2: extensionality on sets ------------------------------

inline std::string crit_set_extensionality() {
  Store store;
  std::vector<VsetId> frag = enumerate_vsets(store, 3);
  require(frag.size() == 16, "rank-3 fragment should have 16 sets");
  int pairs = 0;
  for (VsetId x : frag) {
    for (VsetId y : frag) {
      std::vector<MsetId> ex, ey;
      for (const auto& [c, m] : store.children_of(x.mset())) ex.push_back(c);
      for (const auto& [c, m] : store.children_of(y.mset())) ey.push_back(c);
      bool same_elements = ex == ey;  // both canonically sorted
      require((x == y) == same_elements,
              "id equality and element equality disagree for " +
                  to_literal(store, x.mset()) + " vs " +
                  to_literal(store, y.mset()));
      ++pairs;
    }
  }
  require(pairs == 256, "expected 256 pairs");
  return "id equality coincides with element-set equality on all 256 pairs";
}

// ---- criterion 3: extensionality on multisets --------------------------

inline std::string crit_multiset_extensionality() {
  Store store;
  std::vector<MsetId> frag = enumerate_msets(store, 2, 2);
  require(frag.size() == 10, "rank-2 width-2 fragment should have 10");
  // probe multiplicities over the fragment plus every member of a
  // fragment element
  std::vector<MsetId> probes = frag;
  for (MsetId m : frag)
    for (const auto& [c, k] : store.children_of(m)) probes.push_back(c);
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  for (MsetId x : frag) {
    for (MsetId y : frag) {
      bool pointwise = true;
      for (MsetId z : probes)
        if (store.count_in(z, x) != store.count_in(z, y)) pointwise = false;
      require(store.meq(x, y) == pointwise,
              "meq and pointwise multiplicity agreement disagree for " +
                  to_literal(store, x) + " vs " + to_literal(store, y));
    }
  }
  return "meq coincides with pointwise multiplicity agreement on all 100 "
         "pairs (probes: fragment plus members)";
}

// ---- criterion 4: bisimilarity quotient --------------------------------

inline std::string crit_quotient_equivalence() {
  Store store;
  std::vector<MsetId> frag = enumerate_msets(store, 2, 2);
  std::vector<BisimClass> classes = quotient(store, frag);
  require(classes.size() == 4,
          "expected 4 bisimilarity classes, got " +
              std::to_string(classes.size()));
  // partition: members cover the fragment exactly once
  std::vector<MsetId> covered;
  for (const auto& c : classes)
    covered.insert(covered.end(), c.members.begin(), c.members.end());
  std::vector<MsetId> frag_sorted = frag;
  std::sort(covered.begin(), covered.end());
  std::sort(frag_sorted.begin(), frag_sorted.end());
  require(covered == frag_sorted, "classes do not partition the fragment");
  BisimCtx ctx(store);
  for (const auto& c : classes)
    for (MsetId m : c.members)
      for (MsetId m2 : c.members)
        require(ctx.equivalent(m, m2), "class members not pairwise bisimilar");
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j)
      require(!ctx.equivalent(classes[i].representative,
                              classes[j].representative),
              "distinct classes have bisimilar representatives");
  // every multiset is bisimilar to its hereditary deduplication
  for (MsetId m : frag)
    require(ctx.equivalent(m, iterative_image(store, m).mset()),
            "element not bisimilar to its iterative image: " +
                to_literal(store, m));
  // on certified sets, bisimilarity collapses to equality
  for (MsetId x : frag)
    for (MsetId y : frag) {
      if (store.meq(x, y))
        require(ctx.equivalent(x, y), "equal multisets not bisimilar");
      if (store.is_itset(x) && store.is_itset(y))
        require(ctx.equivalent(x, y) == store.meq(x, y),
                "bisim and meq disagree on certified sets");
    }
  // the image map is constant on classes, injective across them, and
  // its value count equals the class count
  std::vector<MsetId> images;
  for (const auto& c : classes) {
    require(iterative_image(store, c.representative) == c.image,
            "class image is not the representative's image");
    for (MsetId m : c.members)
      require(iterative_image(store, m) == c.image,
              "member image differs from class image");
    images.push_back(c.image.mset());
  }
  std::sort(images.begin(), images.end());
  require(std::adjacent_find(images.begin(), images.end()) == images.end(),
          "distinct classes share an image");
  // full quotient property across all pairs
  for (MsetId x : frag)
    for (MsetId y : frag)
      require((iterative_image(store, x) == iterative_image(store, y)) ==
                  ctx.equivalent(x, y),
              "image equality and bisimilarity disagree");
  // independent count of the other side of the bijection
  std::size_t certified = 0;
  for (MsetId m : frag)
    if (store.is_itset(m)) ++certified;
  require(certified == classes.size(),
          "class count differs from certified-set count in the fragment");
  return "4 classes over the 10-element fragment, in bijection with its 4 "
         "certified sets via the image map";
}

// ---- criterion 5: function-space extension ------------------------------

inline std::string crit_exponentials() {
  Store store;
  Rng rng(0x5e7);
  std::vector<VsetId> base = enumerate_vsets(store, 2);
  // all subsets of the rank-2 fragment with at most 3 elements
  std::vector<VsetId> doms;
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    if (__builtin_popcount(mask) > 3) continue;
    std::vector<VsetId> sub;
    for (std::size_t i = 0; i < base.size(); ++i)
      if (mask & (1u << i)) sub.push_back(base[i]);
    doms.push_back(image(store, sub));
  }
  require(doms.size() == 15, "expected 15 candidate domains");
  std::size_t random_candidates = 0;
  for (VsetId a : doms) {
    for (VsetId b : doms) {
      VsetId e = exp_set(store, a, b);
      std::vector<VsetId> dom = elements(store, a);
      std::vector<VsetId> cod = elements(store, b);
      std::uint64_t want = pow_u64(cod.size(), dom.size());
      require(elements(store, e).size() == want,
              "function-space size is not |b|^|a| for |a|=" +
                  std::to_string(dom.size()) +
                  ", |b|=" + std::to_string(cod.size()));
      // pool: every graph, plus randomized non-graphs; for each
      // candidate, membership must coincide with the function predicate
      std::vector<VsetId> pool;
      if (!dom.empty() && cod.empty()) {
        // no graphs
      } else {
        std::vector<std::size_t> pick(dom.size(), 0);
        while (true) {
          std::vector<VsetId> pairs;
          for (std::size_t i = 0; i < dom.size(); ++i)
            pairs.push_back(ordered_pair(store, dom[i], cod[pick[i]]));
          pool.push_back(image(store, pairs));
          std::size_t pos = pick.size();
          while (pos > 0 && pick[pos - 1] == cod.size() - 1) --pos;
          if (pos == 0) break;
          ++pick[pos - 1];
          for (std::size_t i = pos; i < pick.size(); ++i) pick[i] = 0;
        }
        for (VsetId g : pool)
          require(member(store, g, e) && is_fun(store, a, b, g),
                  "a generated graph is rejected");
      }
      // randomized candidates: subsets of a×b pairs and junk elements
      for (int r = 0; r < 2; ++r) {
        std::vector<VsetId> stuff;
        for (VsetId x : dom)
          for (VsetId y : cod)
            if (rng.coin()) stuff.push_back(ordered_pair(store, x, y));
        if (rng.below(3) == 0 && !base.empty())
          stuff.push_back(base[rng.below(base.size())]);
        pool.push_back(image(store, stuff));
        ++random_candidates;
      }
      for (VsetId c : pool)
        require(member(store, c, e) == is_fun(store, a, b, c),
                "membership in the function space disagrees with the "
                "function predicate");
    }
  }
  require(random_candidates >= 100, "fewer than 100 random candidates");
  return "|b|^|a| sizes exact on 225 domain pairs; membership coincides "
         "with the function predicate on all graphs and " +
         std::to_string(random_candidates) + " random candidates";
}

// ---- criterion 6: construction contracts -------------------------------

inline std::string crit_construction_contracts() {
  Store store;
  std::vector<VsetId> frag = enumerate_vsets(store, 3);
  for (VsetId x : frag)
    for (VsetId y : frag) {
      VsetId p = pair_set(store, x, y);
      for (VsetId z : frag)
        require(member(store, z, p) == (z == x || z == y),
                "pairing contract fails");
    }
  for (VsetId x : frag) {
    VsetId u = union_set(store, x);
    for (VsetId z : frag) {
      bool via = false;
      for (VsetId y : elements(store, x))
        if (member(store, z, y)) via = true;
      require(member(store, z, u) == via, "union contract fails");
    }
  }
  std::vector<std::pair<std::string, std::function<bool(VsetId)>>> preds = {
      {"is-empty",
       [&](VsetId z) { return elements(store, z).empty(); }},
      {"size-at-most-1",
       [&](VsetId z) { return elements(store, z).size() <= 1; }},
      {"contains-empty",
       [&](VsetId z) { return member(store, empty_set(store), z); }},
  };
  for (const auto& [label, pred] : preds)
    for (VsetId x : frag) {
      VsetId s = separation(store, x, pred);
      for (VsetId z : frag)
        require(member(store, z, s) == (pred(z) && member(store, z, x)),
                "separation contract fails for predicate " + label);
    }
  return "pairing, union, and separation (3 predicates) biimplications "
         "hold exhaustively over the 16-set fragment";
}

// ---- criterion 7: truncation consistency -------------------------------

inline std::string crit_truncation_consistency() {
  Store store;
  Rng rng(0xC7);
  std::vector<MsetId> mfrag = enumerate_msets(store, 2, 2);
  std::vector<MsetId> vfrag;
  for (VsetId v : enumerate_vsets(store, 2)) vfrag.push_back(v.mset());
  auto random_carrier = [&](std::size_t max_size) {
    const std::vector<MsetId>& pool = rng.coin() ? mfrag : vfrag;
    std::size_t size = 1 + rng.below(max_size);
    std::vector<MsetId> elems;
    for (std::size_t i = 0; i < size; ++i)
      elems.push_back(pool[rng.below(pool.size())]);
    return make_list_carrier(store, elems);
  };
  EvalLimits limits;
  limits.max_count_digits = 2000;
  int accepted = 0, attempts = 0;
  while (accepted < 1000) {
    require(++attempts < 100000, "generator failed to produce 1000 cases");
    FormulaGenOptions opt;
    opt.max_depth = 4;
    Formula f = random_formula(rng, opt);
    Carrier carrier = random_carrier(4);
    BigNat count;
    try {
      count = sigma_count(store, f, carrier, {}, limits);
    } catch (const resource_limit&) {
      continue;  // counts past the cap are discarded, not silently capped
    }
    bool truth = tau_eval(store, f, carrier);
    require(truth == !count.is_zero(),
            "truth and positive count disagree on " + print_formula(f));
    ++accepted;
  }
  // independent validation: enumerate actual proof terms and compare
  // list length against the computed count
  int validated = 0;
  attempts = 0;
  while (validated < 100) {
    require(++attempts < 100000, "oracle failed to accept 100 cases");
    FormulaGenOptions opt;
    opt.max_depth = 3;
    Formula f = random_formula(rng, opt);
    Carrier carrier = random_carrier(3);
    auto proofs = enumerate_proofs(store, f, carrier, {}, {}, 20000);
    if (!proofs) continue;  // oracle's own budget decides the subset
    std::vector<std::string> uniq = *proofs;
    std::sort(uniq.begin(), uniq.end());
    require(std::adjacent_find(uniq.begin(), uniq.end()) == uniq.end(),
            "proof enumerator produced duplicate descriptors");
    BigNat count = sigma_count(store, f, carrier, {}, limits);
    require(count == BigNat(proofs->size()),
            "proof count " + std::to_string(proofs->size()) +
                " != computed count " + count.to_string() + " on " +
                print_formula(f));
    ++validated;
  }
  return "1000 random formulas: truth = (count > 0); 100 counts match "
         "brute-force proof enumeration exactly";
}

// ---- criterion 8: count/truth divergence --------------------------------

inline std::string crit_sigma_tau_divergence() {
  Store store;
  MsetId e = store.empty_mset();
  MsetId se = store.mk_sup({e});
  MsetId x = store.mk_sup({se, se});  // {{},{}} nested: two copies of {{}}
  Carrier carrier = make_list_carrier(store, std::vector<MsetId>{e, se, x});
  // the inner existential of the union property, at z = {}
  Formula inner =
      f_exists("y", f_and(f_member("y", "x"), f_member("z", "y")));
  Valuation val = {{"x", x}, {"z", e}};
  BigNat count = sigma_count(store, inner, carrier, val);
  bool truth = tau_eval(store, inner, carrier, val);
  require(count == BigNat(2),
          "inner existential should count 2 proofs, got " +
              count.to_string());
  require(truth, "inner existential should be true");
  // bare membership atom with multiplicity 2: {} occurs twice in {{},{}}
  MsetId x2 = store.mk_sup({e, e});
  Carrier carrier2 = make_list_carrier(store, std::vector<MsetId>{e, x2});
  Formula atom = f_exists("y", f_member("y", "x"));
  BigNat count2 = sigma_count(store, atom, carrier2, {{"x", x2}});
  require(count2 == BigNat(2), "two occurrences should count 2 proofs");
  require(tau_eval(store, atom, carrier2, {{"x", x2}}),
          "occupied multiset should be truthfully inhabited");
  // the axiom checker surfaces the same divergence in its report
  AxiomReport report =
      check_axiom(store, Axiom::Union, carrier2, Mode::Sigma);
  bool noted = false;
  for (const auto& inst : report.instances)
    if (inst.note.find("counts 2") != std::string::npos) noted = true;
  require(noted, "axiom report does not surface the multiplicity-2 count");
  return "inner existential counts 2 with truth true; multiplicity-2 atom "
         "counts 2; divergence surfaced in the union axiom report";
}

// ---- criterion 9: choice functions --------------------------------------

inline std::string crit_choice() {
  Store store;
  std::vector<VsetId> base = enumerate_vsets(store, 2);
  std::vector<VsetId> doms;
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    if (__builtin_popcount(mask) > 2) continue;
    std::vector<VsetId> sub;
    for (std::size_t i = 0; i < base.size(); ++i)
      if (mask & (1u << i)) sub.push_back(base[i]);
    doms.push_back(image(store, sub));
  }
  require(doms.size() == 11, "expected 11 candidate domains");
  int maps = 0;
  for (VsetId a : doms) {
    for (VsetId b : doms) {
      std::vector<VsetId> dom = elements(store, a);
      std::vector<VsetId> cod = elements(store, b);
      if (!dom.empty() && cod.empty()) continue;  // no total maps
      std::vector<std::size_t> pick(dom.size(), 0);
      while (true) {
        WitnessMap w;
        for (std::size_t i = 0; i < dom.size(); ++i)
          w.push_back({dom[i], cod[pick[i]], "chosen"});
        VsetId f = choice_function(store, a, b, w);
        require(is_fun(store, a, b, f), "choice output fails is_fun");
        auto graph = decode_graph(store, f);
        require(graph.has_value(), "choice output is not a set of pairs");
        require(graph->size() == dom.size(), "choice graph size mismatch");
        for (std::size_t i = 0; i < dom.size(); ++i) {
          bool found = false;
          for (const auto& [gx, gy] : *graph)
            if (gx == dom[i] && gy == cod[pick[i]]) found = true;
          require(found, "choice graph misses a witnessed pair");
        }
        ++maps;
        std::size_t pos = pick.size();
        while (pos > 0 && pick[pos - 1] == cod.size() - 1) --pos;
        if (pos == 0) break;
        ++pick[pos - 1];
        for (std::size_t i = pos; i < pick.size(); ++i) pick[i] = 0;
      }
    }
  }
  // error contracts
  {
    VsetId one = image(store, {empty_set(store)});      // {{}}
    VsetId two = pair_set(store, empty_set(store), one); // {{},{{}}}
    bool threw = false;
    try {
      choice_function(store, two, two, WitnessMap{});
    } catch (const domain_mismatch&) {
      threw = true;
    }
    require(threw, "missing witness entries should raise domain_mismatch");
    threw = false;
    WitnessMap bad = {{empty_set(store), two, ""}, {one, one, ""}};
    try {
      choice_function(store, two, one, bad);  // two is not a member of one
    } catch (const codomain_violation&) {
      threw = true;
    }
    require(threw, "out-of-codomain witness should raise "
                   "codomain_violation");
  }
  return "all " + std::to_string(maps) +
         " total witness maps over |a|,|b| <= 2 yield graphs passing the "
         "function predicate pointwise";
}

// ---- criterion 10: collection principles ---------------------------------

inline std::string crit_collection() {
  Store store;
  std::vector<VsetId> base = enumerate_vsets(store, 2);
  std::vector<VsetId> doms;
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    if (__builtin_popcount(mask) > 2) continue;
    std::vector<VsetId> sub;
    for (std::size_t i = 0; i < base.size(); ++i)
      if (mask & (1u << i)) sub.push_back(base[i]);
    doms.push_back(image(store, sub));
  }
  int maps = 0;
  for (VsetId a : doms) {
    for (VsetId b : doms) {
      std::vector<VsetId> dom = elements(store, a);
      std::vector<VsetId> cod = elements(store, b);
      VsetId c = subset_collection(store, a, b);
      if (dom.empty())
        require(c == image(store, {empty_set(store)}),
                "collection family over an empty domain should be {{}}");
      if (!dom.empty() && cod.empty()) continue;
      std::vector<std::size_t> pick(dom.size(), 0);
      while (true) {
        WitnessMap w;
        for (std::size_t i = 0; i < dom.size(); ++i)
          w.push_back({dom[i], cod[pick[i]], "related"});
        VsetId bb = strong_collection(store, a, w);
        // clause 1: every witness value landed in the collected set
        for (const auto& entry : w)
          require(member(store, entry.witness, bb),
                  "collected set misses a witness value");
        // clause 2: everything in the collected set is some witness
        for (VsetId y : elements(store, bb)) {
          bool hit = false;
          for (const auto& entry : w)
            if (entry.witness == y) hit = true;
          require(hit, "collected set contains a non-witness");
        }
        // the collected set is the witnesses' image and belongs to the
        // fullness family
        std::vector<VsetId> values;
        for (const auto& entry : w) values.push_back(entry.witness);
        VsetId d = image(store, values);
        require(d == bb, "collected set differs from the witness image");
        require(member(store, d, c),
                "witness image escapes the fullness family");
        // replacement route: collecting equals replacing along the
        // witness graph
        VsetId rr = replacement_rel(
            store, a,
            [&w](VsetId x, VsetId z) {
              for (const auto& entry : w)
                if (entry.input == x) return entry.witness == z;
              return false;
            },
            std::span<const VsetId>(values));
        require(rr == bb, "replacement along the witness graph differs "
                          "from strong collection");
        ++maps;
        std::size_t pos = pick.size();
        while (pos > 0 && pick[pos - 1] == cod.size() - 1) --pos;
        if (pos == 0) break;
        ++pick[pos - 1];
        for (std::size_t i = pos; i < pick.size(); ++i) pick[i] = 0;
      }
    }
  }
  return "strong-collection clauses, fullness membership, and the "
         "replacement route agree on all " +
         std::to_string(maps) + " witness maps";
}

// ---- criterion 11: membership recursion ----------------------------------

inline std::string crit_eps_induction() {
  Store store;
  auto height = eps_induction<std::uint32_t>(
      store, [](VsetId, std::span<const std::uint32_t> kids) {
        std::uint32_t h = 0;
        for (std::uint32_t k : kids) h = std::max(h, k + 1);
        return h;
      });
  for (VsetId v : enumerate_vsets(store, 3))
    require(height(v) == store.rank(v.mset()),
            "recursion-computed rank differs from stored rank");
  for (std::uint32_t n = 0; n <= 5; ++n) {
    VsetId m = nat(store, n);
    require(store.rank(m.mset()) == n, "numeral rank should be n");
    require(height(m) == n, "recursion-computed numeral rank should be n");
  }
  // the step function runs once per distinct node: over the numeral 3's
  // closure the element slots sum to 3 + 2 + 1 + 0
  std::uint64_t slots = 0;
  auto count_slots = eps_induction<int>(
      store, [&slots](VsetId, std::span<const int> kids) {
        slots += kids.size();
        return 0;
      });
  count_slots(nat(store, 3));
  require(slots == 6, "numeral 3 should expose 6 element slots, got " +
                          std::to_string(slots));
  auto constant = eps_induction<int>(
      store, [](VsetId, std::span<const int>) { return 42; });
  require(constant(nat(store, 4)) == 42, "constant step should be constant");
  return "recursion-computed rank matches on the 16-set fragment and "
         "numerals 0..5; memoized step ran once per node (6 slots)";
}

// ---- criterion 12: pairing injectivity -------------------------------------

inline std::string crit_pair_injectivity() {
  Store store;
  std::vector<VsetId> frag = enumerate_vsets(store, 2);
  int checked = 0;
  for (VsetId x : frag)
    for (VsetId y : frag) {
      VsetId p = ordered_pair(store, x, y);
      auto dec = decode_pair(store, p);
      require(dec.has_value(), "constructed pair fails to decode");
      require(dec->first == x && dec->second == y,
              "pair decodes to different components");
      for (VsetId x2 : frag)
        for (VsetId y2 : frag) {
          VsetId q = ordered_pair(store, x2, y2);
          require((p == q) == (x == x2 && y == y2),
                  "pair equality disagrees with component equality");
          ++checked;
        }
    }
  VsetId ee = ordered_pair(store, empty_set(store), empty_set(store));
  require(to_literal(store, ee.mset()) == "{{{}}}",
          "pair of empties should be {{{}}}");
  require(checked == 256, "expected 256 quadruples");
  return "pair equality coincides with componentwise equality on all 256 "
         "quadruples; decoding inverts construction";
}

// ---- criterion 13: determinism and round-trips ------------------------------

inline std::string crit_determinism_roundtrips(const CliRunner& cli) {
  Store store;
  Rng rng(0xD13);
  FormulaGenOptions opt;
  opt.max_depth = 4;
  opt.allow_pred = true;
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, opt);
    std::string text = print_formula(f);
    Formula back = parse_formula(text);
    require(back == f, "formula round-trip failed on: " + text);
  }
  for (int i = 0; i < 500; ++i) {
    MsetId m = random_mset(rng, store, 3, 3);
    std::string lit = to_literal(store, m);
    require(parse_mset_literal(store, lit) == m,
            "literal round-trip failed on: " + lit);
    if (i % 10 == 0) {
      Store other;
      MsetId m2 = mset_from_json(other, mset_to_json(store, m));
      require(to_literal(other, m2) == lit, "json round-trip failed");
    }
  }
  require(static_cast<bool>(cli), "no CLI runner provided");
  std::vector<std::vector<std::string>> invocations = {
      {"enum", "--vsets", "--rank", "3"},
      {"enum", "--msets", "--rank", "2", "--width", "2", "--count"},
      {"eval", "--mode", "sigma", "--carrier", "mset:2,2",
       "exists x. forall y. y in x -> y = x"},
      {"check", "union", "--carrier", "vset:2", "--mode", "tau", "--json"},
      {"quotient", "--rank", "2", "--width", "2"},
      {"ops", "exp", "{{},{{}}}", "{{}}"},
  };
  for (const auto& args : invocations) {
    std::string out1, err1, out2, err2;
    int code1 = cli(args, out1, err1);
    int code2 = cli(args, out2, err2);
    require(code1 == code2 && out1 == out2 && err1 == err2,
            "CLI output differs between identical runs of '" + args[0] +
                "'");
  }
  return "500 formula and 500 literal round-trips exact; 6 CLI "
         "invocations byte-identical across runs";
}

}  // namespace detail

inline std::vector<CriterionResult> run_selftest(
    const SelftestOptions& options, const CliRunner& cli) {
  std::vector<std::pair<std::string, std::function<std::string()>>> table = {
      {"hierarchy-counts", detail::crit_hierarchy_counts},
      {"set-extensionality", detail::crit_set_extensionality},
      {"multiset-extensionality", detail::crit_multiset_extensionality},
      {"quotient-equivalence", detail::crit_quotient_equivalence},
      {"exponentials", detail::crit_exponentials},
      {"construction-contracts", detail::crit_construction_contracts},
      {"truncation-consistency", detail::crit_truncation_consistency},
      {"sigma-tau-divergence", detail::crit_sigma_tau_divergence},
      {"choice", detail::crit_choice},
      {"collection", detail::crit_collection},
      {"eps-induction", detail::crit_eps_induction},
      {"pair-injectivity", detail::crit_pair_injectivity},
      {"determinism-roundtrips",
       [&cli] { return detail::crit_determinism_roundtrips(cli); }},
  };
  std::vector<CriterionResult> results;
  for (auto& [name, fn] : table) {
    if (!options.only.empty() && name.find(options.only) == std::string::npos)
      continue;
    CriterionResult r;
    r.name = name;
    auto start = std::chrono::steady_clock::now();
    try {
      r.detail = fn();
      r.passed = true;
    } catch (const std::exception& ex) {
      r.passed = false;
      r.detail = ex.what();
    }
    r.millis = std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start)
                   .count();
    results.push_back(std::move(r));
  }
  return results;
}

inline bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return !results.empty();
}

inline void print_selftest_text(std::ostream& os,
                                const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    os << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  ("
       << static_cast<long long>(r.millis) << " ms)\n";
    os << "      " << r.detail << "\n";
  }
  std::size_t passed = 0;
  for (const auto& r : results)
    if (r.passed) ++passed;
  os << passed << "/" << results.size() << " criteria passed\n";
}

inline nlohmann::json selftest_to_json(
    const std::vector<CriterionResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results)
    arr.push_back({{"name", r.name},
                   {"passed", r.passed},
                   {"detail", r.detail},
                   {"millis", r.millis}});
  return {{"criteria", arr}, {"all_passed", all_passed(results)}};
}

}  // namespace itsets::selftest
