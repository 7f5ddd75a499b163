#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "itsets/errors.hpp"
#include "itsets/mset.hpp"
#include "itsets/vset.hpp"

namespace itsets {

inline VsetId empty_set(Store& store) {
  return detail::wrap_vset(store.empty_mset());
}

// von Neumann numeral: nat(0) = {} and nat(n+1) = nat(n) ∪ {nat(n)}.
inline VsetId nat(Store& store, std::uint32_t n) {
  VsetId cur = empty_set(store);
  std::vector<MsetId> members;
  for (std::uint32_t i = 0; i < n; ++i) {
    members.push_back(cur.mset());
    cur = detail::wrap_vset(store.mk_sup(members));
  }
  return cur;
}

// {x, y} (which is {x} when x = y).
inline VsetId pair_set(Store& store, VsetId x, VsetId y) {
  return image(store, {x, y});
}

// ⋃x: everything that is an element of an element of x.
inline VsetId union_set(Store& store, VsetId x) {
  std::vector<VsetId> flat;
  for (VsetId e : elements(store, x))
    for (VsetId ee : elements(store, e)) flat.push_back(ee);
  return image(store, flat);
}

// {e ∈ a | keep(e)}.
template <class Pred>
VsetId separation(Store& store, VsetId a, Pred&& keep) {
  std::vector<VsetId> kept;
  for (VsetId e : elements(store, a))
    if (keep(e)) kept.push_back(e);
  return image(store, kept);
}

// Structural recursion on membership: the returned callable is the unique
// h with h(x) = step(x, [h(e) for e in elements(x)]), child values in
// canonical element order. Memoized per interned node and shared across
// calls, so repeated queries over one fragment each cost only the new
// nodes. Iterative so tall sets don't exhaust the call stack.
template <class R, class Step>
class EpsInduction {
public:
  EpsInduction(const Store& store, Step step)
      : store_(store), step_(std::move(step)) {}

  R operator()(VsetId root) {
    std::vector<MsetId> stack = {root.mset()};
    while (!stack.empty()) {
      MsetId node = stack.back();
      if (memo_.count(node.value)) {
        stack.pop_back();
        continue;
      }
      bool ready = true;
      for (const auto& [child, mult] : store_.children_of(node)) {
        if (!memo_.count(child.value)) {
          ready = false;
          stack.push_back(child);
        }
      }
      if (!ready) continue;
      std::vector<R> child_values;
      for (const auto& [child, mult] : store_.children_of(node))
        child_values.push_back(memo_.at(child.value));
      memo_.emplace(node.value,
                    step_(detail::wrap_vset(node),
                          std::span<const R>(child_values)));
      stack.pop_back();
    }
    return memo_.at(root.mset().value);
  }

private:
  const Store& store_;
  Step step_;
  std::unordered_map<std::uint32_t, R> memo_;
};

template <class R, class Step>
EpsInduction<R, std::decay_t<Step>> eps_induction(const Store& store,
                                                  Step&& step) {
  return EpsInduction<R, std::decay_t<Step>>(store,
                                             std::forward<Step>(step));
}

// Kuratowski pair ⟨x, y⟩ = {{x}, {x, y}}.
inline VsetId ordered_pair(Store& store, VsetId x, VsetId y) {
  VsetId sx = image(store, {x});
  VsetId sxy = image(store, {x, y});
  return image(store, {sx, sxy});
}

// Inverse of ordered_pair when p has that shape; nullopt otherwise.
// Extracts a candidate (x, y) from the element structure, then confirms
// by re-encoding, so degenerate shapes can't slip through.
inline std::optional<std::pair<VsetId, VsetId>> decode_pair(Store& store,
                                                            VsetId p) {
  std::vector<VsetId> outer = elements(store, p);
  if (outer.empty() || outer.size() > 2) return std::nullopt;
  std::vector<VsetId> first = elements(store, outer[0]);
  if (first.empty() || first.size() > 2) return std::nullopt;
  auto confirm = [&](VsetId x, VsetId y) -> std::optional<std::pair<VsetId, VsetId>> {
    if (ordered_pair(store, x, y) == p) return std::make_pair(x, y);
    return std::nullopt;
  };
  if (outer.size() == 1) {
    // {{x}} = ⟨x, x⟩, and {{x, y}} decodes as nothing
    if (first.size() == 1) return confirm(first[0], first[0]);
    return std::nullopt;
  }
  std::vector<VsetId> second = elements(store, outer[1]);
  // one of the two elements is the singleton {x}
  for (int flip = 0; flip < 2; ++flip) {
    const auto& single = flip ? second : first;
    const auto& pair = flip ? first : second;
    if (single.size() != 1) continue;
    VsetId x = single[0];
    for (VsetId y : pair) {
      if (auto r = confirm(x, y)) return r;
    }
  }
  return std::nullopt;
}

// The (x, y) list of a function-like set of pairs, or nullopt if some
// element is not an ordered pair.
inline std::optional<std::vector<std::pair<VsetId, VsetId>>> decode_graph(
    Store& store, VsetId f) {
  std::vector<std::pair<VsetId, VsetId>> out;
  for (VsetId e : elements(store, f)) {
    auto p = decode_pair(store, e);
    if (!p) return std::nullopt;
    out.push_back(*p);
  }
  return out;
}

// Is f the graph of a function a → b: every element an ordered pair with
// first component in a and second in b, exactly one pair per element of a.
inline bool is_fun(Store& store, VsetId a, VsetId b, VsetId f) {
  auto graph = decode_graph(store, f);
  if (!graph) return false;
  std::vector<MsetId> seen;
  for (const auto& [x, y] : *graph) {
    if (!member(store, x, a) || !member(store, y, b)) return false;
    seen.push_back(x.mset());
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    return false;  // two pairs share a first component
  return seen.size() == elements(store, a).size();
}

namespace detail {

inline std::uint64_t pow_saturating(std::uint64_t base, std::uint64_t exp) {
  unsigned __int128 r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

// Visits every function a → b as its assignment vector (per-element
// index into elements(b)), odometer order: the choice for the last
// element of a varies fastest.
template <class F>
void for_each_function(Store& store, VsetId a, VsetId b,
                       std::size_t max_elements, F&& visit) {
  std::vector<VsetId> dom = elements(store, a);
  std::vector<VsetId> cod = elements(store, b);
  std::uint64_t total = pow_saturating(cod.size(), dom.size());
  if (total > max_elements)
    throw resource_limit("function space has " + std::to_string(total) +
                         " elements; cap is " + std::to_string(max_elements));
  if (!dom.empty() && cod.empty()) return;  // no functions at all
  std::vector<std::size_t> pick(dom.size(), 0);
  while (true) {
    visit(std::span<const VsetId>(dom), std::span<const VsetId>(cod),
          std::span<const std::size_t>(pick));
    std::size_t pos = pick.size();
    while (pos > 0 && pick[pos - 1] == cod.size() - 1) --pos;
    if (pos == 0) break;
    ++pick[pos - 1];
    for (std::size_t i = pos; i < pick.size(); ++i) pick[i] = 0;
  }
}

}  // namespace detail

// The exponential b^a: the set of all graphs of functions a → b.
inline VsetId exp_set(Store& store, VsetId a, VsetId b,
                      std::size_t max_elements = kDefaultMaxElements) {
  std::vector<VsetId> graphs;
  detail::for_each_function(
      store, a, b, max_elements,
      [&](std::span<const VsetId> dom, std::span<const VsetId> cod,
          std::span<const std::size_t> pick) {
        std::vector<VsetId> pairs;
        for (std::size_t i = 0; i < dom.size(); ++i)
          pairs.push_back(ordered_pair(store, dom[i], cod[pick[i]]));
        graphs.push_back(image(store, pairs));
      });
  return image(store, graphs);
}

// A list of chosen witnesses, one per input: the computational content of
// a "for every x there is some y" hypothesis, made explicit so the
// operations that consume such hypotheses stay deterministic. The tag is
// free-form provenance (which relation, which occurrence) carried along
// for reports.
struct WitnessEntry {
  VsetId input;
  VsetId witness;
  std::string tag;
};
using WitnessMap = std::vector<WitnessEntry>;

namespace detail {

inline std::optional<VsetId> lookup_witness(const WitnessMap& map, VsetId x) {
  for (const auto& e : map)
    if (e.input == x) return e.witness;
  return std::nullopt;
}

}  // namespace detail

// The graph {⟨x, w(x)⟩ : x ∈ a} of a witness map into b. The map's keys
// must be exactly the elements of a (domain_mismatch otherwise) and every
// witness must be a member of b (codomain_violation otherwise); whatever
// relation justified each witness is the caller's invariant to keep. The
// result always passes is_fun(a, b, ·).
inline VsetId choice_function(Store& store, VsetId a, VsetId b,
                              const WitnessMap& witnesses) {
  std::vector<VsetId> dom = elements(store, a);
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    const WitnessEntry& e = witnesses[i];
    if (std::find(dom.begin(), dom.end(), e.input) == dom.end())
      throw domain_mismatch("witness key " +
                            std::to_string(e.input.mset().value) +
                            " is not an element of the domain");
    for (std::size_t j = 0; j < i; ++j)
      if (witnesses[j].input == e.input &&
          witnesses[j].witness != e.witness)
        throw domain_mismatch("conflicting witness entries for element " +
                              std::to_string(e.input.mset().value));
  }
  std::vector<VsetId> pairs;
  for (VsetId x : dom) {
    auto w = detail::lookup_witness(witnesses, x);
    if (!w)
      throw domain_mismatch("no witness entry for element " +
                            std::to_string(x.mset().value));
    if (!member(store, *w, b))
      throw codomain_violation("witness " + std::to_string(w->mset().value) +
                               " is not a member of the codomain");
    pairs.push_back(ordered_pair(store, x, *w));
  }
  return image(store, pairs);
}

// From one witness per element of a, the set b = {w(x) : x ∈ a}. By
// construction every x ∈ a relates into b and every member of b is some
// x's witness, which is what a strong collection conclusion asks for.
inline VsetId strong_collection(Store& store, VsetId a,
                                const WitnessMap& witnesses) {
  std::vector<VsetId> out;
  for (VsetId x : elements(store, a)) {
    auto w = detail::lookup_witness(witnesses, x);
    if (!w)
      throw domain_mismatch("no witness entry for element " +
                            std::to_string(x.mset().value));
    out.push_back(*w);
  }
  return image(store, out);
}

// A "full" family for a and b: the set of ranges of all functions
// a → b. For any assignment of at least one b-value to each element of
// a, the range of a selector lands in this family, and every member of
// such a range is hit from a — the finite model's fullness witness.
inline VsetId subset_collection(Store& store, VsetId a, VsetId b,
                                std::size_t max_elements = kDefaultMaxElements) {
  std::vector<VsetId> ranges;
  detail::for_each_function(
      store, a, b, max_elements,
      [&](std::span<const VsetId> dom, std::span<const VsetId> cod,
          std::span<const std::size_t> pick) {
        std::vector<VsetId> ran;
        for (std::size_t i = 0; i < dom.size(); ++i)
          ran.push_back(cod[pick[i]]);
        ranges.push_back(image(store, ran));
      });
  return image(store, ranges);
}

// {f(x) : x ∈ a} for an explicit function.
template <class F>
VsetId replacement_fun(Store& store, VsetId a, F&& f) {
  std::vector<VsetId> out;
  for (VsetId x : elements(store, a)) out.push_back(f(x));
  return image(store, out);
}

// {the z with rel(x, z) : x ∈ a}, where for each x exactly one z among
// the candidates satisfies rel. Throws no_witness / not_unique when the
// uniqueness obligation fails within the candidate fragment.
inline VsetId replacement_rel(Store& store, VsetId a,
                              const std::function<bool(VsetId, VsetId)>& rel,
                              std::span<const VsetId> candidates) {
  std::vector<VsetId> out;
  for (VsetId x : elements(store, a)) {
    std::optional<VsetId> found;
    for (VsetId z : candidates) {
      if (!rel(x, z)) continue;
      if (found && *found != z)
        throw not_unique("relation has two images for element " +
                         std::to_string(x.mset().value));
      found = z;
    }
    if (!found)
      throw no_witness("relation has no image for element " +
                       std::to_string(x.mset().value) +
                       " among the candidates");
    out.push_back(*found);
  }
  return image(store, out);
}

// Convenience overload searching the rank fragment two above a, which
// covers images built from a's elements by pairing and powerset-like
// steps. Large fragments hit the enumeration cap rather than looping.
inline VsetId replacement_rel(Store& store, VsetId a,
                              const std::function<bool(VsetId, VsetId)>& rel,
                              std::size_t max_elements = kDefaultMaxElements) {
  std::vector<VsetId> candidates =
      enumerate_vsets(store, rank(store, a) + 2, max_elements);
  return replacement_rel(store, a, rel,
                         std::span<const VsetId>(candidates));
}

}  // namespace itsets
