#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "itsets/errors.hpp"
#include "itsets/mset.hpp"

namespace itsets {

class VsetId;

namespace detail {
constexpr VsetId wrap_vset(MsetId m);
}

// Handle to an interned multiset that is hereditarily multiplicity-1,
// i.e. an iterative set. The invariant is enforced at construction:
// outside callers go through to_vset / try_vset, and the set-building
// functions only wrap nodes they have made set-like. As with MsetId,
// handle equality is extensional equality.
class VsetId {
public:
  constexpr VsetId() = default;  // the empty set
  constexpr MsetId mset() const { return ms_; }
  friend constexpr auto operator<=>(VsetId, VsetId) = default;

private:
  explicit constexpr VsetId(MsetId m) : ms_(m) {}
  friend constexpr VsetId detail::wrap_vset(MsetId);
  MsetId ms_{};
};

namespace detail {

constexpr VsetId wrap_vset(MsetId m) { return VsetId(m); }

// Membership path from root to the first offending node (repeated or
// non-set child), for diagnostics. Empty when x is set-like.
inline std::vector<std::uint32_t> find_bad_path(const Store& store, MsetId x) {
  if (store.is_itset(x)) return {};
  std::vector<std::uint32_t> path = {x.value};
  MsetId cur = x;
  while (true) {
    const ChildBag& bag = store.children_of(cur);
    bool advanced = false;
    for (const auto& [child, mult] : bag) {
      if (mult != 1) {
        path.push_back(child.value);
        return path;  // the repeated child ends the path
      }
      if (!store.is_itset(child)) {
        path.push_back(child.value);
        cur = child;
        advanced = true;
        break;
      }
    }
    if (!advanced) return path;  // unreachable if memo is consistent
  }
}

}  // namespace detail

// Checks the hereditary multiplicity-1 property and converts. Throws
// not_set_like with a membership path to the first violation.
inline VsetId to_vset(const Store& store, MsetId x) {
  if (!store.is_itset(x))
    throw not_set_like("multiset is not hereditarily repetition-free",
                       detail::find_bad_path(store, x));
  return detail::wrap_vset(x);
}

inline std::optional<VsetId> try_vset(const Store& store, MsetId x) {
  if (!store.is_itset(x)) return std::nullopt;
  return detail::wrap_vset(x);
}

// x ∈ y. Multiplicities in a set are 0 or 1, so this is count_in == 1.
inline bool member(const Store& store, VsetId x, VsetId y) {
  return store.count_in(x.mset(), y.mset()) == 1;
}

// The elements of x, each itself a set, in canonical (id) order.
inline std::vector<VsetId> elements(const Store& store, VsetId x) {
  std::vector<VsetId> out;
  for (const auto& [child, mult] : store.children_of(x.mset()))
    out.push_back(detail::wrap_vset(child));
  return out;
}

// The set whose elements are exactly the listed sets: duplicates in the
// list collapse. This is the basic "image of a finite family" former
// every other construction funnels through.
inline VsetId image(Store& store, std::span<const VsetId> family) {
  std::vector<MsetId> ids;
  ids.reserve(family.size());
  for (VsetId v : family) ids.push_back(v.mset());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return detail::wrap_vset(store.mk_sup(ids));
}

inline VsetId image(Store& store, std::initializer_list<VsetId> family) {
  return image(store, std::span<const VsetId>(family.begin(), family.size()));
}

inline std::uint32_t rank(const Store& store, VsetId x) {
  return store.rank(x.mset());
}

// Exactly the iterative sets of rank <= rank_bound, each once, in a
// deterministic order: level n is all subsets of level n-1, generated by
// ascending bitmask over the previous level's order. Level sizes are
// 1, 2, 4, 16, 65536, ...; throws resource_limit past max_elements.
inline std::vector<VsetId> enumerate_vsets(
    Store& store, std::uint32_t rank_bound,
    std::size_t max_elements = kDefaultMaxElements) {
  std::vector<VsetId> level = {detail::wrap_vset(store.empty_mset())};
  for (std::uint32_t r = 1; r <= rank_bound; ++r) {
    if (level.size() >= 63 ||
        (std::uint64_t{1} << level.size()) > max_elements)
      throw resource_limit(
          "set fragment of rank " + std::to_string(r) + " has 2^" +
          std::to_string(level.size()) + " elements; cap is " +
          std::to_string(max_elements));
    std::vector<VsetId> next;
    next.reserve(std::size_t{1} << level.size());
    std::vector<MsetId> subset;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << level.size());
         ++mask) {
      subset.clear();
      for (std::size_t i = 0; i < level.size(); ++i)
        if (mask & (std::uint64_t{1} << i)) subset.push_back(level[i].mset());
      next.push_back(detail::wrap_vset(store.mk_sup(subset)));
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace itsets
