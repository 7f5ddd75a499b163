#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "itsets/errors.hpp"

namespace itsets {

// Handle to an interned multiset node. Two handles are equal exactly when
// the multisets are extensionally equal (same multiplicity for every
// candidate element); that is what canonicalization + interning buys.
// Ids are assigned in interning order, so a child id is always smaller
// than its parent's.
struct MsetId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(MsetId, MsetId) = default;
};

// Canonical child bag: (child, multiplicity) pairs with strictly
// increasing child ids and multiplicities >= 1.
using ChildBag = std::vector<std::pair<MsetId, std::uint64_t>>;

namespace detail {

struct BagHash {
  std::size_t operator()(const ChildBag& bag) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& [id, mult] : bag) {
      h = (h ^ id.value) * 1099511628211ull;
      h = (h ^ mult) * 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace detail

inline constexpr std::size_t kDefaultMaxElements = 100000;

// Intern table for hereditarily finite multisets. Nodes are immutable once
// interned and freely shareable; all mutation goes through the store's
// mutex, so interning the same canonical node from two threads yields the
// same id.
class Store {
public:
  Store() { intern_locked(ChildBag{}); }
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  // The empty multiset, interned at construction.
  MsetId empty_mset() const { return MsetId{0}; }

  // Interns the multiset whose bag is the multiset of `children`
  // (order-insensitive, multiplicity-preserving).
  MsetId mk_sup(std::span<const MsetId> children) {
    std::vector<MsetId> sorted(children.begin(), children.end());
    std::sort(sorted.begin(), sorted.end());
    ChildBag bag;
    for (MsetId id : sorted) {
      if (!bag.empty() && bag.back().first == id)
        ++bag.back().second;
      else
        bag.emplace_back(id, 1);
    }
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& [id, mult] : bag) check_locked(id);
    return intern_locked(std::move(bag));
  }

  MsetId mk_sup(std::initializer_list<MsetId> children) {
    return mk_sup(std::span<const MsetId>(children.begin(), children.size()));
  }

  // Interns from an explicit (child, multiplicity) list; entries may come
  // in any order and duplicate ids are merged.
  MsetId mk_sup_bag(ChildBag entries) {
    std::sort(entries.begin(), entries.end());
    ChildBag bag;
    for (const auto& [id, mult] : entries) {
      if (mult == 0) throw error("multiplicities must be positive");
      if (!bag.empty() && bag.back().first == id)
        bag.back().second += mult;
      else
        bag.emplace_back(id, mult);
    }
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& [id, mult] : bag) check_locked(id);
    return intern_locked(std::move(bag));
  }

  // The canonical bag of x.
  const ChildBag& children_of(MsetId x) const {
    std::lock_guard<std::mutex> lock(mu_);
    check_locked(x);
    return *by_id_[x.value];
  }

  // Multiplicity of x in y's bag (0 if absent).
  std::uint64_t count_in(MsetId x, MsetId y) const {
    std::lock_guard<std::mutex> lock(mu_);
    check_locked(x);
    check_locked(y);
    const ChildBag& bag = *by_id_[y.value];
    auto it = std::lower_bound(
        bag.begin(), bag.end(), x,
        [](const auto& entry, MsetId id) { return entry.first < id; });
    if (it != bag.end() && it->first == x) return it->second;
    return 0;
  }

  // Extensional equality: by the interning invariant, id equality.
  bool meq(MsetId x, MsetId y) const {
    std::lock_guard<std::mutex> lock(mu_);
    check_locked(x);
    check_locked(y);
    return x == y;
  }

  // Height of the membership tree: 0 for the empty multiset, else
  // 1 + max child rank. Total because the child graph is acyclic.
  std::uint32_t rank(MsetId x) const {
    std::lock_guard<std::mutex> lock(mu_);
    check_locked(x);
    return rank_[x.value];
  }

  // Number of top-level children counted with multiplicity.
  std::uint64_t width(MsetId x) const {
    std::lock_guard<std::mutex> lock(mu_);
    check_locked(x);
    std::uint64_t w = 0;
    for (const auto& [id, mult] : *by_id_[x.value]) w += mult;
    return w;
  }

  // True iff every node reachable from x has all multiplicities equal
  // to 1. Memoized per node; amortized O(1) after the first check.
  bool is_itset(MsetId x) const {
    std::lock_guard<std::mutex> lock(mu_);
    check_locked(x);
    return itset_locked(x);
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return by_id_.size();
  }

private:
  void check_locked(MsetId x) const {
    if (x.value >= by_id_.size())
      throw error("unknown multiset id " + std::to_string(x.value));
  }

  MsetId intern_locked(ChildBag bag) {
    auto it = table_.find(bag);
    if (it != table_.end()) return MsetId{it->second};
    std::uint32_t rank = 0;
    for (const auto& [id, mult] : bag) {
      std::uint32_t r = rank_[id.value] + 1;
      if (r > rank) rank = r;
    }
    auto id = static_cast<std::uint32_t>(by_id_.size());
    auto [pos, inserted] = table_.emplace(std::move(bag), id);
    by_id_.push_back(&pos->first);
    rank_.push_back(rank);
    itset_.push_back(-1);
    return MsetId{id};
  }

  bool itset_locked(MsetId root) const {
    std::vector<std::uint32_t> stack = {root.value};
    while (!stack.empty()) {
      std::uint32_t id = stack.back();
      if (itset_[id] != -1) {
        stack.pop_back();
        continue;
      }
      const ChildBag& bag = *by_id_[id];
      signed char verdict = 1;
      bool blocked = false;
      for (const auto& [child, mult] : bag) {
        if (mult != 1) {
          verdict = 0;
          break;
        }
        signed char c = itset_[child.value];
        if (c == 0) {
          verdict = 0;
          break;
        }
        if (c == -1) {
          blocked = true;
          stack.push_back(child.value);
        }
      }
      if (verdict == 0) {
        itset_[id] = 0;
        // unwind: ancestors re-examine their children on revisit
        stack.clear();
        stack.push_back(root.value);
      } else if (!blocked) {
        itset_[id] = 1;
        stack.pop_back();
      }
    }
    return itset_[root.value] == 1;
  }

  mutable std::mutex mu_;
  std::unordered_map<ChildBag, std::uint32_t, detail::BagHash> table_;
  std::deque<const ChildBag*> by_id_;
  std::deque<std::uint32_t> rank_;
  mutable std::deque<signed char> itset_;  // -1 unknown, 0 no, 1 yes
};

namespace detail {

// Number of size-k multisets over n distinct elements, C(n+k-1, k),
// saturating instead of overflowing.
inline std::uint64_t multichoose_saturating(std::uint64_t n, std::uint64_t k) {
  if (k == 0) return 1;
  if (n == 0) return 0;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n + i - 1) / i;
    if (r > static_cast<unsigned __int128>(UINT64_MAX) / 2)
      return UINT64_MAX / 2;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace detail

// Exactly the multisets of rank <= rank_bound whose every node has at most
// width_bound children counted with multiplicity; each appears once, in a
// deterministic order (by level, then bag size, then lexicographic child
// choice). Throws resource_limit when a level would exceed max_elements.
inline std::vector<MsetId> enumerate_msets(
    Store& store, std::uint32_t rank_bound, std::uint32_t width_bound,
    std::size_t max_elements = kDefaultMaxElements) {
  std::vector<MsetId> level = {store.empty_mset()};
  for (std::uint32_t r = 1; r <= rank_bound; ++r) {
    std::uint64_t expected = 0;
    for (std::uint32_t k = 0; k <= width_bound && expected <= max_elements; ++k)
      expected += detail::multichoose_saturating(level.size(), k);
    if (expected > max_elements)
      throw resource_limit(
          "multiset fragment of rank " + std::to_string(r) + " has " +
          std::to_string(expected) + " elements; cap is " +
          std::to_string(max_elements));
    std::vector<MsetId> next;
    next.reserve(static_cast<std::size_t>(expected));
    std::vector<std::size_t> indices;
    std::vector<MsetId> children;
    for (std::uint32_t k = 0; k <= width_bound; ++k) {
      // non-decreasing index tuples of length k, lexicographic
      indices.assign(k, 0);
      while (true) {
        children.clear();
        for (std::size_t idx : indices) children.push_back(level[idx]);
        next.push_back(store.mk_sup(children));
        std::size_t pos = k;
        while (pos > 0 && indices[pos - 1] == level.size() - 1) --pos;
        if (pos == 0) break;
        std::size_t bumped = ++indices[pos - 1];
        for (std::size_t i = pos; i < k; ++i) indices[i] = bumped;
      }
      if (level.empty()) break;
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace itsets
