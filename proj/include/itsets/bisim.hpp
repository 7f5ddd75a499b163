#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "itsets/mset.hpp"
#include "itsets/vset.hpp"

namespace itsets {

// Decides bisimilarity of multisets: x ≈ y when every child of x is
// bisimilar to some child of y and vice versa — multiplicities don't
// matter, only which shapes occur. Memoizes pairs, so repeated queries
// over one fragment stay cheap.
class BisimCtx {
public:
  explicit BisimCtx(const Store& store) : store_(store) {}

  bool equivalent(MsetId x, MsetId y) {
    if (x == y) return true;
    std::uint64_t key = pack(x, y);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const ChildBag& bx = store_.children_of(x);
    const ChildBag& by = store_.children_of(y);
    bool ok = covers(bx, by) && covers(by, bx);
    memo_.emplace(key, ok);
    return ok;
  }

private:
  static std::uint64_t pack(MsetId x, MsetId y) {
    std::uint32_t lo = x.value < y.value ? x.value : y.value;
    std::uint32_t hi = x.value < y.value ? y.value : x.value;
    return (std::uint64_t{hi} << 32) | lo;
  }

  // every child of `from` has a bisimilar child in `to`
  bool covers(const ChildBag& from, const ChildBag& to) {
    for (const auto& [c, cm] : from) {
      bool matched = false;
      for (const auto& [d, dm] : to) {
        if (equivalent(c, d)) {
          matched = true;
          break;
        }
      }
      if (!matched) return false;
    }
    return true;
  }

  const Store& store_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

inline bool bisim(const Store& store, MsetId x, MsetId y) {
  return BisimCtx(store).equivalent(x, y);
}

// Hereditarily forgets multiplicities: the iterative image of m is the
// set whose elements are the images of m's distinct children. Lands in
// set-like territory by construction, and identifies exactly the
// bisimilar multisets — it is the quotient map M → M/≈ realized in V.
inline VsetId iterative_image(Store& store, MsetId m) {
  std::unordered_map<std::uint32_t, MsetId> memo;
  std::vector<MsetId> stack = {m};
  while (!stack.empty()) {
    MsetId node = stack.back();
    if (memo.count(node.value)) {
      stack.pop_back();
      continue;
    }
    bool ready = true;
    for (const auto& [child, mult] : store.children_of(node)) {
      if (!memo.count(child.value)) {
        ready = false;
        stack.push_back(child);
      }
    }
    if (!ready) continue;
    std::vector<MsetId> images;
    for (const auto& [child, mult] : store.children_of(node))
      images.push_back(memo.at(child.value));
    // mk_sup collapses children that became equal, which is the point
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    memo.emplace(node.value, store.mk_sup(images));
    stack.pop_back();
  }
  return detail::wrap_vset(memo.at(m.value));
}

// One bisimilarity class of a carrier.
struct BisimClass {
  MsetId representative;         // first member encountered
  std::vector<MsetId> members;   // in carrier order
  VsetId image;                  // common iterative image of the class
};

// Partitions the carrier into bisimilarity classes by pairwise testing
// (no shortcut through the image map, so the two can be compared as
// independent computations). Classes appear in order of first member.
inline std::vector<BisimClass> quotient(Store& store,
                                        std::span<const MsetId> carrier) {
  BisimCtx ctx(store);
  std::vector<BisimClass> classes;
  for (MsetId m : carrier) {
    bool placed = false;
    for (BisimClass& c : classes) {
      if (ctx.equivalent(m, c.representative)) {
        c.members.push_back(m);
        placed = true;
        break;
      }
    }
    if (!placed)
      classes.push_back(
          {m, {m}, iterative_image(store, m)});
  }
  return classes;
}

}  // namespace itsets
