#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "itsets/formula.hpp"
#include "itsets/model.hpp"

namespace itsets {

// Brute-force proof-term enumeration: materializes one descriptor string
// per proof of the formula, by structural recursion — pairs for ∧, tagged
// injections for ∨, explicit function tables for → and ∀ (one output
// chosen per input proof / carrier element), element-tagged witnesses for
// ∃, occurrence indices for membership atoms. The descriptor strings of
// distinct proofs are distinct by construction.
//
// This is deliberately *not* arithmetic on counts: it is the independent
// oracle the counting evaluator is judged against. Returns nullopt as
// soon as any intermediate proof list would exceed `budget`.

namespace detail {

inline std::optional<std::vector<std::string>> proofs_rec(
    const Store& store, const Formula& f, const Carrier& carrier,
    Valuation& val, const PredicateEnv& env, std::uint64_t budget) {
  using List = std::vector<std::string>;
  auto fits = [budget](std::uint64_t n) { return n <= budget; };
  switch (f.kind) {
    case FormulaKind::Bot:
      return List{};
    case FormulaKind::Top:
      return List{"tt"};
    case FormulaKind::Member: {
      std::uint64_t n = store.count_in(resolve(val, f.lhs),
                                       resolve(val, f.rhs));
      if (!fits(n)) return std::nullopt;
      List out;
      for (std::uint64_t i = 0; i < n; ++i)
        out.push_back("occ" + std::to_string(i));
      return out;
    }
    case FormulaKind::Equal:
      if (resolve(val, f.lhs) == resolve(val, f.rhs)) return List{"refl"};
      return List{};
    case FormulaKind::Pred:
      if (apply_pred(env, f, val)) return List{"pev"};
      return List{};
    case FormulaKind::And: {
      auto l = proofs_rec(store, f.kids[0], carrier, val, env, budget);
      if (!l) return std::nullopt;
      auto r = proofs_rec(store, f.kids[1], carrier, val, env, budget);
      if (!r) return std::nullopt;
      std::uint64_t n = static_cast<std::uint64_t>(l->size()) * r->size();
      if (!l->empty() && n / l->size() != r->size()) return std::nullopt;
      if (!fits(n)) return std::nullopt;
      List out;
      for (const auto& a : *l)
        for (const auto& b : *r) out.push_back("(" + a + "," + b + ")");
      return out;
    }
    case FormulaKind::Or: {
      auto l = proofs_rec(store, f.kids[0], carrier, val, env, budget);
      if (!l) return std::nullopt;
      auto r = proofs_rec(store, f.kids[1], carrier, val, env, budget);
      if (!r) return std::nullopt;
      if (!fits(static_cast<std::uint64_t>(l->size()) + r->size()))
        return std::nullopt;
      List out;
      for (const auto& a : *l) out.push_back("inl:" + a);
      for (const auto& b : *r) out.push_back("inr:" + b);
      return out;
    }
    case FormulaKind::Implies: {
      auto l = proofs_rec(store, f.kids[0], carrier, val, env, budget);
      if (!l) return std::nullopt;
      auto r = proofs_rec(store, f.kids[1], carrier, val, env, budget);
      if (!r) return std::nullopt;
      // tables: every way of assigning an output proof to each input proof
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < l->size(); ++i) {
        if (r->empty()) {
          total = 0;
          break;
        }
        if (total > budget / r->size() &&
            total * r->size() > budget)
          return std::nullopt;
        total *= r->size();
      }
      if (!fits(total)) return std::nullopt;
      List out;
      if (l->empty()) {
        out.push_back("fn[]");
        return out;
      }
      if (total == 0) return out;
      std::vector<std::size_t> pick(l->size(), 0);
      while (true) {
        std::string desc = "fn[";
        for (std::size_t i = 0; i < pick.size(); ++i) {
          if (i) desc += ";";
          desc += (*r)[pick[i]];
        }
        desc += "]";
        out.push_back(std::move(desc));
        std::size_t pos = pick.size();
        while (pos > 0 && pick[pos - 1] == r->size() - 1) --pos;
        if (pos == 0) break;
        ++pick[pos - 1];
        for (std::size_t i = pos; i < pick.size(); ++i) pick[i] = 0;
      }
      return out;
    }
    case FormulaKind::Forall: {
      // dependent tables: choose one proof per carrier element
      std::vector<List> per_elem;
      std::uint64_t total = 1;
      for (MsetId a : carrier.elems) {
        ScopedBind bind(val, f.name, a);
        auto p = proofs_rec(store, f.kids[0], carrier, val, env, budget);
        if (!p) return std::nullopt;
        if (p->empty())
          total = 0;
        else if (total != 0) {
          if (total > budget / p->size() && total * p->size() > budget)
            return std::nullopt;
          total *= p->size();
        }
        per_elem.push_back(std::move(*p));
      }
      if (!fits(total)) return std::nullopt;
      List out;
      if (total == 0) return out;
      std::vector<std::size_t> pick(per_elem.size(), 0);
      while (true) {
        std::string desc = "all[";
        for (std::size_t i = 0; i < pick.size(); ++i) {
          if (i) desc += ";";
          desc += per_elem[i].empty() ? "" : per_elem[i][pick[i]];
        }
        desc += "]";
        out.push_back(std::move(desc));
        std::size_t pos = pick.size();
        while (pos > 0 &&
               (per_elem[pos - 1].empty() ||
                pick[pos - 1] == per_elem[pos - 1].size() - 1))
          --pos;
        if (pos == 0) break;
        ++pick[pos - 1];
        for (std::size_t i = pos; i < pick.size(); ++i) pick[i] = 0;
      }
      return out;
    }
    case FormulaKind::Exists: {
      List out;
      for (std::size_t i = 0; i < carrier.elems.size(); ++i) {
        ScopedBind bind(val, f.name, carrier.elems[i]);
        auto p = proofs_rec(store, f.kids[0], carrier, val, env, budget);
        if (!p) return std::nullopt;
        if (!fits(out.size() + p->size())) return std::nullopt;
        for (const auto& q : *p)
          out.push_back("ex" + std::to_string(i) + ":" + q);
      }
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<std::vector<std::string>> enumerate_proofs(
    const Store& store, const Formula& f, const Carrier& carrier,
    const Valuation& val = {}, const PredicateEnv& env = {},
    std::uint64_t budget = 20000) {
  Valuation scratch = val;
  return detail::proofs_rec(store, f, carrier, scratch, env, budget);
}

}  // namespace itsets
