#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "itsets/bignat.hpp"
#include "itsets/errors.hpp"
#include "itsets/formula.hpp"
#include "itsets/literal.hpp"
#include "itsets/mset.hpp"
#include "itsets/set_ops.hpp"
#include "itsets/vset.hpp"

namespace itsets {

using Valuation = std::map<std::string, MsetId>;

// Predicate symbols are resolved to decidable host predicates, counted
// 0 or 1 — abstract relation symbols in formulas get their meaning here.
using PredicateFn = std::function<bool(std::span<const MsetId>)>;
using PredicateEnv = std::map<std::string, PredicateFn>;

struct EvalLimits {
  std::size_t max_count_digits = 10000;
};

enum class CarrierKind { SetFragment, MsetFragment, List };

// The finite domain quantifiers range over. Membership atoms always
// evaluate to the multiplicity count, which on set-like carriers is
// automatically 0 or 1; set_like drives which witness constructions the
// axiom checker may use.
struct Carrier {
  CarrierKind kind = CarrierKind::List;
  std::vector<MsetId> elems;  // duplicate-free, deterministic order
  bool set_like = false;
};

inline Carrier make_vset_carrier(Store& store, std::uint32_t rank_bound,
                                 std::size_t max_elements = kDefaultMaxElements) {
  Carrier c;
  c.kind = CarrierKind::SetFragment;
  for (VsetId v : enumerate_vsets(store, rank_bound, max_elements))
    c.elems.push_back(v.mset());
  c.set_like = true;
  return c;
}

inline Carrier make_mset_carrier(Store& store, std::uint32_t rank_bound,
                                 std::uint32_t width_bound,
                                 std::size_t max_elements = kDefaultMaxElements) {
  Carrier c;
  c.kind = CarrierKind::MsetFragment;
  c.elems = enumerate_msets(store, rank_bound, width_bound, max_elements);
  c.set_like = true;
  for (MsetId m : c.elems)
    if (!store.is_itset(m)) c.set_like = false;
  return c;
}

inline Carrier make_list_carrier(const Store& store,
                                 std::span<const MsetId> elems) {
  Carrier c;
  c.kind = CarrierKind::List;
  for (MsetId m : elems) {
    bool dup = false;
    for (MsetId seen : c.elems)
      if (seen == m) dup = true;
    if (!dup) c.elems.push_back(m);
  }
  c.set_like = true;
  for (MsetId m : c.elems)
    if (!store.is_itset(m)) c.set_like = false;
  return c;
}

namespace detail {

// RAII extension of a valuation for one quantifier scope.
class ScopedBind {
public:
  ScopedBind(Valuation& val, const std::string& var, MsetId id)
      : val_(val), var_(var) {
    auto it = val_.find(var_);
    if (it != val_.end()) old_ = it->second;
    val_[var_] = id;
  }
  ~ScopedBind() {
    if (old_)
      val_[var_] = *old_;
    else
      val_.erase(var_);
  }
  ScopedBind(const ScopedBind&) = delete;
  ScopedBind& operator=(const ScopedBind&) = delete;

private:
  Valuation& val_;
  std::string var_;
  std::optional<MsetId> old_;
};

inline MsetId resolve(const Valuation& val, const std::string& var) {
  auto it = val.find(var);
  if (it == val.end()) throw eval_error("unbound variable '" + var + "'");
  return it->second;
}

inline bool apply_pred(const PredicateEnv& env, const Formula& f,
                       const Valuation& val) {
  auto it = env.find(f.name);
  if (it == env.end())
    throw eval_error("unbound predicate symbol '" + f.name + "'");
  std::vector<MsetId> args;
  for (const auto& a : f.args) args.push_back(resolve(val, a));
  return it->second(std::span<const MsetId>(args));
}

inline BigNat sigma_rec(const Store& store, const Formula& f,
                        const Carrier& carrier, Valuation& val,
                        const EvalLimits& limits, const PredicateEnv& env) {
  switch (f.kind) {
    case FormulaKind::Bot:
      return BigNat(0);
    case FormulaKind::Top:
      return BigNat(1);
    case FormulaKind::Member:
      return BigNat(store.count_in(resolve(val, f.lhs), resolve(val, f.rhs)));
    case FormulaKind::Equal:
      return BigNat(resolve(val, f.lhs) == resolve(val, f.rhs) ? 1 : 0);
    case FormulaKind::Pred:
      return BigNat(apply_pred(env, f, val) ? 1 : 0);
    case FormulaKind::And: {
      BigNat l = sigma_rec(store, f.kids[0], carrier, val, limits, env);
      if (l.is_zero()) return BigNat(0);
      BigNat r = sigma_rec(store, f.kids[1], carrier, val, limits, env);
      return mul_capped(l, r, limits.max_count_digits);
    }
    case FormulaKind::Or: {
      BigNat l = sigma_rec(store, f.kids[0], carrier, val, limits, env);
      BigNat r = sigma_rec(store, f.kids[1], carrier, val, limits, env);
      return add_capped(l, r, limits.max_count_digits);
    }
    case FormulaKind::Implies: {
      BigNat l = sigma_rec(store, f.kids[0], carrier, val, limits, env);
      if (l.is_zero()) return BigNat(1);  // |B|^0, whatever B counts
      BigNat r = sigma_rec(store, f.kids[1], carrier, val, limits, env);
      return pow_capped(r, l, limits.max_count_digits);
    }
    case FormulaKind::Forall: {
      BigNat acc(1);
      for (MsetId a : carrier.elems) {
        ScopedBind bind(val, f.name, a);
        BigNat v = sigma_rec(store, f.kids[0], carrier, val, limits, env);
        if (v.is_zero()) return BigNat(0);
        acc = mul_capped(acc, v, limits.max_count_digits);
      }
      return acc;
    }
    case FormulaKind::Exists: {
      BigNat acc(0);
      for (MsetId a : carrier.elems) {
        ScopedBind bind(val, f.name, a);
        acc = add_capped(
            acc, sigma_rec(store, f.kids[0], carrier, val, limits, env),
            limits.max_count_digits);
      }
      return acc;
    }
  }
  throw eval_error("malformed formula node");
}

inline bool tau_rec(const Store& store, const Formula& f,
                    const Carrier& carrier, Valuation& val,
                    const PredicateEnv& env) {
  switch (f.kind) {
    case FormulaKind::Bot:
      return false;
    case FormulaKind::Top:
      return true;
    case FormulaKind::Member:
      return store.count_in(resolve(val, f.lhs), resolve(val, f.rhs)) > 0;
    case FormulaKind::Equal:
      return resolve(val, f.lhs) == resolve(val, f.rhs);
    case FormulaKind::Pred:
      return apply_pred(env, f, val);
    case FormulaKind::And:
      return tau_rec(store, f.kids[0], carrier, val, env) &&
             tau_rec(store, f.kids[1], carrier, val, env);
    case FormulaKind::Or:
      return tau_rec(store, f.kids[0], carrier, val, env) ||
             tau_rec(store, f.kids[1], carrier, val, env);
    case FormulaKind::Implies:
      return !tau_rec(store, f.kids[0], carrier, val, env) ||
             tau_rec(store, f.kids[1], carrier, val, env);
    case FormulaKind::Forall: {
      for (MsetId a : carrier.elems) {
        ScopedBind bind(val, f.name, a);
        if (!tau_rec(store, f.kids[0], carrier, val, env)) return false;
      }
      return true;
    }
    case FormulaKind::Exists: {
      for (MsetId a : carrier.elems) {
        ScopedBind bind(val, f.name, a);
        if (tau_rec(store, f.kids[0], carrier, val, env)) return true;
      }
      return false;
    }
  }
  throw eval_error("malformed formula node");
}

}  // namespace detail

// Number of proofs of f: the proof-counting interpretation. Conjunction
// multiplies, disjunction adds, implication raises to a power, ∀ is a
// product over the carrier, ∃ a sum; a membership atom counts occurrence
// multiplicity and an equality counts 0 or 1. Counts above the digit cap
// raise resource_limit.
inline BigNat sigma_count(const Store& store, const Formula& f,
                          const Carrier& carrier, const Valuation& val = {},
                          const EvalLimits& limits = {},
                          const PredicateEnv& env = {}) {
  Valuation scratch = val;
  return detail::sigma_rec(store, f, carrier, scratch, limits, env);
}

// Truth of f: the truncated interpretation — every atom collapsed to
// inhabitedness, connectives boolean, quantifiers over the carrier.
inline bool tau_eval(const Store& store, const Formula& f,
                     const Carrier& carrier, const Valuation& val = {},
                     const PredicateEnv& env = {}) {
  Valuation scratch = val;
  return detail::tau_rec(store, f, carrier, scratch, env);
}

enum class Mode { Sigma, Tau };

inline const char* mode_name(Mode m) {
  return m == Mode::Sigma ? "sigma" : "tau";
}

enum class Axiom {
  Extensionality,
  Empty,
  Pairing,
  Union,
  RestrictedSeparation,
  Replacement,
};

inline Axiom axiom_from_name(const std::string& name) {
  if (name == "extensionality") return Axiom::Extensionality;
  if (name == "empty") return Axiom::Empty;
  if (name == "pairing") return Axiom::Pairing;
  if (name == "union") return Axiom::Union;
  if (name == "restricted-separation") return Axiom::RestrictedSeparation;
  if (name == "replacement") return Axiom::Replacement;
  throw unknown_axiom("unknown axiom '" + name +
                      "' (expected extensionality, empty, pairing, union, "
                      "restricted-separation, or replacement)");
}

inline const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::Extensionality:
      return "extensionality";
    case Axiom::Empty:
      return "empty";
    case Axiom::Pairing:
      return "pairing";
    case Axiom::Union:
      return "union";
    case Axiom::RestrictedSeparation:
      return "restricted-separation";
    case Axiom::Replacement:
      return "replacement";
  }
  return "?";
}

// One instantiation of an axiom's outer universal variables.
struct InstanceReport {
  std::string description;  // the instantiation, as literals
  bool holds = false;
  std::string value;        // σ: decimal count; τ: "true"/"false"
  std::optional<MsetId> witness;  // constructed set for ∃-axioms
  bool witness_in_carrier = false;
  std::string note;
};

struct AxiomReport {
  std::string axiom;
  std::string mode;
  std::string carrier;  // short description, e.g. "vset:3 (16 elements)"
  bool all_hold = true;
  std::vector<InstanceReport> instances;
};

namespace detail {

struct AxiomCheckCtx {
  Store& store;
  const Carrier& carrier;
  Mode mode;
  EvalLimits limits;
  PredicateEnv env;
  AxiomReport* report;

  std::pair<bool, std::string> evaluate(const Formula& f,
                                        const Valuation& val) {
    if (mode == Mode::Sigma) {
      BigNat c = sigma_count(store, f, carrier, val, limits, env);
      return {!c.is_zero(), c.to_string()};
    }
    bool t = tau_eval(store, f, carrier, val, env);
    return {t, t ? "true" : "false"};
  }

  bool in_carrier(MsetId m) const {
    for (MsetId e : carrier.elems)
      if (e == m) return true;
    return false;
  }

  void add(InstanceReport inst) {
    if (!inst.holds) report->all_hold = false;
    report->instances.push_back(std::move(inst));
  }
};

// --- witness constructions -------------------------------------------
// On set-like carriers these are exactly the set operations; on general
// multiset carriers the analogous bag constructions are used (flattening
// weights multiplicities through, filters preserve them), which keeps
// the σ counts of the defining formulas in exact agreement.

inline MsetId witness_pair(Store& store, const Carrier& carrier, MsetId x,
                           MsetId y) {
  if (carrier.set_like)
    return pair_set(store, to_vset(store, x), to_vset(store, y)).mset();
  std::vector<MsetId> kids = {x};
  if (y != x) kids.push_back(y);
  return store.mk_sup(kids);
}

inline MsetId witness_union(Store& store, const Carrier& carrier, MsetId x) {
  if (carrier.set_like)
    return union_set(store, to_vset(store, x)).mset();
  ChildBag bag;
  for (const auto& [y, m] : store.children_of(x))
    for (const auto& [z, k] : store.children_of(y))
      bag.emplace_back(z, m * k);
  return store.mk_sup_bag(bag);
}

inline MsetId witness_separation(Store& store, const Carrier& carrier,
                                 MsetId x,
                                 const std::function<bool(MsetId)>& keep) {
  if (carrier.set_like) {
    VsetId v = to_vset(store, x);
    return separation(store, v, [&](VsetId e) { return keep(e.mset()); })
        .mset();
  }
  ChildBag bag;
  for (const auto& [z, m] : store.children_of(x))
    if (keep(z)) bag.emplace_back(z, m);
  return store.mk_sup_bag(bag);
}

// b with count_in(y, b) = Σ_x mult_a(x) over x related to y: the image
// of the relation weighted by domain multiplicity.
inline MsetId witness_replacement(
    Store& store, const Carrier& carrier, MsetId a,
    const std::function<bool(MsetId, MsetId)>& rel) {
  ChildBag bag;
  for (const auto& [x, m] : store.children_of(a))
    for (MsetId y : carrier.elems)
      if (rel(x, y)) bag.emplace_back(y, m);
  if (carrier.set_like) {
    std::vector<MsetId> ids;
    for (const auto& [y, m] : bag) ids.push_back(y);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return store.mk_sup(ids);
  }
  return store.mk_sup_bag(bag);
}

inline void check_extensionality(AxiomCheckCtx& ctx) {
  Formula body = f_implies(
      f_forall("z", f_iff(f_member("z", "x"), f_member("z", "y"))),
      f_equal("x", "y"));
  for (MsetId x : ctx.carrier.elems) {
    for (MsetId y : ctx.carrier.elems) {
      Valuation val = {{"x", x}, {"y", y}};
      auto [holds, value] = ctx.evaluate(body, val);
      InstanceReport inst;
      inst.description = "x = " + to_literal(ctx.store, x) +
                         ", y = " + to_literal(ctx.store, y);
      inst.holds = holds;
      inst.value = value;
      ctx.add(std::move(inst));
    }
  }
}

inline void check_empty(AxiomCheckCtx& ctx) {
  Formula body =
      f_exists("e", f_forall("z", f_implies(f_member("z", "e"), f_bot())));
  auto [holds, value] = ctx.evaluate(body, {});
  InstanceReport inst;
  inst.description = "(no free variables)";
  inst.holds = holds;
  inst.value = value;
  inst.witness = ctx.store.empty_mset();
  inst.witness_in_carrier = ctx.in_carrier(*inst.witness);
  if (!inst.witness_in_carrier)
    inst.note = "constructed witness {} is outside the carrier";
  ctx.add(std::move(inst));
}

inline void check_pairing(AxiomCheckCtx& ctx) {
  Formula body = f_exists(
      "p", f_forall("z", f_iff(f_member("z", "p"),
                               f_or(f_equal("z", "x"), f_equal("z", "y")))));
  for (MsetId x : ctx.carrier.elems) {
    for (MsetId y : ctx.carrier.elems) {
      Valuation val = {{"x", x}, {"y", y}};
      auto [holds, value] = ctx.evaluate(body, val);
      InstanceReport inst;
      inst.description = "x = " + to_literal(ctx.store, x) +
                         ", y = " + to_literal(ctx.store, y);
      inst.holds = holds;
      inst.value = value;
      inst.witness = witness_pair(ctx.store, ctx.carrier, x, y);
      inst.witness_in_carrier = ctx.in_carrier(*inst.witness);
      if (!holds && !inst.witness_in_carrier)
        inst.note = "constructed witness " +
                    to_literal(ctx.store, *inst.witness) +
                    " is outside the carrier";
      ctx.add(std::move(inst));
    }
  }
}

inline void check_union(AxiomCheckCtx& ctx) {
  Formula inner = f_exists("y", f_and(f_member("y", "x"),
                                      f_member("z", "y")));
  Formula body =
      f_exists("u", f_forall("z", f_iff(f_member("z", "u"), inner)));
  for (MsetId x : ctx.carrier.elems) {
    Valuation val = {{"x", x}};
    auto [holds, value] = ctx.evaluate(body, val);
    InstanceReport inst;
    inst.description = "x = " + to_literal(ctx.store, x);
    inst.holds = holds;
    inst.value = value;
    inst.witness = witness_union(ctx.store, ctx.carrier, x);
    inst.witness_in_carrier = ctx.in_carrier(*inst.witness);
    if (!holds && !inst.witness_in_carrier)
      inst.note = "constructed witness " +
                  to_literal(ctx.store, *inst.witness) +
                  " is outside the carrier";
    if (ctx.mode == Mode::Sigma && !ctx.carrier.set_like) {
      // surface multiplicity-driven proof counts: the inner ∃ and the
      // bare membership atom can count above 1 on multiset carriers
      for (MsetId z : ctx.carrier.elems) {
        Valuation vz = {{"x", x}, {"z", z}};
        BigNat c = sigma_count(ctx.store, inner, ctx.carrier, vz, ctx.limits,
                               ctx.env);
        BigNat atom = BigNat(ctx.store.count_in(z, x));
        if (!(c == BigNat(0)) && !(c == BigNat(1))) {
          if (!inst.note.empty()) inst.note += "; ";
          inst.note += "inner exists at z = " + to_literal(ctx.store, z) +
                       " counts " + c.to_string() + " proofs";
        }
        if (!(atom == BigNat(0)) && !(atom == BigNat(1))) {
          if (!inst.note.empty()) inst.note += "; ";
          inst.note += "membership atom z in x at z = " +
                       to_literal(ctx.store, z) + " counts " +
                       atom.to_string();
        }
      }
    }
    ctx.add(std::move(inst));
  }
}

struct SamplePredicate {
  std::string label;
  std::function<bool(MsetId)> fn;
};

inline std::vector<SamplePredicate> sample_predicates(Store& store) {
  return {
      {"is-empty",
       [&store](MsetId z) { return store.children_of(z).empty(); }},
      {"width-at-most-1", [&store](MsetId z) { return store.width(z) <= 1; }},
      {"contains-empty",
       [&store](MsetId z) {
         return store.count_in(store.empty_mset(), z) > 0;
       }},
  };
}

inline void check_separation(AxiomCheckCtx& ctx) {
  Formula body = f_exists(
      "s", f_forall("z", f_iff(f_member("z", "s"),
                               f_and(f_member("z", "x"),
                                     f_pred("P", {"z"})))));
  for (const SamplePredicate& pred : sample_predicates(ctx.store)) {
    ctx.env["P"] = [fn = pred.fn](std::span<const MsetId> args) {
      return fn(args[0]);
    };
    for (MsetId x : ctx.carrier.elems) {
      Valuation val = {{"x", x}};
      auto [holds, value] = ctx.evaluate(body, val);
      InstanceReport inst;
      inst.description =
          "P = " + pred.label + ", x = " + to_literal(ctx.store, x);
      inst.holds = holds;
      inst.value = value;
      inst.witness = witness_separation(ctx.store, ctx.carrier, x, pred.fn);
      inst.witness_in_carrier = ctx.in_carrier(*inst.witness);
      if (!holds && !inst.witness_in_carrier)
        inst.note = "constructed witness " +
                    to_literal(ctx.store, *inst.witness) +
                    " is outside the carrier";
      ctx.add(std::move(inst));
    }
  }
  ctx.env.erase("P");
}

inline void check_replacement(AxiomCheckCtx& ctx) {
  // sample relation R(x, y): y is the singleton {x}
  auto rel = [&store = ctx.store](MsetId x, MsetId y) {
    return y == store.mk_sup({x});
  };
  ctx.env["R"] = [rel](std::span<const MsetId> args) {
    return rel(args[0], args[1]);
  };
  Formula unique_y = f_exists(
      "y", f_and(f_pred("R", {"x", "y"}),
                 f_forall("w", f_implies(f_pred("R", {"x", "w"}),
                                         f_equal("w", "y")))));
  Formula hyp = f_forall("x", f_implies(f_member("x", "a"), unique_y));
  Formula concl = f_exists(
      "b", f_forall("y", f_iff(f_member("y", "b"),
                               f_exists("x", f_and(f_member("x", "a"),
                                                   f_pred("R", {"x", "y"}))))));
  Formula body = f_implies(hyp, concl);
  for (MsetId a : ctx.carrier.elems) {
    Valuation val = {{"a", a}};
    auto [holds, value] = ctx.evaluate(body, val);
    InstanceReport inst;
    inst.description =
        "R = (y = singleton of x), a = " + to_literal(ctx.store, a);
    inst.holds = holds;
    inst.value = value;
    bool hyp_holds = tau_eval(ctx.store, hyp, ctx.carrier, val, ctx.env);
    if (hyp_holds) {
      inst.witness = witness_replacement(ctx.store, ctx.carrier, a, rel);
      inst.witness_in_carrier = ctx.in_carrier(*inst.witness);
      if (!holds && !inst.witness_in_carrier)
        inst.note = "constructed witness " +
                    to_literal(ctx.store, *inst.witness) +
                    " is outside the carrier";
    } else {
      inst.note = "uniqueness hypothesis fails over this carrier; "
                  "instance holds vacuously";
    }
    ctx.add(std::move(inst));
  }
  ctx.env.erase("R");
}

}  // namespace detail

// Evaluates one axiom over the carrier, instance by instance (one
// instance per assignment of the axiom's outer universal variables),
// reporting the σ count or τ truth, the witness that the matching set
// construction produces, and whether that witness lies inside the
// carrier. An instance can fail honestly when its witness escapes a
// carrier too small to contain it.
inline AxiomReport check_axiom(Store& store, Axiom axiom,
                               const Carrier& carrier, Mode mode,
                               const EvalLimits& limits = {}) {
  AxiomReport report;
  report.axiom = axiom_name(axiom);
  report.mode = mode_name(mode);
  report.carrier = std::to_string(carrier.elems.size()) + " elements (" +
                   (carrier.set_like ? "set-like" : "multiset") + ")";
  detail::AxiomCheckCtx ctx{store, carrier, mode, limits, {}, &report};
  switch (axiom) {
    case Axiom::Extensionality:
      detail::check_extensionality(ctx);
      break;
    case Axiom::Empty:
      detail::check_empty(ctx);
      break;
    case Axiom::Pairing:
      detail::check_pairing(ctx);
      break;
    case Axiom::Union:
      detail::check_union(ctx);
      break;
    case Axiom::RestrictedSeparation:
      detail::check_separation(ctx);
      break;
    case Axiom::Replacement:
      detail::check_replacement(ctx);
      break;
  }
  return report;
}

inline AxiomReport check_axiom(Store& store, const std::string& axiom,
                               const Carrier& carrier, Mode mode,
                               const EvalLimits& limits = {}) {
  return check_axiom(store, axiom_from_name(axiom), carrier, mode, limits);
}

}  // namespace itsets
