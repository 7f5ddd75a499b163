#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "itsets/bignat.hpp"
#include "itsets/bisim.hpp"
#include "itsets/errors.hpp"
#include "itsets/formula.hpp"
#include "itsets/literal.hpp"
#include "itsets/model.hpp"
#include "itsets/mset.hpp"
#include "itsets/selftest.hpp"
#include "itsets/set_ops.hpp"
#include "itsets/vset.hpp"

// Command-line front end. One binary, subcommand style; every handler
// builds its own store, so identical argv always maps to identical
// interned ids and byte-identical output.
//
// Exit codes: 0 success, 1 domain errors (bad literals, non-set-like
// input, resource caps, failed axiom instances), 2 usage errors.

namespace itsets::cli {

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

namespace detail {

// carrier specs: vset:RANK | mset:RANK,WIDTH | list:FILE (one literal
// per line, blank lines ignored)
inline Carrier parse_carrier_spec(Store& store, const std::string& spec,
                                  std::size_t max_elements) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon == std::string::npos ? spec.size()
                                                               : colon);
  std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "vset") {
    return make_vset_carrier(store, static_cast<std::uint32_t>(
                                        std::stoul(rest)),
                             max_elements);
  }
  if (kind == "mset") {
    auto comma = rest.find(',');
    if (comma == std::string::npos)
      throw error("mset carrier spec needs rank,width — got 'mset:" + rest +
                  "'");
    return make_mset_carrier(
        store, static_cast<std::uint32_t>(std::stoul(rest.substr(0, comma))),
        static_cast<std::uint32_t>(std::stoul(rest.substr(comma + 1))),
        max_elements);
  }
  if (kind == "list") {
    std::ifstream in(rest);
    if (!in) throw error("cannot open carrier file: " + rest);
    std::vector<MsetId> elems;
    std::string line;
    while (std::getline(in, line)) {
      bool blank = true;
      for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
      if (blank) continue;
      elems.push_back(parse_mset_literal(store, line));
    }
    return make_list_carrier(store, elems);
  }
  throw error("unknown carrier kind '" + kind +
              "' (expected vset:RANK, mset:RANK,WIDTH, or list:FILE)");
}

inline Mode parse_mode(const std::string& name) {
  if (name == "sigma") return Mode::Sigma;
  if (name == "tau") return Mode::Tau;
  throw error("unknown mode '" + name + "' (expected sigma or tau)");
}

inline void require_closed(const Formula& f) {
  auto free = free_vars(f);
  if (free.empty()) return;
  std::string names;
  for (const auto& v : free) names += (names.empty() ? "" : ", ") + v;
  throw eval_error("formula has free variables: " + names);
}

inline nlohmann::json report_to_json(const AxiomReport& report) {
  nlohmann::json instances = nlohmann::json::array();
  for (const auto& inst : report.instances) {
    nlohmann::json j = {{"description", inst.description},
                        {"holds", inst.holds},
                        {"value", inst.value},
                        {"witness_in_carrier", inst.witness_in_carrier},
                        {"note", inst.note}};
    instances.push_back(std::move(j));
  }
  return {{"axiom", report.axiom},
          {"mode", report.mode},
          {"carrier", report.carrier},
          {"all_hold", report.all_hold},
          {"instances", instances}};
}

inline void print_report_text(std::ostream& out, const Store& store,
                              const AxiomReport& report) {
  out << "axiom: " << report.axiom << "\n";
  out << "mode: " << report.mode << "\n";
  out << "carrier: " << report.carrier << "\n";
  for (const auto& inst : report.instances) {
    out << "  [" << (inst.holds ? "ok" : "FAIL") << "] " << inst.description
        << " => " << inst.value;
    if (inst.witness) {
      out << " | witness " << to_literal(store, *inst.witness);
      if (!inst.witness_in_carrier) out << " (escapes carrier)";
    }
    if (!inst.note.empty()) out << " | note: " << inst.note;
    out << "\n";
  }
  out << "result: "
      << (report.all_hold ? "all instances hold" : "some instances fail")
      << "\n";
}

struct CapFlags {
  std::size_t max_elements = kDefaultMaxElements;
  std::size_t max_count_digits = 10000;
};

inline void add_cap_flags(CLI::App* sub, CapFlags& caps) {
  sub->add_option("--max-elements", caps.max_elements,
                  "enumeration size cap (default 100000)");
  sub->add_option("--max-count-digits", caps.max_count_digits,
                  "decimal-digit cap on proof counts (default 10000)");
}

// ---- subcommand handlers -------------------------------------------------

inline int cmd_normalize(const std::string& literal, bool dedup, bool json,
                         std::ostream& out, std::ostream& err) {
  Store store;
  MsetId m = parse_mset_literal(store, literal);
  bool changed = false;
  MsetId result = m;
  if (dedup) {
    result = iterative_image(store, m).mset();
    changed = result != m;
  } else {
    result = to_vset(store, m).mset();  // throws not_set_like on duplicates
  }
  if (json) {
    nlohmann::json j = {{"literal", to_literal(store, result)},
                        {"deduplicated", changed}};
    out << j.dump(2) << "\n";
  } else {
    out << to_literal(store, result) << "\n";
    if (changed) err << "note: deduplicated under --dedup\n";
  }
  return 0;
}

inline int cmd_eval(const std::string& mode_str, const std::string& carrier_spec,
                    const std::string& formula_text, const CapFlags& caps,
                    bool json, std::ostream& out) {
  Store store;
  Mode mode = parse_mode(mode_str);
  Carrier carrier = parse_carrier_spec(store, carrier_spec, caps.max_elements);
  Formula f = parse_formula(formula_text);
  require_closed(f);
  EvalLimits limits;
  limits.max_count_digits = caps.max_count_digits;
  std::string value;
  if (mode == Mode::Sigma)
    value = sigma_count(store, f, carrier, {}, limits).to_string();
  else
    value = tau_eval(store, f, carrier) ? "true" : "false";
  if (json) {
    nlohmann::json j = {{"mode", mode_str},
                        {"carrier", carrier_spec},
                        {"formula", print_formula(f)},
                        {"value", value}};
    out << j.dump(2) << "\n";
  } else {
    out << value << "\n";
  }
  return 0;
}

inline int cmd_check(const std::string& axiom, const std::string& mode_str,
                     const std::string& carrier_spec, const CapFlags& caps,
                     bool json, std::ostream& out) {
  Store store;
  Mode mode = parse_mode(mode_str);
  Carrier carrier = parse_carrier_spec(store, carrier_spec, caps.max_elements);
  EvalLimits limits;
  limits.max_count_digits = caps.max_count_digits;
  AxiomReport report = check_axiom(store, axiom, carrier, mode, limits);
  if (json)
    out << report_to_json(report).dump(2) << "\n";
  else
    print_report_text(out, store, report);
  return report.all_hold ? 0 : 1;
}

inline int cmd_enum(bool vsets, std::uint32_t rank, std::uint32_t width,
                    bool count_only, const CapFlags& caps, bool json,
                    std::ostream& out) {
  Store store;
  std::vector<MsetId> items;
  if (vsets) {
    for (VsetId v : enumerate_vsets(store, rank, caps.max_elements))
      items.push_back(v.mset());
  } else {
    items = enumerate_msets(store, rank, width, caps.max_elements);
  }
  if (json) {
    nlohmann::json j = {{"count", items.size()}};
    if (!count_only) {
      nlohmann::json arr = nlohmann::json::array();
      for (MsetId m : items) arr.push_back(to_literal(store, m));
      j["items"] = std::move(arr);
    }
    out << j.dump(2) << "\n";
  } else if (count_only) {
    out << items.size() << "\n";
  } else {
    for (MsetId m : items) out << to_literal(store, m) << "\n";
  }
  return 0;
}

inline int cmd_bisim(const std::string& lit_x, const std::string& lit_y,
                     bool json, std::ostream& out) {
  Store store;
  MsetId x = parse_mset_literal(store, lit_x);
  MsetId y = parse_mset_literal(store, lit_y);
  bool related = bisim(store, x, y);
  if (json) {
    nlohmann::json j = {{"bisimilar", related}};
    out << j.dump(2) << "\n";
  } else {
    out << (related ? "bisimilar" : "not bisimilar") << "\n";
  }
  return 0;
}

inline int cmd_setof(const std::string& literal, bool json, std::ostream& out) {
  Store store;
  MsetId m = parse_mset_literal(store, literal);
  VsetId v = iterative_image(store, m);
  if (json) {
    nlohmann::json j = {{"literal", to_literal(store, v.mset())}};
    out << j.dump(2) << "\n";
  } else {
    out << to_literal(store, v.mset()) << "\n";
  }
  return 0;
}

inline int cmd_quotient(std::uint32_t rank, std::uint32_t width,
                        const CapFlags& caps, bool json, std::ostream& out) {
  Store store;
  std::vector<MsetId> frag =
      enumerate_msets(store, rank, width, caps.max_elements);
  std::vector<BisimClass> classes = quotient(store, frag);
  if (json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : classes) {
      nlohmann::json members = nlohmann::json::array();
      for (MsetId m : c.members) members.push_back(to_literal(store, m));
      arr.push_back({{"representative", to_literal(store, c.representative)},
                     {"image", to_literal(store, c.image.mset())},
                     {"members", std::move(members)}});
    }
    nlohmann::json j = {{"fragment_size", frag.size()},
                        {"class_count", classes.size()},
                        {"classes", std::move(arr)}};
    out << j.dump(2) << "\n";
  } else {
    out << "fragment: " << frag.size() << " multisets (rank <= " << rank
        << ", width <= " << width << ")\n";
    out << "classes: " << classes.size() << "\n";
    for (std::size_t i = 0; i < classes.size(); ++i) {
      out << "  class " << (i + 1) << " image "
          << to_literal(store, classes[i].image.mset()) << " members";
      for (MsetId m : classes[i].members) out << " " << to_literal(store, m);
      out << "\n";
    }
  }
  return 0;
}

struct OpsArgs {
  std::string op;
  std::vector<std::string> rest;  // literals / numbers / formula
};

inline int cmd_ops(const OpsArgs& a, const CapFlags& caps, bool json,
                   std::ostream& out) {
  Store store;
  auto as_set = [&](const std::string& lit) {
    return to_vset(store, parse_mset_literal(store, lit));
  };
  VsetId result;
  if (a.op == "empty") {
    result = empty_set(store);
  } else if (a.op == "nat") {
    result = nat(store, static_cast<std::uint32_t>(std::stoul(a.rest.at(0))));
  } else if (a.op == "pair") {
    result = pair_set(store, as_set(a.rest.at(0)), as_set(a.rest.at(1)));
  } else if (a.op == "union") {
    result = union_set(store, as_set(a.rest.at(0)));
  } else if (a.op == "sep") {
    VsetId x = as_set(a.rest.at(0));
    Formula f = parse_formula(a.rest.at(1));
    auto free = free_vars(f);
    if (free.size() != 1)
      throw eval_error(
          "separation formula must have exactly one free variable, got " +
          std::to_string(free.size()));
    std::string var = *free.begin();
    // quantifiers inside the predicate range over the elements of X
    std::vector<MsetId> elems;
    for (VsetId e : elements(store, x)) elems.push_back(e.mset());
    Carrier carrier = make_list_carrier(store, elems);
    result = separation(store, x, [&](VsetId z) {
      return tau_eval(store, f, carrier, {{var, z.mset()}});
    });
  } else if (a.op == "exp") {
    result = exp_set(store, as_set(a.rest.at(0)), as_set(a.rest.at(1)),
                     caps.max_elements);
  } else if (a.op == "opair") {
    result = ordered_pair(store, as_set(a.rest.at(0)), as_set(a.rest.at(1)));
  } else {
    throw error("unknown op '" + a.op + "'");
  }
  if (json) {
    nlohmann::json j = {{"op", a.op},
                        {"literal", to_literal(store, result.mset())}};
    out << j.dump(2) << "\n";
  } else {
    out << to_literal(store, result.mset()) << "\n";
  }
  return 0;
}

inline int cmd_selftest(const std::string& only, bool json, std::ostream& out) {
  selftest::SelftestOptions options;
  options.only = only;
  selftest::CliRunner runner = [](const std::vector<std::string>& sub_args,
                                  std::string& sub_out, std::string& sub_err) {
    std::ostringstream o, e;
    int code = run_cli(sub_args, o, e);
    sub_out = o.str();
    sub_err = e.str();
    return code;
  };
  auto results = selftest::run_selftest(options, runner);
  if (json)
    out << selftest::selftest_to_json(results).dump(2) << "\n";
  else
    selftest::print_selftest_text(out, results);
  return selftest::all_passed(results) ? 0 : 1;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  using detail::CapFlags;
  CLI::App app{"hereditarily finite iterative multisets and sets"};
  app.require_subcommand(1);

  // normalize
  std::string nrm_literal;
  bool nrm_dedup = false, nrm_json = false;
  auto* nrm = app.add_subcommand(
      "normalize", "canonicalize a set literal (error on duplicates)");
  nrm->add_option("literal", nrm_literal, "multiset literal")->required();
  nrm->add_flag("--dedup", nrm_dedup,
                "repair duplicates by hereditary deduplication");
  nrm->add_flag("--json", nrm_json, "machine-readable output");

  // eval
  std::string ev_mode, ev_carrier, ev_formula;
  bool ev_json = false;
  CapFlags ev_caps;
  auto* ev = app.add_subcommand("eval",
                                "evaluate a closed formula over a carrier");
  ev->add_option("--mode", ev_mode, "sigma (count) or tau (truth)")
      ->required()
      ->check(CLI::IsMember({"sigma", "tau"}));
  ev->add_option("--carrier", ev_carrier,
                 "vset:RANK | mset:RANK,WIDTH | list:FILE")
      ->required();
  ev->add_option("formula", ev_formula, "closed formula")->required();
  ev->add_flag("--json", ev_json, "machine-readable output");
  detail::add_cap_flags(ev, ev_caps);

  // check
  std::string ck_axiom, ck_mode = "tau", ck_carrier;
  bool ck_json = false;
  CapFlags ck_caps;
  auto* ck = app.add_subcommand("check",
                                "check an axiom scheme over a carrier");
  ck->add_option("axiom", ck_axiom, "axiom name")
      ->required()
      ->check(CLI::IsMember({"extensionality", "empty", "pairing", "union",
                             "restricted-separation", "replacement"}));
  ck->add_option("--carrier", ck_carrier,
                 "vset:RANK | mset:RANK,WIDTH | list:FILE")
      ->required();
  ck->add_option("--mode", ck_mode, "sigma or tau (default tau)")
      ->check(CLI::IsMember({"sigma", "tau"}));
  ck->add_flag("--json", ck_json, "machine-readable output");
  detail::add_cap_flags(ck, ck_caps);

  // enum
  bool en_vsets = false, en_msets = false, en_count = false, en_json = false;
  std::uint32_t en_rank = 0, en_width = 0;
  CapFlags en_caps;
  auto* en = app.add_subcommand("enum", "enumerate a bounded fragment");
  en->add_flag("--vsets", en_vsets, "hereditary sets of bounded rank");
  en->add_flag("--msets", en_msets,
               "multisets of bounded rank and hereditary width");
  en->add_option("--rank", en_rank, "rank bound")->required();
  en->add_option("--width", en_width, "hereditary width bound (msets only)");
  en->add_flag("--count", en_count, "print only the count");
  en->add_flag("--json", en_json, "machine-readable output");
  detail::add_cap_flags(en, en_caps);

  // bisim
  std::string bs_x, bs_y;
  bool bs_json = false;
  auto* bs = app.add_subcommand("bisim", "test bisimilarity of two literals");
  bs->add_option("x", bs_x, "first literal")->required();
  bs->add_option("y", bs_y, "second literal")->required();
  bs->add_flag("--json", bs_json, "machine-readable output");

  // setof
  std::string so_literal;
  bool so_json = false;
  auto* so = app.add_subcommand(
      "setof", "hereditarily deduplicate a multiset into a set");
  so->add_option("literal", so_literal, "multiset literal")->required();
  so->add_flag("--json", so_json, "machine-readable output");

  // quotient
  std::uint32_t qt_rank = 0, qt_width = 0;
  bool qt_json = false;
  CapFlags qt_caps;
  auto* qt = app.add_subcommand(
      "quotient", "bisimilarity classes of a bounded multiset fragment");
  qt->add_option("--rank", qt_rank, "rank bound")->required();
  qt->add_option("--width", qt_width, "hereditary width bound")->required();
  qt->add_flag("--json", qt_json, "machine-readable output");
  detail::add_cap_flags(qt, qt_caps);

  // ops
  detail::OpsArgs ops_args;
  bool ops_json = false;
  CapFlags ops_caps;
  auto* op = app.add_subcommand("ops", "run a single set construction");
  op->add_option("op", ops_args.op,
                 "empty | nat N | pair X Y | union X | sep X FORMULA | "
                 "exp A B | opair X Y")
      ->required();
  op->add_option("args", ops_args.rest, "operation arguments");
  op->add_flag("--json", ops_json, "machine-readable output");
  detail::add_cap_flags(op, ops_caps);

  // selftest
  std::string st_only;
  bool st_json = false;
  auto* st = app.add_subcommand("selftest", "run the acceptance criteria");
  st->add_option("--only", st_only, "substring filter on criterion names");
  st->add_flag("--json", st_json, "machine-readable output");

  std::vector<const char*> argv;
  argv.push_back("itsets");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (en->parsed()) {
      if (en_vsets == en_msets)
        throw CLI::ValidationError(
            "enum", "exactly one of --vsets / --msets is required");
      if (en_msets && en->count("--width") == 0)
        throw CLI::ValidationError("enum", "--width is required with --msets");
      if (en_vsets && en->count("--width") > 0)
        throw CLI::ValidationError("enum", "--width only applies to --msets");
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (nrm->parsed())
      return detail::cmd_normalize(nrm_literal, nrm_dedup, nrm_json, out, err);
    if (ev->parsed())
      return detail::cmd_eval(ev_mode, ev_carrier, ev_formula, ev_caps,
                              ev_json, out);
    if (ck->parsed())
      return detail::cmd_check(ck_axiom, ck_mode, ck_carrier, ck_caps,
                               ck_json, out);
    if (en->parsed())
      return detail::cmd_enum(en_vsets, en_rank, en_width, en_count, en_caps,
                              en_json, out);
    if (bs->parsed()) return detail::cmd_bisim(bs_x, bs_y, bs_json, out);
    if (so->parsed()) return detail::cmd_setof(so_literal, so_json, out);
    if (qt->parsed())
      return detail::cmd_quotient(qt_rank, qt_width, qt_caps, qt_json, out);
    if (op->parsed()) return detail::cmd_ops(ops_args, ops_caps, ops_json, out);
    if (st->parsed()) return detail::cmd_selftest(st_only, st_json, out);
    err << "usage error: no subcommand\n";
    return 2;
  } catch (const std::out_of_range&) {
    err << "usage error: missing operation argument\n";
    return 2;
  } catch (const std::invalid_argument&) {
    err << "usage error: bad numeric argument\n";
    return 2;
  } catch (const error& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
}

}  // namespace itsets::cli
