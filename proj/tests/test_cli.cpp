#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "itsets/cli.hpp"

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = itsets::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("normalize") {
  auto ok = run({"normalize", "{{{}},{}}"});
  CHECK(ok.code == 0);
  CHECK(ok.out == "{{},{{}}}\n");
  // duplicates are an error in a set context
  auto dup = run({"normalize", "{{},{}}"});
  CHECK(dup.code == 1);
  CHECK(dup.out.empty());
  CHECK(dup.err.find("error") != std::string::npos);
  // ... unless routed through hereditary deduplication
  auto fixed = run({"normalize", "{{},{}}", "--dedup"});
  CHECK(fixed.code == 0);
  CHECK(fixed.out == "{{}}\n");
  CHECK(fixed.err.find("deduplicated under --dedup") != std::string::npos);
  // idempotent: normalizing the output changes nothing further
  auto again = run({"normalize", "{{}}", "--dedup"});
  CHECK(again.code == 0);
  CHECK(again.out == "{{}}\n");
  CHECK(again.err.empty());
  // syntax errors carry a column
  auto bad = run({"normalize", "{{}"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("column 4") != std::string::npos);
}

TEST_CASE("enum") {
  auto count = run({"enum", "--vsets", "--rank", "3", "--count"});
  CHECK(count.code == 0);
  CHECK(count.out == "16\n");
  auto listed = run({"enum", "--vsets", "--rank", "1"});
  CHECK(listed.out == "{}\n{{}}\n");
  auto msets = run({"enum", "--msets", "--rank", "2", "--width", "2",
                    "--count"});
  CHECK(msets.out == "10\n");
  // usage errors
  CHECK(run({"enum", "--rank", "2"}).code == 2);
  CHECK(run({"enum", "--msets", "--rank", "2"}).code == 2);
  CHECK(run({"enum", "--vsets", "--rank", "2", "--width", "1"}).code == 2);
  CHECK(run({"enum", "--vsets", "--msets", "--rank", "2", "--width", "1"})
            .code == 2);
  // cap violations are domain errors
  auto capped = run({"enum", "--vsets", "--rank", "5"});
  CHECK(capped.code == 1);
  CHECK(capped.err.find("cap") != std::string::npos);
}

TEST_CASE("eval") {
  auto ext = run({"eval", "--mode", "tau", "--carrier", "vset:2",
                  "forall x. forall y. ((forall z. (z in x -> z in y) /\\ "
                  "(z in y -> z in x)) -> x = y)"});
  CHECK(ext.code == 0);
  CHECK(ext.out == "true\n");
  auto cnt = run({"eval", "--mode", "sigma", "--carrier", "vset:1",
                  "exists x. x = x"});
  CHECK(cnt.out == "2\n");
  // multiset carrier sees multiplicities
  auto bag = run({"eval", "--mode", "sigma", "--carrier", "mset:1,2",
                  "exists x. exists y. y in x"});
  // carrier {}, {{}}, {{},{}}: pairs (x,y) weighted by multiplicity:
  // x={{}} gives 1 at y={}, x={{},{}} gives 2 at y={} → 3
  CHECK(bag.out == "3\n");
  // free variables are an error
  CHECK(run({"eval", "--mode", "tau", "--carrier", "vset:1", "x in y"})
            .code == 1);
  // bad mode is a usage error
  CHECK(run({"eval", "--mode", "gamma", "--carrier", "vset:1", "top"})
            .code == 2);
  // missing carrier is a usage error
  CHECK(run({"eval", "--mode", "tau", "top"}).code == 2);
}

TEST_CASE("check") {
  auto ok = run({"check", "union", "--carrier", "vset:2", "--mode", "tau"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("result: all instances hold") != std::string::npos);
  // pairing escapes the fragment on high-rank pairs: some instances fail
  auto pairs = run({"check", "pairing", "--carrier", "vset:2"});
  CHECK(pairs.code == 1);
  CHECK(pairs.out.find("escapes carrier") != std::string::npos);
  // unknown axioms are usage errors
  CHECK(run({"check", "powerset", "--carrier", "vset:2"}).code == 2);
  // json mode emits a parsable report
  auto js = run({"check", "union", "--carrier", "vset:2", "--json"});
  CHECK(js.code == 0);
  auto doc = nlohmann::json::parse(js.out);
  CHECK(doc["axiom"] == "union");
  CHECK(doc["all_hold"] == true);
  CHECK(doc["instances"].is_array());
}

TEST_CASE("bisim and setof") {
  auto yes = run({"bisim", "{{},{}}", "{{}}"});
  CHECK(yes.code == 0);
  CHECK(yes.out == "bisimilar\n");
  auto no = run({"bisim", "{{}}", "{{{}}}"});
  CHECK(no.code == 0);
  CHECK(no.out == "not bisimilar\n");
  auto img = run({"setof", "{{},{},{{},{}}}"});
  CHECK(img.code == 0);
  CHECK(img.out == "{{},{{}}}\n");
}

TEST_CASE("quotient") {
  auto q = run({"quotient", "--rank", "1", "--width", "2"});
  CHECK(q.code == 0);
  CHECK(q.out.find("classes: 2") != std::string::npos);
  auto js = run({"quotient", "--rank", "2", "--width", "2", "--json"});
  auto doc = nlohmann::json::parse(js.out);
  CHECK(doc["fragment_size"] == 10);
  CHECK(doc["class_count"] == 4);
}

TEST_CASE("ops") {
  CHECK(run({"ops", "empty"}).out == "{}\n");
  CHECK(run({"ops", "nat", "3"}).out == "{{},{{}},{{},{{}}}}\n");
  CHECK(run({"ops", "pair", "{}", "{{}}"}).out == "{{},{{}}}\n");
  CHECK(run({"ops", "union", "{{{}},{{},{{}}}}"}).out == "{{},{{}}}\n");
  CHECK(run({"ops", "opair", "{}", "{}"}).out == "{{{}}}\n");
  auto sep = run({"ops", "sep", "{{},{{}},{{},{{}}}}",
                  "exists w. w in z"});
  CHECK(sep.code == 0);
  // keeps exactly the inhabited elements
  CHECK(sep.out == "{{{}},{{},{{}}}}\n");
  auto ex = run({"ops", "exp", "{{},{{}}}", "{{}}"});
  CHECK(ex.code == 0);
  // exactly one map from a two-element set into a singleton
  auto doc = run({"ops", "exp", "{{},{{}}}", "{{}}", "--json"});
  CHECK(nlohmann::json::parse(doc.out)["op"] == "exp");
  // non-set input is a domain error
  CHECK(run({"ops", "pair", "{{},{}}", "{}"}).code == 1);
  // missing argument
  CHECK(run({"ops", "pair", "{}"}).code == 2);
  // unknown op
  CHECK(run({"ops", "frobnicate", "{}"}).code == 1);
}

TEST_CASE("selftest filter") {
  // run just the cheapest criterion through the CLI path
  auto r = run({"selftest", "--only", "pair-injectivity"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS  pair-injectivity") != std::string::npos);
  CHECK(r.out.find("1/1 criteria passed") != std::string::npos);
}

TEST_CASE("usage plumbing") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"normalize"}).code == 2);  // missing literal
}
