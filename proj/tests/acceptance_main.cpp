// Acceptance gate: runs every criterion in the selftest suite and prints
// one pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "itsets/cli.hpp"
#include "itsets/selftest.hpp"

int main() {
  itsets::selftest::CliRunner runner =
      [](const std::vector<std::string>& args, std::string& out,
         std::string& err) {
        std::ostringstream o, e;
        int code = itsets::cli::run_cli(args, o, e);
        out = o.str();
        err = e.str();
        return code;
      };
  auto results = itsets::selftest::run_selftest({}, runner);
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  ("
              << static_cast<long long>(r.millis) << " ms)";
    if (!r.passed) std::cout << "  -- " << r.detail;
    std::cout << "\n";
  }
  std::size_t passed = 0;
  for (const auto& r : results)
    if (r.passed) ++passed;
  std::cout << passed << "/" << results.size() << " criteria passed"
            << std::endl;
  return itsets::selftest::all_passed(results) ? 0 : 1;
}
