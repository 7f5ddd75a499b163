// Enumerates a small multiset fragment, groups it by bisimilarity, and
// evaluates one formula in both interpretations to show where counting
// and truth part ways.

#include <iostream>

#include "itsets/itsets.hpp"

using namespace itsets;

int main() {
  Store store;

  std::vector<MsetId> frag = enumerate_msets(store, 2, 2);
  std::cout << "multisets of rank <= 2, hereditary width <= 2: "
            << frag.size() << "\n\n";

  auto classes = quotient(store, frag);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::cout << "class " << (i + 1) << "  ~  "
              << to_literal(store, classes[i].image.mset()) << "\n";
    for (MsetId m : classes[i].members)
      std::cout << "    " << to_literal(store, m) << "\n";
  }

  // the membership atom over a duplicated element: two occurrences
  Formula f = parse_formula("exists y. y in x");
  MsetId bag = parse_mset_literal(store, "{{},{}}");
  Carrier carrier = make_mset_carrier(store, 1, 2);
  Valuation val = {{"x", bag}};
  std::cout << "\nexists y. y in {{},{}}\n";
  std::cout << "  proof count: "
            << sigma_count(store, f, carrier, val).to_string() << "\n";
  std::cout << "  truth:       "
            << (tau_eval(store, f, carrier, val) ? "true" : "false") << "\n";
  return 0;
}
