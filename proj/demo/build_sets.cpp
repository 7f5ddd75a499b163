// Tour of the basic constructions: numerals, pairs, unions, function
// spaces, and the certification boundary between multisets and sets.

#include <iostream>

#include "itsets/itsets.hpp"

using namespace itsets;

int main() {
  Store store;

  std::cout << "numerals:\n";
  for (std::uint32_t n = 0; n <= 4; ++n) {
    VsetId v = nat(store, n);
    std::cout << "  " << n << " = " << to_literal(store, v.mset())
              << "  (rank " << rank(store, v) << ")\n";
  }

  VsetId zero = empty_set(store);
  VsetId one = nat(store, 1);
  VsetId two = nat(store, 2);

  std::cout << "\npairing and union:\n";
  VsetId p = pair_set(store, one, two);
  std::cout << "  {1, 2} = " << to_literal(store, p.mset()) << "\n";
  std::cout << "  union {1, 2} = "
            << to_literal(store, union_set(store, p).mset()) << "\n";

  std::cout << "\nordered pairs decode:\n";
  VsetId op = ordered_pair(store, zero, one);
  auto dec = decode_pair(store, op);
  std::cout << "  <0, 1> = " << to_literal(store, op.mset()) << "\n";
  std::cout << "  decoded first  = " << to_literal(store, dec->first.mset())
            << "\n";
  std::cout << "  decoded second = " << to_literal(store, dec->second.mset())
            << "\n";

  std::cout << "\nfunction space 2 -> 2 has "
            << elements(store, exp_set(store, two, two)).size()
            << " elements\n";

  std::cout << "\nmultisets at the certification boundary:\n";
  MsetId bag = parse_mset_literal(store, "{{},{}}");
  std::cout << "  {{},{}} is set-like? "
            << (store.is_itset(bag) ? "yes" : "no") << "\n";
  std::cout << "  its image: "
            << to_literal(store, iterative_image(store, bag).mset()) << "\n";
  return 0;
}
