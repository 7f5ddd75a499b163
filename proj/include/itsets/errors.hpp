#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace itsets {

// Base class for every error thrown by this library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (multiset literal or formula).
// `position` is a 0-based byte offset into the input; messages report it
// as a 1-based column.
class syntax_error : public error {
public:
  syntax_error(const std::string& msg, std::size_t pos)
      : error(msg + " at column " + std::to_string(pos + 1)), position(pos) {}
  std::size_t position;
};

// A configured cap was exceeded (element count, count digits, ...).
class resource_limit : public error {
public:
  using error::error;
};

// A multiset failed the hereditary set-likeness check. `path` holds raw
// node ids from the root down to the first node with a repeated child.
class not_set_like : public error {
public:
  not_set_like(const std::string& msg, std::vector<std::uint32_t> p)
      : error(msg), path(std::move(p)) {}
  std::vector<std::uint32_t> path;
};

// Witness-map errors.
class domain_mismatch : public error {
public:
  using error::error;
};
class codomain_violation : public error {
public:
  using error::error;
};
class no_witness : public error {
public:
  using error::error;
};
class not_unique : public error {
public:
  using error::error;
};

class unknown_axiom : public error {
public:
  using error::error;
};

// Ill-scoped formula, unbound predicate symbol, arity mismatch.
class eval_error : public error {
public:
  using error::error;
};

}  // namespace itsets
