#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "itsets/errors.hpp"
#include "itsets/mset.hpp"

namespace itsets {

namespace detail {

class LiteralParser {
public:
  LiteralParser(Store& store, std::string_view text)
      : store_(store), text_(text) {}

  MsetId parse() {
    skip_ws();
    MsetId root = parse_node();
    skip_ws();
    if (pos_ != text_.size())
      throw syntax_error("trailing input after multiset literal", pos_);
    return root;
  }

private:
  MsetId parse_node() {
    if (pos_ >= text_.size() || text_[pos_] != '{')
      throw syntax_error("expected '{'", pos_);
    ++pos_;
    std::vector<MsetId> children;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '}') {
      ++pos_;
      return store_.empty_mset();
    }
    while (true) {
      children.push_back(parse_node());
      skip_ws();
      if (pos_ >= text_.size())
        throw syntax_error("unterminated multiset literal", pos_);
      if (text_[pos_] == ',') {
        ++pos_;
        skip_ws();
        continue;
      }
      if (text_[pos_] == '}') {
        ++pos_;
        return store_.mk_sup(children);
      }
      throw syntax_error("expected ',' or '}'", pos_);
    }
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  Store& store_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses a braces-and-commas multiset literal such as "{{},{{}},{}}".
// Order and repetition of children are significant as a bag: "{{},{}}"
// has the empty multiset twice.
inline MsetId parse_mset_literal(Store& store, std::string_view text) {
  return detail::LiteralParser(store, text).parse();
}

// Canonical literal: children sorted by interned id, repeated per
// multiplicity. Parsing the result reproduces the same node.
inline std::string to_literal(const Store& store, MsetId x) {
  std::string out;
  // iterative: (node, next child slot) so deep nests don't blow the stack
  struct Frame {
    MsetId node;
    std::size_t flat_index;  // index into the expanded child sequence
  };
  std::vector<Frame> stack = {{x, 0}};
  auto flat_size = [&](MsetId node) {
    std::uint64_t n = 0;
    for (const auto& [id, mult] : store.children_of(node)) n += mult;
    return n;
  };
  auto flat_child = [&](MsetId node, std::uint64_t i) {
    for (const auto& [id, mult] : store.children_of(node)) {
      if (i < mult) return id;
      i -= mult;
    }
    throw error("child index out of range");
  };
  while (!stack.empty()) {
    Frame& f = stack.back();
    std::uint64_t n = flat_size(f.node);
    if (f.flat_index == 0) out += '{';
    if (f.flat_index == n) {
      out += '}';
      stack.pop_back();
      continue;
    }
    if (f.flat_index > 0) out += ',';
    MsetId child = flat_child(f.node, f.flat_index);
    ++f.flat_index;
    stack.push_back({child, 0});
  }
  return out;
}

// Structure-sharing JSON export. Nodes are listed children-first (every
// child id precedes its parents), each as {"id": n, "children":
// [[child_id, multiplicity], ...]}, with the designated root at "root".
inline nlohmann::json mset_to_json(const Store& store, MsetId root) {
  // collect reachable ids; interning order already topologically sorts them
  std::vector<std::uint32_t> reachable;
  std::vector<std::uint32_t> stack = {root.value};
  std::vector<bool> seen;
  auto mark = [&](std::uint32_t id) {
    if (id >= seen.size()) seen.resize(id + 1, false);
    if (seen[id]) return false;
    seen[id] = true;
    return true;
  };
  mark(root.value);
  while (!stack.empty()) {
    std::uint32_t id = stack.back();
    stack.pop_back();
    reachable.push_back(id);
    for (const auto& [child, mult] : store.children_of(MsetId{id}))
      if (mark(child.value)) stack.push_back(child.value);
  }
  std::sort(reachable.begin(), reachable.end());
  nlohmann::json nodes = nlohmann::json::array();
  for (std::uint32_t id : reachable) {
    nlohmann::json children = nlohmann::json::array();
    for (const auto& [child, mult] : store.children_of(MsetId{id}))
      children.push_back({child.value, mult});
    nodes.push_back({{"id", id}, {"children", std::move(children)}});
  }
  return {{"nodes", std::move(nodes)}, {"root", root.value}};
}

// Inverse of mset_to_json up to extensional equality: reconstructs the
// rooted dag in a (possibly different) store.
inline MsetId mset_from_json(Store& store, const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("root"))
    throw error("multiset json needs \"nodes\" and \"root\"");
  std::unordered_map<std::uint64_t, MsetId> remap;
  for (const auto& node : doc.at("nodes")) {
    ChildBag bag;
    for (const auto& entry : node.at("children")) {
      auto it = remap.find(entry.at(0).get<std::uint64_t>());
      if (it == remap.end())
        throw error("multiset json child precedes its definition");
      bag.emplace_back(it->second, entry.at(1).get<std::uint64_t>());
    }
    std::uint64_t id = node.at("id").get<std::uint64_t>();
    if (!remap.emplace(id, store.mk_sup_bag(std::move(bag))).second)
      throw error("multiset json repeats node id " + std::to_string(id));
  }
  auto it = remap.find(doc.at("root").get<std::uint64_t>());
  if (it == remap.end()) throw error("multiset json root is not a node");
  return it->second;
}

}  // namespace itsets
