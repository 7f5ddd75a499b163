#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "itsets/errors.hpp"

namespace itsets {

enum class FormulaKind {
  Bot,
  Top,
  Member,   // lhs in rhs
  Equal,    // lhs = rhs
  Pred,     // name(args...)
  And,
  Or,
  Implies,
  Forall,   // name bound in kids[0]
  Exists,
};

// First-order AST over ∈ and =. Negation and bounded quantifiers are
// surface sugar (~p is p -> bot; "forall x in y. p" bounds with an
// implication, "exists" with a conjunction), desugared at parse time, so
// the printer emits only core connectives and parse∘print is identity.
struct Formula {
  FormulaKind kind = FormulaKind::Bot;
  std::string name;               // quantifiers: bound variable; Pred: symbol
  std::string lhs, rhs;           // Member/Equal operand variables
  std::vector<std::string> args;  // Pred argument variables
  std::vector<Formula> kids;      // And/Or/Implies: 2; quantifiers: 1

  bool operator==(const Formula& o) const {
    return kind == o.kind && name == o.name && lhs == o.lhs && rhs == o.rhs &&
           args == o.args && kids == o.kids;
  }
  bool operator!=(const Formula& o) const { return !(*this == o); }
};

inline Formula f_bot() { return {}; }
inline Formula f_top() {
  Formula f;
  f.kind = FormulaKind::Top;
  return f;
}
inline Formula f_member(std::string x, std::string y) {
  Formula f;
  f.kind = FormulaKind::Member;
  f.lhs = std::move(x);
  f.rhs = std::move(y);
  return f;
}
inline Formula f_equal(std::string x, std::string y) {
  Formula f;
  f.kind = FormulaKind::Equal;
  f.lhs = std::move(x);
  f.rhs = std::move(y);
  return f;
}
inline Formula f_pred(std::string name, std::vector<std::string> args) {
  Formula f;
  f.kind = FormulaKind::Pred;
  f.name = std::move(name);
  f.args = std::move(args);
  return f;
}
inline Formula f_binary(FormulaKind k, Formula a, Formula b) {
  Formula f;
  f.kind = k;
  f.kids.push_back(std::move(a));
  f.kids.push_back(std::move(b));
  return f;
}
inline Formula f_and(Formula a, Formula b) {
  return f_binary(FormulaKind::And, std::move(a), std::move(b));
}
inline Formula f_or(Formula a, Formula b) {
  return f_binary(FormulaKind::Or, std::move(a), std::move(b));
}
inline Formula f_implies(Formula a, Formula b) {
  return f_binary(FormulaKind::Implies, std::move(a), std::move(b));
}
inline Formula f_not(Formula a) { return f_implies(std::move(a), f_bot()); }
inline Formula f_quant(FormulaKind k, std::string var, Formula body) {
  Formula f;
  f.kind = k;
  f.name = std::move(var);
  f.kids.push_back(std::move(body));
  return f;
}
inline Formula f_forall(std::string var, Formula body) {
  return f_quant(FormulaKind::Forall, std::move(var), std::move(body));
}
inline Formula f_exists(std::string var, Formula body) {
  return f_quant(FormulaKind::Exists, std::move(var), std::move(body));
}
// z ∈ x ↔ z ∈ y spelled out, since ↔ is not a connective of the language
inline Formula f_iff(Formula a, Formula b) {
  Formula a2 = a, b2 = b;
  return f_and(f_implies(std::move(a), std::move(b)),
               f_implies(std::move(b2), std::move(a2)));
}

namespace detail {

inline void collect_free(const Formula& f, std::set<std::string>& bound,
                         std::set<std::string>& out) {
  auto visit_var = [&](const std::string& v) {
    if (!bound.count(v)) out.insert(v);
  };
  switch (f.kind) {
    case FormulaKind::Bot:
    case FormulaKind::Top:
      return;
    case FormulaKind::Member:
    case FormulaKind::Equal:
      visit_var(f.lhs);
      visit_var(f.rhs);
      return;
    case FormulaKind::Pred:
      for (const auto& a : f.args) visit_var(a);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      collect_free(f.kids[0], bound, out);
      collect_free(f.kids[1], bound, out);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      bool inserted = bound.insert(f.name).second;
      collect_free(f.kids[0], bound, out);
      if (inserted) bound.erase(f.name);
      return;
    }
  }
}

}  // namespace detail

inline std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  detail::collect_free(f, bound, out);
  return out;
}

// Renames free occurrences of `from` to `to`. `to` must itself be fresh
// (not bound anywhere along a path with a free `from`), or the rename
// would capture; that misuse throws.
inline Formula rename_free(const Formula& f, const std::string& from,
                           const std::string& to) {
  Formula out = f;
  auto fix = [&](std::string& v) {
    if (v == from) v = to;
  };
  switch (f.kind) {
    case FormulaKind::Bot:
    case FormulaKind::Top:
      return out;
    case FormulaKind::Member:
    case FormulaKind::Equal:
      fix(out.lhs);
      fix(out.rhs);
      return out;
    case FormulaKind::Pred:
      for (auto& a : out.args) fix(a);
      return out;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      out.kids[0] = rename_free(f.kids[0], from, to);
      out.kids[1] = rename_free(f.kids[1], from, to);
      return out;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      if (f.name == from) return out;  // shadowed; nothing free below
      if (f.name == to && free_vars(f.kids[0]).count(from))
        throw eval_error("renaming " + from + " to " + to +
                         " would be captured by a binder");
      out.kids[0] = rename_free(f.kids[0], from, to);
      return out;
  }
  return out;
}

namespace detail {

enum class Tok {
  Ident,
  LParen,
  RParen,
  Comma,
  Dot,
  Equals,
  Tilde,
  AndOp,
  OrOp,
  Arrow,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

inline std::vector<Token> lex_formula(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (is_ident_start(c)) {
      while (i < text.size() && is_ident_char(text[i])) ++i;
      out.push_back({Tok::Ident, std::string(text.substr(start, i - start)),
                     start});
      continue;
    }
    switch (c) {
      case '(':
        out.push_back({Tok::LParen, "(", start});
        ++i;
        continue;
      case ')':
        out.push_back({Tok::RParen, ")", start});
        ++i;
        continue;
      case ',':
        out.push_back({Tok::Comma, ",", start});
        ++i;
        continue;
      case '.':
        out.push_back({Tok::Dot, ".", start});
        ++i;
        continue;
      case '=':
        out.push_back({Tok::Equals, "=", start});
        ++i;
        continue;
      case '~':
        out.push_back({Tok::Tilde, "~", start});
        ++i;
        continue;
      case '/':
        if (i + 1 < text.size() && text[i + 1] == '\\') {
          out.push_back({Tok::AndOp, "/\\", start});
          i += 2;
          continue;
        }
        throw syntax_error("stray '/'", start);
      case '\\':
        if (i + 1 < text.size() && text[i + 1] == '/') {
          out.push_back({Tok::OrOp, "\\/", start});
          i += 2;
          continue;
        }
        throw syntax_error("stray '\\'", start);
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Tok::Arrow, "->", start});
          i += 2;
          continue;
        }
        throw syntax_error("stray '-'", start);
      default:
        throw syntax_error(std::string("unexpected character '") + c + "'",
                           start);
    }
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

inline bool is_keyword(const std::string& s) {
  return s == "bot" || s == "top" || s == "in" || s == "forall" ||
         s == "exists";
}

class FormulaParser {
public:
  explicit FormulaParser(std::string_view text)
      : tokens_(lex_formula(text)) {}

  Formula parse() {
    Formula f = parse_formula();
    expect(Tok::End, "trailing input after formula");
    return f;
  }

private:
  const Token& peek() const { return tokens_[i_]; }
  Token take() { return tokens_[i_++]; }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) throw syntax_error(what, peek().pos);
    ++i_;
  }

  std::string take_var() {
    const Token& t = peek();
    if (t.kind != Tok::Ident)
      throw syntax_error("expected a variable name", t.pos);
    if (is_keyword(t.text))
      throw syntax_error("'" + t.text + "' is a keyword, not a variable",
                         t.pos);
    ++i_;
    return t.text;
  }

  Formula parse_formula() { return parse_implies(); }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (peek().kind == Tok::Arrow) {
      ++i_;
      return f_implies(std::move(lhs), parse_implies());  // right-assoc
    }
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (peek().kind == Tok::OrOp) {
      ++i_;
      f = f_or(std::move(f), parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (peek().kind == Tok::AndOp) {
      ++i_;
      f = f_and(std::move(f), parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    if (peek().kind == Tok::Tilde) {
      ++i_;
      return f_not(parse_unary());
    }
    if (peek().kind == Tok::Ident &&
        (peek().text == "forall" || peek().text == "exists"))
      return parse_quant();
    return parse_atom();
  }

  Formula parse_quant() {
    Token q = take();
    bool universal = q.text == "forall";
    std::string var = take_var();
    // bounded sugar: forall x in y. p / exists x in y. p
    if (peek().kind == Tok::Ident && peek().text == "in") {
      ++i_;
      std::string bound = take_var();
      expect(Tok::Dot, "expected '.' after quantifier");
      Formula body = parse_formula();
      Formula guard = f_member(var, bound);
      Formula inner = universal
                          ? f_implies(std::move(guard), std::move(body))
                          : f_and(std::move(guard), std::move(body));
      return f_quant(universal ? FormulaKind::Forall : FormulaKind::Exists,
                     std::move(var), std::move(inner));
    }
    expect(Tok::Dot, "expected '.' after quantifier");
    return f_quant(universal ? FormulaKind::Forall : FormulaKind::Exists,
                   std::move(var), parse_formula());
  }

  Formula parse_atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      ++i_;
      Formula f = parse_formula();
      expect(Tok::RParen, "expected ')'");
      return f;
    }
    if (t.kind != Tok::Ident)
      throw syntax_error("expected a formula", t.pos);
    if (t.text == "bot") {
      ++i_;
      return f_bot();
    }
    if (t.text == "top") {
      ++i_;
      return f_top();
    }
    if (is_keyword(t.text))
      throw syntax_error("'" + t.text + "' cannot start a formula", t.pos);
    std::string first = take().text;
    if (peek().kind == Tok::LParen) {  // predicate symbol
      ++i_;
      std::vector<std::string> args;
      args.push_back(take_var());
      while (peek().kind == Tok::Comma) {
        ++i_;
        args.push_back(take_var());
      }
      expect(Tok::RParen, "expected ')' after predicate arguments");
      return f_pred(std::move(first), std::move(args));
    }
    if (peek().kind == Tok::Ident && peek().text == "in") {
      ++i_;
      return f_member(std::move(first), take_var());
    }
    if (peek().kind == Tok::Equals) {
      ++i_;
      return f_equal(std::move(first), take_var());
    }
    throw syntax_error("expected 'in', '=', or '(' after '" + first + "'",
                       peek().pos);
  }

  std::vector<Token> tokens_;
  std::size_t i_ = 0;
};

// A formula "extends to the end of its printing" when its rightmost
// descent ends in a quantifier, whose body would otherwise swallow
// whatever follows.
inline bool right_open(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return true;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      return right_open(f.kids[1]);
    default:
      return false;
  }
}

inline int print_level(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Implies:
      return 1;
    case FormulaKind::Or:
      return 2;
    case FormulaKind::And:
      return 3;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return 4;
    default:
      return 5;  // atoms
  }
}

// min_level: weakest binding strength printable here without parens.
// tail: whether the printed text runs to the end of the enclosing unit
// (so a right-open formula can't capture a following operand).
inline void print_formula_rec(const Formula& f, int min_level, bool tail,
                              std::string& out) {
  bool parens = print_level(f) < min_level || (!tail && right_open(f));
  if (parens) {
    out += '(';
    min_level = 1;
    tail = true;
  }
  switch (f.kind) {
    case FormulaKind::Bot:
      out += "bot";
      break;
    case FormulaKind::Top:
      out += "top";
      break;
    case FormulaKind::Member:
      out += f.lhs + " in " + f.rhs;
      break;
    case FormulaKind::Equal:
      out += f.lhs + " = " + f.rhs;
      break;
    case FormulaKind::Pred: {
      out += f.name + "(";
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) out += ",";
        out += f.args[i];
      }
      out += ")";
      break;
    }
    case FormulaKind::And:
      print_formula_rec(f.kids[0], 3, false, out);
      out += " /\\ ";
      print_formula_rec(f.kids[1], 4, tail, out);
      break;
    case FormulaKind::Or:
      print_formula_rec(f.kids[0], 2, false, out);
      out += " \\/ ";
      print_formula_rec(f.kids[1], 3, tail, out);
      break;
    case FormulaKind::Implies:
      print_formula_rec(f.kids[0], 2, false, out);
      out += " -> ";
      print_formula_rec(f.kids[1], 1, tail, out);
      break;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      out += (f.kind == FormulaKind::Forall ? "forall " : "exists ");
      out += f.name + ". ";
      print_formula_rec(f.kids[0], 1, true, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace detail

inline Formula parse_formula(std::string_view text) {
  return detail::FormulaParser(text).parse();
}

inline std::string print_formula(const Formula& f) {
  std::string out;
  detail::print_formula_rec(f, 1, true, out);
  return out;
}

}  // namespace itsets
