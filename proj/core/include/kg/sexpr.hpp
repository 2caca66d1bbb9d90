#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kg {

// Minimal s-expression reader: atoms are bare symbols (no whitespace or
// parens) or double-quoted strings with \" and \\ escapes. Quoting is
// remembered so parsers can distinguish "type" (a constant) from type.
struct Sexpr {
  enum class Kind { Atom, List };
  Kind kind = Kind::List;
  std::string atom;      // Kind::Atom
  bool quoted = false;   // atom came from a "..." literal
  std::vector<Sexpr> items;  // Kind::List

  bool is_atom() const { return kind == Kind::Atom; }
  bool is_list() const { return kind == Kind::List; }
  bool is_symbol(std::string_view s) const { return is_atom() && !quoted && atom == s; }
  const Sexpr& operator[](std::size_t i) const { return items[i]; }
  std::size_t size() const { return items.size(); }
};

// Parses exactly one s-expression (surrounding whitespace and ;-comments
// allowed); trailing content is an error.
Sexpr parse_sexpr(std::string_view text);

// Parses a sequence of top-level s-expressions.
std::vector<Sexpr> parse_sexpr_list(std::string_view text);

std::string to_string(const Sexpr& e);

}  // namespace kg
