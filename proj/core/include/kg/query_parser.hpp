#pragma once

#include <string_view>

#include "kg/algebra.hpp"

namespace kg {

// Query text grammar (s-expressions; variables are ?name atoms, constants
// are double-quoted):
//
//   e ::= (bgp (s p o)...)
//       | (project (?a ?b ...) e)
//       | (filter c e)
//       | (join e1 e2) | (union e1 e2) | (minus e1 e2)
//       | (antijoin e1 e2) | (optional e1 e2)
//       | (path x pexpr y)
//   c ::= (= t1 t2) | (and c1 c2) | (or c1 c2) | (not c)
//   pexpr ::= "label" | (inv p) | (star p) | (seq p1 p2) | (alt p1 p2)
//
// Static checks (projection/filter domains) run at parse time.
AlgebraPtr parse_query(std::string_view text);

// Serializes back to the grammar above (used for mined-rule output and
// round-trip tests).
std::string to_query_string(const AlgebraExpr& e);

Term parse_term_atom(const struct Sexpr& atom);

}  // namespace kg
