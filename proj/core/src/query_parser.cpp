#include "kg/query_parser.hpp"

#include "kg/error.hpp"
#include "kg/sexpr.hpp"

namespace kg {

Term parse_term_atom(const Sexpr& atom) {
  if (!atom.is_atom()) fail("query: expected ?variable or \"constant\", got a list");
  if (atom.quoted) return Term::constant(atom.atom);
  if (atom.atom.size() > 1 && atom.atom[0] == '?')
    return Term::var(atom.atom.substr(1));
  fail("query: expected ?variable or \"constant\", got '" + atom.atom + "'");
}

namespace {

PathExpr parse_path(const Sexpr& e) {
  if (e.is_atom()) {
    if (!e.quoted) fail("path: labels must be double-quoted, got '" + e.atom + "'");
    return PathExpr::make_label(e.atom);
  }
  if (e.size() == 0 || !e[0].is_atom() || e[0].quoted)
    fail("path: expected (inv p), (star p), (seq p1 p2) or (alt p1 p2)");
  const std::string& head = e[0].atom;
  if (head == "inv") {
    if (e.size() != 2) fail("path: (inv p) expects one operand");
    return PathExpr::inverse(parse_path(e[1]));
  }
  if (head == "star") {
    if (e.size() != 2) fail("path: (star p) expects one operand");
    return PathExpr::star(parse_path(e[1]));
  }
  if (head == "seq") {
    if (e.size() != 3) fail("path: (seq p1 p2) expects two operands");
    return PathExpr::sequence(parse_path(e[1]), parse_path(e[2]));
  }
  if (head == "alt") {
    if (e.size() != 3) fail("path: (alt p1 p2) expects two operands");
    return PathExpr::alternation(parse_path(e[1]), parse_path(e[2]));
  }
  fail("path: unknown operator '" + head + "'");
}

Condition parse_condition(const Sexpr& e) {
  if (!e.is_list() || e.size() == 0 || !e[0].is_atom() || e[0].quoted)
    fail("filter: expected (= ...), (and ...), (or ...) or (not ...)");
  const std::string& head = e[0].atom;
  if (head == "=") {
    if (e.size() != 3) fail("filter: (= t1 t2) expects two terms");
    return Condition::eq(parse_term_atom(e[1]), parse_term_atom(e[2]));
  }
  if (head == "and") {
    if (e.size() != 3) fail("filter: (and c1 c2) expects two conditions");
    return Condition::conj(parse_condition(e[1]), parse_condition(e[2]));
  }
  if (head == "or") {
    if (e.size() != 3) fail("filter: (or c1 c2) expects two conditions");
    return Condition::disj(parse_condition(e[1]), parse_condition(e[2]));
  }
  if (head == "not") {
    if (e.size() != 2) fail("filter: (not c) expects one condition");
    return Condition::neg(parse_condition(e[1]));
  }
  fail("filter: unknown operator '" + head + "'");
}

Bgp parse_bgp_triples(const Sexpr& e, std::size_t from) {
  Bgp bgp;
  if (e.size() == from) fail("bgp: expected at least one (s p o) triple");
  for (std::size_t i = from; i < e.size(); ++i) {
    const Sexpr& t = e[i];
    if (!t.is_list() || t.size() != 3) fail("bgp: each triple must be (s p o)");
    bgp.push_back({parse_term_atom(t[0]), parse_term_atom(t[1]), parse_term_atom(t[2])});
  }
  return bgp;
}

AlgebraPtr parse_expr(const Sexpr& e) {
  if (!e.is_list() || e.size() == 0 || !e[0].is_atom() || e[0].quoted)
    fail("query: expected an operator list");
  const std::string& head = e[0].atom;
  if (head == "bgp") return make_bgp(parse_bgp_triples(e, 1));
  if (head == "project") {
    if (e.size() != 3 || !e[1].is_list()) fail("query: (project (?v ...) e)");
    std::vector<std::string> vars;
    for (const Sexpr& v : e[1].items) {
      Term t = parse_term_atom(v);
      if (!t.is_var()) fail("project: expected variables");
      vars.push_back(t.text);
    }
    return make_project(std::move(vars), parse_expr(e[2]));
  }
  if (head == "filter") {
    if (e.size() != 3) fail("query: (filter c e)");
    return make_select(parse_condition(e[1]), parse_expr(e[2]));
  }
  auto binary = [&](auto maker) {
    if (e.size() != 3) fail("query: (" + head + " e1 e2)");
    return maker(parse_expr(e[1]), parse_expr(e[2]));
  };
  if (head == "join") return binary(make_join);
  if (head == "union") return binary(make_union);
  if (head == "minus") return binary(make_minus);
  if (head == "antijoin") return binary(make_antijoin);
  if (head == "optional") return binary(make_leftjoin);
  if (head == "path") {
    if (e.size() != 4) fail("query: (path x pexpr y)");
    return make_path_atom(parse_term_atom(e[1]), parse_path(e[2]), parse_term_atom(e[3]));
  }
  fail("query: unknown operator '" + head + "'");
}

Sexpr atom(std::string text, bool quoted) {
  Sexpr a;
  a.kind = Sexpr::Kind::Atom;
  a.atom = std::move(text);
  a.quoted = quoted;
  return a;
}

Sexpr term_sexpr(const Term& t) {
  if (t.is_var()) return atom("?" + t.text, false);
  return atom(t.text, true);
}

Sexpr path_sexpr(const PathExpr& p) {
  switch (p.kind) {
    case PathExpr::Kind::Label:
      return atom(p.label, true);
    case PathExpr::Kind::Inverse: {
      Sexpr l;
      l.items = {atom("inv", false), path_sexpr(p.children[0])};
      return l;
    }
    case PathExpr::Kind::Star: {
      Sexpr l;
      l.items = {atom("star", false), path_sexpr(p.children[0])};
      return l;
    }
    case PathExpr::Kind::Sequence: {
      Sexpr l;
      l.items = {atom("seq", false), path_sexpr(p.children[0]), path_sexpr(p.children[1])};
      return l;
    }
    case PathExpr::Kind::Alternation: {
      Sexpr l;
      l.items = {atom("alt", false), path_sexpr(p.children[0]), path_sexpr(p.children[1])};
      return l;
    }
  }
  fail("path: unknown expression kind");
}

Sexpr condition_sexpr(const Condition& c) {
  Sexpr l;
  switch (c.kind) {
    case Condition::Kind::Eq:
      l.items = {atom("=", false), term_sexpr(c.lhs), term_sexpr(c.rhs)};
      return l;
    case Condition::Kind::And:
      l.items = {atom("and", false), condition_sexpr(c.children[0]),
                 condition_sexpr(c.children[1])};
      return l;
    case Condition::Kind::Or:
      l.items = {atom("or", false), condition_sexpr(c.children[0]),
                 condition_sexpr(c.children[1])};
      return l;
    case Condition::Kind::Not:
      l.items = {atom("not", false), condition_sexpr(c.children[0])};
      return l;
  }
  fail("filter: unknown condition kind");
}

Sexpr expr_sexpr(const AlgebraExpr& e) {
  Sexpr l;
  switch (e.kind) {
    case AlgebraExpr::Kind::BasePattern: {
      l.items.push_back(atom("bgp", false));
      for (const TriplePattern& t : e.bgp) {
        Sexpr triple;
        triple.items = {term_sexpr(t.s), term_sexpr(t.p), term_sexpr(t.o)};
        l.items.push_back(std::move(triple));
      }
      return l;
    }
    case AlgebraExpr::Kind::Project: {
      Sexpr vars;
      for (const std::string& v : e.project_vars) vars.items.push_back(atom("?" + v, false));
      l.items = {atom("project", false), std::move(vars), expr_sexpr(*e.left)};
      return l;
    }
    case AlgebraExpr::Kind::Select:
      l.items = {atom("filter", false), condition_sexpr(e.condition), expr_sexpr(*e.left)};
      return l;
    case AlgebraExpr::Kind::Join:
    case AlgebraExpr::Kind::Union:
    case AlgebraExpr::Kind::Minus:
    case AlgebraExpr::Kind::AntiJoin:
    case AlgebraExpr::Kind::LeftJoin: {
      const char* name = e.kind == AlgebraExpr::Kind::Join       ? "join"
                         : e.kind == AlgebraExpr::Kind::Union    ? "union"
                         : e.kind == AlgebraExpr::Kind::Minus    ? "minus"
                         : e.kind == AlgebraExpr::Kind::AntiJoin ? "antijoin"
                                                                 : "optional";
      l.items = {atom(name, false), expr_sexpr(*e.left), expr_sexpr(*e.right)};
      return l;
    }
    case AlgebraExpr::Kind::PathAtom:
      l.items = {atom("path", false), term_sexpr(e.x), path_sexpr(e.path),
                 term_sexpr(e.y)};
      return l;
  }
  fail("query: unknown expression kind");
}

}  // namespace

AlgebraPtr parse_query(std::string_view text) {
  AlgebraPtr e = parse_expr(parse_sexpr(text));
  check_algebra(*e);
  return e;
}

std::string to_query_string(const AlgebraExpr& e) { return to_string(expr_sexpr(e)); }

}  // namespace kg
