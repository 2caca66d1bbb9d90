#include <utility>

#include "kg/error.hpp"
#include "kg/query_parser.hpp"
#include "kg/rules.hpp"
#include "kg/sexpr.hpp"

namespace kg {

namespace {

Bgp parse_bgp_form(const Sexpr& e) {
  if (!e.is_list() || e.size() < 2 || !e[0].is_symbol("bgp"))
    fail("rule: expected (bgp (s p o)...)");
  Bgp out;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const Sexpr& t = e[i];
    if (!t.is_list() || t.size() != 3) fail("rule: each triple must be (s p o)");
    out.push_back({parse_term_atom(t[0]), parse_term_atom(t[1]), parse_term_atom(t[2])});
  }
  return out;
}

Sexpr symbol(std::string text) {
  Sexpr a;
  a.kind = Sexpr::Kind::Atom;
  a.atom = std::move(text);
  return a;
}

Sexpr term_atom(const Term& t) {
  Sexpr a;
  a.kind = Sexpr::Kind::Atom;
  if (t.is_var()) {
    a.atom = "?" + t.text;
  } else {
    a.atom = t.text;
    a.quoted = true;
  }
  return a;
}

Sexpr bgp_form(const Bgp& q) {
  Sexpr list;
  list.items.push_back(symbol("bgp"));
  for (const TriplePattern& t : q) {
    Sexpr triple;
    triple.items = {term_atom(t.s), term_atom(t.p), term_atom(t.o)};
    list.items.push_back(std::move(triple));
  }
  return list;
}

}  // namespace

Rule parse_rule(const Sexpr& form) {
  if (!form.is_list() || form.size() != 4 || !form[0].is_symbol("rule") ||
      !form[2].is_symbol("=>"))
    fail("rule: expected (rule (bgp ...) => (bgp ...))");
  Rule r{parse_bgp_form(form[1]), parse_bgp_form(form[3])};
  validate_rule(r);
  return r;
}

RuleSet parse_rules(std::string_view text, std::string name) {
  RuleSet rs{std::move(name), {}};
  for (const Sexpr& form : parse_sexpr_list(text)) rs.rules.push_back(parse_rule(form));
  return rs;
}

std::string to_rule_string(const Rule& r) {
  Sexpr form;
  form.items = {symbol("rule"), bgp_form(r.body), symbol("=>"), bgp_form(r.head)};
  return to_string(form);
}

}  // namespace kg
