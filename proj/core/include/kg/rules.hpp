#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "kg/graph.hpp"
#include "kg/pattern.hpp"

namespace kg {

// An if-then rule over basic graph patterns: whenever the body matches, the
// head holds under the same variable bindings. Safety (every head variable
// occurs in the body) keeps rule application finite; there is no value
// invention.
struct Rule {
  Bgp body;
  Bgp head;
};

// Throws unless r is safe and its head is nonempty.
void validate_rule(const Rule& r);

struct RuleSet {
  std::string name;
  std::vector<Rule> rules;
};

// Union of head instantiations over all body matches. The result contains
// only derived edges; it need not overlap g.
Graph apply_rule(const Graph& g, const Rule& r);

// Smallest graph containing g and closed under every rule. Derivation is
// delta-driven: each round only re-evaluates rule bodies around edges added
// in the previous round. threads > 1 splits the rules of a round across
// workers; the result is a set union either way.
Graph least_model(const Graph& g, const RuleSet& rs, unsigned threads = 1);

// Reference fixpoint that re-derives everything each round. Slow; used to
// cross-check least_model on small graphs.
Graph least_model_naive(const Graph& g, const RuleSet& rs);

// Built-in rule libraries.
//   rdfs        subclass, subproperty (each with transitivity), domain, range
//   owl-subset  rdfs plus inverse, property/class equivalence, symmetric,
//               transitive, chain (flattened to chain1/chain2 edges), and
//               functional/inverse-functional "same as" derivation
RuleSet builtin_ruleset(std::string_view name);

// True iff every node, label and edge of g2 appears in least_model(g1, rs).
// g2 must be ground: existential (`_:`-prefixed) nodes are rejected.
bool entails_ground(const Graph& g1, const Graph& g2, const RuleSet& rs);

// One match of a negatively-conditioned ontology feature in the materialized
// graph. witnesses holds the concrete edges that together break the
// condition, sorted and deduplicated.
struct Violation {
  std::string feature;
  std::vector<std::array<std::string, 3>> witnesses;

  bool operator==(const Violation&) const = default;
  auto operator<=>(const Violation&) const = default;
};

// Materializes g with rs, then reports every violation of: disjoint classes,
// disjoint properties, asymmetric and irreflexive properties, reified
// negation assertions whose positive edge holds, and complement classes with
// a shared instance.
std::vector<Violation> check_consistency(const Graph& g, const RuleSet& rs);

std::string to_violations_tsv(const std::vector<Violation>& violations);

// Rule text grammar, one form per rule:
//
//   (rule (bgp (s p o)...) => (bgp (s p o)...))
//
// with ?name variables and double-quoted constants, as in query text.
Rule parse_rule(const struct Sexpr& form);
RuleSet parse_rules(std::string_view text, std::string name = "file");
std::string to_rule_string(const Rule& r);

}  // namespace kg
