#include "kg/rules.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <utility>

#include "kg/error.hpp"

namespace kg {

namespace {

Term v(const char* name) { return Term::var(name); }
Term c(const char* name) { return Term::constant(name); }

TriplePattern tp(Term s, Term p, Term o) {
  return {std::move(s), std::move(p), std::move(o)};
}

using EdgeNames = std::array<std::string, 3>;
using Binding = std::map<std::string, std::string>;

EdgeNames instantiate(const TriplePattern& t, const Binding& mu) {
  auto value = [&](const Term& term) -> const std::string& {
    return term.is_var() ? mu.at(term.text) : term.text;
  };
  return {value(t.s), value(t.p), value(t.o)};
}

// Extends sigma so that atom matches edge, or reports a clash.
bool unify(const TriplePattern& atom, const EdgeNames& edge, Binding& sigma) {
  const Term* terms[3] = {&atom.s, &atom.p, &atom.o};
  for (int i = 0; i < 3; ++i) {
    const Term& t = *terms[i];
    if (!t.is_var()) {
      if (t.text != edge[i]) return false;
      continue;
    }
    auto [it, fresh] = sigma.emplace(t.text, edge[i]);
    if (!fresh && it->second != edge[i]) return false;
  }
  return true;
}

TriplePattern substitute(const TriplePattern& t, const Binding& sigma) {
  auto sub = [&](const Term& term) {
    if (term.is_var()) {
      auto it = sigma.find(term.text);
      if (it != sigma.end()) return Term::constant(it->second);
    }
    return term;
  };
  return {sub(t.s), sub(t.p), sub(t.o)};
}

Graph graph_over(const std::set<EdgeNames>& edges, const Graph& base) {
  return Graph::build({edges.begin(), edges.end()}, base.node_strings(),
                      base.label_strings());
}

// Derivations of r that use at least one delta edge in the body. The delta
// edge is tried at every body position; the remaining atoms are evaluated
// against the full graph.
void fire_rule(const Graph& full, const Rule& r, const std::vector<EdgeNames>& delta,
               std::set<EdgeNames>& out) {
  for (std::size_t i = 0; i < r.body.size(); ++i) {
    for (const EdgeNames& e : delta) {
      Binding sigma;
      if (!unify(r.body[i], e, sigma)) continue;
      Bgp rest;
      for (std::size_t j = 0; j < r.body.size(); ++j)
        if (j != i) rest.push_back(substitute(r.body[j], sigma));
      if (rest.empty()) {
        for (const TriplePattern& h : r.head) out.insert(instantiate(h, sigma));
        continue;
      }
      Table sols = eval_pattern(full, rest);
      for (const auto& row : sols.rows) {
        Binding mu = sigma;
        for (std::size_t k = 0; k < sols.vars.size(); ++k) mu[sols.vars[k]] = *row[k];
        for (const TriplePattern& h : r.head) out.insert(instantiate(h, mu));
      }
    }
  }
}

}  // namespace

void validate_rule(const Rule& r) {
  if (r.head.empty()) fail("rule has an empty head");
  std::vector<std::string> body_vars = bgp_vars(r.body);
  std::set<std::string> bound(body_vars.begin(), body_vars.end());
  for (const std::string& hv : bgp_vars(r.head))
    if (!bound.count(hv))
      fail("rule is unsafe: head variable ?" + hv + " does not occur in the body");
}

Graph apply_rule(const Graph& g, const Rule& r) {
  validate_rule(r);
  Table sols = eval_pattern(g, r.body);
  std::set<EdgeNames> out;
  for (const auto& row : sols.rows) {
    Binding mu;
    for (std::size_t i = 0; i < sols.vars.size(); ++i) mu[sols.vars[i]] = *row[i];
    for (const TriplePattern& h : r.head) out.insert(instantiate(h, mu));
  }
  return Graph::build({out.begin(), out.end()});
}

Graph least_model(const Graph& g, const RuleSet& rs, unsigned threads) {
  for (const Rule& r : rs.rules) validate_rule(r);

  std::vector<EdgeNames> base = g.edge_strings();
  std::set<EdgeNames> full(base.begin(), base.end());
  std::vector<EdgeNames> delta(full.begin(), full.end());

  // Rules with an empty body assert ground facts unconditionally.
  for (const Rule& r : rs.rules) {
    if (!r.body.empty()) continue;
    for (const TriplePattern& h : r.head) {
      EdgeNames e = instantiate(h, {});
      if (full.insert(e).second) delta.push_back(e);
    }
  }

  while (!delta.empty()) {
    Graph cur = graph_over(full, g);
    std::set<EdgeNames> derived;
    unsigned workers =
        std::min<unsigned>(std::max(threads, 1u), rs.rules.size() ? rs.rules.size() : 1);
    if (workers <= 1) {
      for (const Rule& r : rs.rules)
        if (!r.body.empty()) fire_rule(cur, r, delta, derived);
    } else {
      std::mutex merge_mu;
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          std::set<EdgeNames> local;
          for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= rs.rules.size()) break;
            if (!rs.rules[i].body.empty()) fire_rule(cur, rs.rules[i], delta, local);
          }
          std::lock_guard<std::mutex> lock(merge_mu);
          derived.merge(local);
        });
      }
      for (std::thread& t : pool) t.join();
    }
    delta.clear();
    for (const EdgeNames& e : derived)
      if (full.insert(e).second) delta.push_back(e);
  }
  return graph_over(full, g);
}

Graph least_model_naive(const Graph& g, const RuleSet& rs) {
  for (const Rule& r : rs.rules) validate_rule(r);
  std::vector<EdgeNames> base = g.edge_strings();
  std::set<EdgeNames> full(base.begin(), base.end());
  for (;;) {
    Graph cur = graph_over(full, g);
    std::size_t before = full.size();
    for (const Rule& r : rs.rules)
      for (const EdgeNames& e : apply_rule(cur, r).edge_strings()) full.insert(e);
    if (full.size() == before) return cur;
  }
}

RuleSet builtin_ruleset(std::string_view name) {
  RuleSet rdfs{"rdfs",
               {
                   {{tp(v("x"), c("type"), v("c")), tp(v("c"), c("subc. of"), v("d"))},
                    {tp(v("x"), c("type"), v("d"))}},
                   {{tp(v("c"), c("subc. of"), v("d")), tp(v("d"), c("subc. of"), v("e"))},
                    {tp(v("c"), c("subc. of"), v("e"))}},
                   {{tp(v("x"), v("p"), v("y")), tp(v("p"), c("subp. of"), v("q"))},
                    {tp(v("x"), v("q"), v("y"))}},
                   {{tp(v("p"), c("subp. of"), v("q")), tp(v("q"), c("subp. of"), v("r"))},
                    {tp(v("p"), c("subp. of"), v("r"))}},
                   {{tp(v("x"), v("p"), v("y")), tp(v("p"), c("domain"), v("c"))},
                    {tp(v("x"), c("type"), v("c"))}},
                   {{tp(v("x"), v("p"), v("y")), tp(v("p"), c("range"), v("c"))},
                    {tp(v("y"), c("type"), v("c"))}},
               }};
  if (name == "rdfs") return rdfs;
  if (name == "owl-subset") {
    RuleSet owl{"owl-subset", std::move(rdfs.rules)};
    std::vector<Rule> extra = {
        // inverse properties, both reading directions
        {{tp(v("x"), v("p"), v("y")), tp(v("p"), c("inv. of"), v("q"))},
         {tp(v("y"), v("q"), v("x"))}},
        {{tp(v("x"), v("q"), v("y")), tp(v("p"), c("inv. of"), v("q"))},
         {tp(v("y"), v("p"), v("x"))}},
        // property equivalence, both directions
        {{tp(v("x"), v("p"), v("y")), tp(v("p"), c("equiv. p."), v("q"))},
         {tp(v("x"), v("q"), v("y"))}},
        {{tp(v("x"), v("q"), v("y")), tp(v("p"), c("equiv. p."), v("q"))},
         {tp(v("x"), v("p"), v("y"))}},
        // class equivalence, both directions
        {{tp(v("x"), c("type"), v("c")), tp(v("c"), c("equiv. c."), v("d"))},
         {tp(v("x"), c("type"), v("d"))}},
        {{tp(v("x"), c("type"), v("d")), tp(v("c"), c("equiv. c."), v("d"))},
         {tp(v("x"), c("type"), v("c"))}},
        {{tp(v("p"), c("type"), c("Symmetric")), tp(v("x"), v("p"), v("y"))},
         {tp(v("y"), v("p"), v("x"))}},
        {{tp(v("p"), c("type"), c("Transitive")), tp(v("x"), v("p"), v("y")),
          tp(v("y"), v("p"), v("z"))},
         {tp(v("x"), v("p"), v("z"))}},
        // property chains, flattened to two hops
        {{tp(v("p"), c("chain1"), v("q")), tp(v("p"), c("chain2"), v("r")),
          tp(v("x"), v("q"), v("y")), tp(v("y"), v("r"), v("z"))},
         {tp(v("x"), v("p"), v("z"))}},
        // multiplicity features only derive identity edges; nodes are never
        // merged
        {{tp(v("p"), c("type"), c("Functional")), tp(v("x"), v("p"), v("y1")),
          tp(v("x"), v("p"), v("y2"))},
         {tp(v("y1"), c("same as"), v("y2"))}},
        {{tp(v("p"), c("type"), c("Inv. Functional")), tp(v("x1"), v("p"), v("y")),
          tp(v("x2"), v("p"), v("y"))},
         {tp(v("x1"), c("same as"), v("x2"))}},
    };
    for (Rule& r : extra) owl.rules.push_back(std::move(r));
    return owl;
  }
  fail("unknown rule set '" + std::string(name) + "', expected rdfs or owl-subset");
}

bool entails_ground(const Graph& g1, const Graph& g2, const RuleSet& rs) {
  for (const std::string& n : g2.node_strings())
    if (n.rfind("_:", 0) == 0)
      fail("entailment target contains existential node '" + n +
           "'; only ground graphs are supported");
  return is_subgraph(g2, least_model(g1, rs));
}

std::vector<Violation> check_consistency(const Graph& g, const RuleSet& rs) {
  Graph m = least_model(g, rs);

  struct Check {
    const char* feature;
    Bgp body;
  };
  const std::vector<Check> checks = {
      {"disjoint-class",
       {tp(v("c"), c("disj. c."), v("d")), tp(v("x"), c("type"), v("c")),
        tp(v("x"), c("type"), v("d"))}},
      {"disjoint-property",
       {tp(v("p"), c("disj. p."), v("q")), tp(v("x"), v("p"), v("y")),
        tp(v("x"), v("q"), v("y"))}},
      {"asymmetric",
       {tp(v("p"), c("type"), c("Asymmetric")), tp(v("x"), v("p"), v("y")),
        tp(v("y"), v("p"), v("x"))}},
      {"irreflexive",
       {tp(v("p"), c("type"), c("Irreflexive")), tp(v("x"), v("p"), v("x"))}},
      {"negation-assertion",
       {tp(v("n"), c("type"), c("Neg")), tp(v("n"), c("sub"), v("x")),
        tp(v("n"), c("pre"), v("y")), tp(v("n"), c("obj"), v("z")),
        tp(v("x"), v("y"), v("z"))}},
      {"complement",
       {tp(v("c"), c("comp."), v("d")), tp(v("x"), c("type"), v("c")),
        tp(v("x"), c("type"), v("d"))}},
  };

  std::set<Violation> out;
  for (const Check& check : checks) {
    Table sols = eval_pattern(m, check.body);
    for (const auto& row : sols.rows) {
      Binding mu;
      for (std::size_t i = 0; i < sols.vars.size(); ++i) mu[sols.vars[i]] = *row[i];
      std::set<EdgeNames> witnesses;
      for (const TriplePattern& t : check.body) witnesses.insert(instantiate(t, mu));
      out.insert(Violation{check.feature, {witnesses.begin(), witnesses.end()}});
    }
  }
  return {out.begin(), out.end()};
}

std::string to_violations_tsv(const std::vector<Violation>& violations) {
  std::string out;
  for (std::size_t i = 0; i < violations.size(); ++i)
    for (const EdgeNames& w : violations[i].witnesses) {
      out += std::to_string(i + 1);
      out += '\t';
      out += violations[i].feature;
      for (const std::string& field : w) {
        out += '\t';
        out += field;
      }
      out += '\n';
    }
  return out;
}

}  // namespace kg
