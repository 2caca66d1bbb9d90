#include "kg/pattern.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "kg/error.hpp"

namespace kg {

std::vector<std::string> bgp_vars(const Bgp& q) {
  std::set<std::string> vars;
  for (const TriplePattern& t : q)
    for (const Term* term : {&t.s, &t.p, &t.o})
      if (term->is_var()) vars.insert(term->text);
  return {vars.begin(), vars.end()};
}

std::optional<std::size_t> Table::column(const std::string& var) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == var) return i;
  return std::nullopt;
}

void Table::sort_rows() { std::sort(rows.begin(), rows.end()); }

void Table::dedupe() {
  sort_rows();
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

std::string to_tsv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.vars.size(); ++i) {
    if (i) out += '\t';
    out += t.vars[i];
  }
  out += '\n';
  auto rows = t.rows;
  std::sort(rows.begin(), rows.end());
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += '\t';
      if (row[i]) out += *row[i];
    }
    out += '\n';
  }
  return out;
}

namespace {

// Backtracking state for index-driven pattern matching.
struct Matcher {
  const Graph& g;
  const Bgp& q;
  MatchMode mode;
  std::map<std::string, TermId> binding;
  std::set<std::uint32_t> used_edges;
  std::map<TermId, int> value_uses;  // NodeEdgeIso: #vars bound to a value
  std::vector<bool> done;
  std::set<std::vector<TermId>> results;
  std::vector<std::string> vars;

  Matcher(const Graph& g, const Bgp& q, MatchMode mode)
      : g(g), q(q), mode(mode), done(q.size(), false), vars(bgp_vars(q)) {}

  // Candidate edge positions for a pattern under the current binding:
  // smallest applicable index, or all edges.
  std::vector<std::uint32_t> candidates(const TriplePattern& t) const {
    std::span<const std::uint32_t> best;
    bool have = false;
    auto consider = [&](const Term& term, auto index) {
      std::optional<TermId> id = resolve(term);
      if (!id && !term.is_var()) return false;   // constant absent from graph
      if (!id) return true;                      // unbound variable: no constraint
      auto span = (g.*index)(*id);
      if (!have || span.size() < best.size()) {
        best = span;
        have = true;
      }
      return true;
    };
    if (!consider(t.s, &Graph::by_subject)) return {};
    if (!consider(t.p, &Graph::by_predicate)) return {};
    if (!consider(t.o, &Graph::by_object)) return {};
    if (have) return {best.begin(), best.end()};
    std::vector<std::uint32_t> all(g.edge_count());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }

  std::optional<TermId> resolve(const Term& term) const {
    if (term.is_var()) {
      auto it = binding.find(term.text);
      if (it == binding.end()) return std::nullopt;
      return it->second;
    }
    return g.find(term.text);
  }

  std::size_t pick_next() const {
    std::size_t best = q.size(), best_count = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (done[i]) continue;
      std::size_t count = candidates(q[i]).size();
      if (best == q.size() || count < best_count) {
        best = i;
        best_count = count;
      }
    }
    return best;
  }

  bool bind(const Term& term, TermId value, std::vector<std::string>& bound) {
    if (!term.is_var()) return *g.find(term.text) == value;
    auto it = binding.find(term.text);
    if (it != binding.end()) return it->second == value;
    if (mode == MatchMode::NodeEdgeIso) {
      auto uses = value_uses.find(value);
      if (uses != value_uses.end() && uses->second > 0) return false;
      value_uses[value]++;
    }
    binding.emplace(term.text, value);
    bound.push_back(term.text);
    return true;
  }

  void unbind(const std::vector<std::string>& bound) {
    for (const std::string& v : bound) {
      auto it = binding.find(v);
      if (mode == MatchMode::NodeEdgeIso) value_uses[it->second]--;
      binding.erase(it);
    }
  }

  void run() {
    std::size_t next = pick_next();
    if (next == q.size()) {
      std::vector<TermId> row;
      row.reserve(vars.size());
      for (const std::string& v : vars) row.push_back(binding.at(v));
      results.insert(std::move(row));
      return;
    }
    done[next] = true;
    const TriplePattern& t = q[next];
    for (std::uint32_t ei : candidates(t)) {
      if (mode != MatchMode::Homomorphism && used_edges.count(ei)) continue;
      const Triple& e = g.edges()[ei];
      std::vector<std::string> bound;
      if (bind(t.s, e.s, bound) && bind(t.p, e.p, bound) && bind(t.o, e.o, bound)) {
        if (mode != MatchMode::Homomorphism) used_edges.insert(ei);
        run();
        if (mode != MatchMode::Homomorphism) used_edges.erase(ei);
      }
      unbind(bound);
    }
    done[next] = false;
  }
};

}  // namespace

Table eval_pattern(const Graph& g, const Bgp& q, MatchMode mode) {
  Table out;
  out.vars = bgp_vars(q);
  if (q.empty()) {
    out.rows.push_back({});  // the empty mapping
    return out;
  }
  Matcher m(g, q, mode);
  m.run();
  for (const auto& row : m.results) {
    std::vector<std::optional<std::string>> cells;
    cells.reserve(row.size());
    for (TermId id : row) cells.emplace_back(g.str(id));
    out.rows.push_back(std::move(cells));
  }
  return out;
}

namespace {

// Checks μ(q) ⊆ g plus the mode's injectivity requirements, trying every
// assignment of pattern positions to edges for the iso modes.
bool mapping_matches(const Graph& g, const Bgp& q,
                     const std::map<std::string, TermId>& mu, MatchMode mode) {
  std::vector<Triple> images;
  for (const TriplePattern& t : q) {
    auto value = [&](const Term& term) -> std::optional<TermId> {
      if (term.is_var()) return mu.at(term.text);
      return g.find(term.text);
    };
    auto s = value(t.s), p = value(t.p), o = value(t.o);
    if (!s || !p || !o || !g.has_edge(*s, *p, *o)) return false;
    images.push_back({*s, *p, *o});
  }
  if (mode == MatchMode::Homomorphism) return true;
  std::set<Triple> distinct(images.begin(), images.end());
  if (distinct.size() != images.size()) return false;
  if (mode == MatchMode::NodeEdgeIso) {
    std::set<TermId> values;
    for (const auto& [var, id] : mu)
      if (!values.insert(id).second) return false;
  }
  return true;
}

}  // namespace

Table eval_pattern_exhaustive(const Graph& g, const Bgp& q, MatchMode mode) {
  Table out;
  out.vars = bgp_vars(q);
  if (out.vars.empty()) {
    if (mapping_matches(g, q, {}, mode)) out.rows.push_back({});
    return out;
  }
  // Candidate universe: every constant in the graph.
  std::vector<TermId> universe;
  for (TermId n : g.nodes()) universe.push_back(n);
  for (TermId l : g.labels()) universe.push_back(l);
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

  std::map<std::string, TermId> mu;
  std::set<std::vector<std::optional<std::string>>> rows;
  auto assign = [&](auto&& self, std::size_t vi) -> void {
    if (vi == out.vars.size()) {
      if (mapping_matches(g, q, mu, mode)) {
        std::vector<std::optional<std::string>> row;
        for (const std::string& v : out.vars) row.emplace_back(g.str(mu.at(v)));
        rows.insert(std::move(row));
      }
      return;
    }
    for (TermId id : universe) {
      mu[out.vars[vi]] = id;
      self(self, vi + 1);
    }
    mu.erase(out.vars[vi]);
  };
  assign(assign, 0);
  out.rows.assign(rows.begin(), rows.end());
  return out;
}

}  // namespace kg
