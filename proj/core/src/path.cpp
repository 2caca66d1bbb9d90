#include "kg/path.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "kg/error.hpp"

namespace kg {

PathExpr PathExpr::make_label(std::string l) {
  PathExpr e;
  e.kind = Kind::Label;
  e.label = std::move(l);
  return e;
}

PathExpr PathExpr::inverse(PathExpr r) {
  PathExpr e;
  e.kind = Kind::Inverse;
  e.children.push_back(std::move(r));
  return e;
}

PathExpr PathExpr::sequence(PathExpr a, PathExpr b) {
  PathExpr e;
  e.kind = Kind::Sequence;
  e.children.push_back(std::move(a));
  e.children.push_back(std::move(b));
  return e;
}

PathExpr PathExpr::alternation(PathExpr a, PathExpr b) {
  PathExpr e;
  e.kind = Kind::Alternation;
  e.children.push_back(std::move(a));
  e.children.push_back(std::move(b));
  return e;
}

PathExpr PathExpr::star(PathExpr r) {
  PathExpr e;
  e.kind = Kind::Star;
  e.children.push_back(std::move(r));
  return e;
}

namespace {

using Pairs = std::vector<std::pair<TermId, TermId>>;

Pairs dedupe(Pairs p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  return p;
}

Pairs closure_with_reflexive(const Graph& g, const Pairs& base) {
  std::map<TermId, std::set<TermId>> adj;
  for (const auto& [u, v] : base) adj[u].insert(v);
  Pairs out;
  for (TermId v : g.nodes()) out.emplace_back(v, v);
  // BFS from every source occurring in the base relation.
  for (const auto& [src, _] : adj) {
    std::set<TermId> seen;
    std::vector<TermId> frontier{src};
    seen.insert(src);
    while (!frontier.empty()) {
      std::vector<TermId> next;
      for (TermId u : frontier) {
        auto it = adj.find(u);
        if (it == adj.end()) continue;
        for (TermId v : it->second)
          if (seen.insert(v).second) next.push_back(v);
      }
      frontier = std::move(next);
    }
    for (TermId v : seen)
      if (v != src) out.emplace_back(src, v);
  }
  return dedupe(std::move(out));
}

}  // namespace

std::vector<std::pair<TermId, TermId>> eval_path_expr(const Graph& g, const PathExpr& r) {
  switch (r.kind) {
    case PathExpr::Kind::Label: {
      Pairs out;
      auto id = g.find(r.label);
      if (!id) return {};
      for (std::uint32_t i : g.by_predicate(*id)) {
        const Triple& t = g.edges()[i];
        out.emplace_back(t.s, t.o);
      }
      return dedupe(std::move(out));
    }
    case PathExpr::Kind::Inverse: {
      Pairs base = eval_path_expr(g, r.children[0]);
      for (auto& [u, v] : base) std::swap(u, v);
      return dedupe(std::move(base));
    }
    case PathExpr::Kind::Sequence: {
      Pairs left = eval_path_expr(g, r.children[0]);
      Pairs right = eval_path_expr(g, r.children[1]);
      std::map<TermId, std::vector<TermId>> by_src;
      for (const auto& [u, v] : right) by_src[u].push_back(v);
      Pairs out;
      for (const auto& [u, mid] : left) {
        auto it = by_src.find(mid);
        if (it == by_src.end()) continue;
        for (TermId v : it->second) out.emplace_back(u, v);
      }
      return dedupe(std::move(out));
    }
    case PathExpr::Kind::Alternation: {
      Pairs out = eval_path_expr(g, r.children[0]);
      Pairs right = eval_path_expr(g, r.children[1]);
      out.insert(out.end(), right.begin(), right.end());
      return dedupe(std::move(out));
    }
    case PathExpr::Kind::Star:
      return closure_with_reflexive(g, eval_path_expr(g, r.children[0]));
  }
  fail("path: unknown expression kind");
}

Table eval_rpq(const Graph& g, const Term& x, const PathExpr& r, const Term& y) {
  Pairs pairs = eval_path_expr(g, r);
  Table out;
  auto resolve = [&](const Term& t) -> std::optional<TermId> {
    return g.find(t.text);
  };
  if (!x.is_var() && !y.is_var()) {
    auto xs = resolve(x), ys = resolve(y);
    bool hit = xs && ys &&
               std::binary_search(pairs.begin(), pairs.end(), std::make_pair(*xs, *ys));
    if (hit) out.rows.push_back({});
    return out;
  }
  if (x.is_var() && !y.is_var()) {
    out.vars = {x.text};
    auto ys = resolve(y);
    if (!ys) return out;
    std::set<TermId> seen;
    for (const auto& [u, v] : pairs)
      if (v == *ys && seen.insert(u).second) out.rows.push_back({g.str(u)});
    return out;
  }
  if (!x.is_var() && y.is_var()) {
    out.vars = {y.text};
    auto xs = resolve(x);
    if (!xs) return out;
    std::set<TermId> seen;
    for (const auto& [u, v] : pairs)
      if (u == *xs && seen.insert(v).second) out.rows.push_back({g.str(v)});
    return out;
  }
  if (x.text == y.text) {  // same variable at both ends: diagonal pairs only
    out.vars = {x.text};
    for (const auto& [u, v] : pairs)
      if (u == v) out.rows.push_back({g.str(u)});
    out.dedupe();
    return out;
  }
  out.vars = {x.text, y.text};
  std::sort(out.vars.begin(), out.vars.end());
  std::size_t xi = (out.vars[0] == x.text) ? 0 : 1;
  for (const auto& [u, v] : pairs) {
    std::vector<std::optional<std::string>> row(2);
    row[xi] = g.str(u);
    row[1 - xi] = g.str(v);
    out.rows.push_back(std::move(row));
  }
  out.dedupe();
  return out;
}

std::vector<std::pair<TermId, TermId>> star_pairs_matrix_oracle(const Graph& g,
                                                                const PathExpr& inner) {
  Pairs base = eval_path_expr(g, inner);
  // Dense boolean closure over the node set (plus any endpoints).
  std::set<TermId> universe(g.nodes().begin(), g.nodes().end());
  for (const auto& [u, v] : base) {
    universe.insert(u);
    universe.insert(v);
  }
  std::vector<TermId> ids(universe.begin(), universe.end());
  std::map<TermId, std::size_t> ix;
  for (std::size_t i = 0; i < ids.size(); ++i) ix[ids[i]] = i;
  std::size_t n = ids.size();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = true;
  for (const auto& [u, v] : base) m[ix[u]][ix[v]] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (m[k][j]) m[i][j] = true;
  Pairs out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m[i][j]) out.emplace_back(ids[i], ids[j]);
  return dedupe(std::move(out));
}

}  // namespace kg
