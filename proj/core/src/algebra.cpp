#include "kg/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "kg/error.hpp"

namespace kg {

Condition Condition::eq(Term a, Term b) {
  Condition c;
  c.kind = Kind::Eq;
  c.lhs = std::move(a);
  c.rhs = std::move(b);
  return c;
}

Condition Condition::conj(Condition a, Condition b) {
  Condition c;
  c.kind = Kind::And;
  c.children.push_back(std::move(a));
  c.children.push_back(std::move(b));
  return c;
}

Condition Condition::disj(Condition a, Condition b) {
  Condition c;
  c.kind = Kind::Or;
  c.children.push_back(std::move(a));
  c.children.push_back(std::move(b));
  return c;
}

Condition Condition::neg(Condition a) {
  Condition c;
  c.kind = Kind::Not;
  c.children.push_back(std::move(a));
  return c;
}

namespace {
void collect_condition_vars(const Condition& c, std::set<std::string>& out) {
  if (c.kind == Condition::Kind::Eq) {
    if (c.lhs.is_var()) out.insert(c.lhs.text);
    if (c.rhs.is_var()) out.insert(c.rhs.text);
    return;
  }
  for (const Condition& child : c.children) collect_condition_vars(child, out);
}
}  // namespace

std::vector<std::string> condition_vars(const Condition& c) {
  std::set<std::string> vars;
  collect_condition_vars(c, vars);
  return {vars.begin(), vars.end()};
}

namespace {
AlgebraPtr node(AlgebraExpr e) { return std::make_shared<const AlgebraExpr>(std::move(e)); }
}  // namespace

AlgebraPtr make_bgp(Bgp bgp) {
  AlgebraExpr e;
  e.kind = AlgebraExpr::Kind::BasePattern;
  e.bgp = std::move(bgp);
  return node(std::move(e));
}

AlgebraPtr make_project(std::vector<std::string> vars, AlgebraPtr child) {
  AlgebraExpr e;
  e.kind = AlgebraExpr::Kind::Project;
  e.project_vars = std::move(vars);
  e.left = std::move(child);
  return node(std::move(e));
}

AlgebraPtr make_select(Condition c, AlgebraPtr child) {
  AlgebraExpr e;
  e.kind = AlgebraExpr::Kind::Select;
  e.condition = std::move(c);
  e.left = std::move(child);
  return node(std::move(e));
}

namespace {
AlgebraPtr binary(AlgebraExpr::Kind kind, AlgebraPtr l, AlgebraPtr r) {
  AlgebraExpr e;
  e.kind = kind;
  e.left = std::move(l);
  e.right = std::move(r);
  return node(std::move(e));
}
}  // namespace

AlgebraPtr make_join(AlgebraPtr l, AlgebraPtr r) {
  return binary(AlgebraExpr::Kind::Join, std::move(l), std::move(r));
}
AlgebraPtr make_union(AlgebraPtr l, AlgebraPtr r) {
  return binary(AlgebraExpr::Kind::Union, std::move(l), std::move(r));
}
AlgebraPtr make_minus(AlgebraPtr l, AlgebraPtr r) {
  return binary(AlgebraExpr::Kind::Minus, std::move(l), std::move(r));
}
AlgebraPtr make_antijoin(AlgebraPtr l, AlgebraPtr r) {
  return binary(AlgebraExpr::Kind::AntiJoin, std::move(l), std::move(r));
}
AlgebraPtr make_leftjoin(AlgebraPtr l, AlgebraPtr r) {
  return binary(AlgebraExpr::Kind::LeftJoin, std::move(l), std::move(r));
}

AlgebraPtr make_path_atom(Term x, PathExpr path, Term y) {
  AlgebraExpr e;
  e.kind = AlgebraExpr::Kind::PathAtom;
  e.x = std::move(x);
  e.y = std::move(y);
  e.path = std::move(path);
  return node(std::move(e));
}

std::vector<std::string> expr_vars(const AlgebraExpr& e) {
  std::set<std::string> vars;
  switch (e.kind) {
    case AlgebraExpr::Kind::BasePattern: {
      auto v = bgp_vars(e.bgp);
      vars.insert(v.begin(), v.end());
      break;
    }
    case AlgebraExpr::Kind::Project:
      vars.insert(e.project_vars.begin(), e.project_vars.end());
      break;
    case AlgebraExpr::Kind::Select: {
      auto v = expr_vars(*e.left);
      vars.insert(v.begin(), v.end());
      break;
    }
    case AlgebraExpr::Kind::Minus:
    case AlgebraExpr::Kind::AntiJoin: {
      auto v = expr_vars(*e.left);
      vars.insert(v.begin(), v.end());
      break;
    }
    case AlgebraExpr::Kind::Join:
    case AlgebraExpr::Kind::Union:
    case AlgebraExpr::Kind::LeftJoin: {
      auto l = expr_vars(*e.left);
      auto r = expr_vars(*e.right);
      vars.insert(l.begin(), l.end());
      vars.insert(r.begin(), r.end());
      break;
    }
    case AlgebraExpr::Kind::PathAtom:
      if (e.x.is_var()) vars.insert(e.x.text);
      if (e.y.is_var()) vars.insert(e.y.text);
      break;
  }
  return {vars.begin(), vars.end()};
}

void check_algebra(const AlgebraExpr& e) {
  switch (e.kind) {
    case AlgebraExpr::Kind::BasePattern:
    case AlgebraExpr::Kind::PathAtom:
      return;
    case AlgebraExpr::Kind::Project: {
      check_algebra(*e.left);
      auto dom = expr_vars(*e.left);
      for (const std::string& v : e.project_vars)
        if (!std::binary_search(dom.begin(), dom.end(), v))
          fail("projection names variable ?" + v + " absent from its operand");
      return;
    }
    case AlgebraExpr::Kind::Select: {
      check_algebra(*e.left);
      auto dom = expr_vars(*e.left);
      for (const std::string& v : condition_vars(e.condition))
        if (!std::binary_search(dom.begin(), dom.end(), v))
          fail("filter names variable ?" + v + " absent from its operand");
      return;
    }
    default:
      check_algebra(*e.left);
      check_algebra(*e.right);
      return;
  }
}

namespace {

using Row = std::vector<std::optional<std::string>>;

// A mapping is identified by its bound (var, value) pairs; rows living in
// tables with different columns can still denote the same mapping.
std::vector<std::pair<std::string, std::string>> row_key(const Table& t, const Row& row) {
  std::vector<std::pair<std::string, std::string>> key;
  for (std::size_t i = 0; i < t.vars.size(); ++i)
    if (row[i]) key.emplace_back(t.vars[i], *row[i]);
  std::sort(key.begin(), key.end());
  return key;
}

bool eval_condition(const Condition& c, const Table& t, const Row& row) {
  switch (c.kind) {
    case Condition::Kind::And:
      return eval_condition(c.children[0], t, row) && eval_condition(c.children[1], t, row);
    case Condition::Kind::Or:
      return eval_condition(c.children[0], t, row) || eval_condition(c.children[1], t, row);
    case Condition::Kind::Not:
      return !eval_condition(c.children[0], t, row);
    case Condition::Kind::Eq: {
      auto value = [&](const Term& term) -> std::optional<std::string> {
        if (!term.is_var()) return term.text;
        auto col = t.column(term.text);
        if (!col) return std::nullopt;
        return row[*col];
      };
      auto l = value(c.lhs), r = value(c.rhs);
      if (!l || !r) return false;  // unbound comparisons are false
      return *l == *r;
    }
  }
  return false;
}

Table join_tables(const Table& a, const Table& b) {
  Table out;
  out.vars = a.vars;
  std::vector<std::size_t> b_new;  // columns of b absent from a
  std::vector<std::pair<std::size_t, std::size_t>> shared;  // (a col, b col)
  for (std::size_t j = 0; j < b.vars.size(); ++j) {
    if (auto i = a.column(b.vars[j]))
      shared.emplace_back(*i, j);
    else {
      b_new.push_back(j);
      out.vars.push_back(b.vars[j]);
    }
  }
  // Hash rows of b by their bound shared-column values. Rows with unbound
  // shared cells stay compatible with anything there, so bucket those under
  // every probe via a linear fallback list.
  std::map<std::vector<std::optional<std::string>>, std::vector<std::size_t>> buckets;
  std::vector<std::size_t> loose;
  for (std::size_t r = 0; r < b.rows.size(); ++r) {
    bool all_bound = true;
    std::vector<std::optional<std::string>> key;
    for (auto [ai, bj] : shared) {
      key.push_back(b.rows[r][bj]);
      if (!b.rows[r][bj]) all_bound = false;
    }
    if (all_bound)
      buckets[key].push_back(r);
    else
      loose.push_back(r);
  }
  auto compatible = [&](const Row& ra, const Row& rb) {
    for (auto [ai, bj] : shared)
      if (ra[ai] && rb[bj] && *ra[ai] != *rb[bj]) return false;
    return true;
  };
  auto merge = [&](const Row& ra, const Row& rb) {
    Row row = ra;
    for (auto [ai, bj] : shared)
      if (!row[ai]) row[ai] = rb[bj];
    for (std::size_t j : b_new) row.push_back(rb[j]);
    out.rows.push_back(std::move(row));
  };
  for (const Row& ra : a.rows) {
    bool probe_exact = true;
    std::vector<std::optional<std::string>> key;
    for (auto [ai, bj] : shared) {
      key.push_back(ra[ai]);
      if (!ra[ai]) probe_exact = false;
    }
    if (probe_exact) {
      auto it = buckets.find(key);
      if (it != buckets.end())
        for (std::size_t r : it->second) merge(ra, b.rows[r]);
    } else {
      for (const auto& [k, rows] : buckets)
        for (std::size_t r : rows)
          if (compatible(ra, b.rows[r])) merge(ra, b.rows[r]);
    }
    for (std::size_t r : loose)
      if (compatible(ra, b.rows[r])) merge(ra, b.rows[r]);
  }
  return out;
}

Table union_tables(const Table& a, const Table& b) {
  Table out;
  out.vars = a.vars;
  std::vector<std::optional<std::size_t>> b_to_out(b.vars.size());
  for (std::size_t j = 0; j < b.vars.size(); ++j) {
    if (auto i = out.column(b.vars[j])) {
      b_to_out[j] = *i;
    } else {
      out.vars.push_back(b.vars[j]);
      b_to_out[j] = out.vars.size() - 1;
    }
  }
  for (const Row& ra : a.rows) {
    Row row = ra;
    row.resize(out.vars.size());
    out.rows.push_back(std::move(row));
  }
  for (const Row& rb : b.rows) {
    Row row(out.vars.size());
    for (std::size_t j = 0; j < b.vars.size(); ++j) row[*b_to_out[j]] = rb[j];
    out.rows.push_back(std::move(row));
  }
  return out;
}

Table minus_tables(const Table& a, const Table& b) {
  std::set<std::vector<std::pair<std::string, std::string>>> exclude;
  for (const Row& rb : b.rows) exclude.insert(row_key(b, rb));
  Table out;
  out.vars = a.vars;
  for (const Row& ra : a.rows)
    if (!exclude.count(row_key(a, ra))) out.rows.push_back(ra);
  return out;
}

Table project_table(const Table& t, const std::vector<std::string>& vars) {
  Table out;
  out.vars = vars;
  std::vector<std::size_t> cols;
  for (const std::string& v : vars) {
    auto c = t.column(v);
    if (!c) fail("projection names variable ?" + v + " absent from its operand");
    cols.push_back(*c);
  }
  for (const Row& row : t.rows) {
    Row r;
    r.reserve(cols.size());
    for (std::size_t c : cols) r.push_back(row[c]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Table eval_algebra(const Graph& g, const AlgebraExpr& e, Semantics semantics,
                   MatchMode mode) {
  check_algebra(e);
  struct Rec {
    const Graph& g;
    Semantics sem;
    MatchMode mode;
    Table operator()(const AlgebraExpr& e) {
      Table t = eval(e);
      if (sem == Semantics::Set) t.dedupe();
      return t;
    }
    Table eval(const AlgebraExpr& e) {
      switch (e.kind) {
        case AlgebraExpr::Kind::BasePattern:
          return eval_pattern(g, e.bgp, mode);
        case AlgebraExpr::Kind::Project:
          return project_table((*this)(*e.left), e.project_vars);
        case AlgebraExpr::Kind::Select: {
          Table t = (*this)(*e.left);
          Table out;
          out.vars = t.vars;
          for (const auto& row : t.rows)
            if (eval_condition(e.condition, t, row)) out.rows.push_back(row);
          return out;
        }
        case AlgebraExpr::Kind::Join:
          return join_tables((*this)(*e.left), (*this)(*e.right));
        case AlgebraExpr::Kind::Union:
          return union_tables((*this)(*e.left), (*this)(*e.right));
        case AlgebraExpr::Kind::Minus:
          return minus_tables((*this)(*e.left), (*this)(*e.right));
        case AlgebraExpr::Kind::AntiJoin: {
          // Q1 ▷ Q2 := Q1 − π_var(Q1)(Q1 ⋈ Q2), evaluated literally.
          Table q1 = (*this)(*e.left);
          Table joined = join_tables(q1, (*this)(*e.right));
          return minus_tables(q1, project_table(joined, q1.vars));
        }
        case AlgebraExpr::Kind::LeftJoin: {
          // Q1 ⟕ Q2 := (Q1 ⋈ Q2) ∪ (Q1 ▷ Q2).
          Table q1 = (*this)(*e.left);
          Table q2 = (*this)(*e.right);
          Table joined = join_tables(q1, q2);
          Table anti = minus_tables(q1, project_table(joined, q1.vars));
          return union_tables(joined, anti);
        }
        case AlgebraExpr::Kind::PathAtom:
          return eval_rpq(g, e.x, e.path, e.y);
      }
      fail("algebra: unknown expression kind");
    }
  } rec{g, semantics, mode};
  Table t = rec(e);
  if (semantics == Semantics::Set) t.dedupe();
  return t;
}

}  // namespace kg
