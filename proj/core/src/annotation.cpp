#include "kg/annotation.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

#include "kg/error.hpp"

namespace kg {

IntervalSet normalize_intervals(std::vector<std::pair<int, int>> raw) {
  for (const auto& [lo, hi] : raw) {
    if (lo < 1 || hi > 365 || lo > hi)
      fail("day interval [" + std::to_string(lo) + "," + std::to_string(hi) +
           "] outside 1..365");
  }
  std::sort(raw.begin(), raw.end());
  IntervalSet out;
  for (const auto& [lo, hi] : raw) {
    if (!out.intervals.empty() && lo <= out.intervals.back().second + 1)
      out.intervals.back().second = std::max(out.intervals.back().second, hi);
    else
      out.intervals.emplace_back(lo, hi);
  }
  return out;
}

namespace {

const IntervalSet& as_days(const AnnValue& a) {
  if (!std::holds_alternative<IntervalSet>(a))
    fail("annotation value is not a day set");
  return std::get<IntervalSet>(a);
}

double as_degree(const AnnValue& a) {
  if (!std::holds_alternative<double>(a))
    fail("annotation value is not a degree");
  return std::get<double>(a);
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

class TemporalDomain final : public AnnotationDomain {
 public:
  std::string name() const override { return "temporal"; }
  AnnValue bottom() const override { return IntervalSet{}; }
  AnnValue top() const override { return IntervalSet{{{1, 365}}}; }

  AnnValue join(const AnnValue& a, const AnnValue& b) const override {
    std::vector<std::pair<int, int>> all = as_days(a).intervals;
    const auto& more = as_days(b).intervals;
    all.insert(all.end(), more.begin(), more.end());
    return normalize_intervals(std::move(all));
  }

  AnnValue meet(const AnnValue& a, const AnnValue& b) const override {
    const auto& xs = as_days(a).intervals;
    const auto& ys = as_days(b).intervals;
    IntervalSet out;
    std::size_t i = 0, j = 0;
    while (i < xs.size() && j < ys.size()) {
      int lo = std::max(xs[i].first, ys[j].first);
      int hi = std::min(xs[i].second, ys[j].second);
      if (lo <= hi) out.intervals.emplace_back(lo, hi);
      if (xs[i].second < ys[j].second)
        ++i;
      else
        ++j;
    }
    return out;
  }

  bool equal(const AnnValue& a, const AnnValue& b) const override {
    return as_days(a) == as_days(b);
  }

  AnnValue parse_value(std::string_view text) const override {
    if (text.empty()) return IntervalSet{};
    std::vector<std::pair<int, int>> raw;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find(';', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view piece = text.substr(start, end - start);
      if (piece.size() < 5 || piece.front() != '[' || piece.back() != ']')
        fail("bad day interval '" + std::string(piece) + "', expected [lo,hi]");
      std::string_view body = piece.substr(1, piece.size() - 2);
      std::size_t comma = body.find(',');
      if (comma == std::string_view::npos)
        fail("bad day interval '" + std::string(piece) + "', expected [lo,hi]");
      int lo = 0, hi = 0;
      auto r1 = std::from_chars(body.data(), body.data() + comma, lo);
      auto r2 = std::from_chars(body.data() + comma + 1, body.data() + body.size(), hi);
      if (r1.ec != std::errc{} || r1.ptr != body.data() + comma ||
          r2.ec != std::errc{} || r2.ptr != body.data() + body.size())
        fail("bad day interval '" + std::string(piece) + "', expected [lo,hi]");
      raw.emplace_back(lo, hi);
      start = end + 1;
      if (end == text.size()) break;
    }
    return normalize_intervals(std::move(raw));
  }

  std::string format_value(const AnnValue& a) const override {
    std::string out;
    for (const auto& [lo, hi] : as_days(a).intervals) {
      if (!out.empty()) out += ";";
      out += "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
    }
    return out;
  }

  std::vector<AnnValue> samples() const override {
    return {IntervalSet{}, IntervalSet{{{1, 10}}}, IntervalSet{{{5, 20}}},
            IntervalSet{{{1, 365}}}};
  }
};

class FuzzyDomain final : public AnnotationDomain {
 public:
  static constexpr double kTolerance = 1e-12;

  std::string name() const override { return "fuzzy"; }
  AnnValue bottom() const override { return 0.0; }
  AnnValue top() const override { return 1.0; }
  AnnValue join(const AnnValue& a, const AnnValue& b) const override {
    return std::max(as_degree(a), as_degree(b));
  }
  AnnValue meet(const AnnValue& a, const AnnValue& b) const override {
    return std::min(as_degree(a), as_degree(b));
  }
  bool equal(const AnnValue& a, const AnnValue& b) const override {
    return std::fabs(as_degree(a) - as_degree(b)) <= kTolerance;
  }
  AnnValue parse_value(std::string_view text) const override {
    std::string s(text);
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
      fail("bad degree '" + s + "'");
    if (v < 0.0 || v > 1.0) fail("degree " + s + " outside [0,1]");
    return v;
  }
  std::string format_value(const AnnValue& a) const override {
    return format_double(as_degree(a));
  }
  std::vector<AnnValue> samples() const override {
    return {0.0, 0.25, 0.5, 0.75, 1.0};
  }
};

}  // namespace

const AnnotationDomain& temporal_domain() {
  static const TemporalDomain d;
  return d;
}

const AnnotationDomain& fuzzy_domain() {
  static const FuzzyDomain d;
  return d;
}

const AnnotationDomain& domain_by_name(std::string_view name) {
  if (name == "temporal") return temporal_domain();
  if (name == "fuzzy") return fuzzy_domain();
  fail("unknown annotation domain '" + std::string(name) + "'");
}

AxiomReport check_domain_axioms(const AnnotationDomain& d,
                                const std::vector<AnnValue>& samples) {
  if (samples.size() < 3) fail("axiom check needs at least three sample values");

  struct Law {
    const char* name;
    bool (*holds)(const AnnotationDomain&, const AnnValue&, const AnnValue&,
                  const AnnValue&);
  };
  static const Law laws[] = {
      {"join associativity",
       [](const AnnotationDomain& d, const AnnValue& a, const AnnValue& b,
          const AnnValue& c) { return d.equal(d.join(d.join(a, b), c), d.join(a, d.join(b, c))); }},
      {"join left identity",
       [](const AnnotationDomain& d, const AnnValue& a, const AnnValue&,
          const AnnValue&) { return d.equal(d.join(d.bottom(), a), a); }},
      {"join right identity",
       [](const AnnotationDomain& d, const AnnValue& a, const AnnValue&,
          const AnnValue&) { return d.equal(d.join(a, d.bottom()), a); }},
      {"join commutativity",
       [](const AnnotationDomain& d, const AnnValue& a, const AnnValue& b,
          const AnnValue&) { return d.equal(d.join(a, b), d.join(b, a)); }},
      {"meet associativity",
       [](const AnnotationDomain& d, const AnnValue& a, const AnnValue& b,
          const AnnValue& c) { return d.equal(d.meet(d.meet(a, b), c), d.meet(a, d.meet(b, c))); }},
      {"meet identity",
       [](const AnnotationDomain& d, const AnnValue& a, const AnnValue&,
          const AnnValue&) {
         return d.equal(d.meet(d.top(), a), a) && d.equal(d.meet(a, d.top()), a);
       }},
      {"left distributivity",
       [](const AnnotationDomain& d, const AnnValue& a, const AnnValue& b,
          const AnnValue& c) {
         return d.equal(d.meet(a, d.join(b, c)), d.join(d.meet(a, b), d.meet(a, c)));
       }},
      {"right distributivity",
       [](const AnnotationDomain& d, const AnnValue& a, const AnnValue& b,
          const AnnValue& c) {
         return d.equal(d.meet(d.join(a, b), c), d.join(d.meet(a, c), d.meet(b, c)));
       }},
      {"meet annihilation",
       [](const AnnotationDomain& d, const AnnValue& a, const AnnValue&,
          const AnnValue&) {
         return d.equal(d.meet(d.bottom(), a), d.bottom()) &&
                d.equal(d.meet(a, d.bottom()), d.bottom());
       }},
      {"meet commutativity",
       [](const AnnotationDomain& d, const AnnValue& a, const AnnValue& b,
          const AnnValue&) { return d.equal(d.meet(a, b), d.meet(b, a)); }},
      {"join idempotence",
       [](const AnnotationDomain& d, const AnnValue& a, const AnnValue&,
          const AnnValue&) { return d.equal(d.join(a, a), a); }},
  };

  AxiomReport report;
  for (const AnnValue& a1 : samples)
    for (const AnnValue& a2 : samples)
      for (const AnnValue& a3 : samples) {
        ++report.triples_checked;
        for (const Law& law : laws) {
          if (law.holds(d, a1, a2, a3)) continue;
          report.ok = false;
          report.failed_law = law.name;
          report.counterexample = "a1=" + d.format_value(a1) +
                                  " a2=" + d.format_value(a2) +
                                  " a3=" + d.format_value(a3);
          return report;
        }
      }
  return report;
}

AnnotatedGraph parse_annotated_tsv(std::string_view text, const AnnotationDomain& d) {
  std::map<std::array<std::string, 3>, AnnValue> combined;
  std::size_t lineno = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++lineno;
    if (!line.empty() && line[0] != '#') {
      std::array<std::string, 4> f;
      std::size_t field = 0, from = 0;
      for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == '\t') {
          if (field >= 4) fail("line " + std::to_string(lineno) + ": too many fields");
          f[field++] = std::string(line.substr(from, i - from));
          from = i + 1;
        }
      }
      if (field != 4)
        fail("line " + std::to_string(lineno) + ": expected s, p, o and annotation");
      if (f[0].empty() || f[1].empty() || f[2].empty())
        fail("line " + std::to_string(lineno) + ": empty field");
      AnnValue a = d.parse_value(f[3]);
      std::array<std::string, 3> key{f[0], f[1], f[2]};
      auto it = combined.find(key);
      if (it == combined.end())
        combined.emplace(std::move(key), std::move(a));
      else
        it->second = d.join(it->second, a);
    }
    start = end + 1;
    if (end == text.size()) break;
  }

  std::vector<std::array<std::string, 3>> triples;
  for (const auto& [key, a] : combined) triples.push_back(key);
  AnnotatedGraph g{Graph::build(triples), {}};
  for (const Triple& t : g.graph.edges())
    g.annotations.push_back(
        combined.at({g.graph.str(t.s), g.graph.str(t.p), g.graph.str(t.o)}));
  return g;
}

std::string to_annotated_tsv(const AnnotatedGraph& g, const AnnotationDomain& d) {
  std::string out;
  for (std::size_t i = 0; i < g.graph.edges().size(); ++i) {
    const Triple& t = g.graph.edges()[i];
    out += g.graph.str(t.s) + "\t" + g.graph.str(t.p) + "\t" + g.graph.str(t.o) +
           "\t" + d.format_value(g.annotations[i]) + "\n";
  }
  return out;
}

AnnotatedTable eval_annotated(const AnnotatedGraph& g, const Bgp& q,
                              const std::vector<std::string>& project,
                              const AnnotationDomain& d, bool drop_bottom) {
  std::vector<std::string> all_vars = bgp_vars(q);
  for (const std::string& v : project)
    if (std::find(all_vars.begin(), all_vars.end(), v) == all_vars.end())
      fail("projected variable ?" + v + " does not occur in the pattern");

  Table base = eval_pattern(g.graph, q, MatchMode::Homomorphism);
  std::vector<std::size_t> proj_cols;
  for (const std::string& v : project) proj_cols.push_back(*base.column(v));

  auto edge_index = [&](const Triple& t) {
    const auto& edges = g.graph.edges();
    auto it = std::lower_bound(edges.begin(), edges.end(), t);
    return static_cast<std::size_t>(it - edges.begin());
  };

  std::map<std::vector<std::string>, AnnValue> groups;
  for (const auto& row : base.rows) {
    // Solutions of a basic pattern bind every variable.
    auto value_of = [&](const Term& term) -> TermId {
      if (term.is_var()) return *g.graph.find(*row[*base.column(term.text)]);
      return *g.graph.find(term.text);
    };
    AnnValue a = d.top();
    std::set<std::size_t> matched;
    for (const TriplePattern& tp : q)
      matched.insert(edge_index({value_of(tp.s), value_of(tp.p), value_of(tp.o)}));
    for (std::size_t i : matched) a = d.meet(a, g.annotations[i]);

    std::vector<std::string> key;
    for (std::size_t c : proj_cols) key.push_back(*row[c]);
    auto it = groups.find(key);
    if (it == groups.end())
      groups.emplace(std::move(key), std::move(a));
    else
      it->second = d.join(it->second, a);
  }

  AnnotatedTable out;
  out.vars = project;
  for (auto& [key, a] : groups) {
    if (drop_bottom && d.is_bottom(a)) continue;
    out.rows.emplace_back(key, std::move(a));
  }
  return out;
}

std::string to_tsv(const AnnotatedTable& t, const AnnotationDomain& d) {
  std::string out;
  for (const std::string& v : t.vars) {
    if (!out.empty()) out += "\t";
    out += v;
  }
  out += out.empty() ? "annotation\n" : "\tannotation\n";
  for (const auto& [key, a] : t.rows) {
    std::string line;
    for (const std::string& cell : key) {
      if (!line.empty()) line += "\t";
      line += cell;
    }
    out += line.empty() ? d.format_value(a) + "\n" : line + "\t" + d.format_value(a) + "\n";
  }
  return out;
}

}  // namespace kg
