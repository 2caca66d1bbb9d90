#include "kg/shapes.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <regex>

#include "kg/error.hpp"

namespace kg {

Shape Shape::truth() { return {}; }

Shape Shape::in_set(std::set<std::string> members) {
  Shape s;
  s.kind = Kind::InSet;
  s.members = std::move(members);
  return s;
}

Shape Shape::cond(std::string name, double arg) {
  Shape s;
  s.kind = Kind::Cond;
  s.cond_name = std::move(name);
  s.cond_arg = arg;
  return s;
}

Shape Shape::conj(Shape a, Shape b) {
  Shape s;
  s.kind = Kind::And;
  s.children.push_back(std::move(a));
  s.children.push_back(std::move(b));
  return s;
}

Shape Shape::neg(Shape a) {
  Shape s;
  s.kind = Kind::Not;
  s.children.push_back(std::move(a));
  return s;
}

Shape Shape::ref(std::string label) {
  Shape s;
  s.kind = Kind::Ref;
  s.label = std::move(label);
  return s;
}

Shape Shape::qualified(std::string p, Shape inner, std::size_t min,
                       std::optional<std::size_t> max) {
  if (max && *max < min) fail("shape count: min " + std::to_string(min) +
                              " exceeds max " + std::to_string(*max));
  Shape s;
  s.kind = Kind::Qualified;
  s.label = std::move(p);
  s.children.push_back(std::move(inner));
  s.min = min;
  s.max = max;
  return s;
}

Shape Shape::closed(std::set<std::string> allowed) {
  Shape s;
  s.kind = Kind::Closed;
  s.members = std::move(allowed);
  return s;
}

bool ShapesMap::get(const std::string& node, const std::string& label) const {
  auto it = sigma.find({node, label});
  return it != sigma.end() && it->second;
}

namespace {

bool full_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  const char* begin = text.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + text.size();
}

bool lexical_check(const std::string& name, double arg, const std::string& v) {
  static const std::regex kInt(R"([+-]?\d+)");
  static const std::regex kFloat(R"([+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)");
  static const std::regex kDateTime(R"(\d{4}-\d{2}-\d{2}( \d{2}:\d{2}(:\d{2})?)?)");
  if (name == "string") return true;
  if (name == "int") return std::regex_match(v, kInt);
  if (name == "float") return std::regex_match(v, kFloat);
  if (name == "boolean") return v == "true" || v == "false";
  if (name == "dateTime") return std::regex_match(v, kDateTime);
  if (name == ">" || name == "<" || name == ">=" || name == "<=") {
    double num;
    if (!full_double(v, num)) return false;  // non-numeric never compares
    if (name == ">") return num > arg;
    if (name == "<") return num < arg;
    if (name == ">=") return num >= arg;
    return num <= arg;
  }
  fail("unknown shape condition '" + name + "'");
}

}  // namespace

bool eval_shape(const Graph& g, TermId v, const Shape& phi, const ShapesSchema& schema,
                const ShapesMap& sigma) {
  switch (phi.kind) {
    case Shape::Kind::True:
      return true;
    case Shape::Kind::InSet:
      return phi.members.count(g.str(v)) > 0;
    case Shape::Kind::Cond:
      return lexical_check(phi.cond_name, phi.cond_arg, g.str(v));
    case Shape::Kind::And:
      return eval_shape(g, v, phi.children[0], schema, sigma) &&
             eval_shape(g, v, phi.children[1], schema, sigma);
    case Shape::Kind::Not:
      return !eval_shape(g, v, phi.children[0], schema, sigma);
    case Shape::Kind::Ref:
      if (!schema.shapes.count(phi.label))
        fail("shape reference to undeclared label '" + phi.label + "'");
      return sigma.get(g.str(v), phi.label);
    case Shape::Kind::Qualified: {
      auto p = g.find(phi.label);
      std::size_t count = 0;
      if (p) {
        for (std::uint32_t i : g.by_subject(v)) {
          const Triple& t = g.edges()[i];
          if (t.p == *p && eval_shape(g, t.o, phi.children[0], schema, sigma)) ++count;
        }
      }
      return count >= phi.min && (!phi.max || count <= *phi.max);
    }
    case Shape::Kind::Closed:
      for (std::uint32_t i : g.by_subject(v))
        if (!phi.members.count(g.str(g.edges()[i].p))) return false;
      return true;
  }
  return false;
}

namespace {

// Polarity-labelled reference edges of one shape body. A reference under an
// odd number of negations, or under a bounded-max count (exceeding the bound
// flips satisfaction), is negative.
void collect_refs(const Shape& phi, bool positive,
                  std::vector<std::pair<std::string, bool>>& out) {
  switch (phi.kind) {
    case Shape::Kind::Ref:
      out.emplace_back(phi.label, positive);
      return;
    case Shape::Kind::And:
      collect_refs(phi.children[0], positive, out);
      collect_refs(phi.children[1], positive, out);
      return;
    case Shape::Kind::Not:
      collect_refs(phi.children[0], !positive, out);
      return;
    case Shape::Kind::Qualified:
      if (phi.min > 0) collect_refs(phi.children[0], positive, out);
      if (phi.max) collect_refs(phi.children[0], !positive, out);
      return;
    default:
      return;
  }
}

struct SccState {
  std::map<std::string, int> index, low, comp;
  std::vector<std::string> stack;
  std::set<std::string> on_stack;
  int next_index = 0, next_comp = 0;
};

void tarjan(const std::string& s,
            const std::map<std::string, std::vector<std::pair<std::string, bool>>>& deps,
            SccState& st) {
  st.index[s] = st.low[s] = st.next_index++;
  st.stack.push_back(s);
  st.on_stack.insert(s);
  auto it = deps.find(s);
  if (it != deps.end()) {
    for (const auto& [t, pos] : it->second) {
      if (!st.index.count(t)) {
        tarjan(t, deps, st);
        st.low[s] = std::min(st.low[s], st.low[t]);
      } else if (st.on_stack.count(t)) {
        st.low[s] = std::min(st.low[s], st.index[t]);
      }
    }
  }
  if (st.low[s] == st.index[s]) {
    while (true) {
      std::string t = st.stack.back();
      st.stack.pop_back();
      st.on_stack.erase(t);
      st.comp[t] = st.next_comp;
      if (t == s) break;
    }
    ++st.next_comp;
  }
}

}  // namespace

ShapesMap compute_shapes_map(const Graph& g, const ShapesSchema& schema) {
  std::map<std::string, std::vector<std::pair<std::string, bool>>> deps;
  for (const auto& [label, shape] : schema.shapes) {
    auto& refs = deps[label];
    collect_refs(shape, true, refs);
    for (const auto& [target, pos] : refs)
      if (!schema.shapes.count(target))
        fail("shape '" + label + "' references undeclared label '" + target + "'");
  }

  SccState st;
  for (const auto& [label, refs] : deps)
    if (!st.index.count(label)) tarjan(label, deps, st);

  for (const auto& [label, refs] : deps)
    for (const auto& [target, pos] : refs)
      if (!pos && st.comp[label] == st.comp[target]) {
        std::string cycle = label;
        for (const auto& [other, c] : st.comp)
          if (c == st.comp[label] && other != label) cycle += ", " + other;
        fail("shapes schema is not stratified: negated reference cycle through {" +
             cycle + "}");
      }

  // Tarjan numbers components in reverse topological order, so ascending
  // component id = dependencies first.
  std::map<int, std::vector<std::string>> strata;
  for (const auto& [label, c] : st.comp) strata[c].push_back(label);

  ShapesMap sigma;
  for (TermId v : g.nodes())
    for (const auto& [label, shape] : schema.shapes)
      sigma.sigma[{g.str(v), label}] = false;

  for (const auto& [c, labels] : strata) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const std::string& label : labels) {
        const Shape& shape = schema.shapes.at(label);
        for (TermId v : g.nodes()) {
          bool value = eval_shape(g, v, shape, schema, sigma);
          bool& cell = sigma.sigma[{g.str(v), label}];
          if (value != cell) {
            cell = value;
            changed = true;
          }
        }
      }
    }
  }
  return sigma;
}

ValidationReport validate(const Graph& g, const ShapesSchema& schema,
                          const ShapesTarget& target) {
  for (const auto& [node, label] : target.pairs)
    if (!schema.shapes.count(label))
      fail("target names shape label '" + label + "' absent from the schema");
  ShapesMap sigma = compute_shapes_map(g, schema);
  ValidationReport report;
  for (const auto& [node, label] : target.pairs) {
    if (!g.find(node).has_value())
      fail("target names node '" + node + "' absent from the graph");
    if (!sigma.get(node, label)) report.violations.emplace_back(node, label);
  }
  std::sort(report.violations.begin(), report.violations.end());
  report.valid = report.violations.empty();
  return report;
}

std::string to_violations_tsv(const ValidationReport& report) {
  std::string out;
  for (const auto& [node, label] : report.violations)
    out += node + "\t" + label + "\n";
  return out;
}

}  // namespace kg
