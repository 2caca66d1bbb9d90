#include <charconv>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "kg/error.hpp"
#include "kg/sexpr.hpp"
#include "kg/shapes.hpp"

namespace kg {

namespace {

std::string head_name(const Sexpr& e) {
  if (e.is_list() && e.size() > 0 && e[0].is_atom() && !e[0].quoted) return e[0].atom;
  return {};
}

std::string expect_string(const Sexpr& e, const char* what) {
  if (!e.is_atom() || !e.quoted)
    fail(std::string("shapes: expected a quoted ") + what + ", got " + to_string(e));
  return e.atom;
}

std::string expect_symbol(const Sexpr& e, const char* what) {
  if (!e.is_atom() || e.quoted)
    fail(std::string("shapes: expected a ") + what + " symbol, got " + to_string(e));
  return e.atom;
}

std::size_t parse_min(const Sexpr& e) {
  std::string s = expect_symbol(e, "count lower bound");
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    fail("shapes: count lower bound must be a natural number, got '" + s + "'");
  return value;
}

std::optional<std::size_t> parse_max(const Sexpr& e) {
  std::string s = expect_symbol(e, "count upper bound");
  if (s == "*") return std::nullopt;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    fail("shapes: count upper bound must be a natural number or *, got '" + s + "'");
  return value;
}

double parse_number(const Sexpr& e) {
  std::string s = expect_symbol(e, "numeric");
  const char* begin = s.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end != begin + s.size())
    fail("shapes: expected a number, got '" + s + "'");
  return value;
}

Shape fold_and(std::vector<Shape> parts) {
  Shape acc = std::move(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i)
    acc = Shape::conj(std::move(acc), std::move(parts[i]));
  return acc;
}

Shape parse_shape_expr(const Sexpr& e) {
  if (e.is_symbol("true")) return Shape::truth();
  if (e.is_atom())
    fail("shapes: unknown shape expression '" + to_string(e) + "'");
  std::string head = head_name(e);
  if (head == "in") {
    if (e.size() < 2) fail("shapes: (in ...) needs at least one constant");
    std::set<std::string> members;
    for (std::size_t i = 1; i < e.size(); ++i)
      members.insert(expect_string(e[i], "constant"));
    return Shape::in_set(std::move(members));
  }
  if (head == "cond") {
    if (e.size() == 2) return Shape::cond(expect_symbol(e[1], "condition name"));
    if (e.size() == 3)
      return Shape::cond(expect_symbol(e[1], "comparison operator"), parse_number(e[2]));
    fail("shapes: (cond ...) takes a name or an operator and a number");
  }
  if (head == "and" || head == "or") {
    if (e.size() < 3)
      fail("shapes: (" + head + " ...) needs at least two operands");
    std::vector<Shape> parts;
    for (std::size_t i = 1; i < e.size(); ++i) {
      Shape part = parse_shape_expr(e[i]);
      if (head == "or") part = Shape::neg(std::move(part));
      parts.push_back(std::move(part));
    }
    Shape all = fold_and(std::move(parts));
    return head == "or" ? Shape::neg(std::move(all)) : all;
  }
  if (head == "not") {
    if (e.size() != 2) fail("shapes: (not ...) takes exactly one operand");
    return Shape::neg(parse_shape_expr(e[1]));
  }
  if (head == "ref") {
    if (e.size() != 2) fail("shapes: (ref ...) takes exactly one label");
    return Shape::ref(expect_symbol(e[1], "shape label"));
  }
  if (head == "count") {
    if (e.size() != 5)
      fail("shapes: (count ...) takes an edge label, a shape, a min and a max");
    return Shape::qualified(expect_string(e[1], "edge label"), parse_shape_expr(e[2]),
                            parse_min(e[3]), parse_max(e[4]));
  }
  if (head == "closed") {
    std::set<std::string> allowed;
    for (std::size_t i = 1; i < e.size(); ++i)
      allowed.insert(expect_string(e[i], "edge label"));
    return Shape::closed(std::move(allowed));
  }
  fail("shapes: unknown shape expression '" + to_string(e) + "'");
}

}  // namespace

ShapesSchema parse_shapes(std::string_view text) {
  Sexpr root = parse_sexpr(text);
  if (head_name(root) != "schema")
    fail("shapes: expected a (schema ...) form at top level");
  ShapesSchema schema;
  for (std::size_t i = 1; i < root.size(); ++i) {
    const Sexpr& decl = root[i];
    if (head_name(decl) != "shape" || decl.size() != 3)
      fail("shapes: expected (shape NAME EXPR), got " + to_string(decl));
    std::string name = expect_symbol(decl[1], "shape name");
    if (schema.shapes.count(name))
      fail("shapes: duplicate shape label '" + name + "'");
    schema.shapes.emplace(std::move(name), parse_shape_expr(decl[2]));
  }
  return schema;
}

ShapesTarget parse_target_tsv(std::string_view text) {
  ShapesTarget target;
  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (!line.empty() && line[0] != '#') {
      std::size_t tab = line.find('\t');
      if (tab == std::string_view::npos ||
          line.find('\t', tab + 1) != std::string_view::npos)
        fail("target line " + std::to_string(line_no) + ": expected node<TAB>label");
      std::string node(line.substr(0, tab));
      std::string label(line.substr(tab + 1));
      if (node.empty() || label.empty())
        fail("target line " + std::to_string(line_no) + ": empty field");
      target.pairs.emplace(std::move(node), std::move(label));
    }
    start = end + 1;
    if (end == text.size()) break;
  }
  return target;
}

}  // namespace kg
