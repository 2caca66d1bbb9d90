#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kg/graph.hpp"

namespace kg {

// Node constraint tree. Or is surface syntax only: the DSL parser rewrites
// (or a b) to (not (and (not a) (not b))).
struct Shape {
  enum class Kind { True, InSet, Cond, And, Not, Ref, Qualified, Closed };
  Kind kind = Kind::True;
  std::set<std::string> members;       // InSet values; Closed allowed labels
  std::string cond_name;               // Cond: string|int|float|boolean|dateTime|>|<|>=|<=
  double cond_arg = 0;                 // Cond numeric comparisons
  std::vector<Shape> children;         // And: 2, Not: 1, Qualified: 1 inner shape
  std::string label;                   // Ref target; Qualified edge label
  std::size_t min = 0;                 // Qualified lower bound
  std::optional<std::size_t> max;      // Qualified upper bound, absent = unbounded

  static Shape truth();
  static Shape in_set(std::set<std::string> members);
  static Shape cond(std::string name, double arg = 0);
  static Shape conj(Shape a, Shape b);
  static Shape neg(Shape a);
  static Shape ref(std::string label);
  static Shape qualified(std::string p, Shape inner, std::size_t min,
                         std::optional<std::size_t> max);
  static Shape closed(std::set<std::string> allowed);
};

// Labelled shapes with a total label → shape assignment; the key set is S.
struct ShapesSchema {
  std::map<std::string, Shape> shapes;
};

struct ShapesTarget {
  std::set<std::pair<std::string, std::string>> pairs;  // (node, shape label)
};

// Total over V × S once computed.
struct ShapesMap {
  std::map<std::pair<std::string, std::string>, bool> sigma;

  bool get(const std::string& node, const std::string& label) const;
};

// Single-shape evaluation against a fixed shapes map, per the case table:
// And = min, Not = 1 −, Ref reads sigma, Qualified counts outgoing p-edges
// whose target satisfies the inner shape (bounds inclusive).
bool eval_shape(const Graph& g, TermId v, const Shape& phi, const ShapesSchema& schema,
                const ShapesMap& sigma);

// Unique fixpoint σ with σ(v,s) = ⟦λ(s)⟧(v): shapes are stratified by their
// reference polarity (a Ref under Not, or under a bounded-max count, is a
// negative dependency); a negative reference cycle is rejected with a
// diagnostic naming the cycle. Within a stratum, least fixpoint from zero.
ShapesMap compute_shapes_map(const Graph& g, const ShapesSchema& schema);

struct ValidationReport {
  bool valid = true;
  std::vector<std::pair<std::string, std::string>> violations;  // failing target pairs
};

ValidationReport validate(const Graph& g, const ShapesSchema& schema,
                          const ShapesTarget& target);

// DSL:
//   (schema (shape NAME φ)...)
//   φ ::= true | (in "c"...) | (cond NAME) | (cond OP NUMBER)
//       | (and φ φ...) | (or φ φ...) | (not φ) | (ref NAME)
//       | (count "p" φ MIN MAX)   MAX ::= nat | *
//       | (closed "p"...)
ShapesSchema parse_shapes(std::string_view text);

// TSV target rows: node<TAB>shapeLabel.
ShapesTarget parse_target_tsv(std::string_view text);

// Violation rows node<TAB>shapeLabel, sorted; empty string when valid.
std::string to_violations_tsv(const ValidationReport& report);

}  // namespace kg
