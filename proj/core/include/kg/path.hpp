#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "kg/graph.hpp"
#include "kg/pattern.hpp"

namespace kg {

// Path expression over edge labels: label, inverse, concatenation,
// alternation, Kleene star.
struct PathExpr {
  enum class Kind { Label, Inverse, Sequence, Alternation, Star };
  Kind kind = Kind::Label;
  std::string label;               // Kind::Label
  std::vector<PathExpr> children;  // Inverse/Star: 1, Sequence/Alternation: 2

  static PathExpr make_label(std::string l);
  static PathExpr inverse(PathExpr r);
  static PathExpr sequence(PathExpr a, PathExpr b);
  static PathExpr alternation(PathExpr a, PathExpr b);
  static PathExpr star(PathExpr r);
};

// Endpoint pairs r[G], sorted and distinct. Star includes the reflexive
// pair (v,v) for every node of the graph.
std::vector<std::pair<TermId, TermId>> eval_path_expr(const Graph& g, const PathExpr& r);

// Regular path query (x, r, y): the constant/variable split decides the
// result columns — two constants give an empty-domain table that is
// nonempty iff the pair is connected.
Table eval_rpq(const Graph& g, const Term& x, const PathExpr& r, const Term& y);

// Oracle for Star: boolean reachability matrix closure (identity plus
// repeated squaring-style expansion) instead of the search used by
// eval_path_expr.
std::vector<std::pair<TermId, TermId>> star_pairs_matrix_oracle(const Graph& g,
                                                                const PathExpr& inner);

}  // namespace kg
