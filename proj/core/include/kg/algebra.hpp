#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kg/graph.hpp"
#include "kg/path.hpp"
#include "kg/pattern.hpp"

namespace kg {

// Filter condition: equality over variables/constants composed with
// and/or/not. Comparisons involving an unbound variable are false;
// constants compare byte-wise.
struct Condition {
  enum class Kind { And, Or, Not, Eq };
  Kind kind = Kind::Eq;
  std::vector<Condition> children;  // And/Or: 2, Not: 1
  Term lhs, rhs;                    // Eq

  static Condition eq(Term a, Term b);
  static Condition conj(Condition a, Condition b);
  static Condition disj(Condition a, Condition b);
  static Condition neg(Condition a);
};

std::vector<std::string> condition_vars(const Condition& c);

// Query algebra over pattern solutions.
struct AlgebraExpr {
  enum class Kind {
    BasePattern,  // bgp
    Project,      // vars, child
    Select,       // condition, child
    Join,         // left, right
    Union,        // left, right
    Minus,        // left, right
    AntiJoin,     // left, right
    LeftJoin,     // left, right
    PathAtom      // x, path, y
  };
  Kind kind = Kind::BasePattern;
  Bgp bgp;
  std::vector<std::string> project_vars;
  Condition condition;
  std::shared_ptr<const AlgebraExpr> left, right;
  Term x, y;
  PathExpr path;
};

using AlgebraPtr = std::shared_ptr<const AlgebraExpr>;

AlgebraPtr make_bgp(Bgp bgp);
AlgebraPtr make_project(std::vector<std::string> vars, AlgebraPtr child);
AlgebraPtr make_select(Condition c, AlgebraPtr child);
AlgebraPtr make_join(AlgebraPtr l, AlgebraPtr r);
AlgebraPtr make_union(AlgebraPtr l, AlgebraPtr r);
AlgebraPtr make_minus(AlgebraPtr l, AlgebraPtr r);
AlgebraPtr make_antijoin(AlgebraPtr l, AlgebraPtr r);
AlgebraPtr make_leftjoin(AlgebraPtr l, AlgebraPtr r);
AlgebraPtr make_path_atom(Term x, PathExpr path, Term y);

// Result-domain variables of an expression (sorted): Minus and AntiJoin
// keep the left domain, Project narrows, everything else unions.
std::vector<std::string> expr_vars(const AlgebraExpr& e);

enum class Semantics { Set, Bag };

// Rejects, before any evaluation, projections outside the child domain and
// filter conditions naming variables absent from the child domain.
void check_algebra(const AlgebraExpr& e);

// Evaluates bottom-up. Set semantics deduplicates at every operator; bag
// semantics keeps multiplicities (joins multiply, unions concatenate,
// projection preserves counts). Matching of base patterns follows `mode`.
Table eval_algebra(const Graph& g, const AlgebraExpr& e,
                   Semantics semantics = Semantics::Set,
                   MatchMode mode = MatchMode::Homomorphism);

}  // namespace kg
