#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kg/graph.hpp"

namespace kg {

struct Term {
  enum class Kind { Variable, Constant };
  Kind kind = Kind::Constant;
  std::string text;  // variable name without the '?', or the constant itself

  static Term var(std::string name) { return {Kind::Variable, std::move(name)}; }
  static Term constant(std::string value) { return {Kind::Constant, std::move(value)}; }
  bool is_var() const { return kind == Kind::Variable; }
  friend auto operator<=>(const Term&, const Term&) = default;
};

struct TriplePattern {
  Term s, p, o;
  friend auto operator<=>(const TriplePattern&, const TriplePattern&) = default;
};

using Bgp = std::vector<TriplePattern>;

// Sorted distinct variable names.
std::vector<std::string> bgp_vars(const Bgp& q);

enum class MatchMode { Homomorphism, EdgeIso, NodeEdgeIso };

// Bag-of-rows solution table. Cells are unbound only below a left join or a
// union of differing domains.
struct Table {
  std::vector<std::string> vars;
  std::vector<std::vector<std::optional<std::string>>> rows;

  std::optional<std::size_t> column(const std::string& var) const;
  void sort_rows();
  void dedupe();  // sorts, then removes duplicate rows
};

// Renders header + rows, fields tab-separated, unbound cells empty, rows
// sorted lexicographically. Byte-stable.
std::string to_tsv(const Table& t);

// All mappings μ with dom(μ) = var(q) and μ(q) ⊆ g. Under EdgeIso distinct
// triple patterns must match distinct edges; NodeEdgeIso additionally
// requires distinct variables to take distinct values. Duplicate mappings
// reached along different matchings count once; columns are sorted by
// variable name.
Table eval_pattern(const Graph& g, const Bgp& q,
                   MatchMode mode = MatchMode::Homomorphism);

// Enumeration oracle: tries every assignment of variables to constants.
// Exponential; for cross-checking on small graphs.
Table eval_pattern_exhaustive(const Graph& g, const Bgp& q,
                              MatchMode mode = MatchMode::Homomorphism);

}  // namespace kg
