#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kg/graph.hpp"
#include "kg/pattern.hpp"

namespace kg {

// Set of days of the year as closed integer intervals, kept sorted,
// disjoint and non-adjacent (normal form).
struct IntervalSet {
  std::vector<std::pair<int, int>> intervals;
  bool operator==(const IntervalSet&) const = default;
};

// Sorts and merges overlapping or adjacent intervals; rejects bounds
// outside [1, 365] or lo > hi.
IntervalSet normalize_intervals(std::vector<std::pair<int, int>> raw);

using AnnValue = std::variant<IntervalSet, double>;

// An idempotent commutative semiring of annotation values. join combines
// alternatives, meet combines requirements; the derived order is
// a <= b iff join(a, b) = b.
class AnnotationDomain {
 public:
  virtual ~AnnotationDomain() = default;
  virtual std::string name() const = 0;
  virtual AnnValue bottom() const = 0;
  virtual AnnValue top() const = 0;
  virtual AnnValue join(const AnnValue& a, const AnnValue& b) const = 0;
  virtual AnnValue meet(const AnnValue& a, const AnnValue& b) const = 0;
  virtual bool equal(const AnnValue& a, const AnnValue& b) const = 0;
  virtual AnnValue parse_value(std::string_view text) const = 0;
  virtual std::string format_value(const AnnValue& a) const = 0;
  // Default sample values for the law checker.
  virtual std::vector<AnnValue> samples() const = 0;

  bool leq(const AnnValue& a, const AnnValue& b) const {
    return equal(join(a, b), b);
  }
  bool is_bottom(const AnnValue& a) const { return equal(a, bottom()); }
};

// Day-of-year sets: join = union, meet = intersection, top = [1,365],
// bottom = empty. Values written [a,b];[c,d].
const AnnotationDomain& temporal_domain();

// Degrees in [0,1]: join = max, meet = min, compared with tolerance 1e-12.
// Values written as decimal literals.
const AnnotationDomain& fuzzy_domain();

const AnnotationDomain& domain_by_name(std::string_view name);

// Result of checking the eleven semiring laws over sampled value triples.
struct AxiomReport {
  bool ok = true;
  std::string failed_law;       // first law with a counterexample
  std::string counterexample;   // formatted witness values
  std::size_t triples_checked = 0;
};

// Evaluates every law on every ordered triple of samples (at least three
// values required) and reports the first counterexample, if any.
AxiomReport check_domain_axioms(const AnnotationDomain& d,
                                const std::vector<AnnValue>& samples);

// Graph whose edges carry one annotation each, parallel to graph.edges().
struct AnnotatedGraph {
  Graph graph;
  std::vector<AnnValue> annotations;
};

// Rows s<TAB>p<TAB>o<TAB>annotation; repeated triples combine their
// annotations with join.
AnnotatedGraph parse_annotated_tsv(std::string_view text, const AnnotationDomain& d);
std::string to_annotated_tsv(const AnnotatedGraph& g, const AnnotationDomain& d);

// Pattern solutions with their combined annotations, projected to the given
// columns and sorted by binding.
struct AnnotatedTable {
  std::vector<std::string> vars;
  std::vector<std::pair<std::vector<std::string>, AnnValue>> rows;
};

// Evaluates the basic pattern on the underlying graph; each solution's
// annotation is the meet over its matched edges, solutions that agree on the
// projected columns merge via join, and (by default) rows annotated bottom
// are dropped.
AnnotatedTable eval_annotated(const AnnotatedGraph& g, const Bgp& q,
                              const std::vector<std::string>& project,
                              const AnnotationDomain& d, bool drop_bottom = true);

std::string to_tsv(const AnnotatedTable& t, const AnnotationDomain& d);

}  // namespace kg
