#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kg/graph.hpp"

namespace kg {

// Grouping of node names into parts. Stored as a set of sets, so the parts
// are canonically ordered by their sorted member lists; a part's position in
// that order is its index for naming purposes.
struct Partition {
  std::set<std::set<std::string>> parts;
};

// Rows node<TAB>partId; every node of the graph must appear exactly once.
// The part ids only group rows and do not survive into part names.
Partition parse_partition_tsv(std::string_view text);

Partition identity_partition(const Graph& g);

// Display name of the part at the given canonical index: the sorted members
// joined by | inside braces, or, above kPartNameLimit members, a compact
// index-plus-cardinality name.
inline constexpr std::size_t kPartNameLimit = 8;
std::string part_name(const Partition& p, std::size_t index);

// Merges each part into a single node named by part_name; the result has an
// edge (U, l, W) exactly when some member of U has an l-edge to a member of
// W. Keeps the input's label set. Rejects parts that fail to cover the
// graph's nodes, overlap, or name unknown nodes.
Graph quotient(const Graph& g, const Partition& part);

// Relation between nodes of two graphs, by name.
struct NodeRelation {
  std::set<std::pair<std::string, std::string>> pairs;
};

// The set-membership relation: every node paired with the name of its part.
NodeRelation membership_relation(const Graph& g, const Partition& part);

// True iff for every (v, v') related and every edge (v, p, w) of g1 there is
// an edge (v', p, w') of g2 with (w, w') related.
bool check_simulation(const Graph& g1, const Graph& g2, const NodeRelation& r);

// A simulation whose mirror condition also holds: every edge (v', p, w') of
// g2 must be matched by an edge (v, p, w) of g1 with (w, w') related.
bool check_bisimulation(const Graph& g1, const Graph& g2, const NodeRelation& r);

struct BisimQuotient {
  Graph graph;
  Partition partition;
};

// Coarsest refinement of init whose membership relation is a bisimulation
// between g and the quotient, computed by splitting parts on their members'
// (label, target part) signatures until stable.
BisimQuotient bisim_min_quotient(const Graph& g, const Partition& init);

std::string to_partition_tsv(const Partition& p);

}  // namespace kg
