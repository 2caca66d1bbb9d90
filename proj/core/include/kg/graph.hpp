#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kg {

using TermId = std::uint32_t;

// Interned constant pool. Nodes and edge labels share one namespace, so the
// same constant may appear as both.
class Dictionary {
public:
  TermId intern(std::string_view s);
  std::optional<TermId> find(std::string_view s) const;
  const std::string& str(TermId id) const;
  std::size_t size() const { return terms_.size(); }

private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, TermId> ids_;
};

struct Triple {
  TermId s, p, o;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Immutable directed edge-labelled graph: nodes V, labelled edges
// E ⊆ V×L×V, labels L. V and L are induced from E and may carry extra
// isolated nodes / unused labels.
class Graph {
public:
  Graph() = default;
  static Graph build(const std::vector<std::array<std::string, 3>>& edges,
                     const std::vector<std::string>& isolated_nodes = {},
                     const std::vector<std::string>& extra_labels = {});

  const std::string& str(TermId id) const { return dict_.str(id); }
  std::optional<TermId> find(std::string_view s) const { return dict_.find(s); }

  const std::vector<Triple>& edges() const { return edges_; }
  const std::vector<TermId>& nodes() const { return nodes_; }
  const std::vector<TermId>& labels() const { return labels_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t node_count() const { return nodes_.size(); }

  bool has_node(TermId id) const;
  bool has_label(TermId id) const;
  bool has_edge(TermId s, TermId p, TermId o) const;
  bool has_edge(const Triple& t) const { return has_edge(t.s, t.p, t.o); }

  // Edge indexes: positions into edges() with the given subject / predicate /
  // object. Missing ids yield an empty span.
  std::span<const std::uint32_t> by_subject(TermId) const;
  std::span<const std::uint32_t> by_predicate(TermId) const;
  std::span<const std::uint32_t> by_object(TermId) const;

  std::vector<std::array<std::string, 3>> edge_strings() const;
  std::vector<std::string> node_strings() const;
  std::vector<std::string> label_strings() const;

private:
  Dictionary dict_;
  std::vector<Triple> edges_;  // sorted by (s,p,o) ids, deduplicated
  std::vector<TermId> nodes_;  // sorted ids
  std::vector<TermId> labels_;
  std::unordered_map<TermId, std::vector<std::uint32_t>> by_s_, by_p_, by_o_;
};

// Graph induced by the union of the edge sets; isolated nodes and unused
// labels of both operands are kept.
Graph graph_union(const Graph& a, const Graph& b);

// V1 ⊆ V2 and E1 ⊆ E2 and L1 ⊆ L2, compared by constant names.
bool is_subgraph(const Graph& g1, const Graph& g2);

// Property graph: nodes and edges both carry label sets and property-value
// pairs; edges are identified.
struct PgElement {
  std::set<std::string> labels;
  std::set<std::pair<std::string, std::string>> properties;

  bool operator==(const PgElement&) const = default;
};

struct PgEdge {
  std::string source, target;
  std::set<std::string> labels;
  std::set<std::pair<std::string, std::string>> properties;

  bool operator==(const PgEdge&) const = default;
};

struct PropertyGraph {
  std::map<std::string, PgElement> nodes;  // node id -> labels/properties
  std::map<std::string, PgEdge> edges;     // edge id -> endpoints/labels/properties

  bool operator==(const PropertyGraph&) const = default;
};

// Lossless reification into a directed edge-labelled graph: every edge id
// becomes a node with `from`/`to` edges to its endpoints, a `mode` edge per
// edge label, and one edge per property-value pair; node labels become
// `type` edges and node properties become ordinary edges. Inputs whose
// property keys collide with the reserved labels (from, to, mode, type) are
// rejected.
Graph pg_to_del(const PropertyGraph& pg);

// Inverse of pg_to_del on its outputs: nodes with outgoing `from` and `to`
// edges are read back as edge ids.
PropertyGraph del_to_pg(const Graph& g);

// Named graphs plus a default graph; names are pairwise distinct.
struct GraphDataset {
  Graph default_graph;
  std::map<std::string, Graph> named;
};

// Union of the default graph and every named graph.
Graph flatten(const GraphDataset& ds);

}  // namespace kg
