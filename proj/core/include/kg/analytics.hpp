#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kg/graph.hpp"

namespace kg {

// Directed graph whose nodes and edges carry numeric feature vectors. Node
// and edge lists are parallel to their feature lists; every node vector has
// node_dim entries and every edge vector edge_dim entries.
struct VectorGraph {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<double>> node_features;
  std::vector<std::vector<double>> edge_features;
  std::size_t node_dim = 0;
  std::size_t edge_dim = 0;
};

// Forgets edge labels: the result connects x to z whenever some (x, y, z)
// edge exists with y in the allow-list (an empty list keeps every label).
// The node set is preserved, including nodes isolated by the projection.
// Features start empty with dims (0, 0).
VectorGraph project_edges(const Graph& g, const std::vector<std::string>& allow = {});

// Message-passing specification. Each superstep sends
// msg(source vector, edge vector) along every edge, then replaces each node
// vector with agg(old vector, inbox). Inboxes are handed to agg sorted, so
// results never depend on edge iteration order. end(i, vectors) is consulted
// with i = 0 before the first superstep and after each one; a null end runs
// all max_iters supersteps.
struct GpfSpec {
  std::function<std::vector<double>(const std::vector<double>&,
                                    const std::vector<double>&)>
      msg;
  std::function<std::vector<double>(const std::vector<double>&,
                                    const std::vector<std::vector<double>>&)>
      agg;
  std::function<bool(std::size_t, const std::vector<std::vector<double>>&)> end;
};

// Runs supersteps until end() is true or max_iters is reached and returns
// the final node vectors. Node updates within a superstep may run on several
// threads; the outcome is identical either way. Throws on any dimension
// mismatch between vg and the callbacks.
std::vector<std::vector<double>> run_gpf(const VectorGraph& vg, const GpfSpec& spec,
                                         std::size_t max_iters, unsigned threads = 1);

struct PageRankOptions {
  std::vector<std::string> labels;  // projection allow-list; empty keeps all
  std::optional<double> epsilon;    // stop once the L1 residual drops this low
  unsigned threads = 1;
};

// PageRank over the label-forgetting projection of g. Each superstep a node
// with out-degree k > 0 sends d * score / k along each out-edge; nodes sum
// their inbox plus the teleport share (1 - d) / |V|. The mass held by
// out-degree-0 nodes is redistributed uniformly (damped), which keeps the
// total score at exactly 1.
std::map<std::string, double> pagerank(const Graph& g, double d = 0.85,
                                       std::size_t iters = 20,
                                       const PageRankOptions& opt = {});

// node<TAB>score rows, highest score first (ties by node name).
std::string to_scores_tsv(const std::map<std::string, double>& scores);

}  // namespace kg
