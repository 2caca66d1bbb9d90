#include "kg/graph.hpp"

#include <algorithm>

#include "kg/error.hpp"

namespace kg {

TermId Dictionary::intern(std::string_view s) {
  auto it = ids_.find(std::string(s));
  if (it != ids_.end()) return it->second;
  TermId id = static_cast<TermId>(terms_.size());
  terms_.emplace_back(s);
  ids_.emplace(terms_.back(), id);
  return id;
}

std::optional<TermId> Dictionary::find(std::string_view s) const {
  auto it = ids_.find(std::string(s));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& Dictionary::str(TermId id) const { return terms_.at(id); }

Graph Graph::build(const std::vector<std::array<std::string, 3>>& edges,
                   const std::vector<std::string>& isolated_nodes,
                   const std::vector<std::string>& extra_labels) {
  Graph g;
  // Intern in sorted name order so id order and name order coincide; every
  // sorted-by-id listing below is then canonical regardless of input order.
  std::set<std::string> every;
  for (const auto& e : edges) every.insert(e.begin(), e.end());
  every.insert(isolated_nodes.begin(), isolated_nodes.end());
  every.insert(extra_labels.begin(), extra_labels.end());
  for (const auto& s : every) g.dict_.intern(s);

  std::set<TermId> nodes, labels;
  std::set<Triple> es;
  for (const auto& e : edges) {
    Triple t{g.dict_.intern(e[0]), g.dict_.intern(e[1]), g.dict_.intern(e[2])};
    nodes.insert(t.s);
    nodes.insert(t.o);
    labels.insert(t.p);
    es.insert(t);
  }
  for (const auto& n : isolated_nodes) nodes.insert(g.dict_.intern(n));
  for (const auto& l : extra_labels) labels.insert(g.dict_.intern(l));

  g.edges_.assign(es.begin(), es.end());
  g.nodes_.assign(nodes.begin(), nodes.end());
  g.labels_.assign(labels.begin(), labels.end());
  for (std::uint32_t i = 0; i < g.edges_.size(); ++i) {
    const Triple& t = g.edges_[i];
    g.by_s_[t.s].push_back(i);
    g.by_p_[t.p].push_back(i);
    g.by_o_[t.o].push_back(i);
  }
  return g;
}

bool Graph::has_node(TermId id) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), id);
}

bool Graph::has_label(TermId id) const {
  return std::binary_search(labels_.begin(), labels_.end(), id);
}

bool Graph::has_edge(TermId s, TermId p, TermId o) const {
  return std::binary_search(edges_.begin(), edges_.end(), Triple{s, p, o});
}

namespace {
std::span<const std::uint32_t> index_lookup(
    const std::unordered_map<TermId, std::vector<std::uint32_t>>& ix, TermId id) {
  auto it = ix.find(id);
  if (it == ix.end()) return {};
  return it->second;
}
}  // namespace

std::span<const std::uint32_t> Graph::by_subject(TermId id) const {
  return index_lookup(by_s_, id);
}
std::span<const std::uint32_t> Graph::by_predicate(TermId id) const {
  return index_lookup(by_p_, id);
}
std::span<const std::uint32_t> Graph::by_object(TermId id) const {
  return index_lookup(by_o_, id);
}

std::vector<std::array<std::string, 3>> Graph::edge_strings() const {
  std::vector<std::array<std::string, 3>> out;
  out.reserve(edges_.size());
  for (const Triple& t : edges_) out.push_back({str(t.s), str(t.p), str(t.o)});
  return out;
}

std::vector<std::string> Graph::node_strings() const {
  std::vector<std::string> out;
  out.reserve(nodes_.size());
  for (TermId n : nodes_) out.push_back(str(n));
  return out;
}

std::vector<std::string> Graph::label_strings() const {
  std::vector<std::string> out;
  out.reserve(labels_.size());
  for (TermId l : labels_) out.push_back(str(l));
  return out;
}

Graph graph_union(const Graph& a, const Graph& b) {
  auto edges = a.edge_strings();
  auto more = b.edge_strings();
  edges.insert(edges.end(), more.begin(), more.end());
  auto nodes = a.node_strings();
  auto bn = b.node_strings();
  nodes.insert(nodes.end(), bn.begin(), bn.end());
  auto labels = a.label_strings();
  auto bl = b.label_strings();
  labels.insert(labels.end(), bl.begin(), bl.end());
  return Graph::build(edges, nodes, labels);
}

bool is_subgraph(const Graph& g1, const Graph& g2) {
  for (TermId n : g1.nodes()) {
    auto id = g2.find(g1.str(n));
    if (!id || !g2.has_node(*id)) return false;
  }
  for (TermId l : g1.labels()) {
    auto id = g2.find(g1.str(l));
    if (!id || !g2.has_label(*id)) return false;
  }
  for (const Triple& t : g1.edges()) {
    auto s = g2.find(g1.str(t.s));
    auto p = g2.find(g1.str(t.p));
    auto o = g2.find(g1.str(t.o));
    if (!s || !p || !o || !g2.has_edge(*s, *p, *o)) return false;
  }
  return true;
}

namespace {
const char* kReserved[] = {"from", "to", "mode", "type"};

bool reserved_property(const std::string& key) {
  for (const char* r : kReserved)
    if (key == r) return true;
  return false;
}
}  // namespace

Graph pg_to_del(const PropertyGraph& pg) {
  std::vector<std::array<std::string, 3>> edges;
  std::vector<std::string> isolated;
  for (const auto& [id, node] : pg.nodes) {
    if (pg.edges.count(id))
      fail("property graph: id '" + id + "' is both a node and an edge");
    for (const auto& l : node.labels) edges.push_back({id, "type", l});
    for (const auto& [k, v] : node.properties) {
      if (reserved_property(k))
        fail("property graph: node '" + id + "' uses reserved property key '" + k + "'");
      edges.push_back({id, k, v});
    }
    isolated.push_back(id);
  }
  for (const auto& [id, edge] : pg.edges) {
    if (!pg.nodes.count(edge.source) || !pg.nodes.count(edge.target))
      fail("property graph: edge '" + id + "' references an undeclared node");
    edges.push_back({id, "from", edge.source});
    edges.push_back({id, "to", edge.target});
    for (const auto& l : edge.labels) edges.push_back({id, "mode", l});
    for (const auto& [k, v] : edge.properties) {
      if (reserved_property(k))
        fail("property graph: edge '" + id + "' uses reserved property key '" + k + "'");
      edges.push_back({id, k, v});
    }
  }
  return Graph::build(edges, isolated);
}

PropertyGraph del_to_pg(const Graph& g) {
  PropertyGraph pg;
  auto from = g.find("from");
  auto to = g.find("to");
  std::set<TermId> edge_ids;
  if (from && to) {
    for (TermId n : g.nodes()) {
      bool has_from = false, has_to = false;
      for (std::uint32_t i : g.by_subject(n)) {
        if (g.edges()[i].p == *from) has_from = true;
        if (g.edges()[i].p == *to) has_to = true;
      }
      if (has_from && has_to) edge_ids.insert(n);
    }
  }
  std::set<TermId> value_only;  // objects of reconstructed property edges
  for (TermId n : g.nodes()) {
    if (edge_ids.count(n)) {
      PgEdge e;
      for (std::uint32_t i : g.by_subject(n)) {
        const Triple& t = g.edges()[i];
        const std::string& p = g.str(t.p);
        const std::string& o = g.str(t.o);
        if (p == "from")
          e.source = o;
        else if (p == "to")
          e.target = o;
        else if (p == "mode")
          e.labels.insert(o);
        else {
          e.properties.emplace(p, o);
          value_only.insert(t.o);
        }
      }
      pg.edges.emplace(g.str(n), std::move(e));
    } else {
      PgElement el;
      for (std::uint32_t i : g.by_subject(n)) {
        const Triple& t = g.edges()[i];
        const std::string& p = g.str(t.p);
        if (p == "type")
          el.labels.insert(g.str(t.o));
        else {
          el.properties.emplace(p, g.str(t.o));
          value_only.insert(t.o);
        }
      }
      pg.nodes.emplace(g.str(n), std::move(el));
    }
  }
  // Drop nodes that only ever appeared as property values or type/mode
  // targets and have no structure of their own.
  for (TermId v : value_only) {
    const std::string& name = g.str(v);
    auto it = pg.nodes.find(name);
    if (it == pg.nodes.end()) continue;
    bool structural = !g.by_subject(v).empty();
    if (structural) continue;
    bool endpoint = false;
    for (std::uint32_t i : g.by_object(v)) {
      const std::string& p = g.str(g.edges()[i].p);
      if (p == "from" || p == "to") endpoint = true;
    }
    if (!endpoint) pg.nodes.erase(it);
  }
  // Targets of pure type/mode edges are vocabulary, not nodes.
  for (TermId n : g.nodes()) {
    if (!g.by_subject(n).empty()) continue;
    bool vocab = !g.by_object(n).empty();
    for (std::uint32_t i : g.by_object(n)) {
      const std::string& p = g.str(g.edges()[i].p);
      if (p != "type" && p != "mode") vocab = false;
    }
    if (vocab) pg.nodes.erase(g.str(n));
  }
  return pg;
}

Graph flatten(const GraphDataset& ds) {
  Graph g = ds.default_graph;
  for (const auto& [name, named] : ds.named) g = graph_union(g, named);
  return g;
}

}  // namespace kg
