#include "kg/schema_analysis.hpp"

#include <algorithm>
#include <map>

#include "kg/error.hpp"

namespace kg {

namespace {

// Node name -> canonical part index, validating the partition axioms
// against the graph's node set along the way.
std::map<std::string, std::size_t> part_index(const Graph& g, const Partition& p) {
  std::map<std::string, std::size_t> index;
  std::size_t i = 0;
  for (const auto& part : p.parts) {
    if (part.empty()) fail("partition contains an empty part");
    for (const std::string& member : part) {
      if (!g.find(member).has_value())
        fail("partition names unknown node '" + member + "'");
      if (!index.emplace(member, i).second)
        fail("partition parts overlap on node '" + member + "'");
    }
    ++i;
  }
  for (TermId v : g.nodes())
    if (!index.count(g.str(v)))
      fail("partition does not cover node '" + g.str(v) + "'");
  return index;
}

}  // namespace

Partition parse_partition_tsv(std::string_view text) {
  std::map<std::string, std::set<std::string>> by_id;
  std::set<std::string> seen;
  std::size_t lineno = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++lineno;
    if (!line.empty() && line[0] != '#') {
      std::size_t tab = line.find('\t');
      if (tab == std::string_view::npos ||
          line.find('\t', tab + 1) != std::string_view::npos)
        fail("partition line " + std::to_string(lineno) + ": expected node<TAB>partId");
      std::string node(line.substr(0, tab));
      std::string id(line.substr(tab + 1));
      if (node.empty() || id.empty())
        fail("partition line " + std::to_string(lineno) + ": empty field");
      if (!seen.insert(node).second)
        fail("partition line " + std::to_string(lineno) + ": node '" + node +
             "' listed twice");
      by_id[id].insert(std::move(node));
    }
    start = end + 1;
    if (end == text.size()) break;
  }
  Partition p;
  for (auto& [id, members] : by_id) p.parts.insert(std::move(members));
  return p;
}

Partition identity_partition(const Graph& g) {
  Partition p;
  for (TermId v : g.nodes()) p.parts.insert({g.str(v)});
  return p;
}

std::string part_name(const Partition& p, std::size_t index) {
  if (index >= p.parts.size()) fail("part index out of range");
  auto it = p.parts.begin();
  std::advance(it, index);
  if (it->size() > kPartNameLimit)
    return "part:" + std::to_string(index + 1) + " (n=" + std::to_string(it->size()) +
           ")";
  std::string name = "{";
  for (const std::string& member : *it) {
    if (name.size() > 1) name += "|";
    name += member;
  }
  return name + "}";
}

Graph quotient(const Graph& g, const Partition& part) {
  std::map<std::string, std::size_t> index = part_index(g, part);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < part.parts.size(); ++i)
    names.push_back(part_name(part, i));

  std::set<std::array<std::string, 3>> edges;
  for (const Triple& t : g.edges())
    edges.insert({names[index.at(g.str(t.s))], g.str(t.p),
                  names[index.at(g.str(t.o))]});
  return Graph::build({edges.begin(), edges.end()}, names, g.label_strings());
}

NodeRelation membership_relation(const Graph& g, const Partition& part) {
  std::map<std::string, std::size_t> index = part_index(g, part);
  NodeRelation r;
  for (const auto& [node, i] : index) r.pairs.emplace(node, part_name(part, i));
  return r;
}

bool check_simulation(const Graph& g1, const Graph& g2, const NodeRelation& r) {
  for (const auto& [v, v2] : r.pairs) {
    auto vid = g1.find(v);
    auto vid2 = g2.find(v2);
    if (!vid) fail("relation names unknown node '" + v + "' on the left");
    if (!vid2) fail("relation names unknown node '" + v2 + "' on the right");
    for (std::uint32_t i : g1.by_subject(*vid)) {
      const Triple& t = g1.edges()[i];
      bool matched = false;
      for (std::uint32_t j : g2.by_subject(*vid2)) {
        const Triple& u = g2.edges()[j];
        if (g2.str(u.p) == g1.str(t.p) &&
            r.pairs.count({g1.str(t.o), g2.str(u.o)})) {
          matched = true;
          break;
        }
      }
      if (!matched) return false;
    }
  }
  return true;
}

bool check_bisimulation(const Graph& g1, const Graph& g2, const NodeRelation& r) {
  if (!check_simulation(g1, g2, r)) return false;
  for (const auto& [v, v2] : r.pairs) {
    auto vid = g1.find(v);
    auto vid2 = g2.find(v2);
    for (std::uint32_t j : g2.by_subject(*vid2)) {
      const Triple& u = g2.edges()[j];
      bool matched = false;
      for (std::uint32_t i : g1.by_subject(*vid)) {
        const Triple& t = g1.edges()[i];
        if (g1.str(t.p) == g2.str(u.p) &&
            r.pairs.count({g1.str(t.o), g2.str(u.o)})) {
          matched = true;
          break;
        }
      }
      if (!matched) return false;
    }
  }
  return true;
}

BisimQuotient bisim_min_quotient(const Graph& g, const Partition& init) {
  Partition p = init;
  while (true) {
    std::map<std::string, std::size_t> index = part_index(g, p);
    Partition next;
    bool split = false;
    for (const auto& part : p.parts) {
      // Signature: the set of (label, target part) pairs over outgoing edges.
      std::map<std::set<std::pair<TermId, std::size_t>>, std::set<std::string>> groups;
      for (const std::string& member : part) {
        std::set<std::pair<TermId, std::size_t>> sig;
        TermId v = *g.find(member);
        for (std::uint32_t i : g.by_subject(v)) {
          const Triple& t = g.edges()[i];
          sig.emplace(t.p, index.at(g.str(t.o)));
        }
        groups[std::move(sig)].insert(member);
      }
      if (groups.size() > 1) split = true;
      for (auto& [sig, members] : groups) next.parts.insert(std::move(members));
    }
    if (!split) break;
    p = std::move(next);
  }
  return {quotient(g, p), std::move(p)};
}

std::string to_partition_tsv(const Partition& p) {
  std::string out;
  std::size_t i = 0;
  for (const auto& part : p.parts) {
    ++i;
    for (const std::string& member : part)
      out += member + "\t" + std::to_string(i) + "\n";
  }
  return out;
}

}  // namespace kg
