#include "kg/tsv.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "kg/error.hpp"

namespace kg {

namespace {

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      return out;
    }
    out.emplace_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

[[noreturn]] void bad_line(std::size_t lineno, const std::string& reason) {
  fail("line " + std::to_string(lineno) + ": " + reason);
}

void require_nonempty(const std::vector<std::string>& fields, std::size_t from,
                      std::size_t lineno) {
  for (std::size_t i = from; i < fields.size(); ++i)
    if (fields[i].empty()) bad_line(lineno, "empty field " + std::to_string(i + 1));
}

// Calls fn(lineno, fields) for every data line.
template <class Fn>
void for_each_line(std::string_view text, Fn fn) {
  std::size_t lineno = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++lineno;
    if (!line.empty() && line[0] != '#') fn(lineno, split_fields(line));
    start = end + 1;
    if (end == text.size()) break;
  }
}

}  // namespace

Graph parse_triples_tsv(std::string_view text) {
  std::vector<std::array<std::string, 3>> edges;
  std::vector<std::string> isolated;
  for_each_line(text, [&](std::size_t lineno, std::vector<std::string> f) {
    if (f.size() == 2) {
      if (f[0] != "node") bad_line(lineno, "2-field line must start with 'node'");
      if (f[1].empty()) bad_line(lineno, "empty node name");
      isolated.push_back(std::move(f[1]));
      return;
    }
    if (f.size() != 3)
      bad_line(lineno, "expected 3 fields, got " + std::to_string(f.size()));
    require_nonempty(f, 0, lineno);
    edges.push_back({std::move(f[0]), std::move(f[1]), std::move(f[2])});
  });
  return Graph::build(edges, isolated);
}

GraphDataset parse_dataset_tsv(std::string_view text) {
  std::map<std::string, std::vector<std::array<std::string, 3>>> edges;
  for_each_line(text, [&](std::size_t lineno, std::vector<std::string> f) {
    if (f.size() != 4)
      bad_line(lineno, "expected 4 fields, got " + std::to_string(f.size()));
    require_nonempty(f, 1, lineno);
    edges[f[0]].push_back({std::move(f[1]), std::move(f[2]), std::move(f[3])});
  });
  GraphDataset ds;
  for (auto& [name, es] : edges) {
    if (name.empty())
      ds.default_graph = Graph::build(es);
    else
      ds.named.emplace(name, Graph::build(es));
  }
  return ds;
}

PropertyGraph parse_pg_tsv(std::string_view text) {
  PropertyGraph pg;
  struct PendingEdge {
    std::string src, dst;
    std::set<std::string> labels;
  };
  std::vector<std::tuple<std::size_t, std::string, std::string, std::string>> node_props,
      edge_props;
  for_each_line(text, [&](std::size_t lineno, std::vector<std::string> f) {
    const std::string& kind = f[0];
    if (kind == "N") {
      if (f.size() != 2 && f.size() != 3)
        bad_line(lineno, "N row expects 2 or 3 fields");
      require_nonempty(f, 1, lineno);
      auto& node = pg.nodes[f[1]];
      if (f.size() == 3) node.labels.insert(std::move(f[2]));
    } else if (kind == "NP") {
      if (f.size() != 4) bad_line(lineno, "NP row expects 4 fields");
      require_nonempty(f, 1, lineno);
      node_props.emplace_back(lineno, std::move(f[1]), std::move(f[2]), std::move(f[3]));
    } else if (kind == "E") {
      if (f.size() != 4 && f.size() != 5)
        bad_line(lineno, "E row expects 4 or 5 fields");
      require_nonempty(f, 1, lineno);
      auto it = pg.edges.find(f[1]);
      if (it == pg.edges.end()) {
        PgEdge e;
        e.source = f[2];
        e.target = f[3];
        if (f.size() == 5) e.labels.insert(std::move(f[4]));
        pg.edges.emplace(std::move(f[1]), std::move(e));
      } else {
        if (it->second.source != f[2] || it->second.target != f[3])
          bad_line(lineno, "edge '" + f[1] + "' redeclared with different endpoints");
        if (f.size() == 5) it->second.labels.insert(std::move(f[4]));
      }
    } else if (kind == "EP") {
      if (f.size() != 4) bad_line(lineno, "EP row expects 4 fields");
      require_nonempty(f, 1, lineno);
      edge_props.emplace_back(lineno, std::move(f[1]), std::move(f[2]), std::move(f[3]));
    } else {
      bad_line(lineno, "unknown row kind '" + kind + "' (expected N, NP, E, EP)");
    }
  });
  for (auto& [lineno, id, k, v] : node_props) {
    auto it = pg.nodes.find(id);
    if (it == pg.nodes.end()) bad_line(lineno, "NP row for undeclared node '" + id + "'");
    it->second.properties.emplace(std::move(k), std::move(v));
  }
  for (auto& [lineno, id, k, v] : edge_props) {
    auto it = pg.edges.find(id);
    if (it == pg.edges.end()) bad_line(lineno, "EP row for undeclared edge '" + id + "'");
    it->second.properties.emplace(std::move(k), std::move(v));
  }
  for (const auto& [id, e] : pg.edges) {
    pg.nodes[e.source];  // endpoints are nodes even without their own N row
    pg.nodes[e.target];
  }
  for (const auto& [id, e] : pg.edges)
    if (pg.nodes.count(id)) fail("id '" + id + "' is both a node and an edge");
  return pg;
}

std::string to_triples_tsv(const Graph& g) {
  std::vector<std::string> lines;
  std::set<std::string> endpoints;
  for (const auto& e : g.edge_strings()) {
    lines.push_back(e[0] + "\t" + e[1] + "\t" + e[2]);
    endpoints.insert(e[0]);
    endpoints.insert(e[2]);
  }
  for (const auto& n : g.node_strings())
    if (!endpoints.count(n)) lines.push_back("node\t" + n);
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

std::string to_dataset_tsv(const GraphDataset& ds) {
  std::vector<std::string> lines;
  for (const auto& e : ds.default_graph.edge_strings())
    lines.push_back("\t" + e[0] + "\t" + e[1] + "\t" + e[2]);
  for (const auto& [name, g] : ds.named)
    for (const auto& e : g.edge_strings())
      lines.push_back(name + "\t" + e[0] + "\t" + e[1] + "\t" + e[2]);
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

std::string to_pg_tsv(const PropertyGraph& pg) {
  std::vector<std::string> lines;
  for (const auto& [id, n] : pg.nodes) {
    if (n.labels.empty())
      lines.push_back("N\t" + id);
    else
      for (const auto& l : n.labels) lines.push_back("N\t" + id + "\t" + l);
    for (const auto& [k, v] : n.properties) lines.push_back("NP\t" + id + "\t" + k + "\t" + v);
  }
  for (const auto& [id, e] : pg.edges) {
    if (e.labels.empty())
      lines.push_back("E\t" + id + "\t" + e.source + "\t" + e.target);
    else
      for (const auto& l : e.labels)
        lines.push_back("E\t" + id + "\t" + e.source + "\t" + e.target + "\t" + l);
    for (const auto& [k, v] : e.properties) lines.push_back("EP\t" + id + "\t" + k + "\t" + v);
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace kg
