#include "doctest.h"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "kg/error.hpp"
#include "kg/graph.hpp"

using namespace kg;

namespace {

Graph g3(std::vector<std::array<std::string, 3>> edges) {
  return Graph::build(std::move(edges));
}

std::vector<std::string> names(const Graph& g, const std::vector<TermId>& ids) {
  std::vector<std::string> out;
  for (TermId id : ids) out.push_back(g.str(id));
  return out;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("build dedupes edges and induces nodes and labels") {
  Graph g = Graph::build({{"a", "p", "b"}, {"b", "p", "c"}, {"a", "p", "b"}},
                         {"lonely"}, {"unused"});
  CHECK(g.edge_count() == 2);
  CHECK(names(g, g.nodes()) == std::vector<std::string>{"a", "b", "c", "lonely"});
  CHECK(names(g, g.labels()) == std::vector<std::string>{"p", "unused"});
  CHECK(g.has_edge(*g.find("a"), *g.find("p"), *g.find("b")));
  CHECK_FALSE(g.has_edge(*g.find("b"), *g.find("p"), *g.find("a")));
}

TEST_CASE("node and label namespaces may overlap") {
  Graph g = g3({{"p", "p", "p"}});
  CHECK(g.node_count() == 1);
  CHECK(g.labels().size() == 1);
  CHECK(g.nodes()[0] == g.labels()[0]);
}

TEST_CASE("adjacency indexes cover every edge position") {
  Graph g = g3({{"a", "p", "b"}, {"a", "q", "c"}, {"c", "p", "b"}});
  CHECK(g.by_subject(*g.find("a")).size() == 2);
  CHECK(g.by_predicate(*g.find("p")).size() == 2);
  CHECK(g.by_object(*g.find("b")).size() == 2);
  CHECK(g.by_subject(*g.find("b")).empty());
}

TEST_CASE("union merges shared local names") {
  Graph chile = g3({{"Santa Lucía", "city", "Santiago"},
                    {"Santiago", "country", "Chile"}});
  Graph cuba = g3({{"Santa Ifigenia", "city", "Santiago"},
                   {"Santiago", "country", "Cuba"}});
  Graph merged = graph_union(chile, cuba);
  CHECK(merged.edge_count() == 4);
  CHECK(merged.node_count() == 5);
  TermId santiago = *merged.find("Santiago");
  CHECK(merged.by_object(santiago).size() == 2);
  CHECK(merged.by_subject(santiago).size() == 2);
}

TEST_CASE("union keeps isolated nodes and unused labels") {
  Graph a = Graph::build({{"x", "p", "y"}}, {"iso"}, {"spare"});
  Graph b = Graph::build({}, {"other"}, {});
  Graph u = graph_union(a, b);
  CHECK(names(u, u.nodes()) == std::vector<std::string>{"iso", "other", "x", "y"});
  CHECK(names(u, u.labels()) == std::vector<std::string>{"p", "spare"});
}

TEST_CASE("union identity and idempotence") {
  Graph g = g3({{"a", "p", "b"}, {"b", "q", "a"}});
  Graph empty;
  CHECK(graph_union(g, empty).edge_strings() == g.edge_strings());
  CHECK(graph_union(g, g).edge_strings() == g.edge_strings());
  CHECK(graph_union(g, g).node_strings() == g.node_strings());
}

TEST_CASE("union is commutative and associative on edge sets") {
  std::mt19937 rng(7);
  auto rnd = [&](int n) {
    std::vector<std::array<std::string, 3>> e;
    for (int i = 0; i < n; ++i)
      e.push_back({"n" + std::to_string(rng() % 4), "p" + std::to_string(rng() % 2),
                   "n" + std::to_string(rng() % 4)});
    return g3(std::move(e));
  };
  for (int trial = 0; trial < 20; ++trial) {
    Graph a = rnd(5), b = rnd(5), c = rnd(5);
    CHECK(graph_union(a, b).edge_strings() == graph_union(b, a).edge_strings());
    CHECK(graph_union(graph_union(a, b), c).edge_strings() ==
          graph_union(a, graph_union(b, c)).edge_strings());
  }
}

TEST_CASE("subgraph needs all three component inclusions") {
  Graph g1 = Graph::build({{"a", "b", "a"}}, {}, {"c"});
  Graph g2 = Graph::build({{"a", "b", "a"}}, {"c"}, {});
  CHECK_FALSE(is_subgraph(g1, g2));
  CHECK_FALSE(is_subgraph(g2, g1));
}

TEST_CASE("subgraph is reflexive and accepts the empty graph") {
  Graph g = g3({{"a", "p", "b"}});
  CHECK(is_subgraph(g, g));
  CHECK(is_subgraph(Graph{}, g));
  CHECK(is_subgraph(g, graph_union(g, g3({{"b", "p", "c"}}))));
}

TEST_CASE("pg reification of the two-flight example") {
  PropertyGraph pg;
  pg.nodes["Santiago"] = {{"Capital City"}, {{"lat", "-33.45"}, {"long", "-70.66"}}};
  pg.nodes["Arica"] = {{"Port City"}, {{"lat", "-18.48"}, {"long", "-70.33"}}};
  pg.edges["LA380"] = {"Santiago", "Arica", {"flight"}, {{"company", "LATAM"}}};
  pg.edges["LA381"] = {"Arica", "Santiago", {"flight"}, {{"company", "LATAM"}}};

  Graph g = pg_to_del(pg);
  std::vector<std::array<std::string, 3>> expected = {
      {"Arica", "lat", "-18.48"},
      {"Arica", "long", "-70.33"},
      {"Arica", "type", "Port City"},
      {"LA380", "company", "LATAM"},
      {"LA380", "from", "Santiago"},
      {"LA380", "mode", "flight"},
      {"LA380", "to", "Arica"},
      {"LA381", "company", "LATAM"},
      {"LA381", "from", "Arica"},
      {"LA381", "mode", "flight"},
      {"LA381", "to", "Santiago"},
      {"Santiago", "lat", "-33.45"},
      {"Santiago", "long", "-70.66"},
      {"Santiago", "type", "Capital City"},
  };
  auto actual = g.edge_strings();
  std::sort(actual.begin(), actual.end());
  CHECK(actual == expected);
  CHECK(del_to_pg(g) == pg);
}

TEST_CASE("pg with a single bare node reifies to one isolated node") {
  PropertyGraph pg;
  pg.nodes["only"] = {};
  Graph g = pg_to_del(pg);
  CHECK(g.edge_count() == 0);
  CHECK(g.node_strings() == std::vector<std::string>{"only"});
  CHECK(del_to_pg(g) == pg);
}

TEST_CASE("pg reification rejects reserved property keys") {
  PropertyGraph pg;
  pg.nodes["a"] = {{}, {{"from", "x"}}};
  CHECK_THROWS_AS(pg_to_del(pg), Error);

  PropertyGraph clash;
  clash.nodes["a"] = {};
  clash.nodes["b"] = {};
  clash.edges["a"] = {"a", "b", {}, {}};
  CHECK_THROWS_AS(pg_to_del(clash), Error);
}

TEST_CASE("pg round trip on random property graphs") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    PropertyGraph pg;
    int nn = 1 + rng() % 4, ne = rng() % 4;
    for (int i = 0; i < nn; ++i) {
      PgElement el;
      if (rng() % 2) el.labels.insert("L" + std::to_string(rng() % 3));
      if (rng() % 2)
        el.properties.insert({"k" + std::to_string(rng() % 3),
                              "val" + std::to_string(rng() % 3)});
      pg.nodes["n" + std::to_string(i)] = el;
    }
    for (int i = 0; i < ne; ++i) {
      PgEdge ed;
      ed.source = "n" + std::to_string(rng() % nn);
      ed.target = "n" + std::to_string(rng() % nn);
      ed.labels.insert("L" + std::to_string(rng() % 3));
      if (rng() % 2)
        ed.properties.insert({"k" + std::to_string(rng() % 3),
                              "val" + std::to_string(rng() % 3)});
      pg.edges["e" + std::to_string(i)] = ed;
    }
    CHECK(del_to_pg(pg_to_del(pg)) == pg);
  }
}

TEST_CASE("flatten unions default and named graphs") {
  GraphDataset ds;
  ds.default_graph = g3({{"a", "p", "b"}});
  ds.named["one"] = g3({{"b", "p", "c"}});
  ds.named["two"] = g3({{"a", "p", "b"}, {"c", "q", "a"}});
  Graph f = flatten(ds);
  CHECK(f.edge_count() == 3);
  CHECK(f.node_count() == 3);
}

}  // TEST_SUITE
