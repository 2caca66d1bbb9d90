#include "doctest.h"

#include <string>

#include "kg/error.hpp"
#include "kg/tsv.hpp"

using namespace kg;

static const std::string kData = KG_TEST_DATA_DIR;

TEST_SUITE("tsv") {

TEST_CASE("events fixture parses to 23 edges") {
  Graph g = parse_triples_tsv(read_file(kData + "/events.tsv"));
  CHECK(g.edge_count() == 23);
  CHECK(g.has_edge(*g.find("EID15"), *g.find("type"), *g.find("Food Festival")));
}

TEST_CASE("comments, blank lines and node declarations") {
  Graph g = parse_triples_tsv("# header\n\na\tp\tb\nnode\tisolated\n\na\tp\tb\n");
  CHECK(g.edge_count() == 1);
  CHECK(g.node_count() == 3);
  CHECK(g.find("isolated").has_value());
}

TEST_CASE("empty document parses to the empty graph") {
  Graph g = parse_triples_tsv("");
  CHECK(g.edge_count() == 0);
  CHECK(g.node_count() == 0);
}

TEST_CASE("malformed triple lines name the line number") {
  CHECK_THROWS_WITH_AS(parse_triples_tsv("a\tp\tb\nc\td\n"),
                       doctest::Contains("line 2"), Error);
  CHECK_THROWS_WITH_AS(parse_triples_tsv("a\t\tb\n"),
                       doctest::Contains("line 1"), Error);
}

TEST_CASE("triples round trip is byte stable") {
  Graph g = parse_triples_tsv(read_file(kData + "/events.tsv"));
  std::string once = to_triples_tsv(g);
  Graph again = parse_triples_tsv(once);
  CHECK(to_triples_tsv(again) == once);
  CHECK(again.edge_strings() == g.edge_strings());
  CHECK(again.node_strings() == g.node_strings());
}

TEST_CASE("isolated nodes survive serialization") {
  Graph g = Graph::build({{"a", "p", "b"}}, {"ghost"});
  std::string text = to_triples_tsv(g);
  CHECK(text.find("node\tghost") != std::string::npos);
  CHECK(parse_triples_tsv(text).node_strings() == g.node_strings());
}

TEST_CASE("dataset rows route to default and named graphs") {
  GraphDataset ds = parse_dataset_tsv(
      "\ta\tp\tb\n"
      "events\tEID15\ttype\tFood Festival\n"
      "events\tEID15\tname\tÑam\n"
      "routes\tArica\tbus\tSantiago\n");
  CHECK(ds.default_graph.edge_count() == 1);
  CHECK(ds.named.size() == 2);
  CHECK(ds.named.at("events").edge_count() == 2);
  CHECK(ds.named.at("routes").edge_count() == 1);

  std::string text = to_dataset_tsv(ds);
  GraphDataset back = parse_dataset_tsv(text);
  CHECK(to_dataset_tsv(back) == text);
}

TEST_CASE("dataset rejects wrong column counts") {
  CHECK_THROWS_WITH_AS(parse_dataset_tsv("g\ta\tp\n"),
                       doctest::Contains("line 1"), Error);
}

TEST_CASE("pg rows accumulate labels and properties") {
  PropertyGraph pg = parse_pg_tsv(
      "N\tSantiago\tCapital City\n"
      "NP\tSantiago\tlat\t-33.45\n"
      "NP\tSantiago\tlong\t-70.66\n"
      "N\tArica\tPort City\n"
      "NP\tArica\tlat\t-18.48\n"
      "NP\tArica\tlong\t-70.33\n"
      "E\tLA380\tSantiago\tArica\tflight\n"
      "EP\tLA380\tcompany\tLATAM\n"
      "E\tLA381\tArica\tSantiago\tflight\n"
      "EP\tLA381\tcompany\tLATAM\n");
  CHECK(pg.nodes.size() == 2);
  CHECK(pg.edges.size() == 2);
  CHECK(pg.nodes.at("Santiago").labels == std::set<std::string>{"Capital City"});
  CHECK(pg.edges.at("LA380").source == "Santiago");
  CHECK(pg.edges.at("LA380").properties ==
        std::set<std::pair<std::string, std::string>>{{"company", "LATAM"}});

  std::string text = to_pg_tsv(pg);
  CHECK(parse_pg_tsv(text) == pg);
  CHECK(to_pg_tsv(parse_pg_tsv(text)) == text);
}

TEST_CASE("pg parse errors") {
  CHECK_THROWS_WITH_AS(parse_pg_tsv("NP\tghost\tk\tv\n"),
                       doctest::Contains("ghost"), Error);
  CHECK_THROWS_WITH_AS(parse_pg_tsv("E\te1\ta\tb\nEP\te2\tk\tv\n"),
                       doctest::Contains("e2"), Error);
  CHECK_THROWS_WITH_AS(parse_pg_tsv("E\te1\ta\tb\tp\nE\te1\tb\ta\tq\n"),
                       doctest::Contains("e1"), Error);
  CHECK_THROWS_WITH_AS(parse_pg_tsv("X\tz\n"), doctest::Contains("line 1"), Error);
}

TEST_CASE("pg edges declare their endpoint nodes implicitly") {
  PropertyGraph pg = parse_pg_tsv("E\te1\ta\tb\tknows\n");
  CHECK(pg.nodes.size() == 2);
  CHECK(pg.nodes.count("a") == 1);
  CHECK(pg.nodes.count("b") == 1);
}

}  // TEST_SUITE
