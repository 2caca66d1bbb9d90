#include <doctest.h>

#include <random>
#include <string>

#include "kg/annotation.hpp"
#include "kg/error.hpp"
#include "kg/tsv.hpp"

using namespace kg;

namespace {

AnnotatedGraph load_travel() {
  return parse_annotated_tsv(
      read_file(std::string(KG_TEST_DATA_DIR) + "/travel_temporal.atsv"),
      temporal_domain());
}

IntervalSet days(std::vector<std::pair<int, int>> raw) {
  return normalize_intervals(std::move(raw));
}

// Flights from Santiago to cities holding events.
Bgp travel_query() {
  return {{Term::constant("Santiago"), Term::constant("flight"), Term::var("city")},
          {Term::var("event"), Term::constant("city"), Term::var("city")}};
}

}  // namespace

TEST_SUITE("annotation") {

TEST_CASE("interval set normal form") {
  CHECK(days({{5, 10}, {1, 3}}).intervals ==
        std::vector<std::pair<int, int>>{{1, 3}, {5, 10}});
  CHECK(days({{1, 5}, {4, 9}}).intervals == std::vector<std::pair<int, int>>{{1, 9}});
  CHECK(days({{1, 2}, {3, 5}}).intervals == std::vector<std::pair<int, int>>{{1, 5}});
  CHECK(days({{7, 7}}).intervals == std::vector<std::pair<int, int>>{{7, 7}});
  CHECK(days({}).intervals.empty());
  CHECK_THROWS_AS(normalize_intervals({{0, 5}}), Error);
  CHECK_THROWS_AS(normalize_intervals({{1, 366}}), Error);
  CHECK_THROWS_AS(normalize_intervals({{9, 3}}), Error);
}

TEST_CASE("temporal meet and join") {
  const AnnotationDomain& d = temporal_domain();
  CHECK(d.equal(d.meet(days({{150, 152}}), days({{1, 120}, {220, 365}})),
                IntervalSet{}));
  CHECK(d.equal(d.meet(d.top(), days({{40, 50}})), days({{40, 50}})));
  CHECK(d.equal(d.join(days({{123, 125}}), days({{276, 279}})),
                days({{123, 125}, {276, 279}})));
  CHECK(d.equal(d.meet(days({{1, 125}, {200, 365}}), days({{123, 130}})),
                days({{123, 125}})));
  CHECK(d.equal(d.meet(days({{1, 125}, {200, 365}}), days({{276, 279}})),
                days({{276, 279}})));
  CHECK(d.leq(days({{5, 9}}), days({{1, 20}})));
  CHECK_FALSE(d.leq(days({{5, 30}}), days({{1, 20}})));
  CHECK(d.is_bottom(IntervalSet{}));
}

TEST_CASE("temporal parsing and formatting") {
  const AnnotationDomain& d = temporal_domain();
  AnnValue v = d.parse_value("[1,125];[200,365]");
  CHECK(d.format_value(v) == "[1,125];[200,365]");
  CHECK(d.equal(d.parse_value("[10,20];[5,12]"), days({{5, 20}})));
  CHECK(d.format_value(d.parse_value("")) == "");
  CHECK(d.equal(d.parse_value(""), IntervalSet{}));
  CHECK_THROWS_AS(d.parse_value("[1,2"), Error);
  CHECK_THROWS_AS(d.parse_value("[a,b]"), Error);
  CHECK_THROWS_AS(d.parse_value("[5]"), Error);
  CHECK_THROWS_AS(d.parse_value("[400,500]"), Error);
}

TEST_CASE("fuzzy domain") {
  const AnnotationDomain& d = fuzzy_domain();
  CHECK(d.equal(d.join(0.3, 0.7), 0.7));
  CHECK(d.equal(d.meet(0.3, 0.7), 0.3));
  CHECK(d.equal(d.top(), 1.0));
  CHECK(d.is_bottom(0.0));
  CHECK(d.leq(0.3, 0.7));
  CHECK_FALSE(d.leq(0.7, 0.3));
  CHECK(d.equal(0.3, 0.3 + 1e-13));
  CHECK(d.format_value(AnnValue{0.25}) == "0.25");
  CHECK(d.equal(d.parse_value("0.85"), 0.85));
  CHECK_THROWS_AS(d.parse_value("1.5"), Error);
  CHECK_THROWS_AS(d.parse_value("x"), Error);
  CHECK_THROWS_AS(d.parse_value(""), Error);
}

TEST_CASE("domains are found by name") {
  CHECK(domain_by_name("temporal").name() == "temporal");
  CHECK(domain_by_name("fuzzy").name() == "fuzzy");
  CHECK_THROWS_AS(domain_by_name("probabilistic"), Error);
}

TEST_CASE("semiring laws hold for the shipped domains") {
  AxiomReport t = check_domain_axioms(temporal_domain(), temporal_domain().samples());
  CHECK(t.ok);
  CHECK(t.triples_checked == 64);
  AxiomReport f = check_domain_axioms(fuzzy_domain(), fuzzy_domain().samples());
  CHECK(f.ok);
  CHECK(f.triples_checked == 125);
  CHECK_THROWS_AS(check_domain_axioms(temporal_domain(), {IntervalSet{}, IntervalSet{}}),
                  Error);
}

TEST_CASE("integer addition fails idempotence") {
  // join = addition over plain numbers: every semiring law holds except
  // idempotence, caught at the first nonzero sample.
  class PlusTimes final : public AnnotationDomain {
   public:
    std::string name() const override { return "plus-times"; }
    AnnValue bottom() const override { return 0.0; }
    AnnValue top() const override { return 1.0; }
    AnnValue join(const AnnValue& a, const AnnValue& b) const override {
      return std::get<double>(a) + std::get<double>(b);
    }
    AnnValue meet(const AnnValue& a, const AnnValue& b) const override {
      return std::get<double>(a) * std::get<double>(b);
    }
    bool equal(const AnnValue& a, const AnnValue& b) const override {
      return std::get<double>(a) == std::get<double>(b);
    }
    AnnValue parse_value(std::string_view) const override { return 0.0; }
    std::string format_value(const AnnValue& a) const override {
      return std::to_string(std::get<double>(a));
    }
    std::vector<AnnValue> samples() const override { return {0.0, 1.0, 2.0}; }
  };
  PlusTimes d;
  AxiomReport r = check_domain_axioms(d, d.samples());
  CHECK_FALSE(r.ok);
  CHECK(r.failed_law == "join idempotence");
  CHECK(r.counterexample.find("a1=1") != std::string::npos);
}

TEST_CASE("single-value carrier is a degenerate semiring") {
  class OnePoint final : public AnnotationDomain {
   public:
    std::string name() const override { return "one"; }
    AnnValue bottom() const override { return 0.0; }
    AnnValue top() const override { return 0.0; }
    AnnValue join(const AnnValue&, const AnnValue&) const override { return 0.0; }
    AnnValue meet(const AnnValue&, const AnnValue&) const override { return 0.0; }
    bool equal(const AnnValue& a, const AnnValue& b) const override {
      return std::get<double>(a) == std::get<double>(b);
    }
    AnnValue parse_value(std::string_view) const override { return 0.0; }
    std::string format_value(const AnnValue&) const override { return "0"; }
    std::vector<AnnValue> samples() const override { return {0.0, 0.0, 0.0}; }
  };
  OnePoint d;
  CHECK(check_domain_axioms(d, d.samples()).ok);
}

TEST_CASE("annotated graph loading") {
  AnnotatedGraph g = load_travel();
  CHECK(g.graph.edges().size() == 5);
  CHECK(g.annotations.size() == 5);
  const AnnotationDomain& d = temporal_domain();
  std::string back = to_annotated_tsv(g, d);
  AnnotatedGraph again = parse_annotated_tsv(back, d);
  CHECK(to_annotated_tsv(again, d) == back);

  // Repeated triples combine with join at load.
  AnnotatedGraph merged =
      parse_annotated_tsv("a\tp\tb\t[1,5]\na\tp\tb\t[100,200]\n", d);
  CHECK(merged.graph.edges().size() == 1);
  CHECK(d.equal(merged.annotations[0], days({{1, 5}, {100, 200}})));

  CHECK_THROWS_AS(parse_annotated_tsv("a\tp\tb\n", d), Error);
  CHECK_THROWS_AS(parse_annotated_tsv("a\tp\tb\t[1,2]\tx\n", d), Error);
}

TEST_CASE("flights to event cities with temporal validity") {
  AnnotatedGraph g = load_travel();
  const AnnotationDomain& d = temporal_domain();
  AnnotatedTable t = eval_annotated(g, travel_query(), {"city"}, d);
  REQUIRE(t.vars == std::vector<std::string>{"city"});
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].first == std::vector<std::string>{"Arica"});
  CHECK(d.equal(t.rows[0].second, days({{123, 125}, {276, 279}})));
  CHECK(to_tsv(t, d) == "city\tannotation\nArica\t[123,125];[276,279]\n");

  // Punta Arenas matches the pattern but its annotation meets to empty.
  AnnotatedTable kept = eval_annotated(g, travel_query(), {"city"}, d, false);
  REQUIRE(kept.rows.size() == 2);
  CHECK(kept.rows[1].first == std::vector<std::string>{"Punta Arenas"});
  CHECK(d.is_bottom(kept.rows[1].second));
}

TEST_CASE("projection to the event keeps rows separate") {
  AnnotatedGraph g = load_travel();
  const AnnotationDomain& d = temporal_domain();
  AnnotatedTable t = eval_annotated(g, travel_query(), {"event", "city"}, d);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].first == std::vector<std::string>{"EID16", "Arica"});
  CHECK(d.equal(t.rows[0].second, days({{123, 125}})));
  CHECK(t.rows[1].first == std::vector<std::string>{"EID17", "Arica"});
  CHECK(d.equal(t.rows[1].second, days({{276, 279}})));
}

TEST_CASE("top-annotated edges reduce to plain evaluation") {
  Graph plain = parse_triples_tsv(
      read_file(std::string(KG_TEST_DATA_DIR) + "/events.tsv"));
  const AnnotationDomain& d = temporal_domain();
  AnnotatedGraph g{plain, std::vector<AnnValue>(plain.edges().size(), d.top())};

  Bgp q = {{Term::var("ev"), Term::constant("venue"), Term::var("vn")}};
  AnnotatedTable t = eval_annotated(g, q, {"ev", "vn"}, d);
  Table base = eval_pattern(plain, q);
  base.dedupe();
  REQUIRE(t.rows.size() == base.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(t.rows[i].first ==
          std::vector<std::string>{*base.rows[i][0], *base.rows[i][1]});
    CHECK(d.equal(t.rows[i].second, d.top()));
  }
}

TEST_CASE("raising an edge annotation never lowers an output") {
  std::mt19937 rng(17);
  const AnnotationDomain& d = temporal_domain();
  std::uniform_int_distribution<int> node(0, 3), day(1, 365), len(0, 40);
  for (int trial = 0; trial < 30; ++trial) {
    std::string text;
    int m = 3 + trial % 5;
    for (int i = 0; i < m; ++i) {
      int lo = day(rng), hi = std::min(365, lo + len(rng));
      text += "n" + std::to_string(node(rng)) + "\tp\tn" + std::to_string(node(rng)) +
              "\t[" + std::to_string(lo) + "," + std::to_string(hi) + "]\n";
    }
    AnnotatedGraph g = parse_annotated_tsv(text, d);

    Bgp q = {{Term::var("x"), Term::constant("p"), Term::var("y")},
             {Term::var("y"), Term::constant("p"), Term::var("z")}};
    AnnotatedTable before = eval_annotated(g, q, {"x", "z"}, d, false);

    AnnotatedGraph raised = g;
    std::uniform_int_distribution<std::size_t> edge(0, g.annotations.size() - 1);
    int lo = day(rng), hi = std::min(365, lo + len(rng));
    std::size_t which = edge(rng);
    raised.annotations[which] =
        d.join(raised.annotations[which], days({{lo, hi}}));
    AnnotatedTable after = eval_annotated(raised, q, {"x", "z"}, d, false);

    REQUIRE(after.rows.size() == before.rows.size());
    for (std::size_t i = 0; i < before.rows.size(); ++i) {
      CHECK(after.rows[i].first == before.rows[i].first);
      CHECK(d.leq(before.rows[i].second, after.rows[i].second));
    }
  }
}

TEST_CASE("projection errors") {
  AnnotatedGraph g = load_travel();
  CHECK_THROWS_AS(eval_annotated(g, travel_query(), {"nope"}, temporal_domain()),
                  Error);
}

TEST_CASE("empty pattern yields the unit solution annotated top") {
  AnnotatedGraph g = load_travel();
  const AnnotationDomain& d = temporal_domain();
  AnnotatedTable t = eval_annotated(g, {}, {}, d);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].first.empty());
  CHECK(d.equal(t.rows[0].second, d.top()));
}

}  // TEST_SUITE
