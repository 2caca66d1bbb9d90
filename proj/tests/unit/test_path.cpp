#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "kg/path.hpp"
#include "kg/tsv.hpp"

using namespace kg;

namespace {

const std::string kData = KG_TEST_DATA_DIR;

using Pairs = std::vector<std::pair<TermId, TermId>>;

std::set<std::pair<std::string, std::string>> named(const Graph& g, const Pairs& ps) {
  std::set<std::pair<std::string, std::string>> out;
  for (auto [a, b] : ps) out.insert({g.str(a), g.str(b)});
  return out;
}

Graph random_graph(std::mt19937& rng, int nodes, int edges) {
  std::vector<std::array<std::string, 3>> e;
  for (int i = 0; i < edges; ++i)
    e.push_back({"n" + std::to_string(rng() % nodes), "p" + std::to_string(rng() % 2),
                 "n" + std::to_string(rng() % nodes)});
  return Graph::build(e);
}

}  // namespace

TEST_SUITE("path") {

TEST_CASE("bus closure from Arica over the events graph") {
  Graph g = parse_triples_tsv(read_file(kData + "/events.tsv"));
  auto pairs = named(g, eval_path_expr(g, PathExpr::star(PathExpr::make_label("bus"))));
  std::set<std::string> from_arica;
  for (const auto& [a, b] : pairs)
    if (a == "Arica") from_arica.insert(b);
  CHECK(from_arica == std::set<std::string>{"Arica", "Santiago", "Viña del Mar"});
}

TEST_CASE("label and inverse") {
  Graph g = Graph::build({{"a", "p", "b"}, {"b", "p", "c"}, {"a", "q", "c"}});
  CHECK(named(g, eval_path_expr(g, PathExpr::make_label("p"))) ==
        std::set<std::pair<std::string, std::string>>{{"a", "b"}, {"b", "c"}});
  CHECK(named(g, eval_path_expr(g, PathExpr::inverse(PathExpr::make_label("p")))) ==
        std::set<std::pair<std::string, std::string>>{{"b", "a"}, {"c", "b"}});
  CHECK(eval_path_expr(g, PathExpr::make_label("absent")).empty());
}

TEST_CASE("sequence and alternation") {
  Graph g = Graph::build({{"a", "p", "b"}, {"b", "q", "c"}, {"a", "q", "d"}});
  auto seq = eval_path_expr(
      g, PathExpr::sequence(PathExpr::make_label("p"), PathExpr::make_label("q")));
  CHECK(named(g, seq) == std::set<std::pair<std::string, std::string>>{{"a", "c"}});
  auto alt = eval_path_expr(
      g, PathExpr::alternation(PathExpr::make_label("p"), PathExpr::make_label("q")));
  CHECK(named(g, alt) == std::set<std::pair<std::string, std::string>>{
                             {"a", "b"}, {"b", "c"}, {"a", "d"}});
}

TEST_CASE("star always includes every reflexive pair") {
  Graph g = Graph::build({{"a", "p", "b"}}, {"iso"});
  auto star = named(g, eval_path_expr(g, PathExpr::star(PathExpr::make_label("q"))));
  CHECK(star == std::set<std::pair<std::string, std::string>>{
                    {"a", "a"}, {"b", "b"}, {"iso", "iso"}});
}

TEST_CASE("star agrees with the dense matrix oracle") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = random_graph(rng, 2 + rng() % 8, rng() % 14);
    PathExpr inner = rng() % 2
        ? PathExpr::make_label("p0")
        : PathExpr::alternation(PathExpr::make_label("p0"), PathExpr::make_label("p1"));
    Pairs fast = eval_path_expr(g, PathExpr::star(inner));
    Pairs oracle = star_pairs_matrix_oracle(g, inner);
    std::sort(fast.begin(), fast.end());
    std::sort(oracle.begin(), oracle.end());
    CHECK(fast == oracle);
  }
}

TEST_CASE("rpq endpoint case split") {
  Graph g = Graph::build({{"a", "p", "b"}, {"b", "p", "c"}});
  PathExpr p = PathExpr::make_label("p");
  PathExpr star = PathExpr::star(p);

  Table cc = eval_rpq(g, Term::constant("a"), star, Term::constant("c"));
  CHECK(cc.vars.empty());
  CHECK(cc.rows.size() == 1);
  CHECK(eval_rpq(g, Term::constant("c"), star, Term::constant("a")).rows.empty());

  Table cv = eval_rpq(g, Term::constant("a"), p, Term::var("z"));
  REQUIRE(cv.vars == std::vector<std::string>{"z"});
  REQUIRE(cv.rows.size() == 1);
  CHECK(*cv.rows[0][0] == "b");

  Table vc = eval_rpq(g, Term::var("x"), p, Term::constant("b"));
  REQUIRE(vc.rows.size() == 1);
  CHECK(*vc.rows[0][0] == "a");

  Table vv = eval_rpq(g, Term::var("x"), p, Term::var("y"));
  CHECK(vv.vars == std::vector<std::string>{"x", "y"});
  CHECK(vv.rows.size() == 2);
}

TEST_CASE("rpq with one variable on both ends keeps the diagonal") {
  Graph g = Graph::build({{"a", "p", "b"}, {"b", "p", "a"}, {"c", "q", "c"}});
  Table t = eval_rpq(g, Term::var("x"), PathExpr::make_label("p"), Term::var("x"));
  CHECK(t.rows.empty());
  Table loop = eval_rpq(g, Term::var("x"), PathExpr::make_label("q"), Term::var("x"));
  REQUIRE(loop.rows.size() == 1);
  CHECK(*loop.rows[0][0] == "c");
  Table star = eval_rpq(g, Term::var("x"), PathExpr::star(PathExpr::make_label("p")),
                        Term::var("x"));
  CHECK(star.rows.size() == 3);
}

TEST_CASE("zero length paths connect every node to itself") {
  Graph g = Graph::build({{"Arica", "bus", "Viña del Mar"}});
  Table t = eval_rpq(g, Term::constant("Arica"),
                     PathExpr::star(PathExpr::make_label("bus")),
                     Term::constant("Arica"));
  CHECK(t.rows.size() == 1);
}

TEST_CASE("sequences over missing labels are empty") {
  Graph g = Graph::build({{"a", "bus", "b"}});
  Table t = eval_rpq(
      g, Term::constant("a"),
      PathExpr::sequence(PathExpr::make_label("flight"), PathExpr::make_label("flight")),
      Term::var("z"));
  CHECK(t.rows.empty());
}

}  // TEST_SUITE
