#include "doctest.h"

#include "kg/error.hpp"
#include "kg/sexpr.hpp"

using namespace kg;

TEST_SUITE("sexpr") {

TEST_CASE("atoms, lists, nesting") {
  Sexpr e = parse_sexpr("(bgp (?x \"type\" \"City\") tail)");
  REQUIRE(e.is_list());
  REQUIRE(e.size() == 3);
  CHECK(e[0].is_symbol("bgp"));
  CHECK(e[1].is_list());
  CHECK(e[1][0].atom == "?x");
  CHECK_FALSE(e[1][0].quoted);
  CHECK(e[1][1].atom == "type");
  CHECK(e[1][1].quoted);
  CHECK(e[2].is_symbol("tail"));
}

TEST_CASE("quoted strings keep spaces and escapes") {
  Sexpr e = parse_sexpr("(\"Food Festival\" \"say \\\"hi\\\"\" \"back\\\\slash\")");
  CHECK(e[0].atom == "Food Festival");
  CHECK(e[1].atom == "say \"hi\"");
  CHECK(e[2].atom == "back\\slash");
}

TEST_CASE("comments run to end of line") {
  Sexpr e = parse_sexpr("; heading\n(a ; inline\n b)\n; trailing\n");
  REQUIRE(e.size() == 2);
  CHECK(e[0].is_symbol("a"));
  CHECK(e[1].is_symbol("b"));
}

TEST_CASE("round trip through to_string") {
  const char* text = "(project (?a) (bgp (?a \"name two\" \"x\\\"y\")))";
  Sexpr e = parse_sexpr(text);
  CHECK(to_string(parse_sexpr(to_string(e))) == to_string(e));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_sexpr("(a b"), Error);
  CHECK_THROWS_AS(parse_sexpr("a b"), Error);
  CHECK_THROWS_AS(parse_sexpr(")"), Error);
  CHECK_THROWS_AS(parse_sexpr("\"unterminated"), Error);
  CHECK_THROWS_AS(parse_sexpr(""), Error);
}

TEST_CASE("parse_sexpr_list reads a sequence") {
  auto list = parse_sexpr_list("(a) (b c)\n; done\n(d)");
  CHECK(list.size() == 3);
  CHECK(list[2][0].is_symbol("d"));
}

}  // TEST_SUITE
