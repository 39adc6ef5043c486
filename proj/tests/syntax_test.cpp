#include "doctest.h"
#include "helpers.hpp"

using namespace fabt;
using namespace fabt::testing;

TEST_SUITE("frontend-syntax") {
  TEST_CASE("parse examples") {
    CHECK(src("\\x:Unit. x") == SrcTerm::lam("x", Type::unit(), SrcTerm::var("x")));
    auto ctx = parse_tgt("HOLE true");
    REQUIRE(std::holds_alternative<TgtCtx>(ctx));
    CHECK(std::get<TgtCtx>(ctx).term() == TgtTerm::app(TgtTerm::hole(), TgtTerm::truth()));
    CHECK_THROWS_AS(parse_tgt("fst fst"), ParseError);
  }

  TEST_CASE("print examples") {
    CHECK(print(SrcTerm::lam("x", Type::unit(), SrcTerm::var("x"))) == "\\x:Unit. x");
    CHECK(print(TgtTerm::apply(TgtTerm::var("f"), TgtTerm::var("a"), TgtTerm::var("b"))) == "f a b");
    CHECK(to_string(Type::arrow(Type::boolean(), Type::arrow(Type::boolean(), Type::boolean()))) == "Bool -> Bool -> Bool");
  }

  TEST_CASE("type precedence") {
    CHECK(ty("Unit * Bool + Unit -> Bool") ==
          Type::arrow(Type::sum(Type::prod(Type::unit(), Type::boolean()), Type::unit()), Type::boolean()));
    CHECK(ty("Unit * Bool * Unit") == Type::prod(Type::unit(), Type::prod(Type::boolean(), Type::unit())));
    CHECK(to_string(ty("(Unit -> Unit) -> Unit")) == "(Unit -> Unit) -> Unit");
    CHECK(to_string(ty("(Unit + Unit) * Bool")) == "(Unit + Unit) * Bool");
  }

  TEST_CASE("term precedence") {
    CHECK(tgt("a; b; c") == TgtTerm::seq(TgtTerm::var("a"), TgtTerm::seq(TgtTerm::var("b"), TgtTerm::var("c"))));
    CHECK(tgt("fst a b") == TgtTerm::app(TgtTerm::proj1(TgtTerm::var("a")), TgtTerm::var("b")));
    CHECK(tgt("\\x. x; y") == TgtTerm::lam("x", TgtTerm::seq(TgtTerm::var("x"), TgtTerm::var("y"))));
    CHECK(tgt("f \\x. x") == TgtTerm::app(TgtTerm::var("f"), TgtTerm::lam("x", TgtTerm::var("x"))));
    CHECK(tgt("inl inr x") == TgtTerm::inl(TgtTerm::inr(TgtTerm::var("x"))));
    CHECK(src("fix [Unit -> Unit] f") == SrcTerm::fix(Type::unit(), Type::unit(), SrcTerm::var("f")));
  }

  TEST_CASE("nested cases associate their branches with the innermost case") {
    TgtTerm t = tgt("case a of inl x => case b of inl u => u | inr v => v | inr y => y");
    TgtTerm inner = TgtTerm::case_of(TgtTerm::var("b"), "u", TgtTerm::var("u"), "v", TgtTerm::var("v"));
    CHECK(t == TgtTerm::case_of(TgtTerm::var("a"), "x", inner, "y", TgtTerm::var("y")));
  }

  TEST_CASE("printer parenthesizes where needed") {
    CHECK(print(tgt("(\\x. x) y")) == "(\\x. x) y");
    CHECK(print(tgt("f (g x)")) == "f (g x)");
    CHECK(print(tgt("(a; b); c")) == "(a; b); c");
    CHECK(print(tgt("fst (f x)")) == "fst (f x)");
    CHECK(print(tgt("(if a then b else c) d")) == "(if a then b else c) d");
    CHECK(print(tgt("f (\\x. x)")) == "f (\\x. x)");
    CHECK(print(tgt("<a; b, \\x. x>")) == "<a; b, \\x. x>");
  }

  TEST_CASE("identifiers") {
    CHECK(tgt("x1'") == TgtTerm::var("x1'"));
    CHECK(tgt("\\_. _") == TgtTerm::lam("_", TgtTerm::var("_")));
    CHECK_THROWS_AS(tgt("\\of. of"), ParseError);
  }

  TEST_CASE("comments and unicode lambda") {
    CHECK(tgt("# identity\n\xCE\xBBx. x") == tgt("\\x. x"));
  }

  TEST_CASE("language-specific forms") {
    CHECK_THROWS_AS(parse_src("wrong"), ParseError);
    CHECK_THROWS_AS(parse_tgt("fix [Unit -> Unit] f"), ParseError);
    CHECK_THROWS_AS(parse_src("\\x. x"), ParseError);
    CHECK_THROWS_AS(parse_src("fix [Unit] f"), ParseError);
  }

  TEST_CASE("hole counting") {
    CHECK(std::holds_alternative<SrcTerm>(parse_src("unit")));
    CHECK(std::holds_alternative<SrcCtx>(parse_src("<HOLE, unit>")));
    CHECK_THROWS_AS(parse_tgt("<HOLE, HOLE>"), ParseError);
    CHECK_THROWS_AS(parse_tgt_term("HOLE"), ParseError);
    CHECK_THROWS_AS(parse_tgt_ctx("unit"), ParseError);
  }

  TEST_CASE("parse errors report position and expectations") {
    try {
      parse_tgt("\\x. (x\n  y");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 4);
      CHECK(e.expected() == std::vector<std::string>{"')'"});
    }
    try {
      parse_tgt("<HOLE, HOLE>");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.column() == 8);
    }
  }

  TEST_CASE("long output is truncated on request") {
    TgtTerm t = tgt("<unit, <unit, <unit, unit>>>");
    CHECK(print(t, 10) == "<unit, <un...");
  }
}
