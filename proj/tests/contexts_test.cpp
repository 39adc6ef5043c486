#include "doctest.h"
#include "fabt/compiler.hpp"
#include "fabt/contexts.hpp"
#include "helpers.hpp"

using namespace fabt;
using namespace fabt::testing;

namespace {

LinkSignature unit_to_bool() {
  LinkSignature sig;
  sig.dom1 = sig.dom2 = Type::unit();
  sig.cod1 = sig.cod2 = Type::boolean();
  return sig;
}

}  // namespace

TEST_SUITE("contexts") {
  TEST_CASE("plugging examples") {
    CHECK(plug_tgt(tgt_ctx("HOLE true"), tgt("\\x. x")) == tgt("(\\x. x) true"));
    CHECK(plug_src(SrcCtx::hole(), SrcTerm::unit()) == SrcTerm::unit());
    CHECK(plug_tgt(tgt_ctx("\\x. HOLE"), tgt("x")) == tgt("\\x. x"));
  }

  TEST_CASE("contexts hold exactly one hole") {
    CHECK_THROWS_AS(TgtCtx(tgt("unit")), std::invalid_argument);
    CHECK_THROWS_AS(TgtCtx(TgtTerm::pair(TgtTerm::hole(), TgtTerm::hole())), std::invalid_argument);
    CHECK(compose(tgt_ctx("HOLE true"), tgt_ctx("fst HOLE")).term() == tgt_ctx("(fst HOLE) true").term());
  }

  TEST_CASE("context typing examples") {
    auto r = ctx_typecheck(src_ctx("HOLE true"), {}, ty("Bool -> Bool"));
    CHECK(r.outer_env.empty());
    CHECK(r.outer_type == ty("Bool"));
    auto id = ctx_typecheck(SrcCtx::hole(), {}, ty("Unit * Bool"));
    CHECK(id.outer_type == ty("Unit * Bool"));
    CHECK_THROWS_AS(ctx_typecheck(src_ctx("HOLE; true"), {}, ty("Bool")), TypeError);
  }

  TEST_CASE("binders crossed on the way to the hole leave the outer environment") {
    TypingEnv inner{{Symbol("a"), ty("Bool")}, {Symbol("b"), ty("Unit")}};
    auto r = ctx_typecheck(src_ctx("\\a:Bool. HOLE"), inner, ty("Unit"));
    CHECK(r.outer_env == TypingEnv{{Symbol("b"), ty("Unit")}});
    CHECK(r.outer_type == ty("Bool -> Unit"));
    CHECK_THROWS_AS(ctx_typecheck(src_ctx("\\a:Unit. HOLE"), inner, ty("Unit")), TypeError);
    auto c = ctx_typecheck(src_ctx("case inl true of inl a => HOLE | inr z => b"), inner, ty("Unit"));
    CHECK(c.outer_type == ty("Unit"));
    CHECK_THROWS_AS(ctx_typecheck(src_ctx("case inl unit of inl a => HOLE | inr z => b"), inner, ty("Unit")), TypeError);
  }

  TEST_CASE("context scoping examples") {
    CHECK(ctx_well_scoped(tgt_ctx("HOLE true"), {}).empty());
    CHECK(ctx_well_scoped(tgt_ctx("\\x. HOLE"), {Symbol("x")}).empty());
    CHECK_THROWS_AS(ctx_well_scoped(tgt_ctx("y HOLE"), {}), ScopeError);
    CHECK(ctx_well_scoped(tgt_ctx("\\x. HOLE"), {Symbol("x"), Symbol("w")}) == ScopeEnv{Symbol("w")});
  }

  TEST_CASE("source linking: one-way call") {
    const SrcTerm t1 = src("\\a:Unit. x2 a");
    const SrcTerm t2 = src("\\b:Unit. true");
    const SrcTerm linked = link_src(t1, unit_to_bool(), t2);
    CHECK(typecheck({}, linked) == ty("(Unit -> Bool) * (Unit -> Bool)"));
    auto out = src_eval(SrcTerm::app(SrcTerm::proj1(linked), SrcTerm::unit()), 10000);
    REQUIRE(out.terminated());
    CHECK(out.value == SrcTerm::truth());
  }

  TEST_CASE("source linking: the built term has the documented shape") {
    const SrcTerm linked = link_src(src("\\a:Unit. x2 a"), unit_to_bool(), src("\\b:Unit. true"));
    const SrcTerm expected = src(
        "fix [Unit -> (Unit -> Bool) * (Unit -> Bool)] (\\p:Unit -> (Unit -> Bool) * (Unit -> Bool). \\_:Unit. "
        "<\\x1':Unit. (\\x2:Unit -> Bool. \\a:Unit. x2 a) (snd (p unit)) x1', "
        "\\x2':Unit. (\\x1:Unit -> Bool. \\b:Unit. true) (fst (p unit)) x2'>) unit");
    CHECK(linked == expected);
  }

  TEST_CASE("source linking: mutual recursion diverges") {
    const SrcTerm linked = link_src(src("\\a:Unit. x2 a"), unit_to_bool(), src("\\b:Unit. x1 b"));
    auto out = src_eval(SrcTerm::app(SrcTerm::proj1(linked), SrcTerm::unit()), 10000);
    CHECK(out.status == SrcOutcome::Status::FuelExhausted);
  }

  TEST_CASE("source linking checks its preconditions") {
    CHECK_THROWS_AS(link_src(src("\\a:Unit. x2 a"), unit_to_bool(), src("\\b:Unit. unit")), TypeError);
    CHECK_THROWS_AS(link_src(src("x2"), unit_to_bool(), src("\\b:Unit. true")), TypeError);
  }

  TEST_CASE("linker binders avoid the components' free names") {
    LinkSignature sig = unit_to_bool();
    sig.x2 = Symbol("p");
    const SrcTerm linked = link_src(src("\\a:Unit. p a"), sig, src("\\b:Unit. true"));
    CHECK(typecheck({}, linked) == ty("(Unit -> Bool) * (Unit -> Bool)"));
    auto out = src_eval(SrcTerm::app(SrcTerm::proj1(linked), SrcTerm::unit()), 10000);
    REQUIRE(out.terminated());
    CHECK(out.value == SrcTerm::truth());
  }

  TEST_CASE("target linking mirrors the source") {
    const SrcTerm t1 = src("\\a:Unit. x2 a");
    const SrcTerm t2 = src("\\b:Unit. true");
    const TgtTerm linked = link_tgt(erase(t1), erase(t2));
    CHECK(well_scoped({}, linked));
    auto out = tgt_eval(TgtTerm::app(TgtTerm::proj1(linked), TgtTerm::unit()), 100000);
    REQUIRE(out.terminated());
    CHECK(out.value == TgtTerm::truth());
    CHECK(alpha_equal(erase(link_src(t1, unit_to_bool(), t2)), linked));

    const TgtTerm loop = link_tgt(tgt("\\a. x2 a"), tgt("\\b. x1 b"));
    CHECK(tgt_eval(TgtTerm::app(TgtTerm::proj1(loop), TgtTerm::unit()), 100000).status ==
          TgtOutcome::Status::FuelExhausted);
    CHECK_THROWS_AS(link_tgt(tgt("\\a. y a"), tgt("\\b. true")), ScopeError);
  }

  TEST_CASE("linking context") {
    const TgtTerm t2 = tgt("\\b. true");
    const TgtCtx c = linking_ctx(t2);
    CHECK(c.term().hole_count() == 1);
    CHECK(plug_tgt(c, tgt("\\a. x2 a")) == link_tgt(tgt("\\a. x2 a"), t2));
    CHECK(ctx_well_scoped(c, {Symbol("x2")}).empty());
  }
}
