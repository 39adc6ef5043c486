#include "doctest.h"
#include "fabt/backtranslation.hpp"
#include "fabt/compiler.hpp"
#include "fabt/contexts.hpp"
#include "helpers.hpp"

using namespace fabt;
using namespace fabt::testing;

namespace {

SrcOutcome run(const SrcTerm& t, std::uint64_t fuel = 1000000) { return src_eval(t, fuel); }

SrcTerm value_of(const SrcTerm& t) {
  auto out = run(t);
  REQUIRE(out.terminated());
  return out.value;
}

}  // namespace

TEST_SUITE("backtranslation") {
  TEST_CASE("UVal types") {
    CHECK(uval_type(0) == Type::unit());
    CHECK(uval_type(1) == ty("Unit + Unit + Bool + Unit * Unit + (Unit + Unit) + (Unit -> Unit)"));
    const Type u2 = uval_type(2);
    const Type u1 = uval_type(1);
    CHECK(uval_slot_type(UValTag::Prod, 1) == Type::prod(u1, u1));
    CHECK(uval_slot_type(UValTag::Arrow, 1) == Type::arrow(u1, u1));
    CHECK(u2.right().right().right().left() == Type::prod(u1, u1));
  }

  TEST_CASE("tag names roundtrip") {
    for (UValTag t : {UValTag::Unk, UValTag::Unit, UValTag::Bool, UValTag::Prod, UValTag::Sum, UValTag::Arrow})
      CHECK(parse_uval_tag(to_string(t)) == t);
    CHECK_FALSE(parse_uval_tag("Nat").has_value());
  }

  TEST_CASE("injections into UVal") {
    CHECK(in_uval(UValTag::Unk, 0) == src("inl unit"));
    CHECK(in_uval(UValTag::Bool, 0, SrcTerm::truth()) == src("inr inr inl true"));
    CHECK(in_uval(UValTag::Arrow, 0, src("\\q:Unit. q")) == src("inr inr inr inr inr (\\q:Unit. q)"));
    CHECK(has_type({}, in_uval(UValTag::Prod, 0, src("<unit, unit>")), uval_type(1)));
    CHECK(has_type({}, in_uval(UValTag::Sum, 2, SrcTerm::inl(unk_uval(2))), uval_type(3)));
    // Without functions an injection fits every level; a function payload pins it.
    const SrcTerm id0 = in_uval(UValTag::Arrow, 0, src("\\v:Unit. v"));
    CHECK(has_type({}, in_uval(UValTag::Sum, 0, SrcTerm::inl(id0)), uval_type(2)));
    CHECK_FALSE(has_type({}, in_uval(UValTag::Sum, 2, SrcTerm::inl(id0)), uval_type(3)));
  }

  TEST_CASE("unknown values") {
    CHECK(unk_uval(0) == SrcTerm::unit());
    CHECK(unk_uval(1) == in_uval(UValTag::Unk, 0));
    CHECK(has_type({}, unk_uval(5), uval_type(5)));
  }

  TEST_CASE("omega diverges at any type") {
    CHECK(omega(Type::boolean()) == src("fix [Unit -> Bool] (\\x:Unit -> Bool. x) unit"));
    CHECK(typecheck({}, omega(Type::boolean())) == Type::boolean());
    CHECK(run(omega(Type::boolean()), 100000).status == SrcOutcome::Status::FuelExhausted);
    CHECK(run(SrcTerm::seq(SrcTerm::unit(), omega(Type::unit())), 100000).status == SrcOutcome::Status::FuelExhausted);
  }

  TEST_CASE("destructors") {
    CHECK(value_of(SrcTerm::app(case_uval(UValTag::Bool, 0), in_uval(UValTag::Bool, 0, SrcTerm::truth()))) == SrcTerm::truth());
    CHECK(run(SrcTerm::app(case_uval(UValTag::Bool, 0), unk_uval(1))).status == SrcOutcome::Status::FuelExhausted);
    CHECK(typecheck({}, case_uval(UValTag::Prod, 2)) == Type::arrow(uval_type(3), Type::prod(uval_type(2), uval_type(2))));
    CHECK(case_uval_type(UValTag::Arrow, 1) == Type::arrow(uval_type(2), Type::arrow(uval_type(1), uval_type(1))));
    for (UValTag t : {UValTag::Unit, UValTag::Bool, UValTag::Prod, UValTag::Sum, UValTag::Arrow})
      CHECK(typecheck({}, case_uval(t, 1)) == case_uval_type(t, 1));
  }

  TEST_CASE("arrow destructor applies the payload") {
    const SrcTerm f = in_uval(UValTag::Arrow, 1, SrcTerm::lam("v", uval_type(1), in_uval(UValTag::Unit, 0, SrcTerm::unit())));
    CHECK(value_of(SrcTerm::apply(case_uval(UValTag::Arrow, 1), f, unk_uval(1))) == in_uval(UValTag::Unit, 0, SrcTerm::unit()));
  }

  TEST_CASE("upgrade and downgrade examples") {
    CHECK(value_of(SrcTerm::app(downgrade_term(0, 1), in_uval(UValTag::Bool, 0, SrcTerm::truth()))) == SrcTerm::unit());
    CHECK(value_of(SrcTerm::app(downgrade_term(1, 1), in_uval(UValTag::Bool, 1, SrcTerm::truth()))) ==
          in_uval(UValTag::Bool, 0, SrcTerm::truth()));
    CHECK(value_of(SrcTerm::app(upgrade_term(0, 1), SrcTerm::unit())) == unk_uval(1));
    CHECK(value_of(SrcTerm::app(upgrade_term(1, 2), in_uval(UValTag::Bool, 0, SrcTerm::falsity()))) ==
          in_uval(UValTag::Bool, 2, SrcTerm::falsity()));
  }

  TEST_CASE("upgrade and downgrade typing") {
    for (unsigned n = 0; n <= 3; ++n)
      for (unsigned d = 0; d <= 2; ++d) {
        CAPTURE(n);
        CAPTURE(d);
        CHECK(typecheck({}, downgrade_term(n, d)) == Type::arrow(uval_type(n + d), uval_type(n)));
        CHECK(has_type({}, upgrade_term(n, d), Type::arrow(uval_type(n), uval_type(n + d))));
      }
  }

  TEST_CASE("emulate examples") {
    CHECK(emulate(0, TgtTerm::unit()) ==
          SrcTerm::app(downgrade_term(0, 1), in_uval(UValTag::Unit, 0, SrcTerm::unit())));
    CHECK(value_of(emulate(0, TgtTerm::unit())) == SrcTerm::unit());
    CHECK(value_of(emulate(1, TgtTerm::truth())) == in_uval(UValTag::Bool, 0, SrcTerm::truth()));
    CHECK(emulate(3, TgtTerm::wrong()) == omega(uval_type(3)));
    CHECK(emulate(2, tgt("x")) == src("x"));
  }

  TEST_CASE("emulated programs imitate the target") {
    CHECK(value_of(emulate(2, tgt("(\\x. x) true"))) == in_uval(UValTag::Bool, 1, SrcTerm::truth()));
    CHECK(value_of(emulate(2, tgt("if false then unit else true"))) == in_uval(UValTag::Bool, 1, SrcTerm::truth()));
    CHECK(value_of(emulate(3, tgt("snd <unit, inl true>"))) ==
          in_uval(UValTag::Sum, 2, SrcTerm::inl(in_uval(UValTag::Bool, 1, SrcTerm::truth()))));
    CHECK(run(emulate(2, tgt("fst true"))).status == SrcOutcome::Status::FuelExhausted);
    CHECK(run(emulate(2, tgt("true; unit"))).status == SrcOutcome::Status::FuelExhausted);
  }

  TEST_CASE("emulated terms are typed at UVal") {
    TypingEnv env{{Symbol("x"), uval_type(2)}};
    CHECK(typecheck(env, emulate(2, tgt("\\y. case x of inl a => y a | inr b => <b, x>"))) == uval_type(2));
    CHECK(typecheck({}, emulate(1, tgt("if true then wrong else unit"))) == uval_type(1));
  }

  TEST_CASE("emulated contexts") {
    CHECK(emulate_ctx(3, TgtCtx::hole()).term() == SrcTerm::hole());
    const SrcCtx c = emulate_ctx(1, tgt_ctx("HOLE true"));
    const SrcTerm expected = SrcTerm::apply(case_uval(UValTag::Arrow, 1), SrcTerm::app(upgrade_term(1, 1), SrcTerm::hole()),
                                            emulate(1, TgtTerm::truth()));
    CHECK(c.term() == expected);
    auto r = ctx_typecheck(c, {}, uval_type(1));
    CHECK(r.outer_type == uval_type(1));
  }

  TEST_CASE("inject and extract examples") {
    CHECK(value_of(SrcTerm::app(inject_term(Type::boolean(), 1), SrcTerm::truth())) ==
          in_uval(UValTag::Bool, 0, SrcTerm::truth()));
    CHECK(value_of(SrcTerm::app(extract_term(Type::boolean(), 1), in_uval(UValTag::Bool, 0, SrcTerm::truth()))) ==
          SrcTerm::truth());
    CHECK(run(SrcTerm::app(extract_term(Type::boolean(), 0), SrcTerm::unit())).status == SrcOutcome::Status::FuelExhausted);
  }

  TEST_CASE("inject sends left injections to the left slot") {
    const Type s = ty("Bool + Unit");
    CHECK(value_of(SrcTerm::app(inject_term(s, 2), src("inl true"))) ==
          in_uval(UValTag::Sum, 1, SrcTerm::inl(in_uval(UValTag::Bool, 0, SrcTerm::truth()))));
    CHECK(value_of(SrcTerm::app(extract_term(s, 2), SrcTerm::app(inject_term(s, 2), src("inr unit")))) == src("inr unit"));
  }

  TEST_CASE("injected functions keep their behavior") {
    const Type t = ty("Bool -> Bool");
    const SrcTerm neg = src("\\b:Bool. if b then false else true");
    const SrcTerm back = SrcTerm::app(extract_term(t, 2), SrcTerm::app(inject_term(t, 2), neg));
    CHECK(value_of(SrcTerm::app(back, SrcTerm::truth())) == SrcTerm::falsity());
  }

  TEST_CASE("inject and extract typing") {
    for (const char* text : {"Unit", "Bool", "Unit * Bool", "Bool + Unit", "Unit -> Bool", "(Bool -> Unit) -> Bool * Bool"}) {
      for (unsigned n = 0; n <= 3; ++n) {
        CAPTURE(text);
        CAPTURE(n);
        CHECK(has_type({}, inject_term(ty(text), n), Type::arrow(ty(text), uval_type(n))));
        CHECK(has_type({}, extract_term(ty(text), n), Type::arrow(uval_type(n), ty(text))));
      }
    }
  }

  TEST_CASE("back-translation examples") {
    const SrcCtx id = backtranslate(TgtCtx::hole(), Type::boolean(), 1);
    CHECK(value_of(plug_src(id, SrcTerm::truth())) == in_uval(UValTag::Bool, 0, SrcTerm::truth()));
    auto r = ctx_typecheck(id, {}, Type::boolean(), uval_type(1));
    CHECK(r.outer_env.empty());
    CHECK(r.outer_type == uval_type(1));
    CHECK_THROWS_AS(ctx_typecheck(id, {}, Type::boolean(), uval_type(0)), TypeError);
  }

  TEST_CASE("back-translated context mirrors the compiled program") {
    const TgtCtx c = tgt_ctx("HOLE true");
    const SrcTerm t = src("\\x:Unit. x");
    const Type ut = ty("Unit -> Unit");
    for (std::uint64_t fuel : {10u, 1000u, 100000u}) {
      CAPTURE(fuel);
      CHECK_FALSE(tgt_eval(plug_tgt(c, compile(t, ut)), fuel).terminated());
      for (unsigned n = 1; n <= 4; ++n) {
        CAPTURE(n);
        const SrcCtx b = backtranslate(c, ut, n);
        CHECK(ctx_typecheck(b, {}, ut, uval_type(n)).outer_type == uval_type(n));
        CHECK_FALSE(src_eval(plug_src(b, t), fuel).terminated());
      }
    }
  }

  TEST_CASE("back-translation rejects degenerate input") {
    CHECK_THROWS_AS(backtranslate(TgtCtx::hole(), Type::unit(), 0), std::invalid_argument);
    CHECK_THROWS_AS(backtranslate(tgt_ctx("y HOLE"), Type::unit(), 1), ScopeError);
  }

  TEST_CASE("deep levels stay cheap to build and check") {
    const SrcTerm d = downgrade_term(200, 3);
    CHECK(typecheck({}, d) == Type::arrow(uval_type(203), uval_type(200)));
    const SrcCtx b = backtranslate(tgt_ctx("HOLE true"), ty("Bool -> Bool"), 2000);
    CHECK(ctx_typecheck(b, {}, ty("Bool -> Bool"), uval_type(2000)).outer_type == uval_type(2000));
  }
}
