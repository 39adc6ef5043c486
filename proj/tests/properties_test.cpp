#include "doctest.h"
#include "fabt/backtranslation.hpp"
#include "fabt/compiler.hpp"
#include "fabt/contexts.hpp"
#include "fabt/generators.hpp"
#include "helpers.hpp"

using namespace fabt;
using namespace fabt::testing;

namespace {

constexpr std::uint64_t kFuel = 20000;

// Closed random target term: a random context filled with a random erased
// source term, so it mixes well-behaved code with arbitrary misuse.
TgtTerm random_tgt_term(Rng& rng) {
  const Type t = random_type(rng, 2);
  SrcGenOptions opts;
  opts.size = 8;
  return plug_tgt(random_tgt_ctx(rng, 12), erase(random_src_term(rng, {}, t, opts)));
}

// Evaluation context around wrong: E ::= [] | E t | v E | fst E | <E, t> |
// <v, E> | inl E | E; t | if E then t else t | case E of ...
TgtTerm random_eval_ctx_around_wrong(Rng& rng, unsigned depth) {
  using T = TgtTerm;
  if (depth == 0) return T::wrong();
  const T inner = random_eval_ctx_around_wrong(rng, depth - 1);
  const T value = rng.chance(1, 2) ? T::truth() : T::lam("z", T::var("z"));
  const T other = rng.chance(1, 2) ? T::unit() : T::app(T::lam("z", T::var("z")), T::falsity());
  switch (rng.below(9)) {
    case 0:
      return T::app(inner, other);
    case 1:
      return T::app(value, inner);
    case 2:
      return T::proj1(inner);
    case 3:
      return T::pair(inner, other);
    case 4:
      return T::pair(value, inner);
    case 5:
      return T::inl(inner);
    case 6:
      return T::seq(inner, other);
    case 7:
      return T::if_then_else(inner, other, other);
    default:
      return T::case_of(inner, Symbol("a"), other, Symbol("b"), other);
  }
}

// UVal_n value built from constructors only: no unk tag, no functions.
SrcTerm random_first_order_uval(Rng& rng, unsigned n) {
  const unsigned m = n - 1;
  const std::size_t choices = m >= 1 ? 4 : 2;
  switch (rng.below(choices)) {
    case 0:
      return in_uval(UValTag::Unit, m, SrcTerm::unit());
    case 1:
      return in_uval(UValTag::Bool, m, SrcTerm::boolean(rng.chance(1, 2)));
    case 2:
      return in_uval(UValTag::Prod, m, SrcTerm::pair(random_first_order_uval(rng, m), random_first_order_uval(rng, m)));
    default: {
      const SrcTerm payload = random_first_order_uval(rng, m);
      return in_uval(UValTag::Sum, m, rng.chance(1, 2) ? SrcTerm::inl(payload) : SrcTerm::inr(payload));
    }
  }
}

unsigned depth(Type t) {
  if (t.is_base()) return 0;
  return 1 + std::max(depth(t.left()), depth(t.right()));
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("source: progress and preservation along every step") {
    Rng rng(101);
    for (int i = 0; i < 300; ++i) {
      const Type t = random_type(rng, 2);
      SrcTerm term = random_src_term(rng, {}, t);
      CAPTURE(print(term));
      for (int step = 0; step < 200; ++step) {
        const auto r = src_step(term);
        REQUIRE(r.status != StepStatus::Stuck);
        if (r.status == StepStatus::AlreadyValue) {
          CHECK(is_src_value(term));
          break;
        }
        term = r.term;
        REQUIRE(has_type({}, term, t));
      }
    }
  }

  TEST_CASE("evaluation is deterministic and agrees with iterated steps") {
    Rng rng(103);
    for (int i = 0; i < 300; ++i) {
      const SrcTerm s = random_src_term(rng, {}, random_type(rng, 2));
      const SrcOutcome a = src_eval(s, kFuel);
      const SrcOutcome b = src_eval(s, kFuel);
      CHECK(a.status == b.status);
      CHECK(a.steps == b.steps);
      if (a.terminated()) CHECK(a.value == b.value);
      SrcTerm last;
      const long long k = iterate_steps(s, static_cast<long long>(kFuel), src_step, &last);
      CHECK(k == (a.terminated() ? static_cast<long long>(a.steps) : -1));
      if (a.terminated()) CHECK(last == a.value);

      const TgtTerm t = random_tgt_term(rng);
      const TgtOutcome x = tgt_eval(t, kFuel);
      const TgtOutcome y = tgt_eval(t, kFuel);
      CHECK(x.status == y.status);
      CHECK(x.steps == y.steps);
      if (x.terminated()) CHECK(x.value == y.value);
      TgtTerm tlast;
      const long long tk = iterate_steps(t, static_cast<long long>(kFuel), tgt_step, &tlast);
      if (x.status == TgtOutcome::Status::FuelExhausted) {
        CHECK(tk == -1);
      } else {
        CHECK(tk == static_cast<long long>(x.steps));
      }
    }
  }

  TEST_CASE("fuel monotonicity") {
    Rng rng(107);
    for (int i = 0; i < 300; ++i) {
      const SrcTerm s = random_src_term(rng, {}, random_type(rng, 2));
      const SrcOutcome a = src_eval(s, kFuel);
      if (a.terminated()) {
        const SrcOutcome exact = src_eval(s, a.steps);
        CHECK(exact.terminated());
        CHECK(exact.value == a.value);
        const SrcOutcome more = src_eval(s, 10 * kFuel);
        CHECK(more.steps == a.steps);
        if (a.steps > 0) CHECK(src_eval(s, a.steps - 1).status == SrcOutcome::Status::FuelExhausted);
      } else {
        CHECK(a.steps == kFuel);
        CHECK(src_eval(s, kFuel / 2).status == SrcOutcome::Status::FuelExhausted);
      }

      const TgtTerm t = random_tgt_term(rng);
      const TgtOutcome x = tgt_eval(t, kFuel);
      if (x.status != TgtOutcome::Status::FuelExhausted) {
        const TgtOutcome exact = tgt_eval(t, x.steps);
        CHECK(exact.status == x.status);
        CHECK(exact.steps == x.steps);
        if (x.steps > 0) CHECK(tgt_eval(t, x.steps - 1).status == TgtOutcome::Status::FuelExhausted);
      }
    }
  }

  TEST_CASE("wrong in evaluation position takes the whole program in one step") {
    Rng rng(109);
    for (int i = 0; i < 500; ++i) {
      const TgtTerm t = random_eval_ctx_around_wrong(rng, 1 + static_cast<unsigned>(rng.below(6)));
      CAPTURE(print(t));
      const auto r = tgt_step(t);
      REQUIRE(r.status == StepStatus::Stepped);
      CHECK(r.term == TgtTerm::wrong());
      const TgtOutcome out = tgt_eval(t, 10);
      CHECK(out.status == TgtOutcome::Status::Wrong);
      CHECK(out.steps == 1);
    }
  }

  TEST_CASE("closed inputs give closed outputs") {
    Rng rng(113);
    for (int i = 0; i < 200; ++i) {
      const Type t = random_type(rng, 2);
      const SrcTerm s = random_src_term(rng, {}, t);
      CHECK(erase(s).closed());
      CHECK(compile(s, t).closed());
      const TgtTerm u = random_tgt_term(rng);
      REQUIRE(u.closed());
      CHECK(emulate(1 + static_cast<unsigned>(rng.below(3)), u).closed());
      const TgtCtx c = random_tgt_ctx(rng, 12);
      CHECK(backtranslate(c, t, 1 + static_cast<unsigned>(rng.below(3))).term().closed());
    }
  }

  TEST_CASE("print and parse roundtrip") {
    Rng rng(127);
    SrcGenOptions opts;
    for (int i = 0; i < 10000; ++i) {
      opts.size = 4 + static_cast<unsigned>(rng.below(20));
      const SrcTerm s = random_src_term(rng, {}, random_type(rng, 3), opts);
      const SrcTerm back = parse_src_term(print(s));
      if (!alpha_equal(back, s)) FAIL_CHECK("source roundtrip: ", print(s));
    }
    for (int i = 0; i < 10000; ++i) {
      const TgtCtx c = random_tgt_ctx(rng, 25);
      if (!alpha_equal(parse_tgt_ctx(print(c)).term(), c.term())) FAIL_CHECK("target roundtrip: ", print(c));
      const TgtTerm t = random_tgt_term(rng);
      if (!alpha_equal(parse_tgt_term(print(t)), t)) FAIL_CHECK("target roundtrip: ", print(t));
    }
  }

  TEST_CASE("plugging a typed term into a typed context gives a typed program") {
    Rng rng(131);
    for (int i = 0; i < 300; ++i) {
      const Type hole = random_type(rng, 2);
      const SrcCtx c = random_src_ctx(rng, hole, Type::boolean());
      const SrcTerm t = random_src_term(rng, {}, hole);
      const SrcTerm p = plug_src(c, t);
      CAPTURE(print(p));
      CHECK(p.closed());
      CHECK(has_type({}, p, Type::boolean()));

      const TgtCtx tc = random_tgt_ctx(rng, 15);
      CHECK(ctx_well_scoped(tc, {}).empty());
      CHECK(plug_tgt(tc, erase(t)).closed());
    }
  }

  TEST_CASE("erasure preserves termination and base values") {
    Rng rng(137);
    for (int i = 0; i < 300; ++i) {
      const Type t = rng.chance(1, 2) ? Type::boolean() : Type::unit();
      const SrcTerm s = random_src_term(rng, {}, t);
      const SrcOutcome a = src_eval(s, kFuel);
      const TgtOutcome b = tgt_eval(erase(s), 10 * kFuel);
      CAPTURE(print(s));
      CHECK(b.status != TgtOutcome::Status::Wrong);
      if (a.terminated() && b.terminated()) CHECK(erase(a.value) == b.value);
      if (a.terminated()) CHECK(b.terminated());
    }
  }

  TEST_CASE("downgrade after upgrade returns first-order UVal values unchanged") {
    Rng rng(139);
    for (int i = 0; i < 200; ++i) {
      const unsigned n = 1 + static_cast<unsigned>(rng.below(4));
      const unsigned d = static_cast<unsigned>(rng.below(4));
      const SrcTerm u = random_first_order_uval(rng, n);
      REQUIRE(has_type({}, u, uval_type(n)));
      const SrcTerm round = SrcTerm::app(downgrade_term(n, d), SrcTerm::app(upgrade_term(n, d), u));
      const SrcOutcome out = src_eval(round, kFuel);
      REQUIRE(out.terminated());
      CHECK(alpha_equal(out.value, u));
    }
  }

  TEST_CASE("back-translation termination is monotone in depth") {
    Rng rng(149);
    std::size_t terminated = 0;
    for (int i = 0; i < 60; ++i) {
      const Type t = random_type(rng, 1);
      SrcGenOptions opts;
      opts.size = 6;
      opts.allow_fix = false;
      const SrcTerm term = random_src_term(rng, {}, t, opts);
      const TgtCtx c = random_tgt_ctx(rng, 8);
      bool seen = false;
      for (unsigned n = 1; n <= 5; ++n) {
        const bool now = src_eval(plug_src(backtranslate(c, t, n), term), 200000).terminated();
        CAPTURE(print(c));
        CAPTURE(n);
        if (seen) CHECK(now);
        seen = seen || now;
      }
      terminated += seen ? 1 : 0;
    }
    CHECK(terminated > 0);
  }

  TEST_CASE("emulated terms are typed at their level") {
    Rng rng(151);
    for (int i = 0; i < 1000; ++i) {
      const TgtTerm t = random_tgt_term(rng);
      const unsigned n = 1 + static_cast<unsigned>(rng.below(3));
      if (!has_type({}, emulate(n, t), uval_type(n))) FAIL_CHECK("emulate ", n, ": ", print(t));
    }
  }

  TEST_CASE("inject then extract returns first-order values") {
    Rng rng(157);
    for (int i = 0; i < 200; ++i) {
      const Type t = random_type(rng, 3, false);
      const unsigned n = depth(t) + 1 + static_cast<unsigned>(rng.below(6 - depth(t)));
      const SrcTerm v = random_value(rng, t);
      const SrcTerm round = SrcTerm::app(extract_term(t, n), SrcTerm::app(inject_term(t, n), v));
      const SrcOutcome out = src_eval(round, kFuel);
      REQUIRE(out.terminated());
      CHECK(alpha_equal(out.value, v));
    }
  }
}
