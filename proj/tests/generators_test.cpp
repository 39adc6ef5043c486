#include <set>

#include "doctest.h"
#include "fabt/contexts.hpp"
#include "fabt/generators.hpp"
#include "helpers.hpp"

using namespace fabt;
using namespace fabt::testing;

namespace {

unsigned depth(Type t) {
  if (t.is_base()) return 0;
  return 1 + std::max(depth(t.left()), depth(t.right()));
}

bool has_arrow(Type t) {
  if (t.is_base()) return false;
  return t.kind() == TypeKind::Arrow || has_arrow(t.left()) || has_arrow(t.right());
}

std::size_t nodes(const ast::Node& n) {
  std::size_t k = 1;
  for (int i = 0; i < ast::arity(n.kind); ++i) k += nodes(*n.kids[static_cast<std::size_t>(i)]);
  return k;
}

}  // namespace

TEST_SUITE("generators") {
  TEST_CASE("random types respect the depth bound and the arrow switch") {
    Rng rng(3);
    for (int i = 0; i < 500; ++i) {
      const Type t = random_type(rng, 3);
      CHECK(depth(t) <= 3);
      CHECK_FALSE(has_arrow(random_type(rng, 3, false)));
    }
  }

  TEST_CASE("random first-order values are closed values of their type") {
    Rng rng(5);
    for (int i = 0; i < 300; ++i) {
      const Type t = random_type(rng, 3, false);
      const SrcTerm v = random_value(rng, t);
      CHECK(is_src_value(v));
      CHECK(v.closed());
      CHECK(has_type({}, v, t));
    }
  }

  TEST_CASE("small values enumerate in a fixed order") {
    auto printed = [](Type t, std::size_t limit) {
      std::vector<std::string> out;
      for (const SrcTerm& v : small_values(t, limit)) out.push_back(print(v));
      return out;
    };
    CHECK(printed(ty("Bool"), 10) == std::vector<std::string>{"true", "false"});
    CHECK(printed(ty("Unit + Bool"), 10) == std::vector<std::string>{"inl unit", "inr true", "inr false"});
    CHECK(printed(ty("Bool * Bool"), 3).size() == 3);
    for (const char* text : {"Unit -> Bool", "(Bool -> Bool) * (Unit + Bool)", "Bool -> Unit + Bool"})
      for (const SrcTerm& v : small_values(ty(text), 20)) {
        CHECK(v.closed());
        CHECK(has_type({}, v, ty(text)));
      }
  }

  TEST_CASE("generated source terms check at the requested type") {
    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
      const Type t = random_type(rng, 3);
      const SrcTerm term = random_src_term(rng, {}, t);
      INFO(print(term), " : ", to_string(t));
      CHECK(term.closed());
      CHECK(has_type({}, term, t));
    }
  }

  TEST_CASE("generated source terms may use the environment") {
    Rng rng(13);
    const TypingEnv env{{Symbol("f"), ty("Bool -> Unit")}, {Symbol("b"), ty("Bool")}};
    for (int i = 0; i < 100; ++i) {
      const SrcTerm term = random_src_term(rng, env, ty("Unit * Bool"));
      CHECK(has_type(env, term, ty("Unit * Bool")));
    }
  }

  TEST_CASE("generated source contexts take the hole type to the outer type") {
    Rng rng(17);
    for (int i = 0; i < 200; ++i) {
      const Type hole = random_type(rng, 2);
      const SrcCtx c = random_src_ctx(rng, hole, Type::boolean());
      INFO(print(c), " hole: ", to_string(hole));
      CHECK(c.term().closed());
      CHECK_NOTHROW(ctx_typecheck(c, {}, hole, Type::boolean()));
    }
  }

  TEST_CASE("source generation is deterministic per seed") {
    auto sample = [](std::uint64_t seed) {
      Rng rng(seed);
      std::string out;
      for (int i = 0; i < 20; ++i) out += print(random_src_term(rng, {}, random_type(rng, 2))) + "\n";
      return out;
    };
    CHECK(sample(21) == sample(21));
    CHECK(sample(21) != sample(22));
  }

  TEST_CASE("random target contexts are closed with one hole and sized as asked") {
    Rng rng(19);
    for (int i = 0; i < 500; ++i) {
      const TgtCtx c = random_tgt_ctx(rng, 25, 10);
      CHECK(c.term().hole_count() == 1);
      CHECK(c.term().closed());
      const std::size_t n = nodes(c.term().node());
      CHECK(n >= 10);
      CHECK(n <= 25);
    }
  }

  TEST_CASE("enumeration: hand counts for the smallest sizes") {
    // Size 1: the hole. Size 2: four prefix forms and a lambda around it.
    // Size 3: prefix forms over size 2 (4 * 5), a lambda over a size-2
    // context with one binder in scope (5), and a binary form (3) with the
    // hole on either side (2) of one of four closed leaves.
    CHECK(count_tgt_ctxs(1) == 1);
    CHECK(count_tgt_ctxs(2) == 1 + 5);
    CHECK(count_tgt_ctxs(3) == 1 + 5 + 20 + 5 + 24);
  }

  TEST_CASE("enumeration agrees with its count and never repeats") {
    for (unsigned size = 1; size <= 5; ++size) {
      std::set<std::string> seen;
      std::size_t n = 0;
      bool ok = true;
      enumerate_tgt_ctxs(size, [&](const TgtCtx& c) {
        ++n;
        ok = ok && seen.insert(print(c)).second && c.term().closed() && c.term().hole_count() == 1 &&
             nodes(c.term().node()) <= size;
        return true;
      });
      CHECK(ok);
      CHECK(n == count_tgt_ctxs(size));
    }
    std::size_t n6 = 0;
    enumerate_tgt_ctxs(6, [&](const TgtCtx&) {
      ++n6;
      return true;
    });
    CHECK(n6 == count_tgt_ctxs(6));
  }

  TEST_CASE("enumeration starts with the hole and can stop early") {
    std::vector<std::string> first;
    enumerate_tgt_ctxs(6, [&](const TgtCtx& c) {
      first.push_back(print(c));
      return first.size() < 3;
    });
    REQUIRE(first.size() == 3);
    CHECK(first[0] == "HOLE");
  }

  TEST_CASE("probe corpus") {
    std::set<std::string> probes;
    for (const TgtCtx& c : probe_tgt_ctxs()) {
      CHECK(c.term().closed());
      probes.insert(print(c));
    }
    CHECK(print(probe_tgt_ctxs().front()) == "HOLE");
    for (const char* p : {"HOLE true", "HOLE unit", "HOLE false", "fst HOLE", "snd HOLE"}) CHECK(probes.count(p) == 1);
  }
}
