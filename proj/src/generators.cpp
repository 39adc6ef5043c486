#include "fabt/generators.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "fabt/syntax.hpp"

namespace fabt {

Type random_type(Rng& rng, unsigned max_depth, bool allow_arrows) {
  if (max_depth == 0 || rng.chance(1, 3)) return rng.chance(1, 2) ? Type::unit() : Type::boolean();
  const std::size_t kinds = allow_arrows ? 3 : 2;
  const Type a = random_type(rng, max_depth - 1, allow_arrows);
  const Type b = random_type(rng, max_depth - 1, allow_arrows);
  switch (rng.below(kinds)) {
    case 0:
      return Type::prod(a, b);
    case 1:
      return Type::sum(a, b);
    default:
      return Type::arrow(a, b);
  }
}

SrcTerm random_value(Rng& rng, Type t) {
  switch (t.kind()) {
    case TypeKind::Unit:
      return SrcTerm::unit();
    case TypeKind::Bool:
      return SrcTerm::boolean(rng.chance(1, 2));
    case TypeKind::Prod: {
      const SrcTerm a = random_value(rng, t.left());
      return SrcTerm::pair(a, random_value(rng, t.right()));
    }
    case TypeKind::Sum:
      return rng.chance(1, 2) ? SrcTerm::inl(random_value(rng, t.left())) : SrcTerm::inr(random_value(rng, t.right()));
    case TypeKind::Arrow:
      break;
  }
  throw std::invalid_argument("random_value needs a first-order type, got " + to_string(t));
}

std::vector<SrcTerm> small_values(Type t, std::size_t limit) {
  std::vector<SrcTerm> out;
  if (limit == 0) return out;
  switch (t.kind()) {
    case TypeKind::Unit:
      out.push_back(SrcTerm::unit());
      break;
    case TypeKind::Bool:
      out.push_back(SrcTerm::truth());
      if (limit > 1) out.push_back(SrcTerm::falsity());
      break;
    case TypeKind::Prod: {
      const auto ls = small_values(t.left(), limit);
      const auto rs = small_values(t.right(), limit);
      for (const SrcTerm& l : ls)
        for (const SrcTerm& r : rs)
          if (out.size() < limit) out.push_back(SrcTerm::pair(l, r));
      break;
    }
    case TypeKind::Sum: {
      for (const SrcTerm& l : small_values(t.left(), limit))
        if (out.size() < limit) out.push_back(SrcTerm::inl(l));
      for (const SrcTerm& r : small_values(t.right(), limit))
        if (out.size() < limit) out.push_back(SrcTerm::inr(r));
      break;
    }
    case TypeKind::Arrow:
      for (const SrcTerm& r : small_values(t.right(), limit)) out.push_back(SrcTerm::lam("_", t.left(), r));
      break;
  }
  return out;
}

namespace {

class SrcGen {
 public:
  SrcGen(Rng& rng, const SrcGenOptions& opts) : rng_(rng), opts_(opts) {}

  void bind(Symbol x, Type t) { scope_.emplace_back(x, t); }

  SrcTerm gen(Type t, unsigned budget) {
    if (budget <= 1 || rng_.chance(1, 5)) return leaf(t, budget);
    const unsigned rest = budget - 1;
    switch (rng_.below(opts_.allow_fix && t.kind() == TypeKind::Arrow ? 8 : 7)) {
      case 0:
      case 1:
        return intro(t, rest);
      case 2: {
        const Type s = aux_type();
        const auto [a, b] = split(rest);
        const SrcTerm fn = gen(Type::arrow(s, t), a);
        return SrcTerm::app(fn, gen(s, b));
      }
      case 3: {
        const Type s = aux_type();
        return rng_.chance(1, 2) ? SrcTerm::proj1(gen(Type::prod(t, s), rest)) : SrcTerm::proj2(gen(Type::prod(s, t), rest));
      }
      case 4: {
        const Type l = aux_type();
        const Type r = aux_type();
        const auto [a, bc] = split(rest);
        const auto [b, c] = split(bc);
        const SrcTerm scrut = gen(Type::sum(l, r), a);
        const Symbol x = fresh();
        const SrcTerm left = under(x, l, [&] { return gen(t, b); });
        const Symbol y = fresh();
        const SrcTerm right = under(y, r, [&] { return gen(t, c); });
        return SrcTerm::case_of(scrut, x, left, y, right);
      }
      case 5: {
        const auto [a, bc] = split(rest);
        const auto [b, c] = split(bc);
        const SrcTerm cond = gen(Type::boolean(), a);
        const SrcTerm yes = gen(t, b);
        return SrcTerm::if_then_else(cond, yes, gen(t, c));
      }
      case 6: {
        const auto [a, b] = split(rest);
        const SrcTerm first = gen(Type::unit(), a);
        return SrcTerm::seq(first, gen(t, b));
      }
      default: {
        // fix [t] (λf:t. λx:dom. body)
        const Symbol f = fresh();
        const Symbol x = fresh();
        // Half the bodies make a guarded recursive call, so some terms diverge.
        const SrcTerm body = under(f, t, [&] {
          return under(x, t.left(), [&] {
            if (rng_.chance(1, 2)) return gen(t.right(), rest);
            const auto [a, bc] = split(rest);
            const auto [b, c] = split(bc);
            const SrcTerm cond = gen(Type::boolean(), a);
            const SrcTerm call = SrcTerm::app(SrcTerm::var(f), gen(t.left(), b));
            return SrcTerm::if_then_else(cond, call, gen(t.right(), c));
          });
        });
        return SrcTerm::fix(t.left(), t.right(), SrcTerm::lam(f, t, SrcTerm::lam(x, t.left(), body)));
      }
    }
  }

  // Eliminates `inner` (of type have) with random observations until the
  // result has type want.
  SrcTerm observe(Type have, Type want, unsigned budget, const SrcTerm& inner) {
    if (have == want && (have.depth() == 0 || rng_.chance(1, 3))) return inner;
    const unsigned part = budget / 2 + 1;
    switch (have.kind()) {
      case TypeKind::Arrow:
        return observe(have.right(), want, budget, SrcTerm::app(inner, gen(have.left(), part)));
      case TypeKind::Prod:
        return rng_.chance(1, 2) ? observe(have.left(), want, budget, SrcTerm::proj1(inner))
                                 : observe(have.right(), want, budget, SrcTerm::proj2(inner));
      case TypeKind::Sum: {
        const Symbol x = fresh();
        const SrcTerm l = under(x, have.left(), [&] { return observe(have.left(), want, part, SrcTerm::var(x)); });
        const Symbol y = fresh();
        const SrcTerm r = under(y, have.right(), [&] { return observe(have.right(), want, part, SrcTerm::var(y)); });
        return SrcTerm::case_of(inner, x, l, y, r);
      }
      case TypeKind::Bool: {
        const SrcTerm yes = gen(want, part);
        return SrcTerm::if_then_else(inner, yes, gen(want, part));
      }
      case TypeKind::Unit:
        return SrcTerm::seq(inner, gen(want, part));
    }
    return inner;
  }

  // (λx:have. body) inner, with body of type want mentioning x.
  SrcTerm bind_and_use(Type have, Type want, unsigned budget, const SrcTerm& inner) {
    const Symbol x = fresh();
    const SrcTerm body = under(x, have, [&] {
      const SrcTerm use = observe(have, want, budget / 2 + 1, SrcTerm::var(x));
      return rng_.chance(1, 2) ? use : gen(want, budget);
    });
    return SrcTerm::app(SrcTerm::lam(x, have, body), inner);
  }

 private:
  Type aux_type() { return random_type(rng_, opts_.aux_type_depth); }

  std::pair<unsigned, unsigned> split(unsigned n) {
    if (n < 2) return {1, 1};
    const unsigned a = static_cast<unsigned>(rng_.between(1, n - 1));
    return {a, n - a};
  }

  Symbol fresh() { return Symbol("a" + std::to_string(counter_++)); }

  template <class F>
  SrcTerm under(Symbol x, Type t, F body) {
    scope_.emplace_back(x, t);
    SrcTerm r = body();
    scope_.pop_back();
    return r;
  }

  SrcTerm leaf(Type t, unsigned budget) {
    std::vector<Symbol> vars;
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      bool shadowed = false;
      for (auto in = scope_.rbegin(); in != it; ++in) shadowed = shadowed || in->first == it->first;
      if (!shadowed && it->second == t) vars.push_back(it->first);
    }
    if (!vars.empty() && rng_.chance(2, 3)) return SrcTerm::var(rng_.pick<Symbol>(vars));
    return intro(t, budget > 1 ? budget - 1 : 1);
  }

  SrcTerm intro(Type t, unsigned budget) {
    switch (t.kind()) {
      case TypeKind::Unit:
        return SrcTerm::unit();
      case TypeKind::Bool:
        return SrcTerm::boolean(rng_.chance(1, 2));
      case TypeKind::Prod: {
        const auto [a, b] = split(budget);
        const SrcTerm l = gen(t.left(), a);
        return SrcTerm::pair(l, gen(t.right(), b));
      }
      case TypeKind::Sum:
        return rng_.chance(1, 2) ? SrcTerm::inl(gen(t.left(), budget)) : SrcTerm::inr(gen(t.right(), budget));
      case TypeKind::Arrow: {
        const Symbol x = fresh();
        return SrcTerm::lam(x, t.left(), under(x, t.left(), [&] { return gen(t.right(), budget); }));
      }
    }
    return SrcTerm::unit();
  }

  Rng& rng_;
  SrcGenOptions opts_;
  std::vector<std::pair<Symbol, Type>> scope_;
  unsigned counter_ = 0;
};

}  // namespace

SrcTerm random_src_term(Rng& rng, const TypingEnv& env, Type t, const SrcGenOptions& opts) {
  SrcGen g(rng, opts);
  for (const auto& [x, ty] : env.bindings()) g.bind(x, ty);
  return g.gen(t, opts.size);
}

SrcCtx random_src_ctx(Rng& rng, Type hole_type, Type outer_type, const SrcGenOptions& opts) {
  SrcGen g(rng, opts);
  const SrcTerm hole = SrcTerm::hole();
  if (rng.chance(1, 3)) return SrcCtx(g.bind_and_use(hole_type, outer_type, opts.size, hole));
  return SrcCtx(g.observe(hole_type, outer_type, opts.size, hole));
}

namespace {

Symbol depth_name(std::size_t k) { return Symbol("x" + std::to_string(k)); }

// Tables of closed-under-depth target terms by size, with and without a hole.
class CtxEnumerator {
 public:
  using Visit = std::function<bool(const TgtTerm&)>;

  // Calls fn on every term of exactly `size` nodes, scoped under binders
  // x0..x{depth-1}, containing exactly one hole when `hole` is set. Small
  // sizes are materialized once; larger ones are built on the fly so memory
  // stays bounded. Returns false when fn asked to stop.
  bool each(unsigned size, unsigned depth, bool hole, const Visit& fn) {
    if (size <= kMaterializedSize) {
      for (const TgtTerm& t : terms(size, depth, hole))
        if (!fn(t)) return false;
      return true;
    }
    return build(size, depth, hole, fn, [this](unsigned s, unsigned d, bool h, const Visit& f) { return each(s, d, h, f); });
  }

 private:
  static constexpr unsigned kMaterializedSize = 5;

  const std::vector<TgtTerm>& terms(unsigned size, unsigned depth, bool hole) {
    auto key = std::make_tuple(size, depth, hole);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<TgtTerm> out;
    build(
        size, depth, hole,
        [&](const TgtTerm& t) {
          out.push_back(t);
          return true;
        },
        [this](unsigned s, unsigned d, bool h, const Visit& f) {
          for (const TgtTerm& t : terms(s, d, h))
            if (!f(t)) return false;
          return true;
        });
    return memo_.emplace(key, std::move(out)).first->second;
  }

  // One layer of the grammar; `sub` enumerates the immediate subterms.
  template <class Sub>
  static bool build(unsigned size, unsigned depth, bool hole, const Visit& fn, Sub sub) {
    using T = TgtTerm;
    if (size == 1) {
      if (hole) return fn(T::hole());
      for (const T& leaf : {T::unit(), T::truth(), T::falsity(), T::wrong()})
        if (!fn(leaf)) return false;
      for (unsigned i = 0; i < depth; ++i)
        if (!fn(T::var(depth_name(i)))) return false;
      return true;
    }
    const unsigned rest = size - 1;
    if (!sub(rest, depth, hole, [&](const T& a) {
          return fn(T::proj1(a)) && fn(T::proj2(a)) && fn(T::inl(a)) && fn(T::inr(a));
        }))
      return false;
    if (!sub(rest, depth + 1, hole, [&](const T& b) { return fn(T::lam(depth_name(depth), b)); })) return false;
    for (unsigned a = 1; a < rest; ++a)
      for (int h = 0; h < (hole ? 2 : 1); ++h) {
        const bool ha = hole && h == 0;
        const bool hb = hole && h == 1;
        if (!sub(a, depth, ha, [&](const T& l) {
              return sub(rest - a, depth, hb,
                         [&](const T& r) { return fn(T::app(l, r)) && fn(T::pair(l, r)) && fn(T::seq(l, r)); });
            }))
          return false;
      }
    for (unsigned a = 1; a + 2 <= rest; ++a)
      for (unsigned b = 1; a + b + 1 <= rest; ++b) {
        const unsigned c = rest - a - b;
        for (int h = 0; h < (hole ? 3 : 1); ++h) {
          const bool h0 = hole && h == 0;
          const bool h1 = hole && h == 1;
          const bool h2 = hole && h == 2;
          if (!sub(a, depth, h0, [&](const T& x) {
                return sub(b, depth, h1, [&](const T& y) {
                  return sub(c, depth, h2, [&](const T& z) { return fn(T::if_then_else(x, y, z)); });
                });
              }))
            return false;
          if (!sub(a, depth, h0, [&](const T& x) {
                return sub(b, depth + 1, h1, [&](const T& y) {
                  return sub(c, depth + 1, h2,
                             [&](const T& z) { return fn(T::case_of(x, depth_name(depth), y, depth_name(depth), z)); });
                });
              }))
            return false;
        }
      }
    return true;
  }

  std::map<std::tuple<unsigned, unsigned, bool>, std::vector<TgtTerm>> memo_;
};

// Count-only mirror of CtxEnumerator, usable at sizes too large to materialize.
class CtxCounter {
 public:
  std::uint64_t count(unsigned size, unsigned depth, bool hole) {
    auto key = std::make_tuple(size, depth, hole);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::uint64_t n = 0;
    if (size == 1) {
      n = hole ? 1 : 4 + depth;
    } else {
      const unsigned rest = size - 1;
      n += 4 * count(rest, depth, hole) + count(rest, depth + 1, hole);
      for (unsigned a = 1; a < rest; ++a)
        for (int h = 0; h < (hole ? 2 : 1); ++h)
          n += 3 * count(a, depth, hole && h == 0) * count(rest - a, depth, hole && h == 1);
      for (unsigned a = 1; a + 2 <= rest; ++a)
        for (unsigned b = 1; a + b + 1 <= rest; ++b) {
          const unsigned c = rest - a - b;
          for (int h = 0; h < (hole ? 3 : 1); ++h) {
            const bool h0 = hole && h == 0, h1 = hole && h == 1, h2 = hole && h == 2;
            n += count(a, depth, h0) * count(b, depth, h1) * count(c, depth, h2);
            n += count(a, depth, h0) * count(b, depth + 1, h1) * count(c, depth + 1, h2);
          }
        }
    }
    memo_.emplace(key, n);
    return n;
  }

 private:
  std::map<std::tuple<unsigned, unsigned, bool>, std::uint64_t> memo_;
};

class RandomCtx {
 public:
  explicit RandomCtx(Rng& rng) : rng_(rng) {}

  TgtTerm gen(unsigned size, unsigned depth, bool hole) {
    using T = TgtTerm;
    if (size <= 1) return leaf(depth, hole);
    const unsigned rest = size - 1;
    switch (rng_.below(rest >= 3 ? 6 : rest >= 2 ? 4 : 2)) {
      case 0: {
        const T a = gen(rest, depth, hole);
        switch (rng_.below(4)) {
          case 0:
            return T::proj1(a);
          case 1:
            return T::proj2(a);
          case 2:
            return T::inl(a);
          default:
            return T::inr(a);
        }
      }
      case 1:
        return T::lam(depth_name(depth), gen(rest, depth + 1, hole));
      case 2:
      case 3: {
        const unsigned a = static_cast<unsigned>(rng_.between(1, rest - 1));
        const bool left = rng_.chance(1, 2);
        const T l = gen(a, depth, hole && left);
        const T r = gen(rest - a, depth, hole && !left);
        switch (rng_.below(3)) {
          case 0:
            return T::app(l, r);
          case 1:
            return T::pair(l, r);
          default:
            return T::seq(l, r);
        }
      }
      default: {
        const unsigned a = static_cast<unsigned>(rng_.between(1, rest - 2));
        const unsigned b = static_cast<unsigned>(rng_.between(1, rest - a - 1));
        const unsigned c = rest - a - b;
        const std::size_t where = hole ? rng_.below(3) : 3;
        if (rng_.chance(1, 2)) {
          const T x = gen(a, depth, where == 0);
          const T y = gen(b, depth, where == 1);
          return T::if_then_else(x, y, gen(c, depth, where == 2));
        }
        const T x = gen(a, depth, where == 0);
        const T y = gen(b, depth + 1, where == 1);
        const T z = gen(c, depth + 1, where == 2);
        return T::case_of(x, depth_name(depth), y, depth_name(depth), z);
      }
    }
  }

 private:
  TgtTerm leaf(unsigned depth, bool hole) {
    if (hole) return TgtTerm::hole();
    if (depth > 0 && rng_.chance(1, 2)) return TgtTerm::var(depth_name(rng_.below(depth)));
    switch (rng_.below(10)) {
      case 0:
        return TgtTerm::wrong();
      case 1:
      case 2:
      case 3:
        return TgtTerm::unit();
      case 4:
      case 5:
      case 6:
        return TgtTerm::truth();
      default:
        return TgtTerm::falsity();
    }
  }

  Rng& rng_;
};

}  // namespace

TgtCtx random_tgt_ctx(Rng& rng, unsigned max_size, unsigned min_size) {
  RandomCtx g(rng);
  max_size = std::max(max_size, 1u);
  min_size = std::clamp(min_size, 1u, max_size);
  const unsigned size = static_cast<unsigned>(rng.between(min_size, max_size));
  return TgtCtx(g.gen(size, 0, true));
}

void enumerate_tgt_ctxs(unsigned max_size, const std::function<bool(const TgtCtx&)>& visit) {
  CtxEnumerator e;
  for (unsigned size = 1; size <= max_size; ++size)
    if (!e.each(size, 0, true, [&](const TgtTerm& t) { return visit(TgtCtx(t)); })) return;
}

std::size_t count_tgt_ctxs(unsigned max_size) {
  CtxCounter c;
  std::uint64_t n = 0;
  for (unsigned size = 1; size <= max_size; ++size) n += c.count(size, 0, true);
  return static_cast<std::size_t>(n);
}

std::vector<TgtCtx> probe_tgt_ctxs() {
  static const char* const kProbes[] = {
      "HOLE",
      "HOLE unit",
      "HOLE true",
      "HOLE false",
      "HOLE (\\x. x)",
      "HOLE <unit, unit>",
      "HOLE (inl unit)",
      "HOLE (inr unit)",
      "HOLE unit unit",
      "HOLE true true",
      "HOLE unit true",
      "HOLE (\\x. x) unit",
      "fst HOLE",
      "snd HOLE",
      "fst HOLE unit",
      "snd HOLE unit",
      "fst HOLE true",
      "snd HOLE true",
      "fst HOLE (\\x. x)",
      "snd HOLE (\\x. x)",
      "case HOLE of inl x => x | inr y => y",
      "if HOLE then true else false",
      "HOLE; unit",
      "(\\f. f unit) HOLE",
      "(\\f. f (f unit)) HOLE",
      "(\\f. <f unit, f true>) HOLE",
  };
  std::vector<TgtCtx> out;
  for (const char* text : kProbes) out.push_back(parse_tgt_ctx(text));
  return out;
}

}  // namespace fabt
