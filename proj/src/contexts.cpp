#include "fabt/contexts.hpp"

#include <algorithm>

#include "fabt/compiler.hpp"
#include "fabt/syntax.hpp"

namespace fabt {

SrcTerm plug_src(const SrcCtx& c, const SrcTerm& t) { return plug(c, t); }
TgtTerm plug_tgt(const TgtCtx& c, const TgtTerm& t) { return plug(c, t); }

std::vector<Symbol> crossed_binders(const ast::NodePtr& c) {
  std::vector<Symbol> out;
  const ast::Node* node = c.get();
  while (node->kind != Kind::Hole) {
    int next = -1;
    for (int i = 0; i < ast::arity(node->kind); ++i)
      if (node->kids[static_cast<std::size_t>(i)]->holes > 0) next = i;
    if (next < 0) throw std::invalid_argument("term has no hole");
    if (Symbol b = ast::binder_of(*node, next); !b.empty()) out.push_back(b);
    node = node->kids[static_cast<std::size_t>(next)].get();
  }
  return out;
}

CtxType ctx_typecheck(const SrcCtx& c, const TypingEnv& inner_env, Type inner_type, Type outer_type) {
  const std::vector<Symbol> crossed = crossed_binders(c.term().ptr());
  TypingEnv outer;
  for (const auto& [name, type] : inner_env.bindings())
    if (std::find(crossed.begin(), crossed.end(), name) == crossed.end()) outer.push(name, type);
  const detail::HoleTyping hole{&inner_env, inner_type};
  Type result = detail::infer_type(outer, c.term(), &hole, outer_type);
  return {inner_env, inner_type, outer, result};
}

ScopeEnv ctx_well_scoped(const TgtCtx& c, const ScopeEnv& inner_env) {
  const std::vector<Symbol> crossed = crossed_binders(c.term().ptr());
  ScopeEnv outer;
  for (Symbol name : inner_env)
    if (std::find(crossed.begin(), crossed.end(), name) == crossed.end()) outer.push_back(name);
  for (Symbol x : c.term().free_vars())
    if (std::find(outer.begin(), outer.end(), x) == outer.end())
      throw ScopeError("context mentions unbound variable " + x.str());
  return outer;
}

namespace {

struct LinkerNames {
  Symbol p, unused, x1p, x2p;
};

LinkerNames linker_names(std::span<const Symbol> free1, std::span<const Symbol> free2, Symbol x1, Symbol x2) {
  std::vector<Symbol> taken(free1.begin(), free1.end());
  taken.insert(taken.end(), free2.begin(), free2.end());
  taken.push_back(x1);
  taken.push_back(x2);
  auto pick = [&](std::string_view base) {
    Symbol s = fresh_symbol(base, [&](Symbol c) { return std::find(taken.begin(), taken.end(), c) != taken.end(); });
    taken.push_back(s);
    return s;
  };
  LinkerNames n;
  n.p = pick("p");
  n.unused = pick("_");
  n.x1p = pick(x1.str() + "'");
  n.x2p = pick(x2.str() + "'");
  return n;
}

// λp. λ_. <λx1'. ((λx2. t1) (p unit).2) x1', λx2'. ((λx1. t2) (p unit).1) x2'>
// `lam` builds a binder; the source linker annotates, the target one does not.
template <Lang L, class MakeLam>
BasicTerm<L> linker_body(const BasicTerm<L>& t1, const BasicTerm<L>& t2, Symbol x1, Symbol x2,
                         const LinkerNames& n, MakeLam lam) {
  using T = BasicTerm<L>;
  const T p_unit = T::app(T::var(n.p), T::unit());
  const T left = lam(n.x1p, 0, T::app(T::app(lam(x2, 1, t1), T::proj2(p_unit)), T::var(n.x1p)));
  const T right = lam(n.x2p, 2, T::app(T::app(lam(x1, 3, t2), T::proj1(p_unit)), T::var(n.x2p)));
  return lam(n.p, 4, lam(n.unused, 5, T::pair(left, right)));
}

TgtTerm link_tgt_unchecked(const TgtTerm& t1, const TgtTerm& t2, Symbol x1, Symbol x2) {
  const LinkerNames n = linker_names(t1.free_vars(), t2.free_vars(), x1, x2);
  const TgtTerm body = linker_body<Lang::Target>(t1, t2, x1, x2, n,
                                                 [](Symbol x, int, const TgtTerm& b) { return TgtTerm::lam(x, b); });
  return TgtTerm::app(TgtTerm::app(z_combinator(), body), TgtTerm::unit());
}

}  // namespace

SrcTerm link_src(const SrcTerm& t1, const LinkSignature& sig, const SrcTerm& t2) {
  if (t1.kind() != Kind::Lam) throw TypeError("first component is not a lambda", t1);
  if (t2.kind() != Kind::Lam) throw TypeError("second component is not a lambda", t2);
  check_type(TypingEnv{{sig.x2, sig.fn2()}}, t1, sig.fn1());
  check_type(TypingEnv{{sig.x1, sig.fn1()}}, t2, sig.fn2());

  const Type pair = sig.pair();
  const Type fix_fn = Type::arrow(Type::unit(), pair);
  // Annotation for each binder, indexed as in linker_body.
  const Type annots[] = {sig.dom1, sig.fn2(), sig.dom2, sig.fn1(), fix_fn, Type::unit()};
  const LinkerNames n = linker_names(t1.free_vars(), t2.free_vars(), sig.x1, sig.x2);
  const SrcTerm body = linker_body<Lang::Source>(
      t1, t2, sig.x1, sig.x2, n, [&](Symbol x, int i, const SrcTerm& b) { return SrcTerm::lam(x, annots[i], b); });
  return SrcTerm::app(SrcTerm::fix(Type::unit(), pair, body), SrcTerm::unit());
}

TgtTerm link_tgt(const TgtTerm& t1, const TgtTerm& t2, Symbol x1, Symbol x2) {
  if (!well_scoped({x2}, t1)) throw ScopeError("first component may only mention " + x2.str());
  if (!well_scoped({x1}, t2)) throw ScopeError("second component may only mention " + x1.str());
  return link_tgt_unchecked(t1, t2, x1, x2);
}

TgtCtx linking_ctx(const TgtTerm& t2, Symbol x1, Symbol x2) {
  if (!well_scoped({x1}, t2)) throw ScopeError("component may only mention " + x1.str());
  return TgtCtx(link_tgt_unchecked(TgtTerm::hole(), t2, x1, x2));
}

}  // namespace fabt
