#include "fabt/compiler.hpp"

#include <string>
#include <unordered_map>

namespace fabt {

TgtTerm z_combinator() {
  static const TgtTerm z = [] {
    using T = TgtTerm;
    const T x = T::var("x");
    const T half = T::lam("x", T::app(T::var("f"), T::lam("y", T::apply(x, x, T::var("y")))));
    return T::lam("f", T::app(half, half));
  }();
  return z;
}

namespace {

class Eraser {
 public:
  TgtTerm run(const SrcTerm& t) { return TgtTerm(go(t.ptr())); }

 private:
  ast::NodePtr go(const ast::NodePtr& t) {
    if (auto it = memo_.find(t.get()); it != memo_.end()) return it->second;
    const ast::Node& n = *t;
    ast::NodePtr out;
    if (n.kind == Kind::Fix) {
      out = ast::make(Kind::App, {}, {}, {}, {}, z_combinator().ptr(), go(n.kids[0]));
    } else {
      std::array<ast::NodePtr, 3> kids{};
      for (int i = 0; i < ast::arity(n.kind); ++i)
        kids[static_cast<std::size_t>(i)] = go(n.kids[static_cast<std::size_t>(i)]);
      out = ast::make(n.kind, n.name, n.name2, {}, {}, kids[0], kids[1], kids[2]);
    }
    memo_.emplace(t.get(), out);
    return out;
  }

  std::unordered_map<const ast::Node*, ast::NodePtr> memo_;
};

class WrapperBuilder {
 public:
  TgtTerm protect(Type t) { return build(t, true); }
  TgtTerm confine(Type t) { return build(t, false); }

 private:
  TgtTerm build(Type t, bool protect) {
    auto& memo = protect ? protect_memo_ : confine_memo_;
    if (auto it = memo.find(t); it != memo.end()) return it->second;
    TgtTerm out = protect ? make_protect(t) : make_confine(t);
    memo.emplace(t, out);
    return out;
  }

  // Binders are suffixed with the depth of the type they wrap, so nested
  // wrappers print readably.
  static Symbol named(const char* base, Type t) {
    return Symbol(t.depth() == 0 ? std::string(base) : base + std::to_string(t.depth()));
  }

  TgtTerm componentwise(Type t, bool protect) {
    using T = TgtTerm;
    const Symbol y = named("y", t);
    const T vy = T::var(y);
    if (t.kind() == TypeKind::Prod) {
      return T::lam(y, T::pair(T::app(build(t.left(), protect), T::proj1(vy)),
                               T::app(build(t.right(), protect), T::proj2(vy))));
    }
    const Symbol x = named("x", t);
    return T::lam(y, T::case_of(vy, x, T::inl(T::app(build(t.left(), protect), T::var(x))), x,
                                T::inr(T::app(build(t.right(), protect), T::var(x)))));
  }

  // λy. λx. outer (y (inner x))
  TgtTerm function(Type t, bool protect) {
    using T = TgtTerm;
    const Symbol y = named("y", t);
    const Symbol x = named("x", t);
    const T inner = build(t.left(), !protect);
    const T outer = build(t.right(), protect);
    return T::lam(y, T::lam(x, T::app(outer, T::app(T::var(y), T::app(inner, T::var(x))))));
  }

  TgtTerm make_protect(Type t) {
    switch (t.kind()) {
      case TypeKind::Unit:
      case TypeKind::Bool:
        return TgtTerm::lam("x", TgtTerm::var("x"));
      case TypeKind::Arrow:
        return function(t, true);
      default:
        return componentwise(t, true);
    }
  }

  TgtTerm make_confine(Type t) {
    using T = TgtTerm;
    switch (t.kind()) {
      case TypeKind::Unit:
        return T::lam("y", T::seq(T::var("y"), T::unit()));
      case TypeKind::Bool:
        return T::lam("y", T::if_then_else(T::var("y"), T::truth(), T::falsity()));
      case TypeKind::Arrow:
        return function(t, false);
      default:
        return componentwise(t, false);
    }
  }

  std::unordered_map<Type, TgtTerm> protect_memo_;
  std::unordered_map<Type, TgtTerm> confine_memo_;
};

}  // namespace

TgtTerm erase(const SrcTerm& t) { return Eraser().run(t); }
TgtCtx erase_ctx(const SrcCtx& c) { return TgtCtx(erase(c.term())); }

TgtTerm protect_term(Type t) { return WrapperBuilder().protect(t); }
TgtTerm confine_term(Type t) { return WrapperBuilder().confine(t); }

TgtTerm compile(const SrcTerm& t, Type type) {
  check_type(TypingEnv{}, t, type);
  return TgtTerm::app(protect_term(type), erase(t));
}

TgtTerm compile_modular(const SrcTerm& t1, const LinkSignature& sig) {
  if (t1.kind() != Kind::Lam) throw TypeError("component is not a lambda", t1);
  check_type(TypingEnv{{sig.x2, sig.fn2()}}, t1, sig.fn1());
  using T = TgtTerm;
  const T body = T::app(T::lam(sig.x2, erase(t1.child(0))), T::app(confine_term(sig.fn2()), T::var(sig.x2)));
  return T::app(protect_term(sig.fn1()), T::lam(t1.name(), body));
}

}  // namespace fabt
