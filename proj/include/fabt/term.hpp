#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "fabt/symbol.hpp"
#include "fabt/type.hpp"

namespace fabt {

enum class Lang : std::uint8_t { Source, Target };

enum class Kind : std::uint8_t {
  Unit,
  True,
  False,
  Var,
  Lam,
  App,
  Pair,
  Proj1,
  Proj2,
  Inl,
  Inr,
  Case,
  Seq,
  If,
  Fix,    // source only
  Wrong,  // target only
  Hole,
};

namespace ast {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable term node shared by both languages. Derived facts (value-ness,
/// free variables, hole count) are computed once at construction, which lets
/// substitution skip closed subterms and keeps shared generated terms cheap.
struct Node {
  Kind kind;
  bool value;
  std::uint32_t holes;
  Symbol name;   // Var; Lam binder; Case inl binder
  Symbol name2;  // Case inr binder
  Type ty1;      // Lam annotation; Fix domain
  Type ty2;      // Fix codomain
  std::array<NodePtr, 3> kids;
  std::vector<Symbol> free;  // sorted, unique
};

NodePtr make(Kind kind, Symbol name = {}, Symbol name2 = {}, Type ty1 = {}, Type ty2 = {}, NodePtr a = nullptr,
             NodePtr b = nullptr, NodePtr c = nullptr);

int arity(Kind kind);
/// Number of leading children that are evaluated (left to right) before the node reduces.
int eval_arity(Kind kind);
/// Binder introduced for child `index`, or the empty symbol.
Symbol binder_of(const Node& node, int index);

bool occurs_free(const Node& node, Symbol name);
NodePtr with_child(const Node& node, int index, NodePtr child);
/// Capture-avoiding substitution of v for the free occurrences of x.
NodePtr substitute(const NodePtr& term, Symbol x, const NodePtr& v);
/// Literal, capture-permitting replacement of every hole.
NodePtr plug(const NodePtr& context, const NodePtr& filler);
bool alpha_equal(const NodePtr& a, const NodePtr& b);
bool structurally_equal(const NodePtr& a, const NodePtr& b);

}  // namespace ast

/// Handle to an immutable term of language L. Terms may contain holes; a
/// BasicContext is a term with exactly one.
template <Lang L>
class BasicTerm {
  static constexpr bool kSource = L == Lang::Source;

 public:
  BasicTerm() = default;
  explicit BasicTerm(ast::NodePtr node) : node_(std::move(node)) {}

  static BasicTerm unit() { return leaf(Kind::Unit); }
  static BasicTerm truth() { return leaf(Kind::True); }
  static BasicTerm falsity() { return leaf(Kind::False); }
  static BasicTerm boolean(bool b) { return b ? truth() : falsity(); }
  static BasicTerm hole() { return leaf(Kind::Hole); }
  static BasicTerm wrong()
    requires(!kSource)
  {
    return leaf(Kind::Wrong);
  }
  static BasicTerm var(Symbol x) { return BasicTerm(ast::make(Kind::Var, x)); }
  static BasicTerm var(std::string_view x) { return var(Symbol(x)); }

  static BasicTerm lam(Symbol x, Type annot, const BasicTerm& body)
    requires kSource
  {
    return BasicTerm(ast::make(Kind::Lam, x, {}, annot, {}, body.node_));
  }
  static BasicTerm lam(std::string_view x, Type annot, const BasicTerm& body)
    requires kSource
  {
    return lam(Symbol(x), annot, body);
  }
  static BasicTerm lam(Symbol x, const BasicTerm& body)
    requires(!kSource)
  {
    return BasicTerm(ast::make(Kind::Lam, x, {}, {}, {}, body.node_));
  }
  static BasicTerm lam(std::string_view x, const BasicTerm& body)
    requires(!kSource)
  {
    return lam(Symbol(x), body);
  }
  static BasicTerm fix(Type dom, Type cod, const BasicTerm& t)
    requires kSource
  {
    return BasicTerm(ast::make(Kind::Fix, {}, {}, dom, cod, t.node_));
  }

  static BasicTerm app(const BasicTerm& f, const BasicTerm& a) { return binary(Kind::App, f, a); }
  static BasicTerm pair(const BasicTerm& a, const BasicTerm& b) { return binary(Kind::Pair, a, b); }
  static BasicTerm seq(const BasicTerm& a, const BasicTerm& b) { return binary(Kind::Seq, a, b); }
  static BasicTerm proj1(const BasicTerm& t) { return unary(Kind::Proj1, t); }
  static BasicTerm proj2(const BasicTerm& t) { return unary(Kind::Proj2, t); }
  static BasicTerm inl(const BasicTerm& t) { return unary(Kind::Inl, t); }
  static BasicTerm inr(const BasicTerm& t) { return unary(Kind::Inr, t); }
  static BasicTerm if_then_else(const BasicTerm& c, const BasicTerm& a, const BasicTerm& b) {
    return BasicTerm(ast::make(Kind::If, {}, {}, {}, {}, c.node_, a.node_, b.node_));
  }
  static BasicTerm case_of(const BasicTerm& scrut, Symbol x, const BasicTerm& left, Symbol y,
                           const BasicTerm& right) {
    return BasicTerm(ast::make(Kind::Case, x, y, {}, {}, scrut.node_, left.node_, right.node_));
  }
  static BasicTerm case_of(const BasicTerm& scrut, std::string_view x, const BasicTerm& left, std::string_view y,
                           const BasicTerm& right) {
    return case_of(scrut, Symbol(x), left, Symbol(y), right);
  }

  /// Left-nested application f a1 a2 ...
  template <class... Args>
  static BasicTerm apply(const BasicTerm& f, const Args&... args) {
    BasicTerm r = f;
    ((r = app(r, args)), ...);
    return r;
  }

  explicit operator bool() const { return node_ != nullptr; }
  Kind kind() const { return node_->kind; }
  Symbol name() const { return node_->name; }
  Symbol name2() const { return node_->name2; }
  /// Lam annotation (source only).
  Type annotation() const { return node_->ty1; }
  Type fix_domain() const { return node_->ty1; }
  Type fix_codomain() const { return node_->ty2; }
  BasicTerm child(int index) const { return BasicTerm(node_->kids[static_cast<std::size_t>(index)]); }

  bool is_value() const { return node_->value; }
  bool closed() const { return node_->free.empty(); }
  std::span<const Symbol> free_vars() const { return node_->free; }
  std::uint32_t hole_count() const { return node_->holes; }

  const ast::NodePtr& ptr() const { return node_; }
  const ast::Node& node() const { return *node_; }

  /// Exact structural equality, binder names included.
  friend bool operator==(const BasicTerm& a, const BasicTerm& b) { return ast::structurally_equal(a.node_, b.node_); }

 private:
  static BasicTerm leaf(Kind k) { return BasicTerm(ast::make(k)); }
  static BasicTerm unary(Kind k, const BasicTerm& t) { return BasicTerm(ast::make(k, {}, {}, {}, {}, t.node_)); }
  static BasicTerm binary(Kind k, const BasicTerm& a, const BasicTerm& b) {
    return BasicTerm(ast::make(k, {}, {}, {}, {}, a.node_, b.node_));
  }

  ast::NodePtr node_;
};

/// A term of language L with exactly one hole.
template <Lang L>
class BasicContext {
 public:
  explicit BasicContext(BasicTerm<L> term) : term_(std::move(term)) {
    if (!term_ || term_.hole_count() != 1) throw std::invalid_argument("a program context must contain exactly one hole");
  }
  static BasicContext hole() { return BasicContext(BasicTerm<L>::hole()); }

  const BasicTerm<L>& term() const { return term_; }

  friend bool operator==(const BasicContext&, const BasicContext&) = default;

 private:
  BasicTerm<L> term_;
};

using SrcTerm = BasicTerm<Lang::Source>;
using TgtTerm = BasicTerm<Lang::Target>;
using SrcCtx = BasicContext<Lang::Source>;
using TgtCtx = BasicContext<Lang::Target>;

template <Lang L>
bool alpha_equal(const BasicTerm<L>& a, const BasicTerm<L>& b) {
  return ast::alpha_equal(a.ptr(), b.ptr());
}

template <Lang L>
BasicTerm<L> plug(const BasicContext<L>& ctx, const BasicTerm<L>& filler) {
  return BasicTerm<L>(ast::plug(ctx.term().ptr(), filler.ptr()));
}

/// Plugging a context into a context yields a context.
template <Lang L>
BasicContext<L> compose(const BasicContext<L>& outer, const BasicContext<L>& inner) {
  return BasicContext<L>(plug(outer, inner.term()));
}

}  // namespace fabt
