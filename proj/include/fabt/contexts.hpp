#pragma once

#include <stdexcept>

#include "fabt/source.hpp"
#include "fabt/target.hpp"
#include "fabt/term.hpp"

namespace fabt {

class ScopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Typing of a context: the hole expects (inner_env ⊢ _ : inner_type) and the
/// plugged term has outer_type under outer_env.
struct CtxType {
  TypingEnv inner_env;
  Type inner_type;
  TypingEnv outer_env;
  Type outer_type;
};

SrcTerm plug_src(const SrcCtx& c, const SrcTerm& t);
TgtTerm plug_tgt(const TgtCtx& c, const TgtTerm& t);

/// Names bound by the binders between the root of c and its hole, outermost first.
std::vector<Symbol> crossed_binders(const ast::NodePtr& c);

/// The outer environment is inner_env without the names the context binds on
/// the way to the hole; those binders must agree with inner_env's types.
/// When outer_type is given the plugged term is checked against it.
CtxType ctx_typecheck(const SrcCtx& c, const TypingEnv& inner_env, Type inner_type, Type outer_type = {});
/// Outer scope of c; throws ScopeError when c mentions a name outside it.
ScopeEnv ctx_well_scoped(const TgtCtx& c, const ScopeEnv& inner_env);

/// Interface of two mutually dependent components: t1 : dom1 -> cod1 using
/// x2 : dom2 -> cod2, and t2 : dom2 -> cod2 using x1 : dom1 -> cod1.
struct LinkSignature {
  Type dom1;
  Type cod1;
  Type dom2;
  Type cod2;
  Symbol x1{"x1"};
  Symbol x2{"x2"};

  Type fn1() const { return Type::arrow(dom1, cod1); }
  Type fn2() const { return Type::arrow(dom2, cod2); }
  Type pair() const { return Type::prod(fn1(), fn2()); }
};

/// Ties the components together through a fixpoint over a pair of
/// eta-expanded functions. Throws TypeError unless both components are
/// lambdas of the declared types.
SrcTerm link_src(const SrcTerm& t1, const LinkSignature& sig, const SrcTerm& t2);
/// Untyped analogue built from the Z combinator. Throws ScopeError unless t1
/// (resp. t2) is scoped under x2 (resp. x1). Components need not be lambdas:
/// the linker eta-expands them, so wrapped components link as well.
TgtTerm link_tgt(const TgtTerm& t1, const TgtTerm& t2, Symbol x1 = Symbol("x1"), Symbol x2 = Symbol("x2"));
/// link_tgt with a hole for the first component.
TgtCtx linking_ctx(const TgtTerm& t2, Symbol x1 = Symbol("x1"), Symbol x2 = Symbol("x2"));

}  // namespace fabt
