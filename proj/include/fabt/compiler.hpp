#pragma once

#include "fabt/contexts.hpp"
#include "fabt/source.hpp"
#include "fabt/term.hpp"

namespace fabt {

/// λf. (λx. f (λy. x x y)) (λx. f (λy. x x y))
TgtTerm z_combinator();

/// Drops type annotations; fix becomes an application of the Z combinator.
TgtTerm erase(const SrcTerm& t);
/// erase applied to a context; the hole stays a hole.
TgtCtx erase_ctx(const SrcCtx& c);

/// Wrapper restricting how a value of type τ can be used by its context.
TgtTerm protect_term(Type t);
/// Wrapper forcing a context-supplied value to behave like a value of type τ.
TgtTerm confine_term(Type t);

/// Whole-program compilation of a closed term: protect_τ (erase t).
/// Throws TypeError unless t has type τ in the empty environment.
TgtTerm compile(const SrcTerm& t, Type type);

/// Compiles a component λx1':dom1. body that calls its partner through the
/// free variable sig.x2; the result still has sig.x2 free and confines it.
TgtTerm compile_modular(const SrcTerm& t1, const LinkSignature& sig);

}  // namespace fabt
