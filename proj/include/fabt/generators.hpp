#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "fabt/support/rng.hpp"
#include "fabt/term.hpp"
#include "fabt/type.hpp"

namespace fabt {

/// Random type with at most `max_depth` nested constructors (depth 0 is Unit or Bool).
Type random_type(Rng& rng, unsigned max_depth, bool allow_arrows = true);

/// Random closed value of a first-order type.
SrcTerm random_value(Rng& rng, Type t);

struct SrcGenOptions {
  /// Upper bound on the number of AST nodes, roughly respected.
  unsigned size = 12;
  /// Allow fix, which may produce diverging terms.
  bool allow_fix = true;
  /// Depth bound for the types of intermediate subterms.
  unsigned aux_type_depth = 2;
};

/// Closed values of t in a fixed order, at most `limit` of them. Functions
/// are the constant functions returning the values of their codomain.
std::vector<SrcTerm> small_values(Type t, std::size_t limit);

/// Random term of type t under env. The result always checks at t.
SrcTerm random_src_term(Rng& rng, const TypingEnv& env, Type t, const SrcGenOptions& opts = {});

/// Random closed source context whose hole expects a closed term of
/// hole_type and whose plugged result has type outer_type.
SrcCtx random_src_ctx(Rng& rng, Type hole_type, Type outer_type, const SrcGenOptions& opts = {});

/// Random well-scoped closed target context with between min_size and
/// max_size nodes, drawn from the same grammar as enumerate_tgt_ctxs.
TgtCtx random_tgt_ctx(Rng& rng, unsigned max_size, unsigned min_size = 1);

/// Every closed target context with at most max_size nodes, in order of size.
/// Binders are named by their depth (x0, x1, ...). Stops early when visit
/// returns false.
void enumerate_tgt_ctxs(unsigned max_size, const std::function<bool(const TgtCtx&)>& visit);

/// Number of contexts enumerate_tgt_ctxs yields.
std::size_t count_tgt_ctxs(unsigned max_size);

/// Fixed probes tried before any generated context: the hole itself, the hole
/// applied to each base value and to a function, eta-style double
/// applications, and projection/case/if/seq probes.
std::vector<TgtCtx> probe_tgt_ctxs();

}  // namespace fabt
