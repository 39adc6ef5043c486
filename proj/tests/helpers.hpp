#pragma once

#include <string_view>

#include "fabt/source.hpp"
#include "fabt/syntax.hpp"
#include "fabt/target.hpp"

namespace fabt::testing {

inline SrcTerm src(std::string_view text) { return parse_src_term(text); }
inline TgtTerm tgt(std::string_view text) { return parse_tgt_term(text); }
inline SrcCtx src_ctx(std::string_view text) { return parse_src_ctx(text); }
inline TgtCtx tgt_ctx(std::string_view text) { return parse_tgt_ctx(text); }
inline Type ty(std::string_view text) { return parse_type(text); }

// Injections are unannotated, so typecheck reports the least committed type;
// this asks whether t can be given `expected`.
inline bool has_type(const TypingEnv& env, const SrcTerm& t, Type expected) {
  try {
    check_type(env, t, expected);
    return true;
  } catch (const TypeError&) {
    return false;
  }
}

// Reference evaluator: iterates the single-step function. Returns the number
// of steps taken, or -1 when `fuel` steps did not reach a value (or wrong).
template <class Term, class Step>
long long iterate_steps(Term t, long long fuel, Step step, Term* last = nullptr) {
  for (long long k = 0;; ++k) {
    auto r = step(t);
    if (r.status != StepStatus::Stepped) {
      if (last) *last = t;
      return k;
    }
    if (k == fuel) return -1;
    t = r.term;
  }
}

}  // namespace fabt::testing
