#pragma once

#include <cstdint>
#include <vector>

#include "fabt/source.hpp"
#include "fabt/term.hpp"

namespace fabt {

using ScopeEnv = std::vector<Symbol>;

struct TgtOutcome {
  enum class Status : std::uint8_t { Value, Wrong, FuelExhausted };
  Status status;
  TgtTerm value;        // set when status == Value
  std::uint64_t steps;  // rule applications; the whole fuel when exhausted

  bool terminated() const { return status == Status::Value; }
};

/// True iff every free variable of t is in env. Holes count as scoped.
bool well_scoped(const ScopeEnv& env, const TgtTerm& t);

TgtTerm tgt_subst(const TgtTerm& t, Symbol x, const TgtTerm& v);
StepResult<Lang::Target> tgt_step(const TgtTerm& t);
/// Throws EvalError on open terms.
TgtOutcome tgt_eval(const TgtTerm& t, std::uint64_t fuel);

}  // namespace fabt
