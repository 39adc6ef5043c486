#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "fabt/term.hpp"

namespace fabt {

/// Raised by the source type checker. `subterm` is the node where checking
/// failed; expected/actual are printed types ("_" marks an unconstrained part).
class TypeError : public std::runtime_error {
 public:
  TypeError(const std::string& what, SrcTerm subterm, std::string expected = {}, std::string actual = {})
      : std::runtime_error(what), subterm_(std::move(subterm)), expected_(std::move(expected)), actual_(std::move(actual)) {}

  const SrcTerm& subterm() const { return subterm_; }
  const std::string& expected() const { return expected_; }
  const std::string& actual() const { return actual_; }

 private:
  SrcTerm subterm_;
  std::string expected_;
  std::string actual_;
};

/// Evaluating a term the machine cannot reduce (open or ill-typed input).
class EvalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class StepStatus : std::uint8_t { Stepped, AlreadyValue, Stuck, IsWrong };

template <Lang L>
struct StepResult {
  StepStatus status;
  BasicTerm<L> term;  // the reduct when status == Stepped
};

struct SrcOutcome {
  enum class Status : std::uint8_t { Value, FuelExhausted };
  Status status;
  SrcTerm value;       // set when status == Value
  std::uint64_t steps;  // rule applications; the whole fuel when exhausted

  bool terminated() const { return status == Status::Value; }
};

bool is_src_value(const SrcTerm& t);

/// Infers the type of t under env. Injections are unannotated, so inference
/// unifies; parts of the result left unconstrained default to Unit.
Type typecheck(const TypingEnv& env, const SrcTerm& t);
/// Checks that t has type `expected` under env.
void check_type(const TypingEnv& env, const SrcTerm& t, Type expected);

SrcTerm src_subst(const SrcTerm& t, Symbol x, const SrcTerm& v);
StepResult<Lang::Source> src_step(const SrcTerm& t);
/// Throws EvalError if evaluation gets stuck.
SrcOutcome src_eval(const SrcTerm& t, std::uint64_t fuel);

namespace detail {

struct HoleTyping {
  const TypingEnv* inner_env;
  Type inner_type;
};

/// Shared by typecheck and context typing; `hole` is null outside contexts.
Type infer_type(const TypingEnv& env, const SrcTerm& t, const HoleTyping* hole, Type expected);

}  // namespace detail

}  // namespace fabt
