#include "fabt/target.hpp"

#include <algorithm>

#include "fabt/syntax.hpp"
#include "machine.hpp"

namespace fabt {

bool well_scoped(const ScopeEnv& env, const TgtTerm& t) {
  return std::all_of(t.free_vars().begin(), t.free_vars().end(),
                     [&](Symbol x) { return std::find(env.begin(), env.end(), x) != env.end(); });
}

TgtTerm tgt_subst(const TgtTerm& t, Symbol x, const TgtTerm& v) {
  return TgtTerm(ast::substitute(t.ptr(), x, v.ptr()));
}

namespace {

const ast::NodePtr& wrong_node() {
  static const ast::NodePtr node = ast::make(Kind::Wrong);
  return node;
}

// Eliminators applied to a value of the wrong shape reduce to wrong.
ast::NodePtr contract_tgt(const ast::Node& t) {
  const auto& k = t.kids;
  switch (t.kind) {
    case Kind::App:
      if (k[0]->kind == Kind::Lam) return ast::substitute(k[0]->kids[0], k[0]->name, k[1]);
      return wrong_node();
    case Kind::Proj1:
    case Kind::Proj2:
      if (k[0]->kind == Kind::Pair) return k[0]->kids[t.kind == Kind::Proj1 ? 0 : 1];
      return wrong_node();
    case Kind::Case:
      if (k[0]->kind == Kind::Inl) return ast::substitute(k[1], t.name, k[0]->kids[0]);
      if (k[0]->kind == Kind::Inr) return ast::substitute(k[2], t.name2, k[0]->kids[0]);
      return wrong_node();
    case Kind::Seq:
      return k[0]->kind == Kind::Unit ? k[1] : wrong_node();
    case Kind::If:
      if (k[0]->kind == Kind::True) return k[1];
      if (k[0]->kind == Kind::False) return k[2];
      return wrong_node();
    default:
      return nullptr;
  }
}

}  // namespace

StepResult<Lang::Target> tgt_step(const TgtTerm& t) {
  using S = detail::SingleStep::Status;
  auto r = detail::step_once(t.ptr(), contract_tgt);
  switch (r.status) {
    case S::Stepped:
      return {StepStatus::Stepped, TgtTerm(r.term)};
    case S::AlreadyValue:
      return {StepStatus::AlreadyValue, {}};
    case S::IsWrong:
      return {StepStatus::IsWrong, {}};
    case S::Stuck:
      break;
  }
  return {StepStatus::Stuck, {}};
}

TgtOutcome tgt_eval(const TgtTerm& t, std::uint64_t fuel) {
  using S = detail::MachineResult::Status;
  auto r = detail::run_machine(t.ptr(), fuel, contract_tgt);
  switch (r.status) {
    case S::Value:
      return {TgtOutcome::Status::Value, TgtTerm(r.term), r.steps};
    case S::Wrong:
      return {TgtOutcome::Status::Wrong, {}, r.steps};
    case S::Exhausted:
      return {TgtOutcome::Status::FuelExhausted, {}, r.steps};
    case S::Stuck:
      break;
  }
  throw EvalError("target evaluation stuck at `" + print(TgtTerm(r.term), 120) + "`");
}

}  // namespace fabt
