#pragma once

// Reduction engine shared by both languages. `Contract` maps a redex (a node
// whose evaluated children are all values) to its reduct, or nullptr if the
// node cannot reduce. Descending through evaluation contexts costs nothing;
// each contraction, and each collapse of E[wrong], costs one unit of fuel.

#include <cstdint>
#include <utility>
#include <vector>

#include "fabt/term.hpp"

namespace fabt::detail {

struct MachineResult {
  enum class Status : std::uint8_t { Value, Wrong, Exhausted, Stuck };
  Status status;
  ast::NodePtr term;  // value, or the stuck redex
  std::uint64_t steps;
};

inline int first_unevaluated(const ast::Node& node) {
  const int n = ast::eval_arity(node.kind);
  for (int i = 0; i < n; ++i)
    if (!node.kids[static_cast<std::size_t>(i)]->value) return i;
  return -1;
}

template <class Contract>
MachineResult run_machine(ast::NodePtr term, std::uint64_t fuel, Contract&& contract) {
  using Status = MachineResult::Status;
  std::vector<std::pair<ast::NodePtr, int>> frames;
  ast::NodePtr focus = std::move(term);
  std::uint64_t steps = 0;
  for (;;) {
    if (focus->value) {
      if (frames.empty()) return {Status::Value, std::move(focus), steps};
      auto [parent, index] = std::move(frames.back());
      frames.pop_back();
      focus = ast::with_child(*parent, index, std::move(focus));
      continue;
    }
    if (focus->kind == Kind::Wrong) {
      if (frames.empty()) return {Status::Wrong, std::move(focus), steps};
      if (steps == fuel) return {Status::Exhausted, nullptr, steps};
      ++steps;
      frames.clear();
      continue;
    }
    if (const int i = first_unevaluated(*focus); i >= 0) {
      ast::NodePtr child = focus->kids[static_cast<std::size_t>(i)];
      frames.emplace_back(std::move(focus), i);
      focus = std::move(child);
      continue;
    }
    if (steps == fuel) return {Status::Exhausted, nullptr, steps};
    ast::NodePtr next = contract(*focus);
    if (!next) return {Status::Stuck, std::move(focus), steps};
    ++steps;
    focus = std::move(next);
  }
}

struct SingleStep {
  enum class Status : std::uint8_t { Stepped, AlreadyValue, Stuck, IsWrong };
  Status status;
  ast::NodePtr term;
};

template <class Contract>
SingleStep step_once(const ast::NodePtr& term, Contract&& contract) {
  using Status = SingleStep::Status;
  if (term->value) return {Status::AlreadyValue, nullptr};
  if (term->kind == Kind::Wrong) return {Status::IsWrong, nullptr};
  std::vector<std::pair<const ast::Node*, int>> path;
  const ast::Node* focus = term.get();
  ast::NodePtr reduct;
  for (;;) {
    if (focus->kind == Kind::Wrong) {
      return {Status::Stepped, focus == term.get() ? term : ast::make(Kind::Wrong)};
    }
    const int i = first_unevaluated(*focus);
    if (i < 0) break;
    path.emplace_back(focus, i);
    focus = focus->kids[static_cast<std::size_t>(i)].get();
  }
  reduct = contract(*focus);
  if (!reduct) return {Status::Stuck, nullptr};
  for (auto it = path.rbegin(); it != path.rend(); ++it) reduct = ast::with_child(*it->first, it->second, reduct);
  return {Status::Stepped, reduct};
}

}  // namespace fabt::detail
