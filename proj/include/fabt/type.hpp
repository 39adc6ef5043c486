#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fabt/symbol.hpp"

namespace fabt {

enum class TypeKind : std::uint8_t { Unit, Bool, Arrow, Prod, Sum };

namespace detail {
struct TypeNode;
}

/// Source-language type. Types are hash-consed: every structurally distinct
/// type has exactly one node, so equality is pointer equality and deep types
/// such as uval_type(5000) stay linear in size.
class Type {
 public:
  Type() = default;  // the absent type; only meaningful as "no annotation"

  static Type unit();
  static Type boolean();
  static Type arrow(Type dom, Type cod);
  static Type prod(Type left, Type right);
  static Type sum(Type left, Type right);

  bool valid() const { return node_ != nullptr; }
  TypeKind kind() const;
  /// Domain / left component. Only for Arrow, Prod, Sum.
  Type left() const;
  /// Codomain / right component. Only for Arrow, Prod, Sum.
  Type right() const;

  bool is_base() const { return kind() == TypeKind::Unit || kind() == TypeKind::Bool; }
  /// Base types have depth 0.
  std::uint32_t depth() const;
  /// True when no arrow occurs anywhere in the type.
  bool first_order() const;

  const void* identity() const { return node_; }

  friend bool operator==(Type, Type) = default;

 private:
  explicit Type(const detail::TypeNode* node) : node_(node) {}
  const detail::TypeNode* node_ = nullptr;
};

/// Ordered (name, type) bindings; lookup finds the rightmost binding.
class TypingEnv {
 public:
  TypingEnv() = default;
  TypingEnv(std::initializer_list<std::pair<Symbol, Type>> bindings) : bindings_(bindings) {}

  void push(Symbol name, Type type) { bindings_.emplace_back(name, type); }
  std::optional<Type> lookup(Symbol name) const;
  const std::vector<std::pair<Symbol, Type>>& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }

  friend bool operator==(const TypingEnv&, const TypingEnv&) = default;

 private:
  std::vector<std::pair<Symbol, Type>> bindings_;
};

}  // namespace fabt

template <>
struct std::hash<fabt::Type> {
  std::size_t operator()(fabt::Type t) const noexcept { return std::hash<const void*>{}(t.identity()); }
};
