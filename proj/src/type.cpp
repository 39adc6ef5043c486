#include "fabt/type.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <tuple>
#include <unordered_map>

namespace fabt {
namespace detail {

struct TypeNode {
  TypeKind kind;
  const TypeNode* left;
  const TypeNode* right;
  std::uint32_t depth;
  bool first_order;
};

}  // namespace detail

namespace {

using detail::TypeNode;

struct Key {
  TypeKind kind;
  const TypeNode* left;
  const TypeNode* right;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::size_t h = static_cast<std::size_t>(k.kind);
    h = h * 1000003u ^ std::hash<const void*>{}(k.left);
    h = h * 1000003u ^ std::hash<const void*>{}(k.right);
    return h;
  }
};

struct TypeTable {
  std::mutex mutex;
  std::deque<TypeNode> nodes;
  std::unordered_map<Key, const TypeNode*, KeyHash> index;
};

TypeTable& table() {
  static TypeTable* t = new TypeTable();
  return *t;
}

const TypeNode* intern(TypeKind kind, const TypeNode* l, const TypeNode* r) {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  Key key{kind, l, r};
  if (auto it = t.index.find(key); it != t.index.end()) return it->second;
  std::uint32_t depth = 0;
  bool fo = kind != TypeKind::Arrow;
  if (l) {
    depth = 1 + std::max(l->depth, r->depth);
    fo = fo && l->first_order && r->first_order;
  }
  const TypeNode* node = &t.nodes.emplace_back(TypeNode{kind, l, r, depth, fo});
  t.index.emplace(key, node);
  return node;
}

}  // namespace

Type Type::unit() {
  static const TypeNode* n = intern(TypeKind::Unit, nullptr, nullptr);
  return Type(n);
}
Type Type::boolean() {
  static const TypeNode* n = intern(TypeKind::Bool, nullptr, nullptr);
  return Type(n);
}
Type Type::arrow(Type dom, Type cod) { return Type(intern(TypeKind::Arrow, dom.node_, cod.node_)); }
Type Type::prod(Type left, Type right) { return Type(intern(TypeKind::Prod, left.node_, right.node_)); }
Type Type::sum(Type left, Type right) { return Type(intern(TypeKind::Sum, left.node_, right.node_)); }

TypeKind Type::kind() const { return node_->kind; }
Type Type::left() const { return Type(node_->left); }
Type Type::right() const { return Type(node_->right); }
std::uint32_t Type::depth() const { return node_->depth; }
bool Type::first_order() const { return node_->first_order; }

std::optional<Type> TypingEnv::lookup(Symbol name) const {
  for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it)
    if (it->first == name) return it->second;
  return std::nullopt;
}

}  // namespace fabt
