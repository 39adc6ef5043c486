#include "fabt/term.hpp"

#include <algorithm>
#include <array>
#include <iterator>

namespace fabt::ast {
namespace {

bool contains(const std::vector<Symbol>& set, Symbol x) { return std::binary_search(set.begin(), set.end(), x); }

void merge_into(std::vector<Symbol>& out, const std::vector<Symbol>& in, Symbol except) {
  if (in.empty()) return;
  std::vector<Symbol> merged;
  merged.reserve(out.size() + in.size());
  auto a = out.begin();
  auto b = in.begin();
  while (a != out.end() || b != in.end()) {
    Symbol next;
    if (b == in.end() || (a != out.end() && *a < *b)) {
      next = *a++;
    } else if (a == out.end() || *b < *a) {
      next = *b++;
      if (next == except) continue;
    } else {
      next = *a++;
      ++b;
    }
    merged.push_back(next);
  }
  out = std::move(merged);
}

}  // namespace

int arity(Kind kind) {
  switch (kind) {
    case Kind::Lam:
    case Kind::Proj1:
    case Kind::Proj2:
    case Kind::Inl:
    case Kind::Inr:
    case Kind::Fix:
      return 1;
    case Kind::App:
    case Kind::Pair:
    case Kind::Seq:
      return 2;
    case Kind::Case:
    case Kind::If:
      return 3;
    default:
      return 0;
  }
}

int eval_arity(Kind kind) {
  switch (kind) {
    case Kind::App:
    case Kind::Pair:
      return 2;
    case Kind::Proj1:
    case Kind::Proj2:
    case Kind::Inl:
    case Kind::Inr:
    case Kind::Case:
    case Kind::Seq:
    case Kind::If:
    case Kind::Fix:
      return 1;
    default:
      return 0;
  }
}

Symbol binder_of(const Node& node, int index) {
  if (node.kind == Kind::Lam && index == 0) return node.name;
  if (node.kind == Kind::Case && index == 1) return node.name;
  if (node.kind == Kind::Case && index == 2) return node.name2;
  return {};
}

namespace {

bool is_constant(Kind kind) {
  return kind == Kind::Unit || kind == Kind::True || kind == Kind::False || kind == Kind::Wrong || kind == Kind::Hole;
}

// Constants carry no names or children, so one shared node per kind serves.
const NodePtr& constant_node(Kind kind) {
  static const auto table = [] {
    std::array<NodePtr, 256> t;
    for (Kind k : {Kind::Unit, Kind::True, Kind::False, Kind::Wrong, Kind::Hole}) {
      auto node = std::make_shared<Node>();
      node->kind = k;
      node->holes = k == Kind::Hole ? 1 : 0;
      node->value = k == Kind::Unit || k == Kind::True || k == Kind::False;
      t[static_cast<std::size_t>(k)] = std::move(node);
    }
    return t;
  }();
  return table[static_cast<std::size_t>(kind)];
}

}  // namespace

NodePtr make(Kind kind, Symbol name, Symbol name2, Type ty1, Type ty2, NodePtr a, NodePtr b, NodePtr c) {
  if (is_constant(kind)) return constant_node(kind);
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->name = name;
  node->name2 = name2;
  node->ty1 = ty1;
  node->ty2 = ty2;
  node->kids = {std::move(a), std::move(b), std::move(c)};
  const int n = arity(kind);
  for (int i = 0; i < n; ++i)
    if (!node->kids[static_cast<std::size_t>(i)]) throw std::invalid_argument("missing subterm");

  node->holes = kind == Kind::Hole ? 1 : 0;
  if (kind == Kind::Var) node->free.push_back(name);
  for (int i = 0; i < n; ++i) {
    const Node& kid = *node->kids[static_cast<std::size_t>(i)];
    node->holes += kid.holes;
    merge_into(node->free, kid.free, binder_of(*node, i));
  }

  switch (kind) {
    case Kind::Unit:
    case Kind::True:
    case Kind::False:
    case Kind::Lam:
      node->value = true;
      break;
    case Kind::Pair:
      node->value = node->kids[0]->value && node->kids[1]->value;
      break;
    case Kind::Inl:
    case Kind::Inr:
      node->value = node->kids[0]->value;
      break;
    default:
      node->value = false;
  }
  return node;
}

bool occurs_free(const Node& node, Symbol name) { return contains(node.free, name); }

NodePtr with_child(const Node& node, int index, NodePtr child) {
  auto kids = node.kids;
  kids[static_cast<std::size_t>(index)] = std::move(child);
  return make(node.kind, node.name, node.name2, node.ty1, node.ty2, kids[0], kids[1], kids[2]);
}

namespace {

// Substitutes under binder `b` of child `index`; returns the possibly renamed
// binder together with the new child.
std::pair<Symbol, NodePtr> subst_under(Symbol b, const NodePtr& body, Symbol x, const NodePtr& v) {
  if (b == x || !contains(body->free, x)) return {b, body};
  if (!contains(v->free, b)) return {b, substitute(body, x, v)};
  Symbol fresh = fresh_symbol(b.str(), [&](Symbol s) {
    return s == x || contains(v->free, s) || contains(body->free, s);
  });
  NodePtr renamed = substitute(body, b, make(Kind::Var, fresh));
  return {fresh, substitute(renamed, x, v)};
}

}  // namespace

NodePtr substitute(const NodePtr& term, Symbol x, const NodePtr& v) {
  if (!contains(term->free, x)) return term;
  const Node& t = *term;
  switch (t.kind) {
    case Kind::Var:
      return v;
    case Kind::Lam: {
      auto [b, body] = subst_under(t.name, t.kids[0], x, v);
      return make(Kind::Lam, b, {}, t.ty1, t.ty2, body);
    }
    case Kind::Case: {
      NodePtr scrut = substitute(t.kids[0], x, v);
      auto [b1, left] = subst_under(t.name, t.kids[1], x, v);
      auto [b2, right] = subst_under(t.name2, t.kids[2], x, v);
      return make(Kind::Case, b1, b2, {}, {}, scrut, left, right);
    }
    default: {
      std::array<NodePtr, 3> kids = t.kids;
      const int n = arity(t.kind);
      for (int i = 0; i < n; ++i) kids[static_cast<std::size_t>(i)] = substitute(kids[static_cast<std::size_t>(i)], x, v);
      return make(t.kind, t.name, t.name2, t.ty1, t.ty2, kids[0], kids[1], kids[2]);
    }
  }
}

NodePtr plug(const NodePtr& context, const NodePtr& filler) {
  if (context->holes == 0) return context;
  if (context->kind == Kind::Hole) return filler;
  std::array<NodePtr, 3> kids = context->kids;
  const int n = arity(context->kind);
  for (int i = 0; i < n; ++i) kids[static_cast<std::size_t>(i)] = plug(kids[static_cast<std::size_t>(i)], filler);
  return make(context->kind, context->name, context->name2, context->ty1, context->ty2, kids[0], kids[1], kids[2]);
}

namespace {

struct AlphaComparer {
  std::vector<Symbol> left_binders;
  std::vector<Symbol> right_binders;

  static std::ptrdiff_t index_of(const std::vector<Symbol>& stack, Symbol x) {
    for (auto i = static_cast<std::ptrdiff_t>(stack.size()) - 1; i >= 0; --i)
      if (stack[static_cast<std::size_t>(i)] == x) return i;
    return -1;
  }

  bool equal(const NodePtr& a, const NodePtr& b) {
    if (a == b && a->free.empty()) return true;
    if (a->kind != b->kind || a->ty1 != b->ty1 || a->ty2 != b->ty2) return false;
    if (a->kind == Kind::Var) {
      const auto i = index_of(left_binders, a->name);
      const auto j = index_of(right_binders, b->name);
      if (i < 0 && j < 0) return a->name == b->name;
      return i == j;
    }
    const int n = arity(a->kind);
    for (int k = 0; k < n; ++k) {
      const Symbol ba = binder_of(*a, k);
      const Symbol bb = binder_of(*b, k);
      const bool binds = !ba.empty();
      if (binds) {
        left_binders.push_back(ba);
        right_binders.push_back(bb);
      }
      const bool ok = equal(a->kids[static_cast<std::size_t>(k)], b->kids[static_cast<std::size_t>(k)]);
      if (binds) {
        left_binders.pop_back();
        right_binders.pop_back();
      }
      if (!ok) return false;
    }
    return true;
  }
};

}  // namespace

bool alpha_equal(const NodePtr& a, const NodePtr& b) {
  if (!a || !b) return a == b;
  AlphaComparer cmp;
  return cmp.equal(a, b);
}

bool structurally_equal(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->name2 != b->name2 || a->ty1 != b->ty1 || a->ty2 != b->ty2)
    return false;
  const int n = arity(a->kind);
  for (int k = 0; k < n; ++k)
    if (!structurally_equal(a->kids[static_cast<std::size_t>(k)], b->kids[static_cast<std::size_t>(k)])) return false;
  return true;
}

}  // namespace fabt::ast
