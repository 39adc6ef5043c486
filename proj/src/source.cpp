#include "fabt/source.hpp"

#include <algorithm>
#include <unordered_map>

#include "fabt/syntax.hpp"
#include "machine.hpp"

namespace fabt {

bool is_src_value(const SrcTerm& t) { return t.is_value(); }

namespace {

constexpr std::size_t kErrorTermChars = 120;

// Types under inference: union-find over slots. Ground slots hold a complete
// Type, so the huge hash-consed types produced by generators unify in O(1)
// when they meet each other.
class Unifier {
 public:
  enum class Tag : std::uint8_t { Var, Ground, Arrow, Prod, Sum };

  int var() { return add({Tag::Var, {}, -1, -1}); }
  int ground(Type t) {
    auto [it, inserted] = ground_ids_.try_emplace(t, 0);
    if (inserted) it->second = add({Tag::Ground, t, -1, -1});
    return it->second;
  }
  int cons(Tag tag, int a, int b) { return add({tag, {}, a, b}); }

  bool unify(int a, int b) {
    std::vector<std::pair<int, int>> work{{a, b}};
    while (!work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      const Slot sx = slots_[static_cast<std::size_t>(x)];
      const Slot sy = slots_[static_cast<std::size_t>(y)];
      if (sx.tag == Tag::Var || sy.tag == Tag::Var) {
        const int v = sx.tag == Tag::Var ? x : y;
        const int other = v == x ? y : x;
        if (occurs(v, other)) return false;
        parent_[static_cast<std::size_t>(v)] = other;
        continue;
      }
      if (sx.tag == Tag::Ground && sy.tag == Tag::Ground) {
        if (sx.ground != sy.ground) return false;
        continue;
      }
      if (shape(sx) != shape(sy)) return false;
      work.emplace_back(left(x), left(y));
      work.emplace_back(right(x), right(y));
      // Merge now so shared structure is visited once; a Ground slot stays the
      // representative because it carries the complete type.
      if (sx.tag == Tag::Ground) parent_[static_cast<std::size_t>(y)] = x;
      else parent_[static_cast<std::size_t>(x)] = y;
    }
    return true;
  }

  /// Complete type of slot i, or an invalid Type if some part is still open
  /// and `default_unit` is false.
  Type resolve(int i, bool default_unit) {
    std::unordered_map<int, Type> memo;
    return resolve(i, default_unit, memo);
  }

  /// Snapshot of slot i's current structure. Open parts stay variables, so
  /// each instantiation gets its own copies of them.
  struct Scheme {
    struct Node {
      Tag tag;
      Type ground;
      int a;
      int b;
    };
    std::vector<Node> nodes;
    int root = -1;
  };

  Scheme snapshot(int i) {
    Scheme s;
    std::unordered_map<int, int> memo;
    s.root = snapshot(i, s, memo);
    return s;
  }

  int instantiate(const Scheme& s) {
    std::vector<int> ids(s.nodes.size());
    for (std::size_t k = 0; k < s.nodes.size(); ++k) {
      const auto& n = s.nodes[k];
      switch (n.tag) {
        case Tag::Var:
          ids[k] = var();
          break;
        case Tag::Ground:
          ids[k] = ground(n.ground);
          break;
        default:
          ids[k] = cons(n.tag, ids[static_cast<std::size_t>(n.a)], ids[static_cast<std::size_t>(n.b)]);
      }
    }
    return ids[static_cast<std::size_t>(s.root)];
  }

  std::string show(int i, int prec = 0) {
    i = find(i);
    const Slot s = slots_[static_cast<std::size_t>(i)];
    if (s.tag == Tag::Var) return "_";
    if (s.tag == Tag::Ground) {
      const int own = s.ground.kind() == TypeKind::Arrow ? 0 : s.ground.kind() == TypeKind::Sum ? 1
                      : s.ground.kind() == TypeKind::Prod                                       ? 2
                                                                                                : 3;
      std::string text = to_string(s.ground);
      return own < prec ? "(" + text + ")" : text;
    }
    const int own = s.tag == Tag::Arrow ? 0 : s.tag == Tag::Sum ? 1 : 2;
    const char* op = s.tag == Tag::Arrow ? " -> " : s.tag == Tag::Sum ? " + " : " * ";
    std::string text = show(s.a, own + 1) + op + show(s.b, own);
    return own < prec ? "(" + text + ")" : text;
  }

 private:
  struct Slot {
    Tag tag;
    Type ground;
    int a;
    int b;
  };

  int add(Slot s) {
    slots_.push_back(s);
    parent_.push_back(static_cast<int>(parent_.size()));
    return static_cast<int>(slots_.size()) - 1;
  }

  int find(int i) {
    int root = i;
    while (parent_[static_cast<std::size_t>(root)] != root) root = parent_[static_cast<std::size_t>(root)];
    while (parent_[static_cast<std::size_t>(i)] != root) {
      const int next = parent_[static_cast<std::size_t>(i)];
      parent_[static_cast<std::size_t>(i)] = root;
      i = next;
    }
    return root;
  }

  static TypeKind shape(const Slot& s) {
    switch (s.tag) {
      case Tag::Arrow:
        return TypeKind::Arrow;
      case Tag::Prod:
        return TypeKind::Prod;
      case Tag::Sum:
        return TypeKind::Sum;
      default:
        return s.ground.kind();
    }
  }

  int left(int i) {
    const Slot s = slots_[static_cast<std::size_t>(i)];
    return s.tag == Tag::Ground ? ground(s.ground.left()) : s.a;
  }
  int right(int i) {
    const Slot s = slots_[static_cast<std::size_t>(i)];
    return s.tag == Tag::Ground ? ground(s.ground.right()) : s.b;
  }

  bool occurs(int v, int t) {
    std::vector<int> stack{t};
    std::vector<int> seen;
    while (!stack.empty()) {
      const int i = find(stack.back());
      stack.pop_back();
      if (i == v) return true;
      const Slot s = slots_[static_cast<std::size_t>(i)];
      if (s.tag == Tag::Var || s.tag == Tag::Ground) continue;
      if (std::find(seen.begin(), seen.end(), i) != seen.end()) continue;
      seen.push_back(i);
      stack.push_back(s.a);
      stack.push_back(s.b);
    }
    return false;
  }

  // Children come before parents in s.nodes; fully known parts fold into Ground.
  int snapshot(int i, Scheme& s, std::unordered_map<int, int>& memo) {
    i = find(i);
    if (auto it = memo.find(i); it != memo.end()) return it->second;
    const Slot slot = slots_[static_cast<std::size_t>(i)];
    Scheme::Node node{slot.tag, slot.ground, -1, -1};
    if (slot.tag != Tag::Var && slot.tag != Tag::Ground) {
      node.a = snapshot(slot.a, s, memo);
      node.b = snapshot(slot.b, s, memo);
      const auto& na = s.nodes[static_cast<std::size_t>(node.a)];
      const auto& nb = s.nodes[static_cast<std::size_t>(node.b)];
      if (na.tag == Tag::Ground && nb.tag == Tag::Ground) {
        node.ground = slot.tag == Tag::Arrow  ? Type::arrow(na.ground, nb.ground)
                      : slot.tag == Tag::Prod ? Type::prod(na.ground, nb.ground)
                                              : Type::sum(na.ground, nb.ground);
        node.tag = Tag::Ground;
        node.a = node.b = -1;
      }
    }
    s.nodes.push_back(node);
    const int id = static_cast<int>(s.nodes.size()) - 1;
    memo.emplace(i, id);
    return id;
  }

  Type resolve(int i, bool default_unit, std::unordered_map<int, Type>& memo) {
    i = find(i);
    if (auto it = memo.find(i); it != memo.end()) return it->second;
    const Slot s = slots_[static_cast<std::size_t>(i)];
    Type result;
    switch (s.tag) {
      case Tag::Var:
        result = default_unit ? Type::unit() : Type();
        break;
      case Tag::Ground:
        result = s.ground;
        break;
      default: {
        const Type a = resolve(s.a, default_unit, memo);
        const Type b = a.valid() ? resolve(s.b, default_unit, memo) : Type();
        if (a.valid() && b.valid())
          result = s.tag == Tag::Arrow ? Type::arrow(a, b) : s.tag == Tag::Prod ? Type::prod(a, b) : Type::sum(a, b);
      }
    }
    memo.emplace(i, result);
    return result;
  }

  std::vector<Slot> slots_;
  std::vector<int> parent_;
  std::unordered_map<Type, int> ground_ids_;
};

using Tag = Unifier::Tag;

class Inferencer {
 public:
  // With share_closed, every occurrence of a closed subterm gets the same type
  // slot: linear on generated DAGs and sound, but it rejects terms that use
  // one closed node at two different types. Otherwise each occurrence gets a
  // fresh instance of the subterm's principal type.
  Inferencer(const TypingEnv& env, const detail::HoleTyping* hole, bool share_closed)
      : hole_(hole), share_closed_(share_closed) {
    for (const auto& [name, type] : env.bindings()) scope_.emplace_back(name, u_.ground(type));
  }

  Unifier& unifier() { return u_; }

  int infer(const ast::NodePtr& term) {
    const ast::Node& t = *term;
    // A closed term's typings do not depend on the scope, so shared closed
    // subterms are inferred once and their principal type is reused.
    const bool cacheable = t.free.empty() && t.holes == 0;
    if (cacheable && share_closed_)
      if (auto it = closed_slots_.find(&t); it != closed_slots_.end()) return it->second;
    if (cacheable && !share_closed_)
      if (auto it = closed_types_.find(&t); it != closed_types_.end()) return u_.instantiate(it->second);
    const int result = infer_node(term);
    if (cacheable && share_closed_) closed_slots_.emplace(&t, result);
    if (cacheable && !share_closed_) closed_types_.emplace(&t, u_.snapshot(result));
    return result;
  }

  [[noreturn]] void fail(const ast::NodePtr& at, const std::string& what, int expected, int actual) {
    SrcTerm sub(at);
    std::string exp = expected >= 0 ? u_.show(expected) : std::string();
    std::string act = actual >= 0 ? u_.show(actual) : std::string();
    std::string msg = what;
    if (!exp.empty()) msg += ": expected " + exp;
    if (!act.empty()) msg += (exp.empty() ? ": found " : ", found ") + act;
    msg += " in `" + print(sub, kErrorTermChars) + "`";
    throw TypeError(msg, sub, exp, act);
  }

 private:
  int require(const ast::NodePtr& at, int ty, int want, const char* what) {
    if (!u_.unify(ty, want)) fail(at, what, want, ty);
    return ty;
  }

  int infer_under(Symbol x, int ty, const ast::NodePtr& body) {
    scope_.emplace_back(x, ty);
    const int r = infer(body);
    scope_.pop_back();
    return r;
  }

  int lookup(Symbol x) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == x) return it->second;
    return -1;
  }

  int infer_node(const ast::NodePtr& term) {
    const ast::Node& t = *term;
    const auto& k = t.kids;
    switch (t.kind) {
      case Kind::Unit:
        return u_.ground(Type::unit());
      case Kind::True:
      case Kind::False:
        return u_.ground(Type::boolean());
      case Kind::Var: {
        const int ty = lookup(t.name);
        if (ty < 0) fail(term, "unbound variable " + t.name.str(), -1, -1);
        return ty;
      }
      case Kind::Lam: {
        if (!t.ty1.valid()) fail(term, "lambda without a type annotation", -1, -1);
        const int dom = u_.ground(t.ty1);
        return u_.cons(Tag::Arrow, dom, infer_under(t.name, dom, k[0]));
      }
      case Kind::App: {
        const int fn = infer(k[0]);
        const int arg = infer(k[1]);
        const int dom = u_.var();
        const int cod = u_.var();
        require(k[0], fn, u_.cons(Tag::Arrow, dom, cod), "applying a non-function");
        require(k[1], arg, dom, "argument type mismatch");
        return cod;
      }
      case Kind::Pair: {
        const int a = infer(k[0]);
        return u_.cons(Tag::Prod, a, infer(k[1]));
      }
      case Kind::Proj1:
      case Kind::Proj2: {
        const int l = u_.var();
        const int r = u_.var();
        require(k[0], infer(k[0]), u_.cons(Tag::Prod, l, r), "projecting from a non-pair");
        return t.kind == Kind::Proj1 ? l : r;
      }
      case Kind::Inl:
        return u_.cons(Tag::Sum, infer(k[0]), u_.var());
      case Kind::Inr: {
        const int r = infer(k[0]);
        return u_.cons(Tag::Sum, u_.var(), r);
      }
      case Kind::Case: {
        const int l = u_.var();
        const int r = u_.var();
        require(k[0], infer(k[0]), u_.cons(Tag::Sum, l, r), "case on a non-sum");
        const int left = infer_under(t.name, l, k[1]);
        const int right = infer_under(t.name2, r, k[2]);
        require(k[2], right, left, "case branches disagree");
        return left;
      }
      case Kind::Seq:
        require(k[0], infer(k[0]), u_.ground(Type::unit()), "sequencing a non-unit");
        return infer(k[1]);
      case Kind::If: {
        require(k[0], infer(k[0]), u_.ground(Type::boolean()), "non-boolean condition");
        const int a = infer(k[1]);
        require(k[2], infer(k[2]), a, "if branches disagree");
        return a;
      }
      case Kind::Fix: {
        const Type fn = Type::arrow(t.ty1, t.ty2);
        require(k[0], infer(k[0]), u_.ground(Type::arrow(fn, fn)), "fix body type mismatch");
        return u_.ground(fn);
      }
      case Kind::Hole:
        return infer_hole(term);
      case Kind::Wrong:
        fail(term, "wrong is not a source term", -1, -1);
    }
    fail(term, "unknown term", -1, -1);
  }

  int infer_hole(const ast::NodePtr& term) {
    if (!hole_) fail(term, "hole outside a context", -1, -1);
    // Every variable the filler may use must reach it at the declared type.
    for (const auto& [name, type] : hole_->inner_env->bindings()) {
      const Type want = *hole_->inner_env->lookup(name);
      if (want != type) continue;  // shadowed inside the hole environment
      const int have = lookup(name);
      if (have < 0) fail(term, "hole variable " + name.str() + " is not bound", u_.ground(want), -1);
      if (!u_.unify(have, u_.ground(want)))
        fail(term, "binder " + name.str() + " seen by the hole has the wrong type", u_.ground(want), have);
    }
    return u_.ground(hole_->inner_type);
  }

  Unifier u_;
  const detail::HoleTyping* hole_;
  std::vector<std::pair<Symbol, int>> scope_;
  bool share_closed_;
  std::unordered_map<const ast::Node*, int> closed_slots_;
  std::unordered_map<const ast::Node*, Unifier::Scheme> closed_types_;
};

}  // namespace

namespace detail {

namespace {

Type run_inference(const TypingEnv& env, const SrcTerm& t, const HoleTyping* hole, Type expected, bool share_closed) {
  Inferencer inf(env, hole, share_closed);
  const int ty = inf.infer(t.ptr());
  if (expected.valid() && !inf.unifier().unify(ty, inf.unifier().ground(expected)))
    inf.fail(t.ptr(), "term does not have the declared type", inf.unifier().ground(expected), ty);
  return inf.unifier().resolve(ty, true);
}

}  // namespace

Type infer_type(const TypingEnv& env, const SrcTerm& t, const HoleTyping* hole, Type expected) {
  try {
    return run_inference(env, t, hole, expected, true);
  } catch (const TypeError&) {
    // Either ill-typed, or a closed subterm is shared at two types.
    return run_inference(env, t, hole, expected, false);
  }
}

}  // namespace detail

Type typecheck(const TypingEnv& env, const SrcTerm& t) { return detail::infer_type(env, t, nullptr, {}); }

void check_type(const TypingEnv& env, const SrcTerm& t, Type expected) {
  detail::infer_type(env, t, nullptr, expected);
}

SrcTerm src_subst(const SrcTerm& t, Symbol x, const SrcTerm& v) {
  return SrcTerm(ast::substitute(t.ptr(), x, v.ptr()));
}

namespace {

ast::NodePtr contract_src(const ast::Node& t) {
  const auto& k = t.kids;
  switch (t.kind) {
    case Kind::App:
      if (k[0]->kind == Kind::Lam) return ast::substitute(k[0]->kids[0], k[0]->name, k[1]);
      return nullptr;
    case Kind::Proj1:
    case Kind::Proj2:
      if (k[0]->kind == Kind::Pair) return k[0]->kids[t.kind == Kind::Proj1 ? 0 : 1];
      return nullptr;
    case Kind::Case:
      if (k[0]->kind == Kind::Inl) return ast::substitute(k[1], t.name, k[0]->kids[0]);
      if (k[0]->kind == Kind::Inr) return ast::substitute(k[2], t.name2, k[0]->kids[0]);
      return nullptr;
    case Kind::Seq:
      return k[0]->kind == Kind::Unit ? k[1] : nullptr;
    case Kind::If:
      if (k[0]->kind == Kind::True) return k[1];
      if (k[0]->kind == Kind::False) return k[2];
      return nullptr;
    case Kind::Fix: {
      const ast::Node& fn = *k[0];
      if (fn.kind != Kind::Lam) return nullptr;
      // fix (λx. b) → b[(λy. fix (λx. b) y) / x]
      const Symbol y = fresh_symbol("y", [&](Symbol s) { return ast::occurs_free(fn, s); });
      auto self = ast::make(Kind::Fix, {}, {}, t.ty1, t.ty2, k[0]);
      auto eta = ast::make(Kind::Lam, y, {}, t.ty1, {},
                           ast::make(Kind::App, {}, {}, {}, {}, std::move(self), ast::make(Kind::Var, y)));
      return ast::substitute(fn.kids[0], fn.name, eta);
    }
    default:
      return nullptr;
  }
}

}  // namespace

StepResult<Lang::Source> src_step(const SrcTerm& t) {
  using S = detail::SingleStep::Status;
  auto r = detail::step_once(t.ptr(), contract_src);
  switch (r.status) {
    case S::Stepped:
      return {StepStatus::Stepped, SrcTerm(r.term)};
    case S::AlreadyValue:
      return {StepStatus::AlreadyValue, {}};
    case S::IsWrong:
      return {StepStatus::IsWrong, {}};
    case S::Stuck:
      break;
  }
  return {StepStatus::Stuck, {}};
}

SrcOutcome src_eval(const SrcTerm& t, std::uint64_t fuel) {
  using S = detail::MachineResult::Status;
  auto r = detail::run_machine(t.ptr(), fuel, contract_src);
  switch (r.status) {
    case S::Value:
      return {SrcOutcome::Status::Value, SrcTerm(r.term), r.steps};
    case S::Exhausted:
      return {SrcOutcome::Status::FuelExhausted, {}, r.steps};
    default:
      throw EvalError("source evaluation stuck at `" + print(SrcTerm(r.term), kErrorTermChars) + "`");
  }
}

}  // namespace fabt
