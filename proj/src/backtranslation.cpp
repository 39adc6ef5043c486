#include "fabt/backtranslation.hpp"

#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "fabt/contexts.hpp"

namespace fabt {

namespace {

constexpr int kLastSlot = 5;

int slot_of(UValTag tag) { return static_cast<int>(tag); }

// inr^s (inl p), or inr^5 p for the last slot.
SrcTerm place_in_slot(int s, const SrcTerm& payload) {
  SrcTerm t = s == kLastSlot ? payload : SrcTerm::inl(payload);
  for (int i = 0; i < s; ++i) t = SrcTerm::inr(t);
  return t;
}

const Symbol kX("x");
const Symbol kY("y");
const Symbol kZ("z");
const Symbol kIgnored("_");

class UValBuilder {
 public:
  using Branch = std::function<SrcTerm(const SrcTerm& payload)>;

  Type uval(unsigned n) {
    if (uvals_.empty()) uvals_.push_back(Type::unit());
    while (uvals_.size() <= n) {
      const Type u = uvals_.back();
      const Type tail = Type::sum(Type::prod(u, u), Type::sum(Type::sum(u, u), Type::arrow(u, u)));
      uvals_.push_back(Type::sum(Type::unit(), Type::sum(Type::unit(), Type::sum(Type::boolean(), tail))));
    }
    return uvals_[n];
  }

  Type slot_type(UValTag tag, unsigned n) {
    const Type u = uval(n);
    switch (tag) {
      case UValTag::Unk:
      case UValTag::Unit:
        return Type::unit();
      case UValTag::Bool:
        return Type::boolean();
      case UValTag::Prod:
        return Type::prod(u, u);
      case UValTag::Sum:
        return Type::sum(u, u);
      case UValTag::Arrow:
        return Type::arrow(u, u);
    }
    return {};
  }

  SrcTerm in(UValTag tag, const SrcTerm& payload) {
    return place_in_slot(slot_of(tag), tag == UValTag::Unk ? SrcTerm::unit() : payload);
  }

  SrcTerm unk(unsigned n) { return n == 0 ? SrcTerm::unit() : in(UValTag::Unk, {}); }

  SrcTerm omega(Type t) {
    if (auto it = omegas_.find(t); it != omegas_.end()) return it->second;
    const Type loop = Type::arrow(Type::unit(), t);
    SrcTerm w = SrcTerm::app(SrcTerm::fix(Type::unit(), t, SrcTerm::lam(kX, loop, SrcTerm::var(kX))), SrcTerm::unit());
    omegas_.emplace(t, w);
    return w;
  }

  /// case v of inl p0 => b0 | inr x => case x of ... | inr last => b5, with
  /// omega(result) wherever no branch is given.
  SrcTerm cascade(Symbol v, const std::array<Branch, 6>& branches, Type result, Symbol payload, Symbol last) {
    auto arm = [&](int s, Symbol p) { return branches[static_cast<std::size_t>(s)] ? branches[static_cast<std::size_t>(s)](SrcTerm::var(p)) : omega(result); };
    auto binder = [&](int s) { return branches[static_cast<std::size_t>(s)] && s != 0 ? payload : kIgnored; };
    SrcTerm t = arm(kLastSlot, last);
    for (int s = kLastSlot - 1; s >= 0; --s)
      t = SrcTerm::case_of(SrcTerm::var(s == 0 ? v : kX), binder(s), arm(s, binder(s)), s == kLastSlot - 1 ? last : kX, t);
    return t;
  }

  Type case_type(UValTag tag, unsigned n) {
    const Type u = uval(n);
    return tag == UValTag::Arrow ? Type::arrow(uval(n + 1), Type::arrow(u, u)) : Type::arrow(uval(n + 1), slot_type(tag, n));
  }

  SrcTerm case_uval(UValTag tag, unsigned n) {
    if (tag == UValTag::Unk) throw std::invalid_argument("no destructor for the unknown slot");
    const auto key = std::make_pair(static_cast<int>(tag), n);
    if (auto it = cases_.find(key); it != cases_.end()) return it->second;
    std::array<Branch, 6> branches{};
    SrcTerm out;
    if (tag == UValTag::Arrow) {
      branches[kLastSlot] = [](const SrcTerm& z) { return SrcTerm::app(z, SrcTerm::var(kY)); };
      const SrcTerm body = cascade(kX, branches, uval(n), kX, kZ);
      out = SrcTerm::lam(kX, uval(n + 1), SrcTerm::lam(kY, uval(n), body));
    } else {
      branches[static_cast<std::size_t>(slot_of(tag))] = [](const SrcTerm& p) { return p; };
      out = SrcTerm::lam(kX, uval(n + 1), cascade(kX, branches, slot_type(tag, n), kX, kX));
    }
    cases_.emplace(key, out);
    return out;
  }

  SrcTerm downgrade(unsigned n, unsigned d) {
    build_updown(n, d);
    return downgrades_.at({n, d});
  }
  SrcTerm upgrade(unsigned n, unsigned d) {
    build_updown(n, d);
    return upgrades_.at({n, d});
  }

  SrcTerm inject(Type t, unsigned n) {
    const auto key = std::make_pair(t, n);
    if (auto it = injects_.find(key); it != injects_.end()) return it->second;
    SrcTerm out = make_inject(t, n);
    injects_.emplace(key, out);
    return out;
  }

  SrcTerm extract(Type t, unsigned n) {
    const auto key = std::make_pair(t, n);
    if (auto it = extracts_.find(key); it != extracts_.end()) return it->second;
    SrcTerm out = make_extract(t, n);
    extracts_.emplace(key, out);
    return out;
  }

  SrcTerm emulate(unsigned n, const ast::NodePtr& t) {
    if (auto it = emulated_.find(t.get()); it != emulated_.end()) return it->second;
    SrcTerm out = make_emulate(n, *t);
    emulated_.emplace(t.get(), out);
    return out;
  }

 private:
  // Bottom-up so that large n needs no deep recursion.
  void build_updown(unsigned n, unsigned d) {
    for (unsigned i = 0; i <= n; ++i) {
      if (downgrades_.count({i, d})) continue;
      if (i == 0) {
        downgrades_.emplace(std::make_pair(0u, d), SrcTerm::lam("v", uval(d), unk(0)));
        upgrades_.emplace(std::make_pair(0u, d), SrcTerm::lam(kX, uval(0), unk(d)));
        continue;
      }
      const unsigned m = i - 1;
      downgrades_.emplace(std::make_pair(i, d), convert(m, d, true));
      upgrades_.emplace(std::make_pair(i, d), convert(m, d, false));
    }
  }

  // downgrade_{m+1;d} (down) or upgrade_{m+1;d}: a slot-by-slot copy that
  // converts the components with the level-m conversions.
  SrcTerm convert(unsigned m, unsigned d, bool down) {
    const SrcTerm same = down ? downgrades_.at({m, d}) : upgrades_.at({m, d});
    const SrcTerm other = down ? upgrades_.at({m, d}) : downgrades_.at({m, d});
    const unsigned from = down ? m + d + 1 : m + 1;
    const unsigned to = down ? m + 1 : m + d + 1;
    const Type zty = uval(down ? m : m + d);
    std::array<Branch, 6> b{};
    b[0] = [&](const SrcTerm&) { return in(UValTag::Unk, {}); };
    b[1] = [&](const SrcTerm& y) { return in(UValTag::Unit, y); };
    b[2] = [&](const SrcTerm& y) { return in(UValTag::Bool, y); };
    b[3] = [&](const SrcTerm& y) {
      return in(UValTag::Prod, SrcTerm::pair(SrcTerm::app(same, SrcTerm::proj1(y)), SrcTerm::app(same, SrcTerm::proj2(y))));
    };
    b[4] = [&](const SrcTerm& y) {
      const SrcTerm x = SrcTerm::var(kX);
      return in(UValTag::Sum, SrcTerm::case_of(y, kX, SrcTerm::inl(SrcTerm::app(same, x)), kX,
                                               SrcTerm::inr(SrcTerm::app(same, x))));
    };
    b[5] = [&](const SrcTerm& y) {
      const SrcTerm body = SrcTerm::app(same, SrcTerm::app(y, SrcTerm::app(other, SrcTerm::var(kZ))));
      return in(UValTag::Arrow, SrcTerm::lam(kZ, zty, body));
    };
    return SrcTerm::lam(kX, uval(from), cascade(kX, b, uval(to), kY, kY));
  }

  SrcTerm make_inject(Type t, unsigned n) {
    using T = SrcTerm;
    if (n == 0) return T::lam(kX, t, omega(uval(0)));
    const unsigned m = n - 1;
    const T x = T::var(kX);
    switch (t.kind()) {
      case TypeKind::Unit:
        return T::lam(kX, t, in(UValTag::Unit, x));
      case TypeKind::Bool:
        return T::lam(kX, t, in(UValTag::Bool, x));
      case TypeKind::Arrow: {
        const T z = T::var(kZ);
        const T body = T::app(inject(t.right(), m), T::app(x, T::app(extract(t.left(), m), z)));
        return T::lam(kX, t, in(UValTag::Arrow, T::lam(kZ, uval(m), body)));
      }
      case TypeKind::Prod:
        return T::lam(kX, t,
                      in(UValTag::Prod, T::pair(T::app(inject(t.left(), m), T::proj1(x)),
                                                T::app(inject(t.right(), m), T::proj2(x)))));
      case TypeKind::Sum: {
        const T y = T::var(kY);
        return T::lam(kX, t,
                      in(UValTag::Sum, T::case_of(x, kY, T::inl(T::app(inject(t.left(), m), y)), kY,
                                                  T::inr(T::app(inject(t.right(), m), y)))));
      }
    }
    return {};
  }

  SrcTerm make_extract(Type t, unsigned n) {
    using T = SrcTerm;
    if (n == 0) return T::lam(kX, uval(0), omega(t));
    const unsigned m = n - 1;
    const T x = T::var(kX);
    const Type u = uval(n);
    switch (t.kind()) {
      case TypeKind::Unit:
        return T::lam(kX, u, T::app(case_uval(UValTag::Unit, m), x));
      case TypeKind::Bool:
        return T::lam(kX, u, T::app(case_uval(UValTag::Bool, m), x));
      case TypeKind::Arrow: {
        const T y = T::var(kY);
        const T call = T::apply(case_uval(UValTag::Arrow, m), x, T::app(inject(t.left(), m), y));
        return T::lam(kX, u, T::lam(kY, t.left(), T::app(extract(t.right(), m), call)));
      }
      case TypeKind::Prod: {
        const T pair = T::app(case_uval(UValTag::Prod, m), x);
        return T::lam(kX, u, T::pair(T::app(extract(t.left(), m), T::proj1(pair)),
                                     T::app(extract(t.right(), m), T::proj2(pair))));
      }
      case TypeKind::Sum: {
        const T y = T::var(kY);
        return T::lam(kX, u, T::case_of(T::app(case_uval(UValTag::Sum, m), x), kY, T::inl(T::app(extract(t.left(), m), y)),
                                        kY, T::inr(T::app(extract(t.right(), m), y))));
      }
    }
    return {};
  }

  SrcTerm make_emulate(unsigned n, const ast::Node& t) {
    using T = SrcTerm;
    auto sub = [&](int i) { return emulate(n, t.kids[static_cast<std::size_t>(i)]); };
    auto wrap = [&](UValTag tag, const T& payload) { return T::app(downgrade(n, 1), in(tag, payload)); };
    auto open = [&](UValTag tag, const T& e) { return T::app(case_uval(tag, n), T::app(upgrade(n, 1), e)); };
    switch (t.kind) {
      case Kind::Unit:
        return wrap(UValTag::Unit, T::unit());
      case Kind::True:
        return wrap(UValTag::Bool, T::truth());
      case Kind::False:
        return wrap(UValTag::Bool, T::falsity());
      case Kind::Var:
        return T::var(t.name);
      case Kind::Hole:
        return T::hole();
      case Kind::Wrong:
        return omega(uval(n));
      case Kind::Lam:
        return wrap(UValTag::Arrow, T::lam(t.name, uval(n), sub(0)));
      case Kind::App:
        return T::app(open(UValTag::Arrow, sub(0)), sub(1));
      case Kind::Pair:
        return wrap(UValTag::Prod, T::pair(sub(0), sub(1)));
      case Kind::Inl:
        return wrap(UValTag::Sum, T::inl(sub(0)));
      case Kind::Inr:
        return wrap(UValTag::Sum, T::inr(sub(0)));
      case Kind::Proj1:
        return T::proj1(open(UValTag::Prod, sub(0)));
      case Kind::Proj2:
        return T::proj2(open(UValTag::Prod, sub(0)));
      case Kind::Seq:
        return T::seq(open(UValTag::Unit, sub(0)), sub(1));
      case Kind::Case:
        return T::case_of(open(UValTag::Sum, sub(0)), t.name, sub(1), t.name2, sub(2));
      case Kind::If:
        return T::if_then_else(open(UValTag::Bool, sub(0)), sub(1), sub(2));
      case Kind::Fix:
        break;
    }
    throw std::invalid_argument("fix is not a target term");
  }

  std::vector<Type> uvals_;
  std::unordered_map<Type, SrcTerm> omegas_;
  std::map<std::pair<int, unsigned>, SrcTerm> cases_;
  std::map<std::pair<unsigned, unsigned>, SrcTerm> downgrades_;
  std::map<std::pair<unsigned, unsigned>, SrcTerm> upgrades_;
  struct TypeLevelHash {
    std::size_t operator()(const std::pair<Type, unsigned>& k) const noexcept {
      return std::hash<Type>{}(k.first) * 31u + k.second;
    }
  };
  std::unordered_map<std::pair<Type, unsigned>, SrcTerm, TypeLevelHash> injects_;
  std::unordered_map<std::pair<Type, unsigned>, SrcTerm, TypeLevelHash> extracts_;
  std::unordered_map<const ast::Node*, SrcTerm> emulated_;
};

}  // namespace

std::string_view to_string(UValTag tag) {
  static constexpr std::string_view kNames[] = {"unk", "unit", "bool", "prod", "sum", "arrow"};
  return kNames[slot_of(tag)];
}

std::optional<UValTag> parse_uval_tag(std::string_view text) {
  for (int s = 0; s <= kLastSlot; ++s)
    if (to_string(static_cast<UValTag>(s)) == text) return static_cast<UValTag>(s);
  return std::nullopt;
}

Type uval_type(unsigned n) { return UValBuilder().uval(n); }
Type uval_slot_type(UValTag tag, unsigned n) { return UValBuilder().slot_type(tag, n); }
SrcTerm in_uval(UValTag tag, unsigned /*n*/, const SrcTerm& payload) { return UValBuilder().in(tag, payload); }
SrcTerm unk_uval(unsigned n) { return UValBuilder().unk(n); }
SrcTerm omega(Type t) { return UValBuilder().omega(t); }
SrcTerm case_uval(UValTag tag, unsigned n) { return UValBuilder().case_uval(tag, n); }
Type case_uval_type(UValTag tag, unsigned n) { return UValBuilder().case_type(tag, n); }
SrcTerm downgrade_term(unsigned n, unsigned d) { return UValBuilder().downgrade(n, d); }
SrcTerm upgrade_term(unsigned n, unsigned d) { return UValBuilder().upgrade(n, d); }
SrcTerm emulate(unsigned n, const TgtTerm& t) { return UValBuilder().emulate(n, t.ptr()); }
SrcCtx emulate_ctx(unsigned n, const TgtCtx& c) { return SrcCtx(emulate(n, c.term())); }
SrcTerm inject_term(Type t, unsigned n) { return UValBuilder().inject(t, n); }
SrcTerm extract_term(Type t, unsigned n) { return UValBuilder().extract(t, n); }

SrcCtx backtranslate(const TgtCtx& c, Type t, unsigned n) {
  if (n == 0) throw std::invalid_argument("back-translation depth must be at least 1");
  if (!c.term().closed()) throw ScopeError("back-translated context must be closed");
  UValBuilder b;
  const SrcTerm emulated = b.emulate(n, c.term().ptr());
  return SrcCtx(plug(SrcCtx(emulated), SrcTerm::app(b.inject(t, n), SrcTerm::hole())));
}

}  // namespace fabt
