#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace fabt {

/// Interned identifier. Two symbols compare equal iff their spellings do.
/// The intern table is process-global and thread-safe; symbols are never freed.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string_view spelling);

  const std::string& str() const;
  std::uint32_t id() const { return id_; }
  bool empty() const { return id_ == 0; }

  friend bool operator==(Symbol, Symbol) = default;
  friend auto operator<=>(Symbol a, Symbol b) { return a.id_ <=> b.id_; }

 private:
  std::uint32_t id_ = 0;
};

/// Returns `base` if it is not taken, otherwise the first of base1, base2, ...
/// that is not taken.
Symbol fresh_symbol(std::string_view base, const std::function<bool(Symbol)>& taken);

}  // namespace fabt

template <>
struct std::hash<fabt::Symbol> {
  std::size_t operator()(fabt::Symbol s) const noexcept { return s.id(); }
};
