#include "fabt/symbol.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace fabt {
namespace {

struct InternTable {
  std::mutex mutex;
  std::deque<std::string> spellings{std::string{}};
  std::unordered_map<std::string_view, std::uint32_t> ids{{std::string_view{}, 0}};
};

InternTable& table() {
  static InternTable* t = new InternTable();
  return *t;
}

}  // namespace

Symbol::Symbol(std::string_view spelling) {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  if (auto it = t.ids.find(spelling); it != t.ids.end()) {
    id_ = it->second;
    return;
  }
  id_ = static_cast<std::uint32_t>(t.spellings.size());
  const std::string& stored = t.spellings.emplace_back(spelling);
  t.ids.emplace(stored, id_);
}

const std::string& Symbol::str() const {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  return t.spellings[id_];
}

Symbol fresh_symbol(std::string_view base, const std::function<bool(Symbol)>& taken) {
  Symbol candidate(base);
  for (unsigned i = 1; taken(candidate); ++i) candidate = Symbol(std::string(base) + std::to_string(i));
  return candidate;
}

}  // namespace fabt
