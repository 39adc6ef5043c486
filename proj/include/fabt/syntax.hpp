#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fabt/term.hpp"
#include "fabt/type.hpp"

namespace fabt {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected, const std::string& found);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

inline constexpr std::size_t kNoLimit = static_cast<std::size_t>(-1);

std::string to_string(Type t);
Type parse_type(std::string_view text);

/// Printed text parses back to an alpha-equal term. Output longer than
/// `limit` characters is cut and ends in "...".
std::string print(const SrcTerm& t, std::size_t limit = kNoLimit);
std::string print(const TgtTerm& t, std::size_t limit = kNoLimit);
inline std::string print(const SrcCtx& c, std::size_t limit = kNoLimit) { return print(c.term(), limit); }
inline std::string print(const TgtCtx& c, std::size_t limit = kNoLimit) { return print(c.term(), limit); }

/// A text with one HOLE parses to a context, with none to a term.
std::variant<SrcTerm, SrcCtx> parse_src(std::string_view text);
std::variant<TgtTerm, TgtCtx> parse_tgt(std::string_view text);

SrcTerm parse_src_term(std::string_view text);
SrcCtx parse_src_ctx(std::string_view text);
TgtTerm parse_tgt_term(std::string_view text);
TgtCtx parse_tgt_ctx(std::string_view text);

}  // namespace fabt
