#include "fabt/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace fabt {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
                       const std::string& found)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": expected " +
                         (expected.size() > 1 ? "one of " : "") + join(expected) + ", found " + found),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

// ---------------------------------------------------------------------------
// Printing

namespace {

int type_level(Type t) {
  switch (t.kind()) {
    case TypeKind::Arrow:
      return 0;
    case TypeKind::Sum:
      return 1;
    case TypeKind::Prod:
      return 2;
    default:
      return 3;
  }
}

void print_type(Type t, int level, std::string& out) {
  const int own = type_level(t);
  if (own < level) out += '(';
  switch (t.kind()) {
    case TypeKind::Unit:
      out += "Unit";
      break;
    case TypeKind::Bool:
      out += "Bool";
      break;
    case TypeKind::Arrow:
      print_type(t.left(), 1, out);
      out += " -> ";
      print_type(t.right(), 0, out);
      break;
    case TypeKind::Sum:
      print_type(t.left(), 2, out);
      out += " + ";
      print_type(t.right(), 1, out);
      break;
    case TypeKind::Prod:
      print_type(t.left(), 3, out);
      out += " * ";
      print_type(t.right(), 2, out);
      break;
  }
  if (own < level) out += ')';
}

// Term levels: 0 any term; 1 application (no seq, no binder forms); 2 prefix
// operand; 3 atom.
int term_level(Kind k) {
  switch (k) {
    case Kind::Seq:
    case Kind::Lam:
    case Kind::If:
    case Kind::Case:
      return 0;
    case Kind::App:
      return 1;
    case Kind::Proj1:
    case Kind::Proj2:
    case Kind::Inl:
    case Kind::Inr:
    case Kind::Fix:
      return 2;
    default:
      return 3;
  }
}

struct LimitReached {};

class Printer {
 public:
  explicit Printer(std::size_t limit) : limit_(limit) {}

  std::string run(const ast::Node& t) {
    try {
      term(t, 0);
    } catch (const LimitReached&) {
      out_.resize(limit_);
      out_ += "...";
    }
    return std::move(out_);
  }

 private:
  void put(std::string_view s) {
    out_ += s;
    if (out_.size() > limit_) throw LimitReached{};
  }

  void term(const ast::Node& t, int level) {
    const bool parens = term_level(t.kind) < level;
    if (parens) put("(");
    const auto& k = t.kids;
    switch (t.kind) {
      case Kind::Unit:
        put("unit");
        break;
      case Kind::True:
        put("true");
        break;
      case Kind::False:
        put("false");
        break;
      case Kind::Var:
        put(t.name.str());
        break;
      case Kind::Hole:
        put("HOLE");
        break;
      case Kind::Wrong:
        put("wrong");
        break;
      case Kind::Lam:
        put("\\");
        put(t.name.str());
        if (t.ty1.valid()) {
          put(":");
          std::string ty;
          print_type(t.ty1, 0, ty);
          put(ty);
        }
        put(". ");
        term(*k[0], 0);
        break;
      case Kind::App:
        term(*k[0], 1);
        put(" ");
        term(*k[1], 2);
        break;
      case Kind::Pair:
        put("<");
        term(*k[0], 0);
        put(", ");
        term(*k[1], 0);
        put(">");
        break;
      case Kind::Proj1:
      case Kind::Proj2:
      case Kind::Inl:
      case Kind::Inr: {
        static constexpr std::string_view kOps[] = {"fst ", "snd ", "inl ", "inr "};
        put(kOps[static_cast<int>(t.kind) - static_cast<int>(Kind::Proj1)]);
        term(*k[0], 2);
        break;
      }
      case Kind::Fix: {
        std::string ty;
        print_type(Type::arrow(t.ty1, t.ty2), 0, ty);
        put("fix [");
        put(ty);
        put("] ");
        term(*k[0], 2);
        break;
      }
      case Kind::Case:
        put("case ");
        term(*k[0], 0);
        put(" of inl ");
        put(t.name.str());
        put(" => ");
        term(*k[1], 0);
        put(" | inr ");
        put(t.name2.str());
        put(" => ");
        term(*k[2], 0);
        break;
      case Kind::Seq:
        term(*k[0], 1);
        put("; ");
        term(*k[1], 0);
        break;
      case Kind::If:
        put("if ");
        term(*k[0], 0);
        put(" then ");
        term(*k[1], 0);
        put(" else ");
        term(*k[2], 0);
        break;
    }
    if (parens) put(")");
  }

  std::size_t limit_;
  std::string out_;
};

}  // namespace

std::string to_string(Type t) {
  std::string out;
  print_type(t, 0, out);
  return out;
}

std::string print(const SrcTerm& t, std::size_t limit) { return Printer(limit).run(t.node()); }
std::string print(const TgtTerm& t, std::size_t limit) { return Printer(limit).run(t.node()); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok : std::uint8_t {
  End,
  Ident,
  Backslash,
  Colon,
  Dot,
  LParen,
  RParen,
  LAngle,
  RAngle,
  Comma,
  Semi,
  LBracket,
  RBracket,
  FatArrow,
  Bar,
  Arrow,
  Star,
  Plus,
  KwUnit,
  KwTrue,
  KwFalse,
  KwFst,
  KwSnd,
  KwInl,
  KwInr,
  KwCase,
  KwOf,
  KwIf,
  KwThen,
  KwElse,
  KwFix,
  KwHole,
  KwWrong,
  TyUnit,
  TyBool,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string describe(Tok k) {
  switch (k) {
    case Tok::End:
      return "end of input";
    case Tok::Ident:
      return "identifier";
    case Tok::Backslash:
      return "'\\'";
    case Tok::Colon:
      return "':'";
    case Tok::Dot:
      return "'.'";
    case Tok::LParen:
      return "'('";
    case Tok::RParen:
      return "')'";
    case Tok::LAngle:
      return "'<'";
    case Tok::RAngle:
      return "'>'";
    case Tok::Comma:
      return "','";
    case Tok::Semi:
      return "';'";
    case Tok::LBracket:
      return "'['";
    case Tok::RBracket:
      return "']'";
    case Tok::FatArrow:
      return "'=>'";
    case Tok::Bar:
      return "'|'";
    case Tok::Arrow:
      return "'->'";
    case Tok::Star:
      return "'*'";
    case Tok::Plus:
      return "'+'";
    case Tok::KwUnit:
      return "'unit'";
    case Tok::KwTrue:
      return "'true'";
    case Tok::KwFalse:
      return "'false'";
    case Tok::KwFst:
      return "'fst'";
    case Tok::KwSnd:
      return "'snd'";
    case Tok::KwInl:
      return "'inl'";
    case Tok::KwInr:
      return "'inr'";
    case Tok::KwCase:
      return "'case'";
    case Tok::KwOf:
      return "'of'";
    case Tok::KwIf:
      return "'if'";
    case Tok::KwThen:
      return "'then'";
    case Tok::KwElse:
      return "'else'";
    case Tok::KwFix:
      return "'fix'";
    case Tok::KwHole:
      return "'HOLE'";
    case Tok::KwWrong:
      return "'wrong'";
    case Tok::TyUnit:
      return "'Unit'";
    case Tok::TyBool:
      return "'Bool'";
  }
  return "token";
}

std::optional<Tok> keyword(std::string_view word) {
  static const std::pair<std::string_view, Tok> kWords[] = {
      {"unit", Tok::KwUnit}, {"true", Tok::KwTrue}, {"false", Tok::KwFalse}, {"fst", Tok::KwFst},
      {"snd", Tok::KwSnd},   {"inl", Tok::KwInl},   {"inr", Tok::KwInr},     {"case", Tok::KwCase},
      {"of", Tok::KwOf},     {"if", Tok::KwIf},     {"then", Tok::KwThen},   {"else", Tok::KwElse},
      {"fix", Tok::KwFix},   {"HOLE", Tok::KwHole}, {"wrong", Tok::KwWrong}, {"Unit", Tok::TyUnit},
      {"Bool", Tok::TyBool},
  };
  for (const auto& [w, k] : kWords)
    if (w == word) return k;
  return std::nullopt;
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token tok{Tok::End, {}, line, col};
    std::size_t len = 1;
    if (ident_start(c)) {
      while (i + len < src.size() && ident_char(src[i + len])) ++len;
      tok.text = std::string(src.substr(i, len));
      tok.kind = keyword(tok.text).value_or(Tok::Ident);
    } else if (src.substr(i, 2) == "=>") {
      tok.kind = Tok::FatArrow;
      len = 2;
    } else if (src.substr(i, 2) == "->") {
      tok.kind = Tok::Arrow;
      len = 2;
    } else if (src.substr(i, 2) == "\xCE\xBB") {  // λ
      tok.kind = Tok::Backslash;
      len = 2;
    } else {
      switch (c) {
        case '\\':
          tok.kind = Tok::Backslash;
          break;
        case ':':
          tok.kind = Tok::Colon;
          break;
        case '.':
          tok.kind = Tok::Dot;
          break;
        case '(':
          tok.kind = Tok::LParen;
          break;
        case ')':
          tok.kind = Tok::RParen;
          break;
        case '<':
          tok.kind = Tok::LAngle;
          break;
        case '>':
          tok.kind = Tok::RAngle;
          break;
        case ',':
          tok.kind = Tok::Comma;
          break;
        case ';':
          tok.kind = Tok::Semi;
          break;
        case '[':
          tok.kind = Tok::LBracket;
          break;
        case ']':
          tok.kind = Tok::RBracket;
          break;
        case '|':
          tok.kind = Tok::Bar;
          break;
        case '*':
          tok.kind = Tok::Star;
          break;
        case '+':
          tok.kind = Tok::Plus;
          break;
        default:
          throw ParseError(line, col, {"term"}, "unexpected character '" + std::string(1, c) + "'");
      }
    }
    if (tok.text.empty()) tok.text = std::string(src.substr(i, len));
    out.push_back(std::move(tok));
    advance(len);
  }
  out.push_back({Tok::End, {}, line, col});
  return out;
}

bool starts_prefix(Tok k) {
  switch (k) {
    case Tok::KwFst:
    case Tok::KwSnd:
    case Tok::KwInl:
    case Tok::KwInr:
    case Tok::KwFix:
    case Tok::KwUnit:
    case Tok::KwTrue:
    case Tok::KwFalse:
    case Tok::Ident:
    case Tok::KwHole:
    case Tok::KwWrong:
    case Tok::LParen:
    case Tok::LAngle:
      return true;
    default:
      return false;
  }
}

bool starts_binder(Tok k) { return k == Tok::Backslash || k == Tok::KwIf || k == Tok::KwCase; }

class Parser {
 public:
  Parser(std::string_view text, Lang lang) : toks_(lex(text)), lang_(lang) {}

  ast::NodePtr parse_term_to_end() {
    ast::NodePtr t = term();
    expect(Tok::End);
    return t;
  }

  Type parse_type_to_end() {
    Type t = type();
    expect(Tok::End);
    return t;
  }

  const Token* second_hole() const { return second_hole_; }

 private:
  const Token& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw ParseError(t.line, t.column, std::move(expected), t.kind == Tok::End ? "end of input" : "'" + t.text + "'");
  }

  const Token& expect(Tok k) {
    if (peek().kind != k) fail({describe(k)});
    return toks_[pos_++];
  }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  Symbol ident() { return Symbol(expect(Tok::Ident).text); }

  Type type() {
    Type l = sum_type();
    if (accept(Tok::Arrow)) return Type::arrow(l, type());
    return l;
  }
  Type sum_type() {
    Type l = prod_type();
    if (accept(Tok::Plus)) return Type::sum(l, sum_type());
    return l;
  }
  Type prod_type() {
    Type l = atom_type();
    if (accept(Tok::Star)) return Type::prod(l, prod_type());
    return l;
  }
  Type atom_type() {
    if (accept(Tok::TyUnit)) return Type::unit();
    if (accept(Tok::TyBool)) return Type::boolean();
    if (accept(Tok::LParen)) {
      Type t = type();
      expect(Tok::RParen);
      return t;
    }
    fail({"'Unit'", "'Bool'", "'('"});
  }

  ast::NodePtr term() {
    ast::NodePtr first = expr();
    if (accept(Tok::Semi)) return ast::make(Kind::Seq, {}, {}, {}, {}, first, term());
    return first;
  }

  ast::NodePtr expr() {
    switch (peek().kind) {
      case Tok::Backslash: {
        ++pos_;
        Symbol x = ident();
        Type annot;
        if (lang_ == Lang::Source) {
          expect(Tok::Colon);
          annot = type();
        }
        expect(Tok::Dot);
        return ast::make(Kind::Lam, x, {}, annot, {}, term());
      }
      case Tok::KwIf: {
        ++pos_;
        ast::NodePtr c = term();
        expect(Tok::KwThen);
        ast::NodePtr a = term();
        expect(Tok::KwElse);
        return ast::make(Kind::If, {}, {}, {}, {}, c, a, term());
      }
      case Tok::KwCase: {
        ++pos_;
        ast::NodePtr s = term();
        expect(Tok::KwOf);
        expect(Tok::KwInl);
        Symbol x = ident();
        expect(Tok::FatArrow);
        ast::NodePtr l = term();
        expect(Tok::Bar);
        expect(Tok::KwInr);
        Symbol y = ident();
        expect(Tok::FatArrow);
        return ast::make(Kind::Case, x, y, {}, {}, s, l, term());
      }
      default:
        return application();
    }
  }

  ast::NodePtr application() {
    ast::NodePtr f = prefix();
    for (;;) {
      const Tok k = peek().kind;
      if (starts_prefix(k)) {
        f = ast::make(Kind::App, {}, {}, {}, {}, f, prefix());
      } else if (starts_binder(k)) {
        return ast::make(Kind::App, {}, {}, {}, {}, f, expr());
      } else {
        return f;
      }
    }
  }

  ast::NodePtr prefix() {
    const Tok k = peek().kind;
    switch (k) {
      case Tok::KwFst:
      case Tok::KwSnd:
      case Tok::KwInl:
      case Tok::KwInr: {
        ++pos_;
        const Kind kind = k == Tok::KwFst ? Kind::Proj1 : k == Tok::KwSnd ? Kind::Proj2 : k == Tok::KwInl ? Kind::Inl : Kind::Inr;
        return ast::make(kind, {}, {}, {}, {}, prefix());
      }
      case Tok::KwFix: {
        if (lang_ != Lang::Source) fail({"term"});
        ++pos_;
        expect(Tok::LBracket);
        const Token& at = peek();
        Type t = type();
        if (t.kind() != TypeKind::Arrow)
          throw ParseError(at.line, at.column, {"function type"}, "'" + to_string(t) + "'");
        expect(Tok::RBracket);
        return ast::make(Kind::Fix, {}, {}, t.left(), t.right(), prefix());
      }
      default:
        return atom();
    }
  }

  ast::NodePtr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::KwUnit:
        ++pos_;
        return ast::make(Kind::Unit);
      case Tok::KwTrue:
        ++pos_;
        return ast::make(Kind::True);
      case Tok::KwFalse:
        ++pos_;
        return ast::make(Kind::False);
      case Tok::Ident:
        return ast::make(Kind::Var, ident());
      case Tok::KwHole:
        if (++holes_ == 2) second_hole_ = &t;
        ++pos_;
        return ast::make(Kind::Hole);
      case Tok::KwWrong:
        if (lang_ == Lang::Target) {
          ++pos_;
          return ast::make(Kind::Wrong);
        }
        break;
      case Tok::LParen: {
        ++pos_;
        ast::NodePtr inner = term();
        expect(Tok::RParen);
        return inner;
      }
      case Tok::LAngle: {
        ++pos_;
        ast::NodePtr a = term();
        expect(Tok::Comma);
        ast::NodePtr b = term();
        expect(Tok::RAngle);
        return ast::make(Kind::Pair, {}, {}, {}, {}, a, b);
      }
      default:
        break;
    }
    fail({"term"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Lang lang_;
  int holes_ = 0;
  const Token* second_hole_ = nullptr;
};

ast::NodePtr parse_any(std::string_view text, Lang lang) {
  Parser p(text, lang);
  ast::NodePtr t = p.parse_term_to_end();
  if (const Token* h = p.second_hole()) throw ParseError(h->line, h->column, {"at most one HOLE"}, "a second 'HOLE'");
  return t;
}

[[noreturn]] void hole_mismatch(bool want_hole) {
  throw ParseError(1, 1, {want_hole ? "a context with one HOLE" : "a term without HOLE"},
                   want_hole ? "a term" : "a context");
}

}  // namespace

Type parse_type(std::string_view text) { return Parser(text, Lang::Source).parse_type_to_end(); }

std::variant<SrcTerm, SrcCtx> parse_src(std::string_view text) {
  SrcTerm t(parse_any(text, Lang::Source));
  if (t.hole_count() == 1) return SrcCtx(t);
  return t;
}

std::variant<TgtTerm, TgtCtx> parse_tgt(std::string_view text) {
  TgtTerm t(parse_any(text, Lang::Target));
  if (t.hole_count() == 1) return TgtCtx(t);
  return t;
}

SrcTerm parse_src_term(std::string_view text) {
  SrcTerm t(parse_any(text, Lang::Source));
  if (t.hole_count() != 0) hole_mismatch(false);
  return t;
}

SrcCtx parse_src_ctx(std::string_view text) {
  SrcTerm t(parse_any(text, Lang::Source));
  if (t.hole_count() != 1) hole_mismatch(true);
  return SrcCtx(t);
}

TgtTerm parse_tgt_term(std::string_view text) {
  TgtTerm t(parse_any(text, Lang::Target));
  if (t.hole_count() != 0) hole_mismatch(false);
  return t;
}

TgtCtx parse_tgt_ctx(std::string_view text) {
  TgtTerm t(parse_any(text, Lang::Target));
  if (t.hole_count() != 1) hole_mismatch(true);
  return TgtCtx(t);
}

}  // namespace fabt
