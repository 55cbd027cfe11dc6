#include "caqt/dsl.hpp"

#include <cctype>
#include <charconv>
#include <vector>

namespace caqt {

namespace {

enum class Tok {
  LBracket,
  RBracket,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Semicolon,
  Comma,
  At,
  Int,
  And,
  Or,
  End,
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Semicolon: return "';'";
    case Tok::Comma: return "','";
    case Tok::At: return "'@'";
    case Tok::Int: return "integer";
    case Tok::And: return "AND";
    case Tok::Or: return "OR";
    case Tok::End: return "end of input";
  }
  return "token";
}

struct Token {
  Tok kind;
  int value = 0;
  int line = 1;
  int column = 1;
  int end_line = 1;
  int end_column = 1;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        t.end_line = line_;
        t.end_column = col_;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
        lex_int(t);
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        lex_word(t);
      } else {
        switch (c) {
          case '[': t.kind = Tok::LBracket; break;
          case ']': t.kind = Tok::RBracket; break;
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case '{': t.kind = Tok::LBrace; break;
          case '}': t.kind = Tok::RBrace; break;
          case ';': t.kind = Tok::Semicolon; break;
          case ',': t.kind = Tok::Comma; break;
          case '@': t.kind = Tok::At; break;
          default:
            throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
        }
        t.text = std::string(1, c);
        advance();
      }
      t.end_line = line_;
      t.end_column = col_;
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  void lex_int(Token& t) {
    const std::size_t start = pos_;
    if (src_[pos_] == '-') advance();
    const std::size_t digits = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
    if (pos_ == digits) throw ParseError(t.line, t.column, "'-' must be followed by digits");
    t.text = std::string(src_.substr(start, pos_ - start));
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
    if (ec != std::errc()) {
      throw ParseError(t.line, t.column, "integer '" + t.text + "' is out of range");
    }
    t.kind = Tok::Int;
  }

  void lex_word(Token& t) {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) advance();
    t.text = std::string(src_.substr(start, pos_ - start));
    if (t.text == "AND") {
      t.kind = Tok::And;
    } else if (t.text == "OR") {
      t.kind = Tok::Or;
    } else {
      throw ParseError(t.line, t.column, "unknown keyword '" + t.text + "' (expected AND or OR)");
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  SetupExprPtr parse_all() {
    auto e = expr();
    expect(Tok::End);
    return e;
  }

  Filter lone_filter() {
    auto f = filter();
    expect(Tok::End);
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  const Token& expect(Tok kind) {
    const Token& t = peek();
    if (t.kind != kind) {
      std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
      throw ParseError(t.line, t.column,
                       std::string("expected ") + describe(kind) + " but found " + found);
    }
    ++pos_;
    return t;
  }

  static SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
    return SourceSpan{a.line, a.column, b.end_line, b.end_column};
  }

  SetupExprPtr expr() {
    auto left = and_expr();
    while (peek().kind == Tok::Or) {
      ++pos_;
      auto right = and_expr();
      const auto span = join(left->span, right->span);
      left = make_or(std::move(left), std::move(right), span);
    }
    return left;
  }

  SetupExprPtr and_expr() {
    auto left = atom();
    while (peek().kind == Tok::And) {
      ++pos_;
      auto right = atom();
      const auto span = join(left->span, right->span);
      left = make_and(std::move(left), std::move(right), span);
    }
    return left;
  }

  SetupExprPtr atom() {
    const Token& t = peek();
    if (t.kind == Tok::LBracket) return canonical();
    if (t.kind == Tok::LParen) {
      ++pos_;
      auto inner = expr();
      expect(Tok::RParen);
      return inner;
    }
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, "expected '[' or '(' but found " + found);
  }

  SetupExprPtr canonical() {
    const Token& open = expect(Tok::LBracket);
    const SpacetimePoint dst = point();
    std::vector<Filter> filters;
    SpacetimePoint src;
    for (;;) {
      expect(Tok::Semicolon);
      if (peek().kind == Tok::LBrace) {
        filters.push_back(filter());
        continue;
      }
      src = point();
      break;
    }
    const Token& close = expect(Tok::RBracket);
    SourceSpan span{open.line, open.column, close.end_line, close.end_column};
    return make_leaf(src, dst, std::move(filters), span);
  }

  Filter filter() {
    expect(Tok::LBrace);
    std::vector<int> holes;
    holes.push_back(expect(Tok::Int).value);
    while (peek().kind == Tok::Comma) {
      ++pos_;
      holes.push_back(expect(Tok::Int).value);
    }
    expect(Tok::RBrace);
    expect(Tok::At);
    const int time = expect(Tok::Int).value;
    // Order and duplicates are validated by canonicalize().
    return Filter{time, std::move(holes)};
  }

  SpacetimePoint point() {
    expect(Tok::LParen);
    const int site = expect(Tok::Int).value;
    expect(Tok::Comma);
    const int time = expect(Tok::Int).value;
    expect(Tok::RParen);
    return SpacetimePoint{site, time};
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

SetupExprPtr parse_setup(std::string_view text) {
  return Parser(Lexer(text).run()).parse_all();
}

Filter parse_filter(std::string_view text) {
  Filter f = Parser(Lexer(text).run()).lone_filter();
  return Filter::at(f.time, std::move(f.holes));
}

std::string print(const SpacetimePoint& p) {
  return "(" + std::to_string(p.site) + "," + std::to_string(p.time) + ")";
}

std::string print(const Filter& f) {
  std::string out = "{";
  for (std::size_t i = 0; i < f.holes.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(f.holes[i]);
  }
  return out + "}@" + std::to_string(f.time);
}

namespace {

std::string print_bracket(const SpacetimePoint& src, const SpacetimePoint& dst,
                          const std::vector<Filter>& filters) {
  std::string out = "[" + print(dst);
  for (const auto& f : filters) out += "; " + print(f);
  return out + "; " + print(src) + "]";
}

}  // namespace

std::string print(const CanonicalSetup& s) { return print_bracket(s.src, s.dst, s.filters); }

std::string print(const SetupExpr& e) {
  if (const auto* leaf = std::get_if<SetupExpr::Leaf>(&e.node)) {
    return print_bracket(leaf->src, leaf->dst, leaf->filters);
  }
  if (const auto* conj = std::get_if<SetupExpr::And>(&e.node)) {
    return "(" + print(*conj->later) + " AND " + print(*conj->earlier) + ")";
  }
  const auto& disj = std::get<SetupExpr::Or>(e.node);
  return "(" + print(*disj.left) + " OR " + print(*disj.right) + ")";
}

}  // namespace caqt
