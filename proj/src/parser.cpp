// Copyright 2026 The Clio Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Recursive-descent front end for `.clio` sources.
//
//   seq   ::= x '<-' expr ';' seq | 'let' x '=' expr 'in' seq | expr ';' seq | expr
//   expr  ::= 'λ' x [':' type] '.' seq | 'if' seq 'then' seq 'else' seq | or
//   or    ::= and ('||' and)*        and ::= cmp ('&&' cmp)*
//   cmp   ::= cat [('==' | '<') cat] cat ::= add ('++' add)*
//   add   ::= mul (('+' | '-') mul)* mul ::= app ('*' app)*
//   app   ::= (prim | atom) atom*
//   prim  ::= 'return' a | 'bind' a a | 'label' a a | 'unlabel' a | 'toLabeled' a a
//           | 'store' a a | 'fetch' '[' type ']' a a | 'fst' a | 'snd' a | 'fix' a
//   atom  ::= x | int | '-' int | string | 'true' | 'false' | '()' | '(' seq ')'
//           | '(' seq ',' seq ')' | '⟨' label '⟩' | '<' label '>' | 'getLabel'
//           | 'getClearance'
//
// `x <- m; rest` is `bind m (λx. rest)`, `m; rest` is `bind m (λ_. rest)` and
// `let x = e in rest` is `(λx. rest) e`. Comments run from `--` to end of line.

#include <cctype>
#include <charconv>
#include <optional>
#include <set>

#include "clio/term.hpp"

namespace clio {

namespace {

enum class Tok {
  kIdent, kInt, kString, kLabel, kLambda, kDot, kColon, kSemi, kComma, kLParen, kRParen,
  kLBracket, kRBracket, kArrowLeft, kArrowRight, kEquals, kPlus, kMinus, kStar, kEqEq, kLt,
  kConcat, kAndAnd, kOrOr, kEnd
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

const std::set<std::string, std::less<>> kKeywords = {
    "return", "bind", "label", "unlabel", "toLabeled", "getLabel", "getClearance", "store",
    "fetch", "if", "then", "else", "fst", "snd", "fix", "let", "in", "true", "false",
    "labeled", "LIO", "reset"};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\''; }

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      Token t{Tok::kEnd, "", line_, col_};
      if (pos_ >= s_.size()) {
        out.push_back(t);
        return out;
      }
      const std::string_view rest = s_.substr(pos_);
      const unsigned char c = static_cast<unsigned char>(s_[pos_]);
      if (rest.starts_with("λ")) {
        advance(std::string_view("λ").size());
        t.kind = Tok::kLambda;
      } else if (rest.starts_with("⟨")) {
        advance(std::string_view("⟨").size());
        t.kind = Tok::kLabel;
        t.text = label_body("⟩");
      } else if (c == '\\') {
        advance(1);
        t.kind = Tok::kLambda;
      } else if (ident_start(c)) {
        std::size_t start = pos_;
        while (pos_ < s_.size() && ident_char(static_cast<unsigned char>(s_[pos_]))) advance(1);
        t.kind = Tok::kIdent;
        t.text = std::string(s_.substr(start, pos_ - start));
      } else if (std::isdigit(c)) {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) advance(1);
        t.kind = Tok::kInt;
        t.text = std::string(s_.substr(start, pos_ - start));
      } else if (c == '"') {
        t.kind = Tok::kString;
        t.text = string_body();
      } else if (rest.starts_with("<-")) {
        advance(2);
        t.kind = Tok::kArrowLeft;
      } else if (rest.starts_with("->") || rest.starts_with("→")) {
        advance(rest.starts_with("->") ? 2 : std::string_view("→").size());
        t.kind = Tok::kArrowRight;
      } else if (rest.starts_with("==")) {
        advance(2);
        t.kind = Tok::kEqEq;
      } else if (rest.starts_with("++")) {
        advance(2);
        t.kind = Tok::kConcat;
      } else if (rest.starts_with("&&")) {
        advance(2);
        t.kind = Tok::kAndAnd;
      } else if (rest.starts_with("||")) {
        advance(2);
        t.kind = Tok::kOrOr;
      } else if (c == '<' && label_follows()) {
        advance(1);
        t.kind = Tok::kLabel;
        t.text = label_body(">");
      } else {
        advance(1);
        switch (c) {
          case '.': t.kind = Tok::kDot; break;
          case ':': t.kind = Tok::kColon; break;
          case ';': t.kind = Tok::kSemi; break;
          case ',': t.kind = Tok::kComma; break;
          case '(': t.kind = Tok::kLParen; break;
          case ')': t.kind = Tok::kRParen; break;
          case '[': t.kind = Tok::kLBracket; break;
          case ']': t.kind = Tok::kRBracket; break;
          case '=': t.kind = Tok::kEquals; break;
          case '+': t.kind = Tok::kPlus; break;
          case '-': t.kind = Tok::kMinus; break;
          case '*': t.kind = Tok::kStar; break;
          case '<': t.kind = Tok::kLt; break;
          default:
            throw SyntaxError(std::string("unexpected character '") + static_cast<char>(c) + "'",
                              t.line, t.column);
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < s_.size(); ++i, ++pos_) {
      const unsigned char c = static_cast<unsigned char>(s_[pos_]);
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++col_;
      }
    }
  }

  void skip() {
    for (;;) {
      while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance(1);
      if (s_.substr(pos_).starts_with("--")) {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance(1);
        continue;
      }
      return;
    }
  }

  // `<` opens a label literal only when a `|` occurs before the matching `>`.
  bool label_follows() const {
    std::size_t bars = 0;
    for (std::size_t i = pos_ + 1; i < s_.size(); ++i) {
      const char c = s_[i];
      if (c == '>') return bars == 2;
      if (c == '|') {
        if (i + 1 < s_.size() && s_[i + 1] == '|') return false;
        ++bars;
      }
      if (c == '\n' || c == ';' || c == '(' || c == ')' || c == '"') return false;
    }
    return false;
  }

  std::string label_body(std::string_view close) {
    const std::size_t line = line_, col = col_;
    std::size_t end = s_.find(close, pos_);
    if (end == std::string_view::npos) throw SyntaxError("unterminated label literal", line, col);
    std::string body(s_.substr(pos_, end - pos_));
    advance(end - pos_ + close.size());
    return body;
  }

  std::string string_body() {
    const std::size_t line = line_, col = col_;
    advance(1);
    std::string out;
    for (;;) {
      if (pos_ >= s_.size()) throw SyntaxError("unterminated string literal", line, col);
      const char c = s_[pos_];
      if (c == '"') {
        advance(1);
        return out;
      }
      if (c == '\\') {
        advance(1);
        if (pos_ >= s_.size()) throw SyntaxError("unterminated string literal", line, col);
        const char e = s_[pos_];
        advance(1);
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case 'x': {
            if (pos_ + 2 > s_.size()) throw SyntaxError("bad \\x escape", line_, col_);
            unsigned v = 0;
            auto r = std::from_chars(s_.data() + pos_, s_.data() + pos_ + 2, v, 16);
            if (r.ptr != s_.data() + pos_ + 2) throw SyntaxError("bad \\x escape", line_, col_);
            advance(2);
            out += static_cast<char>(v);
            break;
          }
          default: throw SyntaxError("unknown escape sequence", line_, col_);
        }
        continue;
      }
      out += c;
      advance(1);
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, ParseOptions opts) : toks_(std::move(toks)), opts_(opts) {}

  TermPtr program() {
    TermPtr t = seq();
    expect(Tok::kEnd, "end of input");
    return t;
  }

  TypePtr type_only() {
    TypePtr ty = type();
    expect(Tok::kEnd, "end of input");
    return ty;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_kw(std::string_view kw) const { return at(Tok::kIdent) && peek().text == kw; }
  Token next() { return toks_[std::min(i_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what, peek().line, peek().column);
  }

  Token expect(Tok k, std::string_view what) {
    if (!at(k)) fail("expected " + std::string(what));
    return next();
  }
  void expect_kw(std::string_view kw) {
    if (!at_kw(kw)) fail("expected '" + std::string(kw) + "'");
    next();
  }

  std::string binder_name() {
    const Token& tk = peek();
    if (tk.kind != Tok::kIdent || kKeywords.count(tk.text)) fail("expected a variable name");
    return next().text;
  }

  TermPtr seq() {
    if (at(Tok::kIdent) && peek(1).kind == Tok::kArrowLeft) {
      std::string x = binder_name();
      next();
      TermPtr m = expr();
      expect(Tok::kSemi, "';' after binding");
      return t::bind(m, t::lam(x, seq()));
    }
    if (at_kw("let")) {
      next();
      std::string x = binder_name();
      expect(Tok::kEquals, "'='");
      TermPtr e = expr();
      expect_kw("in");
      return t::app(t::lam(x, seq()), e);
    }
    TermPtr e = expr();
    if (at(Tok::kSemi)) {
      next();
      return t::bind(e, t::lam("_", seq()));
    }
    return e;
  }

  TermPtr expr() {
    if (at(Tok::kLambda)) {
      next();
      std::string x = binder_name();
      TypePtr ty;
      if (at(Tok::kColon)) {
        next();
        ty = type();
      }
      expect(Tok::kDot, "'.' after λ binder");
      TermPtr body = seq();
      return ty ? t::lam(x, ty, body) : t::lam(x, body);
    }
    if (at_kw("if")) {
      next();
      TermPtr c = seq();
      expect_kw("then");
      TermPtr a = seq();
      expect_kw("else");
      TermPtr b = seq();
      return t::if_(c, a, b);
    }
    return binary(0);
  }

  // Precedence levels, loosest first.
  TermPtr binary(int level) {
    if (level == 6) return application();
    TermPtr lhs = binary(level + 1);
    for (;;) {
      std::optional<BinOp> op;
      switch (level) {
        case 0: if (at(Tok::kOrOr)) op = BinOp::kOr; break;
        case 1: if (at(Tok::kAndAnd)) op = BinOp::kAnd; break;
        case 2:
          if (at(Tok::kEqEq)) op = BinOp::kEq;
          else if (at(Tok::kLt)) op = BinOp::kLt;
          break;
        case 3: if (at(Tok::kConcat)) op = BinOp::kConcat; break;
        case 4:
          if (at(Tok::kPlus)) op = BinOp::kAdd;
          else if (at(Tok::kMinus)) op = BinOp::kSub;
          break;
        case 5: if (at(Tok::kStar)) op = BinOp::kMul; break;
      }
      if (!op) return lhs;
      next();
      lhs = t::op(*op, lhs, binary(level + 1));
      if (level == 2) return lhs;  // comparisons do not chain
    }
  }

  bool atom_start() const {
    switch (peek().kind) {
      case Tok::kInt:
      case Tok::kString:
      case Tok::kLabel:
      case Tok::kLParen: return true;
      case Tok::kIdent: {
        const std::string& s = peek().text;
        if (s == "true" || s == "false" || s == "getLabel" || s == "getClearance") return true;
        if (s == "labeled") return opts_.allow_labeled_literals;
        return !kKeywords.count(s);
      }
      default: return false;
    }
  }

  TermPtr application() {
    TermPtr head = prim_or_atom();
    while (atom_start()) head = t::app(head, atom());
    return head;
  }

  TermPtr prim_or_atom() {
    if (at(Tok::kIdent)) {
      const std::string kw = peek().text;
      if (kw == "return") { next(); return t::ret(atom()); }
      if (kw == "bind") { next(); auto a = atom(); return t::bind(a, atom()); }
      if (kw == "label") { next(); auto a = atom(); return t::label_op(a, atom()); }
      if (kw == "unlabel") { next(); return t::unlabel(atom()); }
      if (kw == "toLabeled") { next(); auto a = atom(); return t::to_labeled(a, atom()); }
      if (kw == "store") { next(); auto a = atom(); return t::store(a, atom()); }
      if (kw == "fetch") {
        next();
        expect(Tok::kLBracket, "'[' type annotation after fetch");
        TypePtr ty = type();
        expect(Tok::kRBracket, "']'");
        auto k = atom();
        return t::fetch(ty, k, atom());
      }
      if (kw == "fst") { next(); return t::fst(atom()); }
      if (kw == "snd") { next(); return t::snd(atom()); }
      if (kw == "fix") { next(); return t::fix(atom()); }
      if (kw == "LIO" || kw == "reset") {
        fail("'" + kw + "' is an internal form and not valid source syntax");
      }
    }
    return atom();
  }

  Label label_text(const Token& tk) {
    try {
      return parse_label(tk.text);
    } catch (const SyntaxError& e) {
      throw SyntaxError(std::string("in label literal: ") + e.what(), tk.line,
                        tk.column + e.column());
    } catch (const Error& e) {
      throw SyntaxError(std::string("in label literal: ") + e.what(), tk.line, tk.column);
    }
  }

  TermPtr atom() {
    const Token tk = peek();
    switch (tk.kind) {
      case Tok::kInt: {
        next();
        return t::integer(parse_int(tk, false));
      }
      case Tok::kMinus: {
        next();
        const Token n = expect(Tok::kInt, "integer after '-'");
        return t::integer(parse_int(n, true));
      }
      case Tok::kString: next(); return t::text(tk.text);
      case Tok::kLabel: next(); return t::label(label_text(tk));
      case Tok::kLParen: {
        next();
        if (at(Tok::kRParen)) {
          next();
          return t::unit();
        }
        TermPtr a = seq();
        if (at(Tok::kComma)) {
          next();
          TermPtr b = seq();
          expect(Tok::kRParen, "')'");
          return t::pair(a, b);
        }
        expect(Tok::kRParen, "')'");
        return a;
      }
      case Tok::kIdent: {
        if (tk.text == "true") { next(); return t::boolean(true); }
        if (tk.text == "false") { next(); return t::boolean(false); }
        if (tk.text == "getLabel") { next(); return t::get_label(); }
        if (tk.text == "getClearance") { next(); return t::get_clearance(); }
        if (tk.text == "labeled") {
          if (!opts_.allow_labeled_literals) {
            fail("labeled literals are internal and not valid program syntax");
          }
          next();
          const Token lt = expect(Tok::kLabel, "label literal after 'labeled'");
          Label l = label_text(lt);
          TermPtr v = atom();
          auto g = as_ground(*v);
          if (!g) fail("labeled literals must hold ground values");
          return t::labeled(std::move(l), std::move(*g));
        }
        if (tk.text == "LIO" || tk.text == "reset") {
          fail("'" + tk.text + "' is an internal form and not valid source syntax");
        }
        if (kKeywords.count(tk.text)) fail("unexpected keyword '" + tk.text + "'");
        next();
        return t::var(tk.text);
      }
      case Tok::kLambda:
        return expr();
      default: fail("expected a term");
    }
  }

  std::int64_t parse_int(const Token& tk, bool negative) {
    std::string digits = negative ? "-" + tk.text : tk.text;
    std::int64_t v = 0;
    auto r = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (r.ec != std::errc() || r.ptr != digits.data() + digits.size()) {
      throw SyntaxError("integer literal out of range", tk.line, tk.column);
    }
    return v;
  }

  // type ::= tyapp ['->' type]; tyapp ::= 'Labeled' tyapp | 'CLIO' tyapp | tyatom
  TypePtr type() {
    TypePtr a = type_app();
    if (at(Tok::kArrowRight)) {
      next();
      return Type::fun(a, type());
    }
    return a;
  }

  TypePtr type_app() {
    if (at_kw_type("Labeled")) {
      const Token tk = next();
      TypePtr inner = type_app();
      if (!inner->is_ground()) {
        throw SyntaxError("Labeled requires a ground type", tk.line, tk.column);
      }
      return Type::labeled(inner);
    }
    if (at_kw_type("CLIO")) {
      next();
      return Type::clio(type_app());
    }
    return type_atom();
  }

  bool at_kw_type(std::string_view name) const { return at(Tok::kIdent) && peek().text == name; }

  TypePtr type_atom() {
    if (at(Tok::kLParen)) {
      next();
      if (at(Tok::kRParen)) {
        next();
        return Type::unit();
      }
      TypePtr a = type();
      if (at(Tok::kComma)) {
        next();
        TypePtr b = type();
        expect(Tok::kRParen, "')'");
        return Type::pair(a, b);
      }
      expect(Tok::kRParen, "')'");
      return a;
    }
    const Token tk = expect(Tok::kIdent, "a type");
    if (tk.text == "Unit") return Type::unit();
    if (tk.text == "Bool") return Type::boolean();
    if (tk.text == "Int") return Type::integer();
    if (tk.text == "Text") return Type::text();
    if (tk.text == "Label") return Type::label();
    throw SyntaxError("unknown type '" + tk.text + "'", tk.line, tk.column);
  }

  std::vector<Token> toks_;
  ParseOptions opts_;
  std::size_t i_ = 0;
};

}  // namespace

TermPtr parse_term(std::string_view source, ParseOptions options) {
  return Parser(Lexer(source).run(), options).program();
}

TypePtr parse_type(std::string_view source) {
  return Parser(Lexer(source).run(), {}).type_only();
}

}  // namespace clio
