#include "pel/parser.hpp"

#include <algorithm>
#include <cctype>

#include "pel/errors.hpp"

namespace pel {

namespace {

struct Token {
  enum class Kind {
    Ident, Lambda, Bang, Dot, LParen, RParen, ChoiceOp, SugarOp, RBrack, End
  };
  Kind kind;
  std::string text;  // Ident payload
  int line = 1;
  int col = 1;
};

bool ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80;
}

bool ident_start(unsigned char c) {
  return (std::isalnum(c) && !std::isdigit(c)) || c == '_' || c >= 0x80;
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_space();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    char c = text_[pos_];
    switch (c) {
      case '\\': tok_.kind = Token::Kind::Lambda; bump(); return;
      case '!': tok_.kind = Token::Kind::Bang; bump(); return;
      case '.': tok_.kind = Token::Kind::Dot; bump(); return;
      case ']': tok_.kind = Token::Kind::RBrack; bump(); return;
      case ')': tok_.kind = Token::Kind::RParen; bump(); return;
      case '(':
        if (pos_ + 2 < text_.size() && text_[pos_ + 1] == '+' &&
            text_[pos_ + 2] == ')') {
          tok_.kind = Token::Kind::SugarOp;
          bump(); bump(); bump();
          return;
        }
        tok_.kind = Token::Kind::LParen;
        bump();
        return;
      case '+':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '[') {
          tok_.kind = Token::Kind::ChoiceOp;
          bump(); bump();
          return;
        }
        throw ParseError("stray '+', expected '+['", line_, col_);
      default: break;
    }
    if (ident_start(static_cast<unsigned char>(c))) {
      std::string id;
      while (pos_ < text_.size() &&
             ident_char(static_cast<unsigned char>(text_[pos_]))) {
        id += text_[pos_];
        bump();
      }
      tok_.kind = Token::Kind::Ident;
      tok_.text = std::move(id);
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_,
                     col_);
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

// One grammar, two targets. In source mode the label constructs are rejected
// and '(+)' builds a Sum node instead of desugaring to a generator.
class Parser {
 public:
  Parser(const std::string& text, const ParseOptions& opts, bool source_mode)
      : lex_(text), opts_(opts), source_(source_mode) {}

  TermPtr run_term() {
    TermPtr t = term();
    expect_end();
    return t;
  }

  SourcePtr run_source() {
    SourcePtr s = sterm();
    expect_end();
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const Token& at) {
    throw ParseError(msg, at.line, at.col);
  }

  void expect_end() {
    if (lex_.peek().kind != Token::Kind::End)
      fail("trailing input after term", lex_.peek());
  }

  Token expect(Token::Kind k, const char* what) {
    if (lex_.peek().kind != k) fail(std::string("expected ") + what, lex_.peek());
    return lex_.take();
  }

  bool at_binder() const {
    return lex_.peek().kind == Token::Kind::Lambda ||
           lex_.peek().kind == Token::Kind::Bang;
  }

  bool at_atom() const {
    return lex_.peek().kind == Token::Kind::Ident ||
           lex_.peek().kind == Token::Kind::LParen;
  }

  // ------------------------------------------------------------- pel mode

  TermPtr term() {
    if (at_binder()) return binder();
    return choice_chain();
  }

  TermPtr binder() {
    Token t = lex_.take();
    Token name = expect(Token::Kind::Ident, "binder name");
    expect(Token::Kind::Dot, "'.'");
    if (t.kind == Token::Kind::Lambda) {
      Var v = fresh_var(name.text);
      vars_.emplace_back(name.text, v);
      TermPtr body = term();
      vars_.pop_back();
      return mk_abs(v, body);
    }
    Label l = fresh_label(name.text);
    labels_.emplace_back(name.text, l);
    TermPtr body = term();
    labels_.pop_back();
    return mk_gen(l, body);
  }

  TermPtr choice_chain() {
    TermPtr lhs = operand();
    for (;;) {
      if (lex_.peek().kind == Token::Kind::ChoiceOp) {
        Token op = lex_.take();
        Token name = expect(Token::Kind::Ident, "label name");
        expect(Token::Kind::RBrack, "']'");
        Label l = resolve_label(name, op);
        lhs = mk_choice(l, lhs, operand());
      } else if (lex_.peek().kind == Token::Kind::SugarOp) {
        lex_.take();
        Label l = fresh_label(sugar_name());
        lhs = mk_gen(l, mk_choice(l, lhs, operand()));
      } else {
        return lhs;
      }
    }
  }

  TermPtr operand() {
    if (at_binder()) return binder();
    if (!at_atom()) fail("expected a term", lex_.peek());
    TermPtr lhs = atom();
    for (;;) {
      if (at_atom()) {
        lhs = mk_app(lhs, atom());
      } else if (at_binder()) {
        lhs = mk_app(lhs, binder());
        return lhs;  // the binder body has swallowed the rest
      } else {
        return lhs;
      }
    }
  }

  TermPtr atom() {
    Token t = lex_.take();
    if (t.kind == Token::Kind::Ident) {
      for (auto it = vars_.rbegin(); it != vars_.rend(); ++it)
        if (it->first == t.text) return mk_var(it->second);
      return mk_free_var(t.text);
    }
    assert(t.kind == Token::Kind::LParen);
    TermPtr inner = term();
    expect(Token::Kind::RParen, "')'");
    return inner;
  }

  Label resolve_label(const Token& name, const Token& at) {
    for (auto it = labels_.rbegin(); it != labels_.rend(); ++it)
      if (it->first == name.text) return it->second;
    if (opts_.open &&
        (opts_.theta.empty() ||
         std::find(opts_.theta.begin(), opts_.theta.end(), name.text) !=
             opts_.theta.end())) {
      return Label{0, name.text};
    }
    throw ParseError("label '" + name.text + "' has no enclosing generator",
                     at.line, at.col);
  }

  std::string sugar_name() {
    std::string name = sugar_count_ == 0
                           ? std::string("f")
                           : "f" + std::to_string(sugar_count_);
    ++sugar_count_;
    return name;
  }

  // ---------------------------------------------------------- source mode

  SourcePtr sterm() {
    if (lex_.peek().kind == Token::Kind::Bang)
      fail("generators are not part of the source language", lex_.peek());
    if (lex_.peek().kind == Token::Kind::Lambda) return sbinder();
    return ssum_chain();
  }

  SourcePtr sbinder() {
    lex_.take();
    Token name = expect(Token::Kind::Ident, "binder name");
    expect(Token::Kind::Dot, "'.'");
    return sabs(name.text, sterm());
  }

  SourcePtr ssum_chain() {
    SourcePtr lhs = soperand();
    for (;;) {
      if (lex_.peek().kind == Token::Kind::ChoiceOp)
        fail("labelled choice is not part of the source language", lex_.peek());
      if (lex_.peek().kind != Token::Kind::SugarOp) return lhs;
      lex_.take();
      lhs = ssum(lhs, soperand());
    }
  }

  SourcePtr soperand() {
    if (lex_.peek().kind == Token::Kind::Bang)
      fail("generators are not part of the source language", lex_.peek());
    if (lex_.peek().kind == Token::Kind::Lambda) return sbinder();
    if (!at_atom()) fail("expected a term", lex_.peek());
    SourcePtr lhs = satom();
    for (;;) {
      if (at_atom()) {
        lhs = sapp(lhs, satom());
      } else if (lex_.peek().kind == Token::Kind::Lambda) {
        lhs = sapp(lhs, sbinder());
        return lhs;
      } else {
        return lhs;
      }
    }
  }

  SourcePtr satom() {
    Token t = lex_.take();
    if (t.kind == Token::Kind::Ident) return sv(t.text);
    assert(t.kind == Token::Kind::LParen);
    SourcePtr inner = sterm();
    expect(Token::Kind::RParen, "')'");
    return inner;
  }

  Lexer lex_;
  ParseOptions opts_;
  bool source_;
  std::vector<std::pair<std::string, Var>> vars_;
  std::vector<std::pair<std::string, Label>> labels_;
  int sugar_count_ = 0;
};

}  // namespace

TermPtr parse_term(const std::string& text, const ParseOptions& opts) {
  Parser p(text, opts, false);
  return p.run_term();
}

SourcePtr parse_source(const std::string& text) {
  Parser p(text, ParseOptions{}, true);
  return p.run_source();
}

}  // namespace pel
