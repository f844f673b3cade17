#ifndef DAGFIX_RVL_PARSER_HPP
#define DAGFIX_RVL_PARSER_HPP

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "dagfix/errors.hpp"
#include "dagfix/rvl/syntax.hpp"

namespace dagfix::rvl {

struct SyntaxError : Error {
  SyntaxError(const std::string& msg, Position at)
      : Error(to_string(at) + ": " + msg), pos(at), message(msg) {}
  Position pos;
  std::string message;
};

namespace detail {

enum class Tok { ident, ctor, atom, kw_fun, kw_let, kw_in, kw_atom, punct, end };

struct Token {
  Tok kind;
  std::string text;
  Position pos;
};

inline bool ident_start(char c) {
  return std::islower(static_cast<unsigned char>(c)) || c == '_';
}
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      const Position at = pos();
      if (i_ >= src_.size()) {
        out.push_back({Tok::end, "end of input", at});
        return out;
      }
      const char c = src_[i_];
      if (ident_start(c) || std::isupper(static_cast<unsigned char>(c))) {
        std::string word = take_word();
        Tok kind = ident_start(c) ? Tok::ident : Tok::ctor;
        if (word == "fun") kind = Tok::kw_fun;
        if (word == "let") kind = Tok::kw_let;
        if (word == "in") kind = Tok::kw_in;
        if (word == "atom") kind = Tok::kw_atom;
        out.push_back({kind, std::move(word), at});
      } else if (c == '\'') {
        advance();
        if (i_ >= src_.size() || !ident_char(src_[i_]))
          throw SyntaxError("expected an atom name after '", at);
        out.push_back({Tok::atom, take_word(), at});
      } else if (std::string_view("()<>,=~").find(c) != std::string_view::npos) {
        advance();
        out.push_back({Tok::punct, std::string(1, c), at});
      } else {
        throw SyntaxError(std::string("unexpected character '") + c + "'", at);
      }
    }
  }

 private:
  Position pos() const { return {line_, col_}; }

  void advance() {
    // columns count code points, not bytes
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(src_[i_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++i_;
  }

  void skip_space() {
    while (i_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[i_]))) {
        advance();
      } else if (src_.substr(i_, 2) == "--") {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string take_word() {
    const std::size_t start = i_;
    while (i_ < src_.size() && ident_char(src_[i_])) advance();
    return std::string(src_.substr(start, i_ - start));
  }

  std::string_view src_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(Lexer(src).run()) {}

  Program program() {
    Program p;
    while (peek().kind != Tok::end) {
      if (peek().kind == Tok::kw_atom) {
        next();
        if (peek().kind != Tok::atom) fail("expected an atom after 'atom'");
        while (peek().kind == Tok::atom) {
          const std::string name = next().text;
          bool seen = false;
          for (const std::string& a : p.atoms) seen = seen || a == name;
          if (!seen) p.atoms.push_back(name);
        }
      } else {
        clause(p);
      }
    }
    return p;
  }

  Pattern whole_pattern() {
    Pattern pat = pattern();
    if (peek().kind != Tok::end) fail("unexpected " + describe(peek()));
    return pat;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, peek().pos); }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::end) return t.text;
    if (t.kind == Tok::atom) return "'" + t.text;
    return "'" + t.text + "'";
  }

  bool at_punct(char c) const { return peek().kind == Tok::punct && peek().text[0] == c; }

  void expect_punct(char c) {
    if (!at_punct(c)) fail(std::string("expected '") + c + "' but found " + describe(peek()));
    next();
  }

  std::string ident(const char* what) {
    if (peek().kind != Tok::ident) fail(std::string("expected ") + what + " but found " +
                                        describe(peek()));
    return next().text;
  }

  FnName fn_name() {
    FnName f{ident("a function name"), false};
    if (at_punct('~')) {
      next();
      f.dagger = true;
    }
    return f;
  }

  void clause(Program& p) {
    if (peek().kind != Tok::kw_fun) fail("expected 'fun' or 'atom' but found " + describe(peek()));
    const Position at = next().pos;
    const std::string name = ident("a function name");
    std::vector<std::string> params;
    if (at_punct('<')) {
      next();
      params.push_back(ident("a parameter name"));
      while (at_punct(',')) {
        next();
        params.push_back(ident("a parameter name"));
      }
      expect_punct('>');
    }
    Clause c;
    c.pos = at;
    c.lhs = pattern();
    expect_punct('=');
    while (peek().kind == Tok::kw_let) {
      Let l;
      l.pos = next().pos;
      l.bound = pattern();
      expect_punct('=');
      l.callee.fn = fn_name();
      if (at_punct('<')) {
        next();
        l.callee.statics.push_back(fn_name());
        while (at_punct(',')) {
          next();
          l.callee.statics.push_back(fn_name());
        }
        expect_punct('>');
      }
      l.arg = pattern();
      if (peek().kind != Tok::kw_in) fail("expected 'in' but found " + describe(peek()));
      next();
      c.lets.push_back(std::move(l));
    }
    c.out = pattern();

    for (FuncDef& d : p.defs)
      if (d.name == name) {
        if (d.params != params)
          throw SyntaxError("clause of " + name + " declares parameters " +
                                params_to_string(params) + " but earlier clauses declare " +
                                params_to_string(d.params),
                            at);
        d.clauses.push_back(std::move(c));
        return;
      }
    p.defs.push_back({name, std::move(params), {std::move(c)}, at});
  }

  // Constructor arities are fixed, so prefix application needs no parentheses.
  Pattern pattern() {
    const Token& t = peek();
    const Position at = t.pos;
    switch (t.kind) {
      case Tok::ident:
        return Pattern::var(next().text, at);
      case Tok::atom:
        return Pattern::make_atom(next().text, at);
      case Tok::ctor: {
        const std::string name = next().text;
        if (name == "Z") return Pattern::make(Ctor::zero, {}, at);
        if (name == "Nil") return Pattern::make(Ctor::nil, {}, at);
        if (name == "S") return Pattern::make(Ctor::succ, {pattern()}, at);
        if (name == "Cons") {
          Pattern head = pattern();
          Pattern tail = pattern();
          return Pattern::make(Ctor::cons, {std::move(head), std::move(tail)}, at);
        }
        throw SyntaxError("unknown constructor " + name, at);
      }
      case Tok::punct:
        if (t.text[0] == '(') {
          next();
          Pattern first = pattern();
          if (at_punct(')')) {
            next();
            return first;
          }
          expect_punct(',');
          Pattern second = pattern();
          expect_punct(')');
          return Pattern::make(Ctor::pair, {std::move(first), std::move(second)}, at);
        }
        break;
      default:
        break;
    }
    fail("expected a pattern but found " + describe(t));
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline Program parse(std::string_view source) { return detail::Parser(source).program(); }

inline Pattern parse_pattern(std::string_view source) {
  return detail::Parser(source).whole_pattern();
}

/// Value literals: Z, S v, Nil, Cons v v, (v, v), 'atom.
inline Value parse_value(std::string_view source) {
  const Pattern p = parse_pattern(source);
  auto v = to_value(p);
  if (!v) {
    const Pattern* var = &p;
    std::vector<const Pattern*> todo{&p};
    while (!todo.empty()) {
      const Pattern* q = todo.back();
      todo.pop_back();
      if (q->is_var) {
        var = q;
        break;
      }
      for (const Pattern& a : q->args) todo.push_back(&a);
    }
    throw SyntaxError("a value cannot contain the variable " + var->name, var->pos);
  }
  return *v;
}

}  // namespace dagfix::rvl

#endif
