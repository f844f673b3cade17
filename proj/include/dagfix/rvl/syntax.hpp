#ifndef DAGFIX_RVL_SYNTAX_HPP
#define DAGFIX_RVL_SYNTAX_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dagfix/rvl/value.hpp"

namespace dagfix::rvl {

struct Position {
  std::size_t line = 0;
  std::size_t column = 0;

  friend bool operator==(const Position&, const Position&) = default;
};

inline std::string to_string(const Position& p) {
  return std::to_string(p.line) + ":" + std::to_string(p.column);
}

/// A constructor term over variables. Equality ignores positions.
struct Pattern {
  bool is_var = false;
  std::string name;  // variable name, or atom name when ctor == atom
  Ctor ctor = Ctor::zero;
  std::vector<Pattern> args;
  Position pos;

  static Pattern var(std::string n, Position p = {}) { return {true, std::move(n), {}, {}, p}; }
  static Pattern make(Ctor c, std::vector<Pattern> args = {}, Position p = {}) {
    return {false, {}, c, std::move(args), p};
  }
  static Pattern make_atom(std::string n, Position p = {}) {
    return {false, std::move(n), Ctor::atom, {}, p};
  }

  friend bool operator==(const Pattern& a, const Pattern& b) {
    return a.is_var == b.is_var && a.name == b.name && (a.is_var || a.ctor == b.ctor) &&
           a.args == b.args;
  }
};

inline Pattern to_pattern(const Value& v) {
  if (v.ctor == Ctor::atom) return Pattern::make_atom(v.atom);
  std::vector<Pattern> args;
  for (const Value& a : v.args) args.push_back(to_pattern(a));
  return Pattern::make(v.ctor, std::move(args));
}

/// A function reference: a definition or a static parameter, optionally
/// dagger-marked with ~.
struct FnName {
  std::string name;
  bool dagger = false;

  friend bool operator==(const FnName&, const FnName&) = default;
};

struct Callee {
  FnName fn;
  std::vector<FnName> statics;  // f<a, b~>

  friend bool operator==(const Callee&, const Callee&) = default;
};

/// let bound = callee arg in ...
struct Let {
  Pattern bound;
  Callee callee;
  Pattern arg;
  Position pos;

  friend bool operator==(const Let& a, const Let& b) {
    return a.bound == b.bound && a.callee == b.callee && a.arg == b.arg;
  }
};

struct Clause {
  Pattern lhs;
  std::vector<Let> lets;
  Pattern out;
  Position pos;

  friend bool operator==(const Clause& a, const Clause& b) {
    return a.lhs == b.lhs && a.lets == b.lets && a.out == b.out;
  }
};

struct FuncDef {
  std::string name;
  std::vector<std::string> params;
  std::vector<Clause> clauses;
  Position pos;

  friend bool operator==(const FuncDef& a, const FuncDef& b) {
    return a.name == b.name && a.params == b.params && a.clauses == b.clauses;
  }
};

struct Program {
  std::vector<std::string> atoms;
  std::vector<FuncDef> defs;

  const FuncDef* find(const std::string& name) const {
    for (const FuncDef& d : defs)
      if (d.name == name) return &d;
    return nullptr;
  }

  friend bool operator==(const Program&, const Program&) = default;
};

/// The value of a ground pattern; nullopt if it mentions a variable.
inline std::optional<Value> to_value(const Pattern& p) {
  if (p.is_var) return std::nullopt;
  Value v{p.ctor, p.ctor == Ctor::atom ? p.name : std::string{}, {}};
  for (const Pattern& a : p.args) {
    auto av = to_value(a);
    if (!av) return std::nullopt;
    v.args.push_back(std::move(*av));
  }
  return v;
}

namespace detail {

inline void print(std::string& out, const Pattern& p, bool nested) {
  if (p.is_var) {
    out += p.name;
    return;
  }
  const bool wrap = nested && (p.ctor == Ctor::succ || p.ctor == Ctor::cons);
  if (wrap) out += '(';
  switch (p.ctor) {
    case Ctor::zero:
      out += 'Z';
      break;
    case Ctor::nil:
      out += "Nil";
      break;
    case Ctor::atom:
      out += '\'' + p.name;
      break;
    case Ctor::succ:
      out += "S ";
      print(out, p.args[0], true);
      break;
    case Ctor::cons:
      out += "Cons ";
      print(out, p.args[0], true);
      out += ' ';
      print(out, p.args[1], true);
      break;
    case Ctor::pair:
      out += '(';
      print(out, p.args[0], false);
      out += ", ";
      print(out, p.args[1], false);
      out += ')';
      break;
  }
  if (wrap) out += ')';
}

}  // namespace detail

/// Heads and call arguments parenthesize constructor applications; outputs do not.
inline std::string to_string(const Pattern& p, bool nested = false) {
  std::string out;
  detail::print(out, p, nested);
  return out;
}

inline std::string to_string(const FnName& f) { return f.name + (f.dagger ? "~" : ""); }

inline std::string to_string(const Callee& c) {
  std::string out = to_string(c.fn);
  if (!c.statics.empty()) {
    out += '<';
    for (std::size_t i = 0; i < c.statics.size(); ++i)
      out += (i ? ", " : "") + to_string(c.statics[i]);
    out += '>';
  }
  return out;
}

inline std::string params_to_string(const std::vector<std::string>& params) {
  if (params.empty()) return {};
  std::string out = "<";
  for (std::size_t i = 0; i < params.size(); ++i) out += (i ? ", " : "") + params[i];
  return out + ">";
}

inline std::string to_string(const FuncDef& d, const Clause& c) {
  std::string out = "fun " + d.name + params_to_string(d.params) + " " + to_string(c.lhs, true) +
                    " =";
  for (const Let& l : c.lets)
    out += " let " + to_string(l.bound) + " = " + to_string(l.callee) + " " +
           to_string(l.arg, true) + " in";
  return out + " " + to_string(c.out);
}

/// Concrete syntax, one clause per line; parses back to an equal Program.
inline std::string to_string(const Program& p) {
  std::string out;
  if (!p.atoms.empty()) {
    out += "atom";
    for (const std::string& a : p.atoms) out += " '" + a;
    out += '\n';
  }
  for (const FuncDef& d : p.defs)
    for (const Clause& c : d.clauses) out += to_string(d, c) + '\n';
  return out;
}

}  // namespace dagfix::rvl

#endif
