#ifndef DAGFIX_RVL_VALUE_HPP
#define DAGFIX_RVL_VALUE_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace dagfix::rvl {

enum class Ctor { zero, succ, nil, cons, pair, atom };

inline std::size_t arity(Ctor c) {
  switch (c) {
    case Ctor::succ:
      return 1;
    case Ctor::cons:
    case Ctor::pair:
      return 2;
    default:
      return 0;
  }
}

/// A finite constructor term. Atoms carry their name without the quote.
struct Value {
  Ctor ctor = Ctor::zero;
  std::string atom;
  std::vector<Value> args;

  static Value zero() { return {}; }
  static Value succ(Value v) { return {Ctor::succ, {}, {std::move(v)}}; }
  static Value nil() { return {Ctor::nil, {}, {}}; }
  static Value cons(Value h, Value t) { return {Ctor::cons, {}, {std::move(h), std::move(t)}}; }
  static Value pair(Value a, Value b) { return {Ctor::pair, {}, {std::move(a), std::move(b)}}; }
  static Value make_atom(std::string name) { return {Ctor::atom, std::move(name), {}}; }

  static Value nat(std::size_t n) {
    Value v = zero();
    for (std::size_t k = 0; k < n; ++k) v = succ(std::move(v));
    return v;
  }
  static Value list(std::vector<Value> items) {
    Value v = nil();
    for (auto it = items.rbegin(); it != items.rend(); ++it) v = cons(std::move(*it), std::move(v));
    return v;
  }

  friend bool operator==(const Value&, const Value&) = default;
};

/// Node count.
inline std::size_t size(const Value& v) {
  std::size_t n = 1;
  for (const Value& a : v.args) n += size(a);
  return n;
}

/// Total order: constructor, then atom name, then arguments left to right.
inline int compare(const Value& a, const Value& b) {
  if (a.ctor != b.ctor) return a.ctor < b.ctor ? -1 : 1;
  if (a.atom != b.atom) return a.atom < b.atom ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (const int c = compare(a.args[i], b.args[i]); c != 0) return c;
  return 0;
}

struct ValueLess {
  bool operator()(const Value& a, const Value& b) const { return compare(a, b) < 0; }
};

namespace detail {

inline bool needs_parens(const Value& v) { return v.ctor == Ctor::succ || v.ctor == Ctor::cons; }

inline void print(std::string& out, const Value& v, bool nested) {
  const bool wrap = nested && needs_parens(v);
  if (wrap) out += '(';
  switch (v.ctor) {
    case Ctor::zero:
      out += 'Z';
      break;
    case Ctor::nil:
      out += "Nil";
      break;
    case Ctor::atom:
      out += '\'' + v.atom;
      break;
    case Ctor::succ:
      out += "S ";
      print(out, v.args[0], true);
      break;
    case Ctor::cons:
      out += "Cons ";
      print(out, v.args[0], true);
      out += ' ';
      print(out, v.args[1], true);
      break;
    case Ctor::pair:
      out += '(';
      print(out, v.args[0], false);
      out += ", ";
      print(out, v.args[1], false);
      out += ')';
      break;
  }
  if (wrap) out += ')';
}

}  // namespace detail

/// Literal syntax: Z, S v, Nil, Cons v v, (v, v), 'atom.
inline std::string to_string(const Value& v) {
  std::string out;
  detail::print(out, v, false);
  return out;
}

}  // namespace dagfix::rvl

#endif
