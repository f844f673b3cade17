#ifndef DAGFIX_RVL_ROUNDTRIP_HPP
#define DAGFIX_RVL_ROUNDTRIP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dagfix/random.hpp"
#include "dagfix/report.hpp"
#include "dagfix/rvl/eval.hpp"
#include "dagfix/rvl/parser.hpp"

namespace dagfix::rvl {

/// Shape of random inputs. The language is untyped; sorts only steer sampling.
struct Sort {
  enum class Kind { any, nat, atom, list, pair };

  Kind kind = Kind::any;
  std::vector<Sort> args;  // list: element; pair: both components

  static Sort any() { return {}; }
  static Sort nat() { return {Kind::nat, {}}; }
  static Sort atom() { return {Kind::atom, {}}; }
  static Sort list(Sort e) { return {Kind::list, {std::move(e)}}; }
  static Sort pair(Sort a, Sort b) { return {Kind::pair, {std::move(a), std::move(b)}}; }

  friend bool operator==(const Sort&, const Sort&) = default;
};

inline std::string to_string(const Sort& s) {
  switch (s.kind) {
    case Sort::Kind::any:
      return "any";
    case Sort::Kind::nat:
      return "nat";
    case Sort::Kind::atom:
      return "atom";
    case Sort::Kind::list: {
      const bool wrap = s.args[0].kind == Sort::Kind::list;
      return "list " + (wrap ? "(" + to_string(s.args[0]) + ")" : to_string(s.args[0]));
    }
    case Sort::Kind::pair:
      return "(" + to_string(s.args[0]) + ", " + to_string(s.args[1]) + ")";
  }
  return "?";
}

namespace detail {

class SortParser {
 public:
  explicit SortParser(std::string_view src) : toks_(Lexer(src).run()) {}

  Sort whole() {
    Sort s = sort();
    if (toks_[i_].kind != Tok::end) fail("unexpected '" + toks_[i_].text + "'");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, toks_[i_].pos); }

  Sort sort() {
    const Token& t = toks_[i_];
    if (t.kind == Tok::kw_atom) {
      ++i_;
      return Sort::atom();
    }
    if (t.kind == Tok::ident) {
      ++i_;
      if (t.text == "nat") return Sort::nat();
      if (t.text == "any") return Sort::any();
      if (t.text == "list") return Sort::list(sort());
      fail("unknown sort " + t.text);
    }
    if (t.kind == Tok::punct && t.text == "(") {
      ++i_;
      Sort a = sort();
      if (toks_[i_].text == ")") {
        ++i_;
        return a;
      }
      if (toks_[i_].text != ",") fail("expected ',' in a pair sort");
      ++i_;
      Sort b = sort();
      if (toks_[i_].text != ")") fail("expected ')' to close a pair sort");
      ++i_;
      return Sort::pair(std::move(a), std::move(b));
    }
    fail("expected a sort but found '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

inline Sort merge(const Sort& a, const Sort& b) {
  if (a.kind == Sort::Kind::any) return b;
  if (b.kind == Sort::Kind::any) return a;
  if (a.kind != b.kind) return Sort::any();
  Sort out{a.kind, {}};
  for (std::size_t i = 0; i < a.args.size(); ++i) out.args.push_back(merge(a.args[i], b.args[i]));
  return out;
}

inline Sort sort_of(const Pattern& p) {
  if (p.is_var) return Sort::any();
  switch (p.ctor) {
    case Ctor::zero:
    case Ctor::succ:
      return Sort::nat();
    case Ctor::atom:
      return Sort::atom();
    case Ctor::nil:
      return Sort::list(Sort::any());
    case Ctor::cons: {
      const Sort tail = merge(sort_of(p.args[1]), Sort::list(Sort::any()));
      const Sort elem = tail.kind == Sort::Kind::list ? tail.args[0] : Sort::any();
      return Sort::list(merge(sort_of(p.args[0]), elem));
    }
    case Ctor::pair:
      return Sort::pair(sort_of(p.args[0]), sort_of(p.args[1]));
  }
  return Sort::any();
}

}  // namespace detail

/// nat, atom, any, list S, (S, S).
inline Sort parse_sort(std::string_view text) { return detail::SortParser(text).whole(); }

/// The common shape of a function's clause heads (or outputs); positions the
/// heads leave open stay `any`.
inline Sort infer_sort(const FuncDef& d, bool outputs = false) {
  Sort s;
  for (const Clause& c : d.clauses) s = detail::merge(s, detail::sort_of(outputs ? c.out : c.lhs));
  return s;
}

struct SampleConfig {
  std::size_t max_nat = 8;
  std::size_t max_length = 5;
};

/// `any` is sampled as nat.
inline Value random_value(Rng& rng, const Sort& s, const std::vector<std::string>& atoms,
                          const SampleConfig& cfg = {}) {
  switch (s.kind) {
    case Sort::Kind::any:
    case Sort::Kind::nat:
      return Value::nat(pick(rng, cfg.max_nat + 1));
    case Sort::Kind::atom:
      if (atoms.empty()) throw std::invalid_argument("atom sort requested but no atoms declared");
      return Value::make_atom(atoms[pick(rng, atoms.size())]);
    case Sort::Kind::list: {
      const std::size_t n = pick(rng, cfg.max_length + 1);
      std::vector<Value> items;
      for (std::size_t i = 0; i < n; ++i) items.push_back(random_value(rng, s.args[0], atoms, cfg));
      return Value::list(std::move(items));
    }
    case Sort::Kind::pair: {
      Value a = random_value(rng, s.args[0], atoms, cfg);
      Value b = random_value(rng, s.args[1], atoms, cfg);
      return Value::pair(std::move(a), std::move(b));
    }
  }
  return Value::zero();
}

/// Bindings for the inverted program: each bound function is replaced by its inverse.
inline Bindings inverse_bindings(const Bindings& b,
                                 const std::string& suffix = kDefaultInverseSuffix) {
  Bindings out;
  for (const auto& [g, target] : b) {
    if (!target.empty() && target.back() == '~')
      out[g] = target.substr(0, target.size() - 1) + suffix + "~";
    else
      out[g] = target + suffix;
  }
  return out;
}

struct RoundtripConfig {
  std::size_t trials = 100;
  std::size_t fuel = 10000;
  std::uint64_t seed = 0;
  std::optional<Sort> input_sort;   // default: inferred from the heads of fname
  std::optional<Sort> output_sort;  // default: inferred from its outputs
  SampleConfig sampling;
  std::string suffix = kDefaultInverseSuffix;
};

namespace detail {

struct Direction {
  const Evaluator& ev;
  std::string fname;
  Bindings bindings;
};

// One sample through `there` and back through `back`, plus the fuel-indexed
// mirror: recovery at exactly the forward depth and not one below it.
inline void roundtrip_once(const Direction& there, const Direction& back, const Value& v,
                           std::size_t fuel, const char* law, LawReport& r) {
  const EvalResult fwd = there.ev.run(there.fname, there.bindings, v, fuel);
  if (!fwd.defined()) {
    ++r.skipped;
    return;
  }
  const Value& w = fwd.value;
  auto witness = [&](const EvalResult& got) {
    return there.fname + " " + to_string(v) + " = " + to_string(w) + " but " + back.fname + " " +
           to_string(w) + " gives " + to_string(got);
  };
  const EvalResult rev = back.ev.run(back.fname, back.bindings, w, fuel);
  r.expect(rev.defined() && rev.value == v, law, [&] { return witness(rev); });
  const EvalResult at_depth = back.ev.run(back.fname, back.bindings, w, fwd.depth);
  r.expect(at_depth.defined() && at_depth.value == v, "fuel-adjoint",
           [&] { return "at fuel " + std::to_string(fwd.depth) + ": " + witness(at_depth); });
  const EvalResult below = back.ev.run(back.fname, back.bindings, w, fwd.depth - 1);
  r.expect(below.outcome == Outcome::undefined, "fuel-adjoint",
           [&] { return "at fuel " + std::to_string(fwd.depth - 1) + ": " + witness(below); });
}

}  // namespace detail

/// Runs fname on random inputs and its inverse on the results, and the
/// inverse on random outputs and fname on those. Invalid programs are
/// rejected with InvalidProgram before anything runs.
inline LawReport roundtrip_check(const Program& p, const std::string& fname,
                                 const Bindings& bindings, const RoundtripConfig& cfg) {
  require_valid(p);
  LawReport r;
  r.suite = "roundtrip";
  ScopedTimer timer(r);
  const FuncDef* d = p.find(fname);
  if (!d) throw UnknownFunction("no function named " + fname);
  const Evaluator fwd(p);
  const Evaluator bwd(invert(p, cfg.suffix));
  const detail::Direction there{fwd, fname, bindings};
  const detail::Direction back{bwd, fname + cfg.suffix, inverse_bindings(bindings, cfg.suffix)};
  const Sort in = cfg.input_sort.value_or(infer_sort(*d));
  const Sort out = cfg.output_sort.value_or(infer_sort(*d, true));
  Rng rng(cfg.seed);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const Value v = random_value(rng, in, p.atoms, cfg.sampling);
    detail::roundtrip_once(there, back, v, cfg.fuel, "roundtrip", r);
    const Value w = random_value(rng, out, p.atoms, cfg.sampling);
    detail::roundtrip_once(back, there, w, cfg.fuel, "roundtrip-inverse", r);
  }
  return r;
}

struct MonotonicityConfig {
  std::size_t samples = 1000;
  std::size_t max_fuel = 16;
  std::uint64_t seed = 0;
  std::optional<Sort> input_sort;
  SampleConfig sampling;
};

/// For sampled (v, n) and n' ≥ n: defined at n implies the same value at n'.
inline LawReport check_fuel_monotonicity(const Program& p, const std::string& fname,
                                         const Bindings& bindings, const MonotonicityConfig& cfg) {
  LawReport r;
  r.suite = "fuel-monotonicity";
  ScopedTimer timer(r);
  const Evaluator ev(p);
  const FuncDef* d = p.find(fname);
  if (!d) throw UnknownFunction("no function named " + fname);
  const Sort in = cfg.input_sort.value_or(infer_sort(*d));
  Rng rng(cfg.seed);
  for (std::size_t k = 0; k < cfg.samples; ++k) {
    const Value v = random_value(rng, in, p.atoms, cfg.sampling);
    const std::size_t n = pick(rng, cfg.max_fuel + 1);
    const std::size_t n2 = n + pick(rng, cfg.max_fuel - n + 1);
    const EvalResult low = ev.run(fname, bindings, v, n);
    const EvalResult high = ev.run(fname, bindings, v, n2);
    r.expect(!low.defined() || (high.defined() && high.value == low.value), "fuel-monotonicity",
             [&] {
               return fname + " " + to_string(v) + " at fuel " + std::to_string(n) + " = " +
                      to_string(low) + ", at fuel " + std::to_string(n2) + " = " +
                      to_string(high);
             });
  }
  return r;
}

}  // namespace dagfix::rvl

#endif
