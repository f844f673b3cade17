#ifndef DAGFIX_RVL_EVAL_HPP
#define DAGFIX_RVL_EVAL_HPP

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dagfix/errors.hpp"
#include "dagfix/rvl/invert.hpp"
#include "dagfix/rvl/validate.hpp"

namespace dagfix::rvl {

struct UnknownFunction : Error {
  using Error::Error;
};

struct UnboundParameter : Error {
  using Error::Error;
};

enum class Outcome { value, undefined, stuck };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::value:
      return "value";
    case Outcome::undefined:
      return "undefined";
    case Outcome::stuck:
      return "stuck";
  }
  return "?";
}

/// depth is the deepest call nesting reached; a defined result at fuel n is
/// also the result at every fuel ≥ depth.
struct EvalResult {
  Outcome outcome = Outcome::undefined;
  Value value;
  std::string reason;
  std::size_t depth = 0;

  bool defined() const { return outcome == Outcome::value; }
};

inline std::string to_string(const EvalResult& r) {
  switch (r.outcome) {
    case Outcome::value:
      return to_string(r.value);
    case Outcome::undefined:
      return "undefined (fuel exhausted)";
    case Outcome::stuck:
      return "stuck: " + r.reason;
  }
  return {};
}

/// Static parameter assignment: parameter name → function name, optionally
/// followed by ~ for its inverse.
using Bindings = std::map<std::string, std::string>;

/// Evaluates a validated program. Each call consumes one unit of fuel along
/// its nesting depth, so fuel n computes the n-th Kleene approximant.
class Evaluator {
 public:
  explicit Evaluator(const Program& p, const std::string& suffix = kDefaultInverseSuffix)
      : sides_{p, invert(p, suffix)} {
    require_valid(p);
    for (int s = 0; s < 2; ++s) {
      for (std::size_t i = 0; i < sides_[s].defs.size(); ++i)
        index_[s][sides_[s].defs[i].name] = i;
      for (const FuncDef& d : sides_[s].defs) {
        std::vector<CompiledClause> cs;
        for (const Clause& c : d.clauses) cs.push_back(compile(s, d, c));
        code_[s].push_back(std::move(cs));
      }
    }
  }

  // compiled clauses point into sides_
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  const Program& program() const { return sides_[0]; }

  EvalResult run(const std::string& fname, const Bindings& bindings, const Value& v,
                 std::size_t fuel) const {
    const auto it = index_[0].find(fname);
    if (it == index_[0].end()) throw UnknownFunction("no function named " + fname);
    const FuncDef& d = sides_[0].defs[it->second];
    std::vector<Ref> statics;
    for (const std::string& g : d.params) {
      const auto b = bindings.find(g);
      if (b == bindings.end())
        throw UnboundParameter(fname + " needs a binding for parameter " + g);
      statics.push_back(resolve_binding(g, b->second));
    }
    for (const auto& [g, target] : bindings)
      if (std::find(d.params.begin(), d.params.end(), g) == d.params.end())
        throw UnboundParameter(fname + " has no parameter named " + g);
    return call({0, it->second}, statics, v, fuel);
  }

 private:
  struct Ref {
    int side = 0;
    std::size_t index = 0;
  };

  // A function reference resolved against the enclosing definition.
  struct Target {
    bool is_param = false;
    std::size_t slot = 0;  // parameter position or definition index
    bool dagger = false;
  };

  struct CompiledLet {
    Target fn;
    std::vector<Target> statics;
    const Let* source;
  };

  struct CompiledClause {
    const Clause* source;
    std::vector<CompiledLet> lets;
  };

  using Env = std::vector<std::pair<const std::string*, Value>>;

  Target target(int side, const FuncDef& d, const FnName& f) const {
    const auto p = std::find(d.params.begin(), d.params.end(), f.name);
    if (p != d.params.end())
      return {true, static_cast<std::size_t>(p - d.params.begin()), f.dagger};
    return {false, index_[side].at(f.name), f.dagger};
  }

  CompiledClause compile(int side, const FuncDef& d, const Clause& c) const {
    CompiledClause out{&c, {}};
    for (const Let& l : c.lets) {
      CompiledLet cl{target(side, d, l.callee.fn), {}, &l};
      for (const FnName& s : l.callee.statics) cl.statics.push_back(target(side, d, s));
      out.lets.push_back(std::move(cl));
    }
    return out;
  }

  Ref resolve_binding(const std::string& param, std::string name) const {
    bool dagger = false;
    if (!name.empty() && name.back() == '~') {
      dagger = true;
      name.pop_back();
    }
    const auto it = index_[0].find(name);
    if (it == index_[0].end())
      throw UnknownFunction("parameter " + param + " bound to unknown function " + name);
    if (!sides_[0].defs[it->second].params.empty())
      throw UnboundParameter("parameter " + param + " bound to " + name +
                             ", which itself takes parameters");
    return {dagger ? 1 : 0, it->second};
  }

  static Ref locate(const Target& t, int side, const std::vector<Ref>& statics) {
    Ref r = t.is_param ? statics[t.slot] : Ref{side, t.slot};
    if (t.dagger) r.side ^= 1;
    return r;
  }

  static bool matches(const Pattern& p, const Value& v) {
    if (p.is_var) return true;
    if (p.ctor != v.ctor) return false;
    if (p.ctor == Ctor::atom) return p.name == v.atom;
    for (std::size_t i = 0; i < p.args.size(); ++i)
      if (!matches(p.args[i], v.args[i])) return false;
    return true;
  }

  static void bind(const Pattern& p, Value&& v, Env& env) {
    if (p.is_var) {
      env.emplace_back(&p.name, std::move(v));
      return;
    }
    for (std::size_t i = 0; i < p.args.size(); ++i) bind(p.args[i], std::move(v.args[i]), env);
  }

  // linearity lets each variable be moved out exactly once
  static Value build(const Pattern& p, Env& env) {
    if (p.is_var) {
      for (auto& [name, val] : env)
        if (*name == p.name) return std::move(val);
      throw std::logic_error("unbound variable " + p.name + " in a validated program");
    }
    Value v{p.ctor, p.ctor == Ctor::atom ? p.name : std::string{}, {}};
    v.args.reserve(p.args.size());
    for (const Pattern& a : p.args) v.args.push_back(build(a, env));
    return v;
  }

  EvalResult call(Ref f, const std::vector<Ref>& statics, const Value& v, std::size_t fuel) const {
    EvalResult r;
    if (fuel == 0) return r;
    r.depth = 1;
    const FuncDef& d = sides_[f.side].defs[f.index];
    const CompiledClause* chosen = nullptr;
    for (const CompiledClause& c : code_[f.side][f.index])
      if (matches(c.source->lhs, v)) {
        chosen = &c;
        break;
      }
    if (!chosen) {
      r.outcome = Outcome::stuck;
      r.reason = "no clause of " + d.name + " matches " + to_string(v);
      return r;
    }
    Env env;
    Value copy = v;
    bind(chosen->source->lhs, std::move(copy), env);
    for (const CompiledLet& l : chosen->lets) {
      std::vector<Ref> inner;
      for (const Target& t : l.statics) inner.push_back(locate(t, f.side, statics));
      const Value arg = build(l.source->arg, env);
      EvalResult sub = call(locate(l.fn, f.side, statics), inner, arg, fuel - 1);
      r.depth = std::max(r.depth, sub.depth + 1);
      if (!sub.defined()) {
        sub.depth = r.depth;
        return sub;
      }
      if (!matches(l.source->bound, sub.value)) {
        r.outcome = Outcome::stuck;
        r.reason = "in " + d.name + ", result " + to_string(sub.value) + " does not match " +
                   to_string(l.source->bound);
        return r;
      }
      bind(l.source->bound, std::move(sub.value), env);
    }
    r.outcome = Outcome::value;
    r.value = build(chosen->source->out, env);
    return r;
  }

  std::array<Program, 2> sides_;
  std::array<std::unordered_map<std::string, std::size_t>, 2> index_;
  std::array<std::vector<std::vector<CompiledClause>>, 2> code_;
};

inline EvalResult eval(const Program& p, const std::string& fname, const Bindings& bindings,
                       const Value& v, std::size_t fuel) {
  return Evaluator(p).run(fname, bindings, v, fuel);
}

}  // namespace dagfix::rvl

#endif
