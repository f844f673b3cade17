#ifndef DAGFIX_RVL_VALIDATE_HPP
#define DAGFIX_RVL_VALIDATE_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "dagfix/errors.hpp"
#include "dagfix/rvl/syntax.hpp"

namespace dagfix::rvl {

struct Issue {
  std::string kind;  // linearity, lhs-overlap, out-overlap, resolution, arity, atom
  std::string function;
  Position pos;
  std::string message;
};

inline std::string to_string(const Issue& i) {
  return to_string(i.pos) + ": " + i.kind + " in " + i.function + ": " + i.message;
}

struct ValidationReport {
  std::vector<Issue> issues;

  bool ok() const { return issues.empty(); }
  bool has(const std::string& kind) const {
    return std::any_of(issues.begin(), issues.end(),
                       [&](const Issue& i) { return i.kind == kind; });
  }
};

struct InvalidProgram : Error {
  explicit InvalidProgram(ValidationReport r)
      : Error(r.issues.empty() ? "invalid program"
                               : "invalid program: " + to_string(r.issues.front())),
        report(std::move(r)) {}
  ValidationReport report;
};

/// Whether two patterns, with their variables renamed apart, have a common
/// instance. For linear patterns this is a structural walk.
inline bool unifiable(const Pattern& a, const Pattern& b) {
  if (a.is_var || b.is_var) return true;
  if (a.ctor != b.ctor) return false;
  if (a.ctor == Ctor::atom) return a.name == b.name;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!unifiable(a.args[i], b.args[i])) return false;
  return true;
}

namespace detail {

inline void collect_vars(const Pattern& p, std::vector<const Pattern*>& out) {
  if (p.is_var) {
    out.push_back(&p);
    return;
  }
  for (const Pattern& a : p.args) collect_vars(a, out);
}

inline void collect_atoms(const Pattern& p, std::vector<const Pattern*>& out) {
  if (!p.is_var && p.ctor == Ctor::atom) out.push_back(&p);
  for (const Pattern& a : p.args) collect_atoms(a, out);
}

class Validator {
 public:
  explicit Validator(const Program& p) : prog_(p) {}

  ValidationReport run() {
    for (const FuncDef& d : prog_.defs) {
      for (const FuncDef& e : prog_.defs)
        if (&e != &d && e.name == d.name) {
          add("resolution", d, d.pos, "function defined twice");
          break;
        }
      for (std::size_t i = 0; i < d.params.size(); ++i) {
        if (prog_.find(d.params[i]))
          add("resolution", d, d.pos, "parameter " + d.params[i] + " shadows a function");
        for (std::size_t j = 0; j < i; ++j)
          if (d.params[i] == d.params[j])
            add("resolution", d, d.pos, "parameter " + d.params[i] + " declared twice");
      }
      for (const Clause& c : d.clauses) clause(d, c);
      overlaps(d);
    }
    return std::move(report_);
  }

 private:
  void add(const char* kind, const FuncDef& d, Position at, std::string msg) {
    report_.issues.push_back({kind, d.name, at, std::move(msg)});
  }

  bool is_param(const FuncDef& d, const std::string& n) const {
    return std::find(d.params.begin(), d.params.end(), n) != d.params.end();
  }

  void static_arg(const FuncDef& d, const Let& l, const FnName& f) {
    if (is_param(d, f.name)) return;
    const FuncDef* target = prog_.find(f.name);
    if (!target)
      add("resolution", d, l.pos, "unknown function " + f.name);
    else if (!target->params.empty())
      add("arity", d, l.pos,
          "static argument " + f.name + " takes parameters and cannot be passed unapplied");
  }

  void callee(const FuncDef& d, const Let& l) {
    const Callee& c = l.callee;
    if (is_param(d, c.fn.name)) {
      if (!c.statics.empty())
        add("arity", d, l.pos, "parameter " + c.fn.name + " takes no static arguments");
    } else if (const FuncDef* target = prog_.find(c.fn.name)) {
      if (target->params.size() != c.statics.size())
        add("arity", d, l.pos,
            c.fn.name + " expects " + std::to_string(target->params.size()) +
                " static arguments, got " + std::to_string(c.statics.size()));
    } else {
      add("resolution", d, l.pos, "unknown function " + c.fn.name);
    }
    for (const FnName& s : c.statics) static_arg(d, l, s);
  }

  void atoms(const FuncDef& d, const Pattern& p) {
    std::vector<const Pattern*> found;
    collect_atoms(p, found);
    for (const Pattern* a : found)
      if (std::find(prog_.atoms.begin(), prog_.atoms.end(), a->name) == prog_.atoms.end())
        add("atom", d, a->pos, "undeclared atom '" + a->name);
  }

  // Every variable is bound once (head or let pattern) and then used once
  // (let argument or output), in that order.
  void clause(const FuncDef& d, const Clause& c) {
    enum class State { live, used };
    std::map<std::string, State> vars;
    auto bind = [&](const Pattern& p) {
      atoms(d, p);
      std::vector<const Pattern*> vs;
      collect_vars(p, vs);
      for (const Pattern* v : vs)
        if (!vars.emplace(v->name, State::live).second)
          add("linearity", d, v->pos, "variable " + v->name + " bound twice");
    };
    auto use = [&](const Pattern& p) {
      atoms(d, p);
      std::vector<const Pattern*> vs;
      collect_vars(p, vs);
      for (const Pattern* v : vs) {
        auto it = vars.find(v->name);
        if (it == vars.end())
          add("linearity", d, v->pos, "variable " + v->name + " used before it is bound");
        else if (it->second == State::used)
          add("linearity", d, v->pos, "variable " + v->name + " used twice");
        else
          it->second = State::used;
      }
    };
    bind(c.lhs);
    for (const Let& l : c.lets) {
      callee(d, l);
      use(l.arg);
      bind(l.bound);
    }
    use(c.out);
    for (const auto& [name, state] : vars)
      if (state == State::live) add("linearity", d, c.pos, "variable " + name + " never used");
  }

  void overlaps(const FuncDef& d) {
    for (std::size_t i = 0; i < d.clauses.size(); ++i)
      for (std::size_t j = i + 1; j < d.clauses.size(); ++j) {
        const Clause& a = d.clauses[i];
        const Clause& b = d.clauses[j];
        if (unifiable(a.lhs, b.lhs))
          add("lhs-overlap", d, b.pos,
              "heads " + to_string(a.lhs) + " and " + to_string(b.lhs) + " overlap");
        if (unifiable(a.out, b.out))
          add("out-overlap", d, b.pos,
              "outputs " + to_string(a.out) + " and " + to_string(b.out) + " overlap");
      }
  }

  const Program& prog_;
  ValidationReport report_;
};

}  // namespace detail

/// Empty report means the program denotes partial injections.
inline ValidationReport validate(const Program& p) { return detail::Validator(p).run(); }

inline void require_valid(const Program& p) {
  ValidationReport r = validate(p);
  if (!r.ok()) throw InvalidProgram(std::move(r));
}

}  // namespace dagfix::rvl

#endif
