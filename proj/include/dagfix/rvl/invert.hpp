#ifndef DAGFIX_RVL_INVERT_HPP
#define DAGFIX_RVL_INVERT_HPP

#include <algorithm>
#include <map>
#include <string>

#include "dagfix/rvl/syntax.hpp"

namespace dagfix::rvl {

inline constexpr const char* kDefaultInverseSuffix = "_inv";

namespace detail {

inline FnName invert_ref(const FuncDef& d, const FnName& f, const std::string& suffix) {
  // a static parameter of the inverse already stands for the dagger of its binding
  if (std::find(d.params.begin(), d.params.end(), f.name) != d.params.end()) return f;
  return {f.name + suffix, f.dagger};
}

}  // namespace detail

/// Clause-local inversion: heads and outputs swap, the let chain runs
/// backwards, and every call to f becomes a call to f<suffix>. Parameters keep
/// their names; binding g to h in p corresponds to binding g to h's inverse in
/// invert(p).
inline Program invert(const Program& p, const std::string& suffix = kDefaultInverseSuffix) {
  Program out;
  out.atoms = p.atoms;
  for (const FuncDef& d : p.defs) {
    FuncDef inv{d.name + suffix, d.params, {}, d.pos};
    for (const Clause& c : d.clauses) {
      Clause ic{c.out, {}, c.lhs, c.pos};
      for (auto it = c.lets.rbegin(); it != c.lets.rend(); ++it) {
        Callee callee{detail::invert_ref(d, it->callee.fn, suffix), {}};
        for (const FnName& s : it->callee.statics)
          callee.statics.push_back(detail::invert_ref(d, s, suffix));
        ic.lets.push_back({it->arg, std::move(callee), it->bound, it->pos});
      }
      inv.clauses.push_back(std::move(ic));
    }
    out.defs.push_back(std::move(inv));
  }
  return out;
}

namespace detail {

class Canonicalizer {
 public:
  explicit Canonicalizer(const Program& p) {
    for (std::size_t i = 0; i < p.defs.size(); ++i) fns_[p.defs[i].name] = "f" + std::to_string(i);
  }

  Program run(const Program& p) {
    Program out;
    out.atoms = p.atoms;
    std::sort(out.atoms.begin(), out.atoms.end());
    for (const FuncDef& d : p.defs) {
      params_.clear();
      for (std::size_t i = 0; i < d.params.size(); ++i)
        params_[d.params[i]] = "g" + std::to_string(i);
      FuncDef cd{fns_.at(d.name), {}, {}, {}};
      for (const std::string& g : d.params) cd.params.push_back(params_.at(g));
      for (const Clause& c : d.clauses) {
        vars_.clear();
        Clause cc;
        cc.lhs = pattern(c.lhs);
        for (const Let& l : c.lets) {
          Let cl;
          cl.arg = pattern(l.arg);
          cl.bound = pattern(l.bound);
          cl.callee.fn = ref(l.callee.fn);
          for (const FnName& s : l.callee.statics) cl.callee.statics.push_back(ref(s));
          cc.lets.push_back(std::move(cl));
        }
        cc.out = pattern(c.out);
        cd.clauses.push_back(std::move(cc));
      }
      out.defs.push_back(std::move(cd));
    }
    return out;
  }

 private:
  FnName ref(const FnName& f) {
    if (auto it = params_.find(f.name); it != params_.end()) return {it->second, f.dagger};
    if (auto it = fns_.find(f.name); it != fns_.end()) return {it->second, f.dagger};
    return f;
  }

  // variables are numbered in binding order: head, then each let in turn
  Pattern pattern(const Pattern& p) {
    if (p.is_var) {
      auto [it, fresh] = vars_.emplace(p.name, "v" + std::to_string(vars_.size()));
      return Pattern::var(it->second);
    }
    Pattern out = Pattern::make(p.ctor);
    out.name = p.name;
    for (const Pattern& a : p.args) out.args.push_back(pattern(a));
    return out;
  }

  std::map<std::string, std::string> fns_;
  std::map<std::string, std::string> params_;
  std::map<std::string, std::string> vars_;
};

}  // namespace detail

/// Renames functions by definition order, parameters by position and
/// variables by order of first occurrence within each clause.
inline Program canonical(const Program& p) { return detail::Canonicalizer(p).run(p); }

inline bool alpha_equivalent(const Program& a, const Program& b) {
  return canonical(a) == canonical(b);
}

}  // namespace dagfix::rvl

#endif
