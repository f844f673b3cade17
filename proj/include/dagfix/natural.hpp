#ifndef DAGFIX_NATURAL_HPP
#define DAGFIX_NATURAL_HPP

#include <functional>
#include <string>
#include <vector>

#include "dagfix/laws.hpp"
#include "dagfix/monoidal.hpp"
#include "dagfix/param_functional.hpp"
#include "dagfix/report.hpp"
#include "dagfix/trace.hpp"

namespace dagfix {

/// A dagger endofunctor: the identity, or X ↦ X⊎A with f ↦ f⊎id_A.
struct Functor {
  enum class Kind { identity, disjoint_union };

  Kind kind = Kind::identity;
  FinObject a;

  static Functor identity() { return {}; }
  static Functor disjoint_union_with(FinObject a) { return {Kind::disjoint_union, std::move(a)}; }

  FinObject on_object(const FinObject& x) const {
    return kind == Kind::identity ? x : disjoint_union(x, a);
  }
  Morphism on_morphism(const Morphism& f) const {
    if (kind == Kind::identity) return f;
    return direct_sum(f, dagfix::identity(f.category(), a));
  }
  HomSpace on_space(Category c, const FinObject& x, const FinObject& y) const {
    return {c, on_object(x), on_object(y)};
  }

  friend bool operator==(const Functor&, const Functor&) = default;
};

inline std::string to_string(const Functor& f) {
  if (f.kind == Functor::Kind::identity) return "Identity";
  return "DisjointUnionWith(" + to_string(f.a) + ")";
}

/// α_{X,Y} : C(FX,FY) × C(GX,GY) → C(HX,HY). Families that ignore their
/// parameter set uses_parameter = false; pfix is only meaningful when H = F.
struct NaturalFamily {
  std::string name;
  Category category = Category::rel;
  Functor F;
  Functor G;
  Functor H;
  bool uses_parameter = true;
  std::function<ParamFunctionalExpr(const FinObject&, const FinObject&)> component;

  ParamFunctionalExpr at(const FinObject& x, const FinObject& y) const {
    ParamFunctionalExpr e = component(x, y);
    if (!(e.x_space() == F.on_space(category, x, y)) ||
        !(e.p_space() == G.on_space(category, x, y)) || !(e.space() == H.on_space(category, x, y)))
      throw DimensionMismatch("family " + name + " component at (" + to_string(x) + "," +
                              to_string(y) + ") has the wrong hom-spaces");
    return e;
  }

  bool has_fixed_points() const { return F == H; }
};

namespace families {

inline NaturalFamily join(Category c, const Functor& f = Functor::identity()) {
  return {"join", c, f, f, f, true, [c, f](const FinObject& x, const FinObject& y) {
            const HomSpace s = f.on_space(c, x, y);
            using P = ParamFunctionalExpr;
            return P::join_of(P::arg_x(s, s), P::arg_p(s, s));
          }};
}

inline NaturalFamily projection(Category c, const Functor& f = Functor::identity()) {
  return {"projection", c, f, f, f, true, [c, f](const FinObject& x, const FinObject& y) {
            const HomSpace s = f.on_space(c, x, y);
            return ParamFunctionalExpr::arg_p(s, s);
          }};
}

inline NaturalFamily identity(Category c, const Functor& f = Functor::identity()) {
  return {"identity", c, f, f, f, false, [c, f](const FinObject& x, const FinObject& y) {
            const HomSpace s = f.on_space(c, x, y);
            return ParamFunctionalExpr::arg_x(s, s);
          }};
}

/// α(h) = c∘h, defined on components whose target is c's object.
inline NaturalFamily left_constant(const Morphism& c) {
  const Category cat = c.category();
  return {"left-constant", cat, Functor::identity(), Functor::identity(), Functor::identity(),
          false, [c, cat](const FinObject& x, const FinObject& y) {
            const HomSpace s{cat, x, y};
            return ParamFunctionalExpr::postcompose(c, ParamFunctionalExpr::arg_x(s, s));
          }};
}

/// Tr^U as a family C(X⊎U, Y⊎U) → C(X,Y).
inline NaturalFamily trace(Category c, const FinObject& u) {
  const Functor f = Functor::disjoint_union_with(u);
  return {"trace", c, f, f, Functor::identity(), false,
          [c, f, u](const FinObject& x, const FinObject& y) {
            const HomSpace in = f.on_space(c, x, y);
            const HomSpace out{c, x, y};
            const FunctionalExpr tr = FunctionalExpr::host(
                "trace", in, out,
                [x, y, u](const Morphism& h) { return dagfix::trace(h, x, y, u); });
            return ParamFunctionalExpr::apply(tr, ParamFunctionalExpr::arg_x(in, in));
          }};
}

}  // namespace families

namespace detail {

// PInj has only compatible joins; instances that need a missing join are skipped.
template <class Body>
void guarded(LawReport& r, Body&& body) {
  try {
    body();
  } catch (const IncompatibleJoin&) {
    ++r.skipped;
  }
}

}  // namespace detail

struct NaturalityConfig {
  std::size_t fuel = 10;
  bool check_family_square = true;  // the square for the family itself
  std::size_t enumeration_cap = kDefaultEnumerationCap;
};

/// For every enumerated g : X' → X, f : Y → Y', h ∈ C(FX,FY), p ∈ C(GX,GY):
///  (i)   α_{X',Y'}(Ff∘h∘Fg, Gf∘p∘Gg) = Hf∘α_{X,Y}(h,p)∘Hg
///  (ii)  αⁿ_{X',Y'}(⊥, Gf∘p∘Gg) = Ff∘αⁿ_{X,Y}(⊥,p)∘Fg for n ≤ fuel
///  (iii) (pfix α_{X',Y'})(Gf∘p∘Gg) = Ff∘(pfix α_{X,Y})(p)∘Fg
/// (ii) and (iii) run only when the family has fixed points (H = F).
inline LawReport check_naturality(const NaturalFamily& fam, const FinObject& x,
                                  const FinObject& x2, const FinObject& y, const FinObject& y2,
                                  const FixPolicy& policy, const NaturalityConfig& cfg = {}) {
  LawReport r;
  r.suite = "naturality";
  ScopedTimer timer(r);
  const Category c = fam.category;
  auto homs_between = [&](const FinObject& a, const FinObject& b) {
    return enumerate_homs(c, a, b, cfg.enumeration_cap);
  };
  const ParamFunctionalExpr alpha = fam.at(x, y);
  const ParamFunctionalExpr alpha2 = fam.at(x2, y2);
  const std::vector<Morphism> fs = homs_between(y, y2);
  const std::vector<Morphism> gs = homs_between(x2, x);
  const std::vector<Morphism> hs = homs_between(fam.F.on_object(x), fam.F.on_object(y));
  const std::vector<Morphism> ps = fam.uses_parameter
                                       ? homs_between(fam.G.on_object(x), fam.G.on_object(y))
                                       : std::vector<Morphism>{bottom(alpha.p_space())};
  const Morphism bottom2 = bottom(alpha2.x_space());

  // αⁿ_{X,Y}(⊥, p) for n = 0..fuel, and pfix, once per parameter.
  std::vector<std::vector<Morphism>> approximants;
  std::vector<Morphism> fixed;
  if (fam.has_fixed_points()) {
    for (const Morphism& p : ps) {
      std::vector<Morphism> chain{bottom(alpha.x_space())};
      for (std::size_t n = 0; n < cfg.fuel; ++n) chain.push_back(evaluate(alpha, chain.back(), p));
      approximants.push_back(std::move(chain));
      fixed.push_back(pfix_functional(alpha, p, policy).value);
    }
  }

  // F and G must be dagger functors on the morphisms that move the squares.
  for (const auto* side : {&fs, &gs})
    for (const Morphism& m : *side)
      for (const Functor* fun : {&fam.F, &fam.G})
        r.expect(fun->on_morphism(dagger(m)) == dagger(fun->on_morphism(m)), "functor-dagger",
                 [&] { return to_string(*fun) + " " + detail::show({{"m", &m}}); });

  // components are well typed by construction, so the checked evaluate is skipped
  auto eval = [](const ParamFunctionalExpr& e, const Morphism& h, const Morphism& p) {
    return detail::evaluate_unchecked(e, h, p, kDefaultTolerance);
  };
  auto map_all = [](const std::vector<Morphism>& ms, const Morphism& l, const Morphism& rt) {
    std::vector<Morphism> out;
    out.reserve(ms.size());
    for (const Morphism& m : ms) out.push_back(compose(l, compose(m, rt)));
    return out;
  };
  for (const Morphism& f : fs) {
    const Morphism Ff = fam.F.on_morphism(f), Gf = fam.G.on_morphism(f), Hf = fam.H.on_morphism(f);
    for (const Morphism& g : gs) {
      const Morphism Fg = fam.F.on_morphism(g), Gg = fam.G.on_morphism(g);
      const std::vector<Morphism> moved_p = map_all(ps, Gf, Gg);
      if (cfg.check_family_square) {
        const Morphism Hg = fam.H.on_morphism(g);
        const std::vector<Morphism> moved_h = map_all(hs, Ff, Fg);
        for (std::size_t i = 0; i < hs.size(); ++i)
          for (std::size_t j = 0; j < ps.size(); ++j)
            detail::guarded(r, [&] {
              const Morphism lhs = eval(alpha2, moved_h[i], moved_p[j]);
              const Morphism rhs = compose(Hf, compose(eval(alpha, hs[i], ps[j]), Hg));
              r.expect(lhs == rhs, "family-square", [&] {
                return fam.name + " " +
                       detail::show({{"f", &f}, {"g", &g}, {"h", &hs[i]}, {"p", &ps[j]}});
              });
            });
      }
      if (!fam.has_fixed_points()) continue;
      for (std::size_t k = 0; k < ps.size(); ++k) {
        const Morphism& p2 = moved_p[k];
        Morphism xn = bottom2;
        for (std::size_t n = 0; n <= cfg.fuel; ++n) {
          if (n > 0) xn = eval(alpha2, xn, p2);
          const Morphism rhs = compose(Ff, compose(approximants[k][n], Fg));
          r.expect(xn == rhs, "approximant-square", [&] {
            return fam.name + " n=" + std::to_string(n) + " " +
                   detail::show({{"f", &f}, {"g", &g}, {"p", &ps[k]}});
          });
        }
        const Morphism lhs = pfix_functional(alpha2, p2, policy).value;
        const Morphism rhs = compose(Ff, compose(fixed[k], Fg));
        r.expect(lhs == rhs, "pfix-square", [&] {
          return fam.name + " " + detail::show({{"f", &f}, {"g", &g}, {"p", &ps[k]}});
        });
      }
    }
  }
  return r;
}

/// Both characterizations of self-conjugacy, pointwise:
///   dagger-preservation  α_{X,Y}(h,p)† = α_{Y,X}(h†,p†)
///   self-conjugate       α_{X,Y}(h,p)  = conj(α_{Y,X})(h,p)
/// and that the two verdicts agree at every point.
inline LawReport check_self_conjugate(const NaturalFamily& fam, const FinObject& x,
                                      const FinObject& y,
                                      std::size_t cap = kDefaultEnumerationCap) {
  LawReport r;
  r.suite = "self-conjugate";
  ScopedTimer timer(r);
  const Category c = fam.category;
  const ParamFunctionalExpr alpha = fam.at(x, y);
  const ParamFunctionalExpr alpha_yx = fam.at(y, x);
  const ParamFunctionalExpr conj_yx = conj(alpha_yx);
  const std::vector<Morphism> hs =
      enumerate_homs(c, fam.F.on_object(x), fam.F.on_object(y), cap);
  const std::vector<Morphism> ps =
      fam.uses_parameter ? enumerate_homs(c, fam.G.on_object(x), fam.G.on_object(y), cap)
                         : std::vector<Morphism>{bottom(alpha.p_space())};
  for (const Morphism& h : hs)
    for (const Morphism& p : ps)
      detail::guarded(r, [&] {
        const Morphism a = evaluate(alpha, h, p);
        const bool preserves = dagger(a) == evaluate(alpha_yx, dagger(h), dagger(p));
        const bool conjugate = a == evaluate(conj_yx, h, p);
        auto witness = [&] { return fam.name + " " + detail::show({{"h", &h}, {"p", &p}}); };
        r.expect(preserves, "dagger-preservation", witness);
        r.expect(conjugate, "self-conjugate", witness);
        r.expect(preserves == conjugate, "characterizations-agree", witness);
      });
  return r;
}

}  // namespace dagfix

#endif
