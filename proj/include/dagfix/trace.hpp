#ifndef DAGFIX_TRACE_HPP
#define DAGFIX_TRACE_HPP

#include "dagfix/hom_domain.hpp"
#include "dagfix/laws.hpp"
#include "dagfix/monoidal.hpp"
#include "dagfix/report.hpp"

namespace dagfix {

namespace detail {

inline void require_blocks(const Morphism& f, const FinObject& x, const FinObject& y,
                           const FinObject& u) {
  if (f.src().size != x.size + u.size || f.dst().size != y.size + u.size)
    throw DimensionMismatch("trace: " + to_string(f.space()) + " is not X+U -> Y+U for X=" +
                            to_string(x) + " Y=" + to_string(y) + " U=" + to_string(u));
}

// Tr(f) = f_XY ∪ f_UY∘S with S the least solution of S = f_XU ∪ f_UU∘S.
inline RelMorphism rel_trace(const RelMorphism& f, const FinObject& x, const FinObject& y,
                             const FinObject& u) {
  const RelMorphism fxy = block(f, 0, x, 0, y);
  const RelMorphism fxu = block(f, 0, x, y.size, u);
  const RelMorphism fuy = block(f, x.size, u, 0, y);
  const RelMorphism fuu = block(f, x.size, u, y.size, u);
  const HomSpace loop{Category::rel, x, u};
  const Morphism s =
      kleene_fix(
          [&](const Morphism& acc) {
            return Morphism(join(fxu, compose(fuu, acc.as<RelMorphism>())));
          },
          hom_domain(loop), FixPolicy::exact(u.size * x.size + 2))
          .value;
  return join(fxy, compose(fuy, s.as<RelMorphism>()));
}

}  // namespace detail

/// Tr^U_{X,Y}(f) = f_XY ∨ ⋁ₙ f_UY∘f_UUⁿ∘f_XU for f : X⊎U → Y⊎U, with X (resp. Y)
/// occupying the first indices. In PInj an orbit that cycles inside U without
/// exiting leaves its input undefined.
inline Morphism trace(const Morphism& f, const FinObject& x, const FinObject& y,
                      const FinObject& u) {
  detail::require_blocks(f, x, y, u);
  switch (f.category()) {
    case Category::rel:
      return detail::rel_trace(f.as<RelMorphism>(), x, y, u);
    case Category::pinj:
      return pinj_from_rel(detail::rel_trace(to_rel(f.as<PInjMorphism>()), x, y, u));
    case Category::dstoch:
      break;
  }
  throw Unsupported("trace is provided for rel and pinj only");
}

struct TraceCheckConfig {
  std::size_t x = 1;
  std::size_t y = 1;
  std::size_t u = 1;
  std::size_t max_side = 2;      // objects X', Y' in the naturality squares
  bool dinaturality = false;     // sliding u : U' → U through the loop
  std::size_t enumeration_cap = kDefaultEnumerationCap;
};

/// Tr(f)† = Tr(f†) over every f : X⊎U → Y⊎U, then naturality in X and Y
/// (and optionally dinaturality in U) over enumerated squares.
inline LawReport check_dagger_trace(Category c, const TraceCheckConfig& cfg) {
  LawReport r;
  r.suite = "dagger-trace";
  ScopedTimer timer(r);
  detail::HomCache homs(c, cfg.enumeration_cap);
  const FinObject x{cfg.x};
  const FinObject y{cfg.y};
  const FinObject u{cfg.u};
  const Morphism id_u = identity(c, u);

  for (const Morphism& f : homs(cfg.x + cfg.u, cfg.y + cfg.u)) {
    const Morphism lhs = dagger(trace(f, x, y, u));
    const Morphism rhs = trace(dagger(f), y, x, u);
    r.expect(lhs == rhs, "dagger-trace", [&] {
      return detail::show({{"f", &f}, {"Tr(f)^dagger", &lhs}, {"Tr(f^dagger)", &rhs}});
    });
  }

  for (std::size_t x2 = 1; x2 <= cfg.max_side; ++x2)
    for (std::size_t y2 = 1; y2 <= cfg.max_side; ++y2)
      for (const Morphism& f : homs(cfg.x + cfg.u, cfg.y + cfg.u)) {
        const Morphism tf = trace(f, x, y, u);
        for (const Morphism& h : homs(x2, cfg.x))
          for (const Morphism& g : homs(cfg.y, y2)) {
            const Morphism inner = compose(direct_sum(g, id_u), compose(f, direct_sum(h, id_u)));
            const Morphism lhs = trace(inner, FinObject{x2}, FinObject{y2}, u);
            const Morphism rhs = compose(g, compose(tf, h));
            r.expect(lhs == rhs, "trace-naturality", [&] {
              return detail::show({{"f", &f}, {"g", &g}, {"h", &h}});
            });
          }
      }

  if (cfg.dinaturality) {
    const Morphism id_x = identity(c, x);
    const Morphism id_y = identity(c, y);
    for (std::size_t u2 = 1; u2 <= cfg.u; ++u2)
      for (const Morphism& f : homs(cfg.x + cfg.u, cfg.y + u2))
        for (const Morphism& slide : homs(u2, cfg.u)) {
          const Morphism lhs = trace(compose(direct_sum(id_y, slide), f), x, y, u);
          const Morphism rhs = trace(compose(f, direct_sum(id_x, slide)), x, y, FinObject{u2});
          r.expect(lhs == rhs, "trace-dinaturality", [&] {
            return detail::show({{"f", &f}, {"u", &slide}});
          });
        }
  }
  return r;
}

}  // namespace dagfix

#endif
