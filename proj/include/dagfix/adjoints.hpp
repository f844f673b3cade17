#ifndef DAGFIX_ADJOINTS_HPP
#define DAGFIX_ADJOINTS_HPP

#include <span>
#include <vector>

#include "dagfix/param_functional.hpp"
#include "dagfix/random.hpp"
#include "dagfix/report.hpp"

namespace dagfix {

/// Parameters to sweep: every element of an enumerable space, otherwise
/// `samples` seeded draws (DStoch).
inline std::vector<Morphism> parameter_sweep(const HomSpace& s, Rng* rng = nullptr,
                                             std::size_t samples = 0,
                                             std::size_t cap = kDefaultEnumerationCap) {
  if (s.category != Category::dstoch) return enumerate_homs(s.category, s.src, s.dst, cap);
  if (rng == nullptr) throw std::invalid_argument("dstoch parameters need a seeded generator");
  if (s.src.size != s.dst.size) throw DimensionMismatch("dstoch hom-sets are square");
  std::vector<Morphism> out;
  out.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) out.emplace_back(random_stoch(*rng, s.src.size));
  return out;
}

/// fix(φ̄) = (fix φ)†.
inline LawReport check_fixed_point_adjoint(const FunctionalExpr& phi, const FixPolicy& policy,
                                           double tolerance = kDefaultTolerance) {
  LawReport r;
  r.suite = "fix-adjoint";
  const Morphism lhs = fix_functional(conj(phi), policy, tolerance).value;
  const Morphism rhs = dagger(fix_functional(phi, policy, tolerance).value);
  r.expect(equivalent(lhs, rhs, tolerance), "fix-conj", [&] {
    return "phi=" + to_string(phi) + " fix(conj)=" + to_string(lhs) + " fix^dagger=" +
           to_string(rhs);
  });
  return r;
}

/// (pfix ψ)(p)† = (pfix ψ̄)(p†) at every given parameter.
inline LawReport check_pfix_adjoint(const ParamFunctionalExpr& psi,
                                    std::span<const Morphism> parameters,
                                    const FixPolicy& policy,
                                    double tolerance = kDefaultTolerance) {
  LawReport r;
  r.suite = "pfix-adjoint";
  const ParamFunctionalExpr cpsi = conj(psi);
  for (const Morphism& p : parameters) {
    const Morphism lhs = dagger(pfix_functional(psi, p, policy, tolerance).value);
    const Morphism rhs = pfix_functional(cpsi, dagger(p), policy, tolerance).value;
    r.expect(equivalent(lhs, rhs, tolerance), "pfix-conj", [&] {
      return "psi=" + to_string(psi) + " p=" + to_string(p) + " lhs=" + to_string(lhs) +
             " rhs=" + to_string(rhs);
    });
  }
  return r;
}

/// pfix ψ = ψ∘⟨pfix ψ, id⟩, pointwise.
inline LawReport check_pfix_identity(const ParamFunctionalExpr& psi,
                                     std::span<const Morphism> parameters,
                                     const FixPolicy& policy,
                                     double tolerance = kDefaultTolerance) {
  LawReport r;
  r.suite = "pfix-identity";
  for (const Morphism& p : parameters) {
    const Morphism fp = pfix_functional(psi, p, policy, tolerance).value;
    const Morphism again = evaluate(psi, fp, p, tolerance);
    r.expect(equivalent(fp, again, tolerance), "pfix-identity", [&] {
      return "psi=" + to_string(psi) + " p=" + to_string(p) + " pfix=" + to_string(fp) +
             " psi(pfix,p)=" + to_string(again);
    });
  }
  return r;
}

/// The fixed-point functional p ↦ (pfix ψ)(p) as a one-argument functional.
inline FunctionalExpr pfix_as_functional(const ParamFunctionalExpr& psi, const FixPolicy& policy,
                                         double tolerance = kDefaultTolerance) {
  return FunctionalExpr::host("pfix", psi.p_space(), psi.x_space(),
                              [psi, policy, tolerance](const Morphism& p) {
                                return pfix_functional(psi, p, policy, tolerance).value;
                              });
}

/// conj(pfix ψ) = pfix(ψ̄), compared at h = p† for every given parameter p.
inline LawReport check_conj_preservation(const ParamFunctionalExpr& psi,
                                         std::span<const Morphism> parameters,
                                         const FixPolicy& policy,
                                         double tolerance = kDefaultTolerance) {
  LawReport r;
  r.suite = "conj-pfix";
  const FunctionalExpr conj_of_fix = conj(pfix_as_functional(psi, policy, tolerance));
  const FunctionalExpr fix_of_conj = pfix_as_functional(conj(psi), policy, tolerance);
  for (const Morphism& p : parameters) {
    const Morphism h = dagger(p);
    const Morphism lhs = apply(conj_of_fix, h, tolerance);
    const Morphism rhs = apply(fix_of_conj, h, tolerance);
    r.expect(equivalent(lhs, rhs, tolerance), "conj-pfix", [&] {
      return "psi=" + to_string(psi) + " h=" + to_string(h) + " lhs=" + to_string(lhs) +
             " rhs=" + to_string(rhs);
    });
  }
  return r;
}

}  // namespace dagfix

#endif
