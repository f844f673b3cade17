#ifndef DAGFIX_FUNCTIONAL_LAWS_HPP
#define DAGFIX_FUNCTIONAL_LAWS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "dagfix/adjoints.hpp"
#include "dagfix/laws.hpp"
#include "dagfix/natural.hpp"
#include "dagfix/random_exprs.hpp"
#include "dagfix/trace.hpp"

namespace dagfix {

inline const std::vector<std::string>& functional_suites() {
  static const std::vector<std::string> names{
      "conj",       "fix-adjoint",    "pfix-adjoint", "pfix-identity",
      "conj-pfix",  "naturality",     "self-conjugate", "dagger-trace"};
  return names;
}

namespace detail {

inline constexpr std::size_t kAttemptsPerTrial = 20;
inline constexpr std::size_t kStochSamples = 16;

// Random trees whose evaluation hits a missing join (PInj) or leaves the
// subnormalized matrices (DStoch) are skipped rather than failed.
template <class Body>
void run_trials(const LawConfig& cfg, Category c, LawReport& r, Body&& body) {
  const std::size_t attempts = cfg.trials * kAttemptsPerTrial;
  std::size_t done = 0;
  for (std::size_t k = 0; k < attempts && done < cfg.trials; ++k) {
    LawReport local;
    try {
      body(local);
    } catch (const IncompatibleJoin&) {
      ++r.skipped;
      continue;
    } catch (const InvalidMorphism&) {
      if (c != Category::dstoch) throw;
      ++r.skipped;
      continue;
    } catch (const NonConvergence&) {
      if (c != Category::dstoch) throw;
      ++r.skipped;
      continue;
    }
    r.merge(local);
    ++done;
  }
}

inline std::vector<Morphism> inputs(const HomSpace& s, Rng& rng, std::size_t cap) {
  return parameter_sweep(s, &rng, kStochSamples, cap);
}

inline void conj_trials(Category c, const LawConfig& cfg, Rng& rng, LawReport& r) {
  ExprGenerator gen(c, rng, cfg.min_size, cfg.max_size, cfg.enumeration_cap);
  const double tol = cfg.tolerance;
  run_trials(cfg, c, r, [&](LawReport& local) {
    gen.reshuffle();
    const HomSpace dom = gen.space();
    const HomSpace cod = gen.space();
    const FunctionalExpr phi = gen.functional(dom, cod, cfg.max_depth);
    const FunctionalExpr cphi = conj(phi);
    local.expect(conj(cphi) == phi, "conj-involution-syntactic",
                 [&] { return "phi=" + to_string(phi); });
    for (const Morphism& h : inputs(dom.flipped(), rng, cfg.enumeration_cap)) {
      const Morphism lhs = apply(cphi, h, tol);
      const Morphism rhs = dagger(apply(phi, dagger(h), tol));
      local.expect(equivalent(lhs, rhs, tol), "conj-definition", [&] {
        return "phi=" + to_string(phi) + " h=" + to_string(h);
      });
    }
    for (const Morphism& h : inputs(dom, rng, cfg.enumeration_cap))
      local.expect(equivalent(apply(conj(cphi), h, tol), apply(phi, h, tol), tol),
                   "conj-involution",
                   [&] { return "phi=" + to_string(phi) + " h=" + to_string(h); });
  });
}

inline void fix_adjoint_trials(Category c, const LawConfig& cfg, Rng& rng, LawReport& r) {
  ExprGenerator gen(c, rng, cfg.min_size, cfg.max_size, cfg.enumeration_cap);
  const FixPolicy policy = default_policy(c, cfg.tolerance);
  run_trials(cfg, c, r, [&](LawReport& local) {
    gen.reshuffle();
    const HomSpace s = gen.space();
    const FunctionalExpr phi = gen.functional(s, s, cfg.max_depth);
    local.merge(check_fixed_point_adjoint(phi, policy, cfg.tolerance));
  });
}

inline void pfix_trials(Category c, std::string_view suite, const LawConfig& cfg, Rng& rng,
                        LawReport& r) {
  ExprGenerator gen(c, rng, cfg.min_size, cfg.max_size, cfg.enumeration_cap);
  const FixPolicy policy = default_policy(c, cfg.tolerance);
  run_trials(cfg, c, r, [&](LawReport& local) {
    gen.reshuffle();
    // parameters range over the largest square hom-set so sweeps stay exhaustive
    const FinObject big = c == Category::dstoch ? gen.object() : FinObject{cfg.max_size};
    const HomSpace ps{c, big, big};
    const HomSpace xs = gen.space();
    const ParamFunctionalExpr psi = gen.param(xs, ps, xs, cfg.max_depth);
    const std::vector<Morphism> params = inputs(ps, rng, cfg.enumeration_cap);
    if (suite == "pfix-adjoint")
      local.merge(check_pfix_adjoint(psi, params, policy, cfg.tolerance));
    else if (suite == "pfix-identity")
      local.merge(check_pfix_identity(psi, params, policy, cfg.tolerance));
    else
      local.merge(check_conj_preservation(psi, params, policy, cfg.tolerance));
  });
}

inline void require_enumerable(Category c, std::string_view suite) {
  if (c == Category::dstoch)
    throw std::invalid_argument(std::string(suite) + " needs enumerable hom-sets (rel or pinj)");
}

}  // namespace detail

/// Runs one named suite over functionals. Randomized suites need cfg.seed;
/// the naturality, self-conjugacy and trace suites are exhaustive.
inline LawReport functional_law_suite(Category c, std::string_view suite, const LawConfig& cfg) {
  LawReport r;
  r.suite = std::string(suite);
  ScopedTimer timer(r);
  const bool randomized = suite == "conj" || suite == "fix-adjoint" || suite == "pfix-adjoint" ||
                          suite == "pfix-identity" || suite == "conj-pfix";
  if (randomized) {
    if (!cfg.seed) throw std::invalid_argument("suite " + std::string(suite) + " needs a seed");
    Rng rng(*cfg.seed);
    if (suite == "conj")
      detail::conj_trials(c, cfg, rng, r);
    else if (suite == "fix-adjoint")
      detail::fix_adjoint_trials(c, cfg, rng, r);
    else
      detail::pfix_trials(c, suite, cfg, rng, r);
    return r;
  }

  detail::require_enumerable(c, suite);
  const FixPolicy policy = FixPolicy::exact();
  if (suite == "naturality") {
    NaturalityConfig ncfg;
    ncfg.fuel = cfg.fuel;
    ncfg.enumeration_cap = cfg.enumeration_cap;
    for (const Functor& fun : {Functor::identity(), Functor::disjoint_union_with(FinObject{1})})
      for (const NaturalFamily& fam : {families::join(c, fun), families::projection(c, fun)})
        for (std::size_t x = cfg.min_size; x <= cfg.max_size; ++x)
          for (std::size_t y = cfg.min_size; y <= cfg.max_size; ++y)
            for (std::size_t x2 = cfg.min_size; x2 <= cfg.max_size; ++x2)
              for (std::size_t y2 = cfg.min_size; y2 <= cfg.max_size; ++y2)
                r.merge(check_naturality(fam, FinObject{x}, FinObject{x2}, FinObject{y},
                                         FinObject{y2}, policy, ncfg));
  } else if (suite == "self-conjugate") {
    for (std::size_t x = cfg.min_size; x <= cfg.max_size; ++x)
      for (std::size_t y = cfg.min_size; y <= cfg.max_size; ++y)
        for (const NaturalFamily& fam : {families::identity(c), families::join(c),
                                         families::projection(c)})
          r.merge(check_self_conjugate(fam, FinObject{x}, FinObject{y}, cfg.enumeration_cap));
    // the trace family lives on (X⊎1, Y⊎1)
    for (std::size_t x = cfg.min_size; x < cfg.max_size; ++x)
      for (std::size_t y = cfg.min_size; y < cfg.max_size; ++y)
        r.merge(check_self_conjugate(families::trace(c, FinObject{1}), FinObject{x}, FinObject{y},
                                     cfg.enumeration_cap));
  } else if (suite == "dagger-trace") {
    for (std::size_t u = 1; u <= cfg.max_size; ++u) {
      TraceCheckConfig tcfg;
      tcfg.u = u;
      tcfg.dinaturality = true;
      tcfg.enumeration_cap = cfg.enumeration_cap;
      if (c == Category::rel && u > 1) tcfg.max_side = 1;
      r.merge(check_dagger_trace(c, tcfg));
    }
  } else {
    throw std::invalid_argument("unknown functional suite " + std::string(suite));
  }
  r.suite = std::string(suite);
  return r;
}

}  // namespace dagfix

#endif
