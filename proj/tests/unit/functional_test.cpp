#include <gtest/gtest.h>

#include <set>
#include <utility>
#include <vector>

#include "dagfix/functional_laws.hpp"

using namespace dagfix;

namespace {

using PairSet = std::set<std::pair<std::size_t, std::size_t>>;
using F = FunctionalExpr;
using P = ParamFunctionalExpr;

const FinObject k1{1};
const FinObject k2{2};
const FinObject k3{3};

Morphism rel(std::size_t n, std::size_t m, std::vector<std::pair<std::size_t, std::size_t>> pairs) {
  return RelMorphism(FinObject{n}, FinObject{m}, pairs);
}

PairSet as_set(const Morphism& m) {
  auto p = m.as<RelMorphism>().pairs();
  return {p.begin(), p.end()};
}

PairSet compose_sets(const PairSet& g, const PairSet& f) {
  PairSet out;
  for (auto [x, y] : f)
    for (auto [y2, z] : g)
      if (y == y2) out.emplace(x, z);
  return out;
}

PairSet converse(const PairSet& s) {
  PairSet out;
  for (auto [a, b] : s) out.emplace(b, a);
  return out;
}

PairSet reachability(std::size_t n, const PairSet& edges) {
  PairSet out;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack{s};
    std::vector<bool> seen(n, false);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (auto [a, b] : edges)
        if (a == u && !seen[b]) {
          seen[b] = true;
          out.emplace(s, b);
          stack.push_back(b);
        }
    }
  }
  return out;
}

// Follows x through the loop of a partial injection X⊎U → Y⊎U.
std::optional<std::size_t> orbit(const PInjMorphism& f, std::size_t nx, std::size_t ny,
                                 std::size_t nu, std::size_t x) {
  std::optional<std::size_t> at = f(x);
  for (std::size_t steps = 0; steps <= nu; ++steps) {
    if (!at) return std::nullopt;
    if (*at < ny) return at;
    at = f(nx + (*at - ny));
  }
  return std::nullopt;  // cycled inside U
}

// Relational trace by search over loop states.
PairSet rel_trace_oracle(const PairSet& f, std::size_t nx, std::size_t ny, std::size_t nu) {
  PairSet out;
  for (std::size_t x = 0; x < nx; ++x) {
    std::set<std::size_t> seen;
    std::vector<std::size_t> frontier{x};
    while (!frontier.empty()) {
      const std::size_t s = frontier.back();
      frontier.pop_back();
      for (auto [a, b] : f) {
        if (a != s) continue;
        if (b < ny) {
          out.emplace(x, b);
        } else {
          const std::size_t loop_src = nx + (b - ny);
          if (seen.insert(loop_src).second) frontier.push_back(loop_src);
        }
      }
    }
  }
  (void)nu;
  return out;
}

LawConfig seeded(std::uint64_t seed, std::size_t lo, std::size_t hi, std::size_t trials) {
  LawConfig cfg;
  cfg.seed = seed;
  cfg.min_size = lo;
  cfg.max_size = hi;
  cfg.trials = trials;
  return cfg;
}

const HomSpace kRel33{Category::rel, k3, k3};
const HomSpace kRel22{Category::rel, k2, k2};

F transitive_closure(const Morphism& r) {
  return F::seq(F::postcompose(r, r.src()), F::join_with(r));
}

}  // namespace

TEST(Apply, Examples) {
  const Morphism m = rel(2, 2, {{1, 1}});
  for (const auto& h : enumerate_homs(Category::rel, k2, k2))
    EXPECT_EQ(apply(F::constant(kRel22, m), h), m);

  const Morphism r = rel(3, 3, {{1, 2}});
  const Morphism h = rel(3, 3, {{0, 1}});
  EXPECT_EQ(as_set(apply(F::postcompose(r, k3), h)), compose_sets(as_set(r), as_set(h)));
  EXPECT_EQ(as_set(apply(F::postcompose(r, k3), h)), (PairSet{{0, 2}}));
  EXPECT_EQ(apply(F::dagger(kRel22), rel(2, 2, {{0, 1}})), rel(2, 2, {{1, 0}}));
}

TEST(Apply, TypeErrors) {
  EXPECT_THROW(apply(F::identity(kRel22), rel(3, 3, {})), DimensionMismatch);
  EXPECT_THROW(F::seq(F::dagger({Category::rel, k2, k3}), F::identity({Category::rel, k2, k3})),
               DimensionMismatch);
  EXPECT_THROW(F::join_with(StochMorphism::square(1, {{0.1}})), Unsupported);
  EXPECT_THROW(F::add_with(rel(1, 1, {})), Unsupported);
  const HomSpace pinj22{Category::pinj, k2, k2};
  const F clash = F::join_with(PInjMorphism(k2, k2, {{0, 0}}));
  EXPECT_THROW(apply(clash, PInjMorphism(k2, k2, {{0, 1}})), IncompatibleJoin);
  (void)pinj22;
}

TEST(Apply, DaggerFlipsSpace) {
  const HomSpace s{Category::rel, k2, k3};
  EXPECT_EQ(F::dagger(s).cod(), s.flipped());
  EXPECT_EQ(conj(F::dagger(s)).dom(), s.flipped());
}

TEST(Conj, ConstantIsDaggered) {
  const Morphism m = rel(2, 2, {{0, 1}});
  const F c = conj(F::constant(kRel22, m));
  EXPECT_EQ(c, F::constant(kRel22, dagger(m)));
  for (const auto& h : enumerate_homs(Category::rel, k2, k2)) EXPECT_EQ(apply(c, h), dagger(m));
}

TEST(Conj, PostComposeBecomesPreCompose) {
  for (const auto& g : enumerate_homs(Category::rel, k2, k2)) {
    const F c = conj(F::postcompose(g, k2));
    EXPECT_EQ(c.op(), FnOp::precompose);
    for (const auto& h : enumerate_homs(Category::rel, k2, k2)) {
      // (g∘h†)† = h∘g†, with the right side from the set oracle
      EXPECT_EQ(as_set(apply(c, h)), compose_sets(as_set(h), converse(as_set(g))));
    }
  }
}

TEST(Conj, HostIsWrappedAndUnwrapped) {
  const F host = F::host("shift", kRel22, kRel22, [](const Morphism& h) {
    return Morphism(compose(RelMorphism(k2, k2, {{0, 1}}), h.as<RelMorphism>()));
  });
  const F c = conj(host);
  EXPECT_EQ(c.op(), FnOp::conjugated);
  EXPECT_EQ(conj(c), host);
  EXPECT_FALSE(c.is_closed());
  for (const auto& h : enumerate_homs(Category::rel, k2, k2))
    EXPECT_EQ(apply(c, h), dagger(apply(host, dagger(h))));
}

TEST(Conj, SeqPreservesOrder) {
  const Morphism a = rel(2, 3, {{0, 2}, {1, 0}});
  const F phi = F::postcompose(a, k2);              // C(2,2) → C(2,3)
  const F psi = F::dagger({Category::rel, k2, k3});  // C(2,3) → C(3,2)
  const F both = F::seq(phi, psi);
  const F c = conj(both);
  EXPECT_EQ(c, F::seq(conj(phi), conj(psi)));
  for (const auto& h : enumerate_homs(Category::rel, k2, k2))
    EXPECT_EQ(apply(c, h), apply(conj(psi), apply(conj(phi), h)));
}

TEST(FixFunctional, TransitiveClosure) {
  const Morphism r = rel(3, 3, {{0, 1}, {1, 2}});
  const auto result = fix_functional(transitive_closure(r), FixPolicy::exact());
  EXPECT_EQ(as_set(result.value), reachability(3, as_set(r)));
  EXPECT_EQ(as_set(result.value), (PairSet{{0, 1}, {1, 2}, {0, 2}}));
}

TEST(FixFunctional, ConstantAndIdentity) {
  const Morphism m = rel(3, 3, {{2, 2}, {0, 1}});
  EXPECT_EQ(fix_functional(F::constant(kRel33, m), FixPolicy::exact()).value, m);
  EXPECT_EQ(fix_functional(F::identity(kRel33), FixPolicy::exact()).value, bottom(kRel33));
  EXPECT_THROW(fix_functional(F::dagger({Category::rel, k2, k3}), FixPolicy::exact()),
               DomainMismatch);
}

TEST(FixFunctional, StochAffine) {
  const F step = F::seq(F::postcompose(StochMorphism::square(1, {{0.5}}), k1),
                        F::add_with(StochMorphism::square(1, {{0.25}})));
  const auto result = fix_functional(step, FixPolicy::metric(1e-9));
  EXPECT_NEAR(result.value.as<StochMorphism>().at(0, 0), 0.25 / (1 - 0.5), 1e-9);
  EXPECT_LE(result.iterations, 64U);
  const auto adj = check_fixed_point_adjoint(step, FixPolicy::metric(1e-9));
  EXPECT_TRUE(adj.passed());
}

TEST(FixFunctional, StochMatrixAdjoint) {
  // x ↦ a∘x∘b + c with asymmetric a, b, c
  const Morphism a = StochMorphism::square(2, {{0.2, 0.3}, {0.1, 0.4}});
  const Morphism b = StochMorphism::square(2, {{0.5, 0.0}, {0.25, 0.25}});
  const Morphism c = StochMorphism::square(2, {{0.1, 0.2}, {0.0, 0.3}});
  const F step = F::seq(F::seq(F::precompose(b, k2), F::postcompose(a, k2)), F::add_with(c));
  EXPECT_TRUE(check_fixed_point_adjoint(step, FixPolicy::metric(1e-12)).passed());
}

TEST(PfixFunctional, Examples) {
  const Morphism p = rel(3, 3, {{0, 1}});
  EXPECT_EQ(pfix_functional(P::arg_p(kRel33, kRel33), p, FixPolicy::exact()).value, p);

  const Morphism r2 = rel(3, 3, {{1, 2}});
  const P psi = P::join_of(P::arg_p(kRel33, kRel33), P::postcompose(r2, P::arg_x(kRel33, kRel33)));
  EXPECT_EQ(as_set(pfix_functional(psi, p, FixPolicy::exact()).value), (PairSet{{0, 1}, {0, 2}}));

  // ignoring the parameter gives the plain fixed point
  const Morphism r = rel(3, 3, {{0, 1}, {1, 2}});
  const P closure = P::join_with(r, P::postcompose(r, P::arg_x(kRel33, kRel33)));
  for (const auto& q : {p, r, bottom(kRel33)})
    EXPECT_EQ(pfix_functional(closure, q, FixPolicy::exact()).value,
              fix_functional(transitive_closure(r), FixPolicy::exact()).value);
}

TEST(FixedPointAdjoint, TransitiveClosureWitness) {
  const Morphism r = rel(3, 3, {{0, 1}, {1, 2}});
  const F phi = transitive_closure(r);
  const Morphism lhs = fix_functional(conj(phi), FixPolicy::exact()).value;
  EXPECT_EQ(as_set(lhs), (PairSet{{1, 0}, {2, 1}, {2, 0}}));
  EXPECT_EQ(as_set(lhs), converse(reachability(3, as_set(r))));
  EXPECT_TRUE(check_fixed_point_adjoint(phi, FixPolicy::exact()).passed());

  const Morphism m = rel(3, 3, {{0, 2}});
  EXPECT_EQ(fix_functional(conj(F::constant(kRel33, m)), FixPolicy::exact()).value, dagger(m));
}

TEST(PfixAdjoint, ExhaustiveParameterSweep) {
  const std::vector<Morphism> params = enumerate_homs(Category::rel, k2, k2);
  ASSERT_EQ(params.size(), 16U);
  const P proj = P::arg_p(kRel22, kRel22);
  EXPECT_TRUE(check_pfix_adjoint(proj, params, FixPolicy::exact()).passed());
  EXPECT_TRUE(check_conj_preservation(proj, params, FixPolicy::exact()).passed());

  const Morphism r = rel(2, 2, {{0, 1}});
  const P psi = P::join_of(P::arg_p(kRel22, kRel22), P::postcompose(r, P::arg_x(kRel22, kRel22)));
  const auto adj = check_pfix_adjoint(psi, params, FixPolicy::exact());
  EXPECT_TRUE(adj.passed());
  EXPECT_EQ(adj.checked, 16U);
  EXPECT_TRUE(check_conj_preservation(psi, params, FixPolicy::exact()).passed());
  EXPECT_TRUE(check_pfix_identity(psi, params, FixPolicy::exact()).passed());

  // direct oracle: both sides by set iteration
  for (const auto& p : params) {
    PairSet x;
    for (;;) {
      PairSet next = as_set(p);
      for (auto e : compose_sets(as_set(r), x)) next.insert(e);
      if (next == x) break;
      x = next;
    }
    EXPECT_EQ(as_set(pfix_functional(conj(psi), dagger(p), FixPolicy::exact()).value),
              converse(x));
  }
}

TEST(ConjSymbolic, ParamRewriteMatchesDefinition) {
  Rng rng(3);
  ExprGenerator gen(Category::rel, rng, 1, 2);
  const auto params = enumerate_homs(Category::rel, k2, k2);
  for (int t = 0; t < 100; ++t) {
    const HomSpace xs = gen.space();
    const P psi = gen.param(xs, kRel22, xs, 4);
    const P c = conj(psi);
    EXPECT_EQ(conj(c), psi);
    for (const auto& x : enumerate_homs(Category::rel, xs.dst, xs.src))
      for (std::size_t k = 0; k < params.size(); k += 5) {
        const auto& p = params[k];
        EXPECT_EQ(evaluate(c, x, p), dagger(evaluate(psi, dagger(x), dagger(p))))
            << to_string(psi);
      }
  }
}

TEST(RandomSuites, RelAndPInjFixAdjoint) {
  for (Category c : {Category::rel, Category::pinj}) {
    const auto r = functional_law_suite(c, "fix-adjoint", seeded(11, 1, 3, 100));
    EXPECT_TRUE(r.passed()) << (r.violations.empty() ? "" : r.violations[0].witness);
    EXPECT_EQ(r.checked, 100U);
  }
}

TEST(RandomSuites, ParametrizedLaws) {
  for (Category c : {Category::rel, Category::pinj})
    for (const char* s : {"pfix-adjoint", "pfix-identity", "conj-pfix"}) {
      const auto r = functional_law_suite(c, s, seeded(5, 1, 2, 40));
      EXPECT_TRUE(r.passed()) << s << " " << (r.violations.empty() ? "" : r.violations[0].witness);
      EXPECT_GT(r.checked, 0U);
    }
}

TEST(RandomSuites, ConjLaws) {
  for (Category c : {Category::rel, Category::pinj, Category::dstoch}) {
    const auto r = functional_law_suite(c, "conj", seeded(9, 1, 2, 50));
    EXPECT_TRUE(r.passed()) << to_string(c) << " "
                            << (r.violations.empty() ? "" : r.violations[0].witness);
  }
}

TEST(RandomSuites, StochWithinTolerance) {
  for (const char* s : {"fix-adjoint", "pfix-adjoint", "pfix-identity", "conj-pfix"}) {
    const auto r = functional_law_suite(Category::dstoch, s, seeded(13, 1, 3, 30));
    EXPECT_TRUE(r.passed()) << s << " " << (r.violations.empty() ? "" : r.violations[0].witness);
    EXPECT_GT(r.checked, 0U) << s;
  }
}

TEST(RandomSuites, SeedRequiredAndDeterministic) {
  EXPECT_THROW(functional_law_suite(Category::rel, "fix-adjoint", LawConfig{}),
               std::invalid_argument);
  EXPECT_THROW(functional_law_suite(Category::dstoch, "naturality", LawConfig{}),
               std::invalid_argument);
  const auto a = functional_law_suite(Category::pinj, "fix-adjoint", seeded(2, 1, 3, 30));
  const auto b = functional_law_suite(Category::pinj, "fix-adjoint", seeded(2, 1, 3, 30));
  EXPECT_EQ(a.checked, b.checked);
  EXPECT_EQ(a.skipped, b.skipped);
}

TEST(Naturality, JoinAndProjectionFamilies) {
  for (Category c : {Category::rel, Category::pinj})
    for (std::size_t x = 1; x <= 2; ++x)
      for (std::size_t y = 1; y <= 2; ++y) {
        const auto r = check_naturality(families::projection(c), FinObject{x}, k2, FinObject{y},
                                        k1, FixPolicy::exact());
        EXPECT_TRUE(r.passed());
        EXPECT_GT(r.checked_by_law.at("pfix-square"), 0U);
      }
  const auto r = check_naturality(families::join(Category::rel), k2, k2, k2, k2,
                                  FixPolicy::exact());
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.checked_by_law.at("family-square"), 16U * 16U * 16U * 16U);
  const auto du = check_naturality(families::join(Category::rel, Functor::disjoint_union_with(k1)),
                                   k1, k2, k1, k2, FixPolicy::exact());
  EXPECT_TRUE(du.passed());
}

TEST(Naturality, ProjectionPfixIsParameter) {
  const auto fam = families::projection(Category::rel);
  const P alpha = fam.at(k2, k2);
  for (const auto& p : enumerate_homs(Category::rel, k2, k2))
    EXPECT_EQ(pfix_functional(alpha, p, FixPolicy::exact()).value, p);
}

TEST(Naturality, BrokenFamilyIsCaught) {
  // α(h, p) = h ∨ c for a fixed c is not natural
  NaturalFamily fam{"join-constant", Category::rel, Functor::identity(), Functor::identity(),
                    Functor::identity(), true, [](const FinObject& x, const FinObject& y) {
                      const HomSpace s{Category::rel, x, y};
                      RelMorphism full(x, y);
                      for (std::size_t i = 0; i < x.size; ++i)
                        for (std::size_t j = 0; j < y.size; ++j) full.set(i, j);
                      return P::join_with(full, P::arg_x(s, s));
                    }};
  const auto r = check_naturality(fam, k2, k2, k2, k2, FixPolicy::exact());
  EXPECT_FALSE(r.passed());
}

TEST(SelfConjugate, Families) {
  EXPECT_TRUE(check_self_conjugate(families::identity(Category::rel), k2, k1).passed());
  EXPECT_TRUE(check_self_conjugate(families::join(Category::pinj), k2, k2).passed());
  for (std::size_t x = 1; x <= 2; ++x)
    for (std::size_t y = 1; y <= 2; ++y)
      EXPECT_TRUE(check_self_conjugate(families::trace(Category::pinj, k1), FinObject{x},
                                       FinObject{y})
                      .passed());

  const Morphism c = rel(2, 2, {{0, 1}});
  ASSERT_NE(c, dagger(c));
  const auto r = check_self_conjugate(families::left_constant(c), k2, k2);
  EXPECT_FALSE(r.passed());
  EXPECT_GT(r.checked_by_law.at("self-conjugate"), 0U);
  for (const auto& v : r.violations) EXPECT_NE(v.law, "characterizations-agree");

  // c∘f is not self-conjugate even for hermitian c, but c∘f∘c is
  const Morphism sym = rel(2, 2, {{0, 1}, {1, 0}, {1, 1}});
  ASSERT_TRUE(is_hermitian(sym));
  EXPECT_FALSE(check_self_conjugate(families::left_constant(sym), k2, k2).passed());
  NaturalFamily sandwich{"sandwich", Category::rel, Functor::identity(), Functor::identity(),
                         Functor::identity(), false, [&](const FinObject& x, const FinObject& y) {
                           const HomSpace s{Category::rel, x, y};
                           return P::postcompose(sym, P::precompose(sym, P::arg_x(s, s)));
                         }};
  EXPECT_TRUE(check_self_conjugate(sandwich, k2, k2).passed());
}

TEST(Trace, OrbitExample) {
  // X = {x}, U = {u0, u1}, Y = {y}; sources x,u0,u1 = 0,1,2; targets y,u0,u1 = 0,1,2
  const PInjMorphism f(k3, k3, {{0, 1}, {1, 2}, {2, 0}});
  const Morphism tr = trace(f, k1, k1, k2);
  EXPECT_EQ(tr, Morphism(PInjMorphism(k1, k1, {{0, 0}})));
  EXPECT_EQ(orbit(f, 1, 1, 2, 0), std::optional<std::size_t>(0));
}

TEST(Trace, NoEntryIntoLoop) {
  const PInjMorphism f(k3, k3, {{0, 0}, {1, 2}, {2, 1}});
  EXPECT_EQ(trace(f, k1, k1, k2), Morphism(PInjMorphism(k1, k1, {{0, 0}})));
  const RelMorphism g(k2, k2, {{0, 0}, {1, 1}});
  EXPECT_EQ(trace(g, k1, k1, k1), Morphism(RelMorphism(k1, k1, {{0, 0}})));
}

TEST(Trace, CycleWithoutExitIsUndefined) {
  // x ↦ u0 with u0 ↔ u1 and no exit: in Rel the loop never reaches Y
  const RelMorphism f(k3, k3, {{0, 1}, {1, 2}, {2, 1}});
  EXPECT_EQ(trace(f, k1, k1, k2), Morphism(RelMorphism(k1, k1)));
  // the same table is not a partial injection: u0 would be hit twice
  EXPECT_THROW(PInjMorphism(k3, k3, {{0, 1}, {1, 2}, {2, 1}}), InvalidMorphism);
  // in PInj an entered orbit can only run off the end without exiting
  const PInjMorphism path(k3, k3, {{0, 1}, {1, 2}});
  EXPECT_EQ(trace(path, k1, k1, k2), Morphism(PInjMorphism(k1, k1)));
  const PInjMorphism closed(k3, k3, {{1, 2}, {2, 1}});
  EXPECT_EQ(trace(closed, k1, k1, k2), Morphism(PInjMorphism(k1, k1)));
}

TEST(Trace, MatchesOracles) {
  for (std::size_t u = 1; u <= 2; ++u)
    for (const auto& m : enumerate_homs(Category::pinj, FinObject{1 + u}, FinObject{1 + u})) {
      const auto& f = m.as<PInjMorphism>();
      const auto tr = trace(m, k1, k1, FinObject{u}).as<PInjMorphism>();
      EXPECT_EQ(tr(0), orbit(f, 1, 1, u, 0)) << to_string(m);
    }
  for (const auto& m : enumerate_homs(Category::rel, k3, k3)) {
    EXPECT_EQ(as_set(trace(m, k1, k1, k2)), rel_trace_oracle(as_set(m), 1, 1, 2)) << to_string(m);
    EXPECT_EQ(as_set(trace(m, k2, k2, k1)), rel_trace_oracle(as_set(m), 2, 2, 1)) << to_string(m);
  }
}

TEST(Trace, IdentityTracesToIdentity) {
  for (Category c : {Category::rel, Category::pinj})
    EXPECT_EQ(trace(identity(c, k3), k1, k1, k2), identity(c, k1));
  EXPECT_THROW(trace(identity(Category::rel, k3), k1, k1, k1), DimensionMismatch);
}

TEST(DaggerTrace, Exhaustive) {
  for (std::size_t u = 1; u <= 2; ++u) {
    TraceCheckConfig cfg;
    cfg.u = u;
    cfg.dinaturality = true;
    const auto r = check_dagger_trace(Category::pinj, cfg);
    EXPECT_TRUE(r.passed()) << (r.violations.empty() ? "" : r.violations[0].witness);
  }
  TraceCheckConfig rel_cfg;
  rel_cfg.dinaturality = true;
  const auto r = check_dagger_trace(Category::rel, rel_cfg);
  EXPECT_TRUE(r.passed()) << (r.violations.empty() ? "" : r.violations[0].witness);
  EXPECT_EQ(r.checked_by_law.at("dagger-trace"), 16U);
}

TEST(NamedSuites, ExhaustiveOnesPass) {
  // size 2 is the acceptance sweep; one keeps the unit run short
  LawConfig cfg;
  cfg.max_size = 1;
  for (Category c : {Category::rel, Category::pinj})
    for (const char* s : {"naturality", "self-conjugate", "dagger-trace"}) {
      const auto r = functional_law_suite(c, s, cfg);
      EXPECT_TRUE(r.passed()) << to_string(c) << " " << s << " "
                              << (r.violations.empty() ? "" : r.violations[0].witness);
    }
}
