#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <utility>
#include <vector>

#include "dagfix/hom_domain.hpp"
#include "dagfix/order.hpp"
#include "dagfix/random.hpp"

using namespace dagfix;

namespace {

using PairSet = std::set<std::pair<std::size_t, std::size_t>>;

// Reachability by depth-first search; independent of the bit-matrix code.
PairSet reachability(std::size_t n, const PairSet& edges) {
  PairSet out;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{s};
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

// Set-based relational composition g ∘ f.
PairSet compose_sets(const PairSet& g, const PairSet& f) {
  PairSet out;
  for (auto [x, y] : f)
    for (auto [y2, z] : g)
      if (y == y2) out.emplace(x, z);
  return out;
}

PairSet as_set(const Morphism& m) {
  auto p = m.as<RelMorphism>().pairs();
  return {p.begin(), p.end()};
}

Morphism rel(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> pairs) {
  return RelMorphism(FinObject{n}, FinObject{n}, pairs);
}

const HomSpace kRel3{Category::rel, FinObject{3}, FinObject{3}};

}  // namespace

TEST(KleeneFix, TransitiveClosureMatchesReachability) {
  const Morphism r = rel(3, {{0, 1}, {1, 2}});
  const auto result = kleene_fix([&](const Morphism& x) { return join(r, compose(r, x)); },
                                 hom_domain(kRel3), FixPolicy::exact());
  const PairSet expected = reachability(3, as_set(r));
  EXPECT_EQ(expected, (PairSet{{0, 1}, {1, 2}, {0, 2}}));
  EXPECT_EQ(as_set(result.value), expected);
  EXPECT_TRUE(result.converged);
  EXPECT_LE(result.iterations, 3U);
}

TEST(KleeneFix, IdentityStepGivesBottomAfterOneIteration) {
  const auto result =
      kleene_fix([](const Morphism& x) { return x; }, hom_domain(kRel3), FixPolicy::exact());
  EXPECT_EQ(result.value, bottom(kRel3));
  EXPECT_EQ(result.iterations, 1U);
}

TEST(KleeneFix, AffineStochStepMatchesGeometricSeries) {
  const HomSpace s{Category::dstoch, FinObject{1}, FinObject{1}};
  auto step = [](const Morphism& a) {
    const double v = a.as<StochMorphism>().at(0, 0);
    return Morphism(StochMorphism::square(1, {{0.25 + 0.5 * v}}));
  };
  const auto result = kleene_fix(step, hom_domain(s), FixPolicy::metric(1e-9));
  const double closed_form = 0.25 / (1.0 - 0.5);
  EXPECT_NEAR(result.value.as<StochMorphism>().at(0, 0), closed_form, 1e-9);
  EXPECT_LE(result.iterations, 64U);
  ASSERT_TRUE(result.residual.has_value());
  EXPECT_LT(*result.residual, 1e-9);
}

TEST(KleeneFix, NonConvergenceWhenBudgetExhausted) {
  const HomSpace s{Category::dstoch, FinObject{1}, FinObject{1}};
  auto step = [](const Morphism& a) {
    return Morphism(StochMorphism::square(1, {{0.25 + 0.5 * a.as<StochMorphism>().at(0, 0)}}));
  };
  EXPECT_THROW(kleene_fix(step, hom_domain(s), FixPolicy::metric(1e-9, 5)), NonConvergence);

  // Complement is not monotone and oscillates forever.
  auto flip = [](const Morphism& x) { return Morphism(complement(x.as<RelMorphism>())); };
  EXPECT_THROW(kleene_fix(flip, hom_domain(kRel3), FixPolicy::exact(50)), NonConvergence);
}

TEST(KleeneFix, DomainMismatchWhenStepLeavesHomSet) {
  auto wrong = [](const Morphism&) { return Morphism(RelMorphism(FinObject{2}, FinObject{3})); };
  EXPECT_THROW(kleene_fix(wrong, hom_domain(kRel3), FixPolicy::exact()), DomainMismatch);
}

TEST(KleeneFix, ExactModeNeedsEquality) {
  HomDomain<Morphism> d = hom_domain(kRel3);
  d.equal = nullptr;
  EXPECT_THROW(kleene_fix([](const Morphism& x) { return x; }, d, FixPolicy::exact()),
               std::invalid_argument);
  EXPECT_THROW(kleene_fix([](const Morphism& x) { return x; }, hom_domain(kRel3),
                          FixPolicy::exact(0)),
               std::invalid_argument);
}

TEST(KleenePfix, ConstantInFirstArgumentReturnsParameter) {
  const Morphism p = rel(3, {{2, 0}});
  const auto result = kleene_pfix([](const Morphism&, const Morphism& q) { return q; }, p,
                                  hom_domain(kRel3), FixPolicy::exact());
  EXPECT_EQ(result.value, p);
  EXPECT_LE(result.iterations, 2U);
}

TEST(KleenePfix, JoinWithPrecompositionMatchesSetIteration) {
  const Morphism r2 = rel(3, {{1, 2}});
  const Morphism p = rel(3, {{0, 1}});
  const auto result = kleene_pfix(
      [&](const Morphism& x, const Morphism& q) { return join(q, compose(r2, x)); }, p,
      hom_domain(kRel3), FixPolicy::exact());

  // ψⁿ(⊥, P) iterated on std::set until it repeats.
  PairSet x;
  for (;;) {
    PairSet next = as_set(p);
    for (auto e : compose_sets(as_set(r2), x)) next.insert(e);
    if (next == x) break;
    x = next;
  }
  EXPECT_EQ(x, (PairSet{{0, 1}, {0, 2}}));
  EXPECT_EQ(as_set(result.value), x);
}

TEST(KleenePfix, IgnoringTheArgumentGivesBottom) {
  const auto result =
      kleene_pfix([](const Morphism& x, const Morphism&) { return x; }, rel(3, {{0, 0}}),
                  hom_domain(kRel3), FixPolicy::exact());
  EXPECT_EQ(result.value, bottom(kRel3));
}

TEST(SpotCheckMonotone, PostCompositionIsMonotone) {
  const HomSpace s{Category::rel, FinObject{2}, FinObject{2}};
  const auto d = enumerated_hom_domain(s);
  const auto pairs = ordered_pairs(d);
  const Morphism r = RelMorphism(FinObject{2}, FinObject{2}, {{0, 1}, {1, 1}});
  const auto report =
      spot_check_monotone([&](const Morphism& x) { return compose(r, x); }, d,
                          std::span<const std::pair<Morphism, Morphism>>(pairs));
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.checked, 81U);  // Σ_k C(4,k)·2^(4-k) = 3⁴ ordered pairs

  const auto id_report = spot_check_monotone([](const Morphism& x) { return x; }, d,
                                             std::span<const std::pair<Morphism, Morphism>>(pairs));
  EXPECT_TRUE(id_report.ok());
}

TEST(SpotCheckMonotone, ComplementIsCaught) {
  const HomSpace s{Category::rel, FinObject{2}, FinObject{2}};
  const auto d = enumerated_hom_domain(s);
  const auto pairs = ordered_pairs(d);
  const auto report = spot_check_monotone(
      [](const Morphism& x) { return Morphism(complement(x.as<RelMorphism>())); }, d,
      std::span<const std::pair<Morphism, Morphism>>(pairs));
  // every strict pair f ⊏ g is reversed; only the 16 reflexive pairs survive
  EXPECT_EQ(report.violations.size(), 81U - 16U);
}

// Random monotone steps R ↦ a ∪ b∘R∘c on Rel(2,2).
class RandomAffineRel : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomAffineRel, KleeneChainProperties) {
  const HomSpace s{Category::rel, FinObject{2}, FinObject{2}};
  const auto d = enumerated_hom_domain(s);
  const auto& all = *d.enumeration;
  Rng rng(GetParam());
  for (int trial = 0; trial < 50; ++trial) {
    const Morphism a = all[pick(rng, all.size())];
    const Morphism b = all[pick(rng, all.size())];
    const Morphism c = all[pick(rng, all.size())];
    auto step = [&](const Morphism& x) { return join(a, compose(b, compose(x, c))); };

    const auto result = kleene_fix(step, d, FixPolicy::exact());
    ASSERT_TRUE(result.converged);
    EXPECT_LE(result.iterations, all.size());
    EXPECT_EQ(step(result.value), result.value);

    // ascending chain
    Morphism x = d.bottom;
    for (std::size_t n = 0; n < result.iterations; ++n) {
      const Morphism y = step(x);
      EXPECT_TRUE(leq(x, y));
      x = y;
    }
    // least among all fixed points
    for (const auto& m : all)
      if (step(m) == m) {
        EXPECT_TRUE(leq(result.value, m)) << to_string(m);
      }

    // parametrized form that ignores its parameter agrees with the plain one
    const auto pf = kleene_pfix([&](const Morphism& y, const Morphism&) { return step(y); }, b, d,
                                FixPolicy::exact());
    EXPECT_EQ(pf.value, result.value);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomAffineRel, ::testing::Values(1U, 7U, 42U));

TEST(HomDomainInvariants, OrderIsPartialAndBottomIsLeast) {
  for (Category c : {Category::rel, Category::pinj}) {
    const auto d = enumerated_hom_domain({c, FinObject{2}, FinObject{2}});
    const auto& all = *d.enumeration;
    for (const auto& f : all) {
      EXPECT_TRUE(d.leq(d.bottom, f));
      EXPECT_TRUE(d.leq(f, f));
      const std::vector<Morphism> constant{f, f, f};
      EXPECT_EQ(d.sup_of_chain(constant), f);
      for (const auto& g : all) {
        if (d.leq(f, g) && d.leq(g, f)) {
          EXPECT_EQ(f, g);
        }
        for (const auto& h : all) {
          if (d.leq(f, g) && d.leq(g, h)) {
            EXPECT_TRUE(d.leq(f, h));
          }
        }
      }
    }
  }
}
