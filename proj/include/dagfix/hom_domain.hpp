#ifndef DAGFIX_HOM_DOMAIN_HPP
#define DAGFIX_HOM_DOMAIN_HPP

#include <span>

#include "dagfix/morphism.hpp"
#include "dagfix/order.hpp"

namespace dagfix {

/// Supremum of an ascending chain of morphisms in one hom-set.
inline Morphism sup_of_chain(std::span<const Morphism> chain) {
  if (chain.empty()) throw std::invalid_argument("sup of an empty chain needs a hom-space");
  Morphism acc = chain.front();
  for (std::size_t k = 1; k < chain.size(); ++k) {
    if (acc.category() == Category::dstoch)
      acc = entrywise_max(acc.as<StochMorphism>(), chain[k].as<StochMorphism>());
    else
      acc = join(acc, chain[k]);
  }
  return acc;
}

inline HomDomain<Morphism> hom_domain(const HomSpace& space, double tolerance = kDefaultTolerance) {
  HomDomain<Morphism> d;
  d.name = to_string(space);
  d.bottom = bottom(space);
  d.leq = [tolerance](const Morphism& a, const Morphism& b) { return leq(a, b, tolerance); };
  d.equal = [tolerance](const Morphism& a, const Morphism& b) {
    return equivalent(a, b, tolerance);
  };
  d.sup_of_chain = [](std::span<const Morphism> c) { return sup_of_chain(c); };
  d.contains = [space, tolerance](const Morphism& m) { return in_space(m, space, tolerance); };
  if (space.category == Category::dstoch) {
    d.metric = [](const Morphism& a, const Morphism& b) {
      return distance(a.as<StochMorphism>(), b.as<StochMorphism>());
    };
  }
  return d;
}

/// hom_domain plus the exhaustive listing of its elements (Rel/PInj only).
inline HomDomain<Morphism> enumerated_hom_domain(const HomSpace& space,
                                                 std::size_t cap = kDefaultEnumerationCap) {
  HomDomain<Morphism> d = hom_domain(space);
  d.enumeration = enumerate_homs(space.category, space.src, space.dst, cap);
  return d;
}

/// Exact stabilization for Rel/PInj, metric convergence for DStoch.
inline FixPolicy default_policy(Category c, double tolerance = kDefaultTolerance,
                                std::size_t max_iterations = 10000) {
  if (c == Category::dstoch) return FixPolicy::metric(tolerance, max_iterations);
  return FixPolicy::exact(max_iterations);
}

}  // namespace dagfix

#endif
