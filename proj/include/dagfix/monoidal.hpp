#ifndef DAGFIX_MONOIDAL_HPP
#define DAGFIX_MONOIDAL_HPP

#include <vector>

#include "dagfix/morphism.hpp"

namespace dagfix {

/// f ⊎ g : A⊎C → B⊎D, block diagonal.
inline RelMorphism direct_sum(const RelMorphism& f, const RelMorphism& g) {
  RelMorphism out(disjoint_union(f.src(), g.src()), disjoint_union(f.dst(), g.dst()));
  for (auto [a, b] : f.pairs()) out.set(a, b);
  for (auto [c, d] : g.pairs()) out.set(f.src().size + c, f.dst().size + d);
  return out;
}

inline PInjMorphism direct_sum(const PInjMorphism& f, const PInjMorphism& g) {
  PInjMorphism::Assignment m = f.assignment();
  for (const auto& y : g.assignment())
    m.push_back(y ? std::optional<std::size_t>(*y + f.dst().size) : std::nullopt);
  return {disjoint_union(f.src(), g.src()), disjoint_union(f.dst(), g.dst()), std::move(m)};
}

inline StochMorphism direct_sum(const StochMorphism& f, const StochMorphism& g) {
  const std::size_t n = f.n() + g.n();
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < f.n(); ++i)
    for (std::size_t j = 0; j < f.n(); ++j) rows[i][j] = f.at(i, j);
  for (std::size_t i = 0; i < g.n(); ++i)
    for (std::size_t j = 0; j < g.n(); ++j) rows[f.n() + i][f.n() + j] = g.at(i, j);
  return {disjoint_union(f.src(), g.src()), disjoint_union(f.dst(), g.dst()), rows};
}

inline Morphism direct_sum(const Morphism& f, const Morphism& g) {
  return detail::visit_same(f, g, "direct_sum", [](const auto& a, const auto& b) -> Morphism {
    return direct_sum(a, b);
  });
}

}  // namespace dagfix

#endif
