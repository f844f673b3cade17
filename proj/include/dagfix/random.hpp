#ifndef DAGFIX_RANDOM_HPP
#define DAGFIX_RANDOM_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "dagfix/morphism.hpp"

namespace dagfix {

// Every randomized check draws from one seeded engine.
using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline double unit(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

/// Random subnormalized doubly stochastic n×n matrix. Roughly a third of the
/// entries are zero so that the entrywise order is exercised on boundaries.
inline StochMorphism random_stoch(Rng& rng, std::size_t n) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (auto& row : rows)
    for (double& e : row) e = pick(rng, 3) == 0 ? 0.0 : unit(rng);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    double c = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      r += rows[i][j];
      c += rows[j][i];
    }
    worst = std::max({worst, r, c});
  }
  const double s = worst > 0.0 ? unit(rng) / worst : 0.0;
  for (auto& row : rows)
    for (double& e : row) e *= s;
  return StochMorphism::square(n, rows);
}

/// A random g and an f ⊑ g obtained by shrinking each entry of g.
inline std::pair<StochMorphism, StochMorphism> random_ordered_stoch(Rng& rng, std::size_t n) {
  StochMorphism g = random_stoch(rng, n);
  std::vector<std::vector<double>> rows = g.rows();
  for (auto& row : rows)
    for (double& e : row) e *= unit(rng);
  return {StochMorphism::square(n, rows), g};
}

}  // namespace dagfix

#endif
