#ifndef DAGFIX_LAWS_HPP
#define DAGFIX_LAWS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dagfix/hom_domain.hpp"
#include "dagfix/morphism.hpp"
#include "dagfix/random.hpp"
#include "dagfix/report.hpp"

namespace dagfix {

struct LawConfig {
  std::size_t min_size = 1;
  std::size_t max_size = 2;
  std::size_t trials = 1000;  // randomized suites only
  std::optional<std::uint64_t> seed;
  double tolerance = kDefaultTolerance;
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  std::size_t chain_length = 4;  // dstoch chains
  std::size_t max_depth = 4;     // random functional trees
  std::size_t fuel = 10;         // naturality of the Kleene approximants
};

inline const std::vector<std::string>& category_suites() {
  static const std::vector<std::string> names{"dagger", "enrichment", "monotone-dagger",
                                              "order-iso"};
  return names;
}

/// ⊥ = c₀ ⊑ c₁ ⊑ ... ⊑ cₖ = f, adding one pair of f at a time (Rel/PInj).
inline std::vector<Morphism> chain_up_to(const Morphism& f) {
  std::vector<Morphism> chain{bottom(f.space())};
  if (f.category() == Category::rel) {
    RelMorphism acc(f.src(), f.dst());
    for (auto [i, j] : f.as<RelMorphism>().pairs()) {
      acc.set(i, j);
      chain.emplace_back(acc);
    }
  } else if (f.category() == Category::pinj) {
    std::vector<std::pair<std::size_t, std::size_t>> g;
    for (auto e : f.as<PInjMorphism>().graph()) {
      g.push_back(e);
      chain.emplace_back(PInjMorphism(f.src(), f.dst(), g));
    }
  } else {
    throw Unsupported("chain_up_to: dstoch chains are sampled");
  }
  return chain;
}

namespace detail {

class HomCache {
 public:
  HomCache(Category c, std::size_t cap) : category_(c), cap_(cap) {}

  const std::vector<Morphism>& operator()(std::size_t x, std::size_t y) {
    auto key = std::make_pair(x, y);
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(key, enumerate_homs(category_, FinObject{x}, FinObject{y}, cap_)).first;
    return it->second;
  }

 private:
  Category category_;
  std::size_t cap_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Morphism>> cache_;
};

inline std::string show(std::initializer_list<std::pair<const char*, const Morphism*>> items) {
  std::string s;
  for (const auto& [name, m] : items) {
    if (!s.empty()) s += " ";
    s += std::string(name) + "=" + to_string(*m);
  }
  return s;
}

inline std::vector<Morphism> dagger_all(const std::vector<Morphism>& chain) {
  std::vector<Morphism> out;
  out.reserve(chain.size());
  for (const auto& c : chain) out.push_back(dagger(c));
  return out;
}

inline void exhaustive_suite(Category cat, std::string_view suite, const LawConfig& cfg,
                             LawReport& r) {
  HomCache homs(cat, cfg.enumeration_cap);
  const std::size_t lo = cfg.min_size;
  const std::size_t hi = cfg.max_size;
  auto same = [](const Morphism& a, const Morphism& b) { return a == b; };

  if (suite == "dagger") {
    for (std::size_t x = lo; x <= hi; ++x) {
      const Morphism id = identity(cat, FinObject{x});
      r.expect(same(dagger(id), id), "id-dagger", [&] { return detail::show({{"id", &id}}); });
    }
    for (std::size_t x = lo; x <= hi; ++x)
      for (std::size_t y = lo; y <= hi; ++y)
        for (const auto& f : homs(x, y))
          r.expect(same(dagger(dagger(f)), f), "involution",
                   [&] { return detail::show({{"f", &f}}); });
    for (std::size_t x = lo; x <= hi; ++x)
      for (std::size_t y = lo; y <= hi; ++y)
        for (std::size_t z = lo; z <= hi; ++z)
          for (const auto& f : homs(x, y))
            for (const auto& g : homs(y, z))
              r.expect(same(dagger(compose(g, f)), compose(dagger(f), dagger(g))),
                       "contravariance", [&] { return detail::show({{"f", &f}, {"g", &g}}); });
    return;
  }

  if (suite == "enrichment") {
    for (std::size_t x = lo; x <= hi; ++x)
      for (std::size_t y = lo; y <= hi; ++y)
        for (std::size_t z = lo; z <= hi; ++z) {
          const Morphism bot_yz = bottom({cat, FinObject{y}, FinObject{z}});
          const Morphism bot_xy = bottom({cat, FinObject{x}, FinObject{y}});
          const Morphism bot_xz = bottom({cat, FinObject{x}, FinObject{z}});
          const auto& fs = homs(x, y);
          const auto& gs = homs(y, z);
          for (const auto& f : fs)
            r.expect(same(compose(bot_yz, f), bot_xz), "bottom-left-strict",
                     [&] { return detail::show({{"f", &f}}); });
          for (const auto& g : gs)
            r.expect(same(compose(g, bot_xy), bot_xz), "bottom-right-strict",
                     [&] { return detail::show({{"g", &g}}); });
          for (const auto& g : gs)
            for (const auto& f1 : fs)
              for (const auto& f2 : fs) {
                if (!leq(f1, f2)) continue;
                r.expect(leq(compose(g, f1), compose(g, f2)), "compose-monotone-right",
                         [&] { return detail::show({{"g", &g}, {"f1", &f1}, {"f2", &f2}}); });
              }
          for (const auto& f : fs)
            for (const auto& g1 : gs)
              for (const auto& g2 : gs) {
                if (!leq(g1, g2)) continue;
                r.expect(leq(compose(g1, f), compose(g2, f)), "compose-monotone-left",
                         [&] { return detail::show({{"f", &f}, {"g1", &g1}, {"g2", &g2}}); });
              }
          // g ∘ sup C = sup (g ∘ C) and sup D ∘ f = sup (D ∘ f) on the chains
          // that build each morphism pair by pair.
          for (const auto& f : fs) {
            const auto chain = chain_up_to(f);
            for (const auto& g : gs) {
              std::vector<Morphism> img;
              for (const auto& c : chain) img.push_back(compose(g, c));
              r.expect(same(compose(g, sup_of_chain(chain)), sup_of_chain(img)),
                       "compose-continuous-right",
                       [&] { return detail::show({{"f", &f}, {"g", &g}}); });
            }
          }
          for (const auto& g : gs) {
            const auto chain = chain_up_to(g);
            for (const auto& f : fs) {
              std::vector<Morphism> img;
              for (const auto& c : chain) img.push_back(compose(c, f));
              r.expect(same(compose(sup_of_chain(chain), f), sup_of_chain(img)),
                       "compose-continuous-left",
                       [&] { return detail::show({{"f", &f}, {"g", &g}}); });
            }
          }
        }
    return;
  }

  if (suite == "monotone-dagger" || suite == "order-iso") {
    const bool iso = suite == "order-iso";
    for (std::size_t x = lo; x <= hi; ++x)
      for (std::size_t y = lo; y <= hi; ++y) {
        const auto& hs = homs(x, y);
        for (const auto& f : hs)
          for (const auto& g : hs) {
            const bool before = leq(f, g);
            const bool after = leq(dagger(f), dagger(g));
            if (iso)
              r.expect(before == after, "order-iso",
                       [&] { return detail::show({{"f", &f}, {"g", &g}}); });
            else
              r.expect(!before || after, "monotone",
                       [&] { return detail::show({{"f", &f}, {"g", &g}}); });
          }
        if (!iso) continue;
        const Morphism bot = bottom({cat, FinObject{x}, FinObject{y}});
        r.expect(same(dagger(bot), bottom({cat, FinObject{y}, FinObject{x}})), "bottom-dagger",
                 [&] { return detail::show({{"bot", &bot}}); });
        for (const auto& f : hs) {
          const auto chain = chain_up_to(f);
          r.expect(same(dagger(sup_of_chain(chain)), sup_of_chain(dagger_all(chain))),
                   "sup-dagger", [&] { return detail::show({{"f", &f}}); });
        }
      }
    return;
  }
  throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
}

inline void randomized_stoch_suite(std::string_view suite, const LawConfig& cfg, LawReport& r) {
  if (!cfg.seed) throw std::invalid_argument("dstoch suites are randomized and need a seed");
  if (cfg.min_size < 1 || cfg.max_size < cfg.min_size)
    throw std::invalid_argument("dstoch sizes must satisfy 1 <= min <= max");
  Rng rng(*cfg.seed);
  const double tol = cfg.tolerance;
  auto size = [&] { return cfg.min_size + pick(rng, cfg.max_size - cfg.min_size + 1); };
  auto close = [&](const Morphism& a, const Morphism& b) { return equivalent(a, b, tol); };
  auto scaled_chain = [&](const StochMorphism& top) {
    std::vector<Morphism> chain;
    const std::size_t k = std::max<std::size_t>(cfg.chain_length, 1);
    for (std::size_t i = 0; i <= k; ++i)
      chain.emplace_back(scale(top, static_cast<double>(i) / static_cast<double>(k)));
    return chain;
  };
  if (suite != "dagger" && suite != "enrichment" && suite != "monotone-dagger" &&
      suite != "order-iso")
    throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");

  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const std::size_t n = size();
    if (suite == "dagger") {
      const Morphism f = random_stoch(rng, n);
      const Morphism g = random_stoch(rng, n);
      const Morphism id = identity(Category::dstoch, FinObject{n});
      r.expect(close(dagger(id), id), "id-dagger", [&] { return show({{"id", &id}}); });
      r.expect(close(dagger(dagger(f)), f), "involution", [&] { return show({{"f", &f}}); });
      r.expect(close(dagger(compose(g, f)), compose(dagger(f), dagger(g))), "contravariance",
               [&] { return show({{"f", &f}, {"g", &g}}); });
    } else if (suite == "enrichment") {
      const auto [f1, f2] = random_ordered_stoch(rng, n);
      const Morphism g = random_stoch(rng, n);
      const Morphism a = f1;
      const Morphism b = f2;
      const Morphism bot = bottom({Category::dstoch, FinObject{n}, FinObject{n}});
      r.expect(close(compose(bot, a), bot), "bottom-left-strict",
               [&] { return show({{"f", &a}}); });
      r.expect(close(compose(g, bot), bot), "bottom-right-strict",
               [&] { return show({{"g", &g}}); });
      r.expect(leq(compose(g, a), compose(g, b), tol), "compose-monotone-right",
               [&] { return show({{"g", &g}, {"f1", &a}, {"f2", &b}}); });
      r.expect(leq(compose(a, g), compose(b, g), tol), "compose-monotone-left",
               [&] { return show({{"f", &g}, {"g1", &a}, {"g2", &b}}); });
      const auto chain = scaled_chain(f2);
      std::vector<Morphism> img;
      for (const auto& c : chain) img.push_back(compose(g, c));
      r.expect(close(compose(g, sup_of_chain(chain)), sup_of_chain(img)),
               "compose-continuous-right", [&] { return show({{"f", &b}, {"g", &g}}); });
      img.clear();
      for (const auto& c : chain) img.push_back(compose(c, g));
      r.expect(close(compose(sup_of_chain(chain), g), sup_of_chain(img)),
               "compose-continuous-left", [&] { return show({{"f", &g}, {"g", &b}}); });
    } else {
      // Half the pairs are ordered by construction, half are independent draws.
      Morphism f;
      Morphism g;
      if (t % 2 == 0) {
        auto [lo, hi] = random_ordered_stoch(rng, n);
        f = lo;
        g = hi;
      } else {
        f = random_stoch(rng, n);
        g = random_stoch(rng, n);
      }
      const bool before = leq(f, g, tol);
      const bool after = leq(dagger(f), dagger(g), tol);
      if (suite == "monotone-dagger") {
        r.expect(!before || after, "monotone", [&] { return show({{"f", &f}, {"g", &g}}); });
      } else {
        r.expect(before == after, "order-iso", [&] { return show({{"f", &f}, {"g", &g}}); });
        const auto chain = scaled_chain(g.as<StochMorphism>());
        r.expect(close(dagger(sup_of_chain(chain)), sup_of_chain(dagger_all(chain))),
                 "sup-dagger", [&] { return show({{"g", &g}}); });
        const Morphism bot = bottom({Category::dstoch, FinObject{n}, FinObject{n}});
        r.expect(close(dagger(bot), bot), "bottom-dagger", [&] { return show({{"bot", &bot}}); });
      }
    }
  }
}

}  // namespace detail

/// Runs one of the category law suites: "dagger", "enrichment",
/// "monotone-dagger" or "order-iso". Rel and PInj are checked exhaustively over
/// all objects with sizes in [min_size, max_size]; DStoch with `trials` seeded
/// random instances. Violations are reported, never thrown.
inline LawReport law_suite(Category cat, std::string_view suite, const LawConfig& cfg = {}) {
  LawReport r;
  r.suite = std::string(suite);
  {
    ScopedTimer timer(r);
    if (cat == Category::dstoch)
      detail::randomized_stoch_suite(suite, cfg, r);
    else
      detail::exhaustive_suite(cat, suite, cfg, r);
  }
  return r;
}

}  // namespace dagfix

#endif
