#ifndef DAGFIX_RANDOM_EXPRS_HPP
#define DAGFIX_RANDOM_EXPRS_HPP

#include <functional>
#include <map>
#include <vector>

#include "dagfix/param_functional.hpp"
#include "dagfix/random.hpp"

namespace dagfix {

/// Seeded generator of well-typed functional trees. Morphism leaves are drawn
/// uniformly from enumerated hom-sets (Rel/PInj) or as random subnormalized
/// matrices scaled by one half (DStoch, where all objects share one size).
class ExprGenerator {
 public:
  ExprGenerator(Category c, Rng& rng, std::size_t min_size, std::size_t max_size,
                std::size_t cap = kDefaultEnumerationCap)
      : category_(c), rng_(rng), min_(min_size), max_(max_size), cap_(cap) {
    if (min_size > max_size) throw std::invalid_argument("min_size exceeds max_size");
    stoch_size_ = object_size();
  }

  Category category() const { return category_; }

  FinObject object() {
    if (category_ == Category::dstoch) return FinObject{stoch_size_};
    return FinObject{object_size()};
  }

  HomSpace space() { return {category_, object(), object()}; }

  /// Draws a fresh common object size for the next DStoch tree.
  void reshuffle() { stoch_size_ = object_size(); }

  Morphism leaf(const HomSpace& s) {
    if (category_ == Category::dstoch) return scale(random_stoch(rng_, s.src.size), 0.5);
    const auto key = std::make_pair(s.src.size, s.dst.size);
    auto it = homs_.find(key);
    if (it == homs_.end())
      it = homs_.emplace(key, enumerate_homs(category_, s.src, s.dst, cap_)).first;
    return it->second[pick(rng_, it->second.size())];
  }

  FunctionalExpr functional(const HomSpace& dom, const HomSpace& cod, std::size_t depth) {
    using F = FunctionalExpr;
    std::vector<std::function<F()>> leaves;
    std::vector<std::function<F()>> nodes;
    leaves.emplace_back([&] { return F::constant(dom, leaf(cod)); });
    // leaves that use their argument get triple weight against constants
    for (int k = 0; k < 3; ++k) {
      if (dom == cod) leaves.emplace_back([&] { return F::identity(dom); });
      if (cod == dom.flipped()) leaves.emplace_back([&] { return F::dagger(dom); });
      if (dom.dst == cod.dst)
        leaves.emplace_back(
            [&] { return F::precompose(leaf({category_, cod.src, dom.src}), dom.dst); });
      if (dom.src == cod.src)
        leaves.emplace_back(
            [&] { return F::postcompose(leaf({category_, dom.dst, cod.dst}), dom.src); });
      if (dom == cod && has_joins()) leaves.emplace_back([&] { return F::join_with(leaf(dom)); });
      if (dom == cod && !has_joins()) leaves.emplace_back([&] { return F::add_with(leaf(dom)); });
    }
    if (depth > 0) {
      nodes.emplace_back([&] {
        const HomSpace mid = space();
        F first = functional(dom, mid, depth - 1);
        return F::seq(first, functional(mid, cod, depth - 1));
      });
      nodes.emplace_back([&] {
        F l = functional(dom, cod, depth - 1);
        F r = functional(dom, cod, depth - 1);
        return has_joins() ? F::join_of(l, r) : F::sum_of(l, r);
      });
    }
    return choose(leaves, nodes);
  }

  /// A term ψ(x, p) with the given result space.
  ParamFunctionalExpr param(const HomSpace& xs, const HomSpace& ps, const HomSpace& result,
                            std::size_t depth) {
    using P = ParamFunctionalExpr;
    std::vector<std::function<P()>> leaves;
    std::vector<std::function<P()>> nodes;
    // argument leaves get triple weight so that most trees actually recurse
    for (int k = 0; k < 3; ++k) {
      if (result == xs) leaves.emplace_back([&] { return P::arg_x(xs, ps); });
      if (result == ps) leaves.emplace_back([&] { return P::arg_p(xs, ps); });
    }
    leaves.emplace_back([&] { return P::constant(xs, ps, leaf(result)); });
    if (depth > 0) {
      const std::size_t d = depth - 1;
      nodes.emplace_back([&] {
        const FinObject b = object();
        P e = param(xs, ps, {category_, b, result.dst}, d);
        return P::precompose(leaf({category_, result.src, b}), e);
      });
      nodes.emplace_back([&] {
        const FinObject a = object();
        P e = param(xs, ps, {category_, result.src, a}, d);
        return P::postcompose(leaf({category_, a, result.dst}), e);
      });
      nodes.emplace_back([&] { return P::dagger(param(xs, ps, result.flipped(), d)); });
      nodes.emplace_back([&] {
        P e = param(xs, ps, result, d);
        return has_joins() ? P::join_with(leaf(result), e) : P::add_with(leaf(result), e);
      });
      nodes.emplace_back([&] {
        P l = param(xs, ps, result, d);
        P r = param(xs, ps, result, d);
        return has_joins() ? P::join_of(l, r) : P::sum_of(l, r);
      });
      nodes.emplace_back([&] {
        const FinObject b = object();
        P l = param(xs, ps, {category_, b, result.dst}, d);
        P r = param(xs, ps, {category_, result.src, b}, d);
        return P::compose(l, r);
      });
      nodes.emplace_back([&] {
        const HomSpace s = space();
        FunctionalExpr fn = functional(s, result, d);
        return P::apply(fn, param(xs, ps, s, d));
      });
    }
    return choose(leaves, nodes);
  }

 private:
  bool has_joins() const { return category_ != Category::dstoch; }

  std::size_t object_size() { return min_ + pick(rng_, max_ - min_ + 1); }

  // Inner nodes are picked three times out of four when allowed.
  template <class T>
  T choose(const std::vector<std::function<T()>>& leaves,
           const std::vector<std::function<T()>>& nodes) {
    if (!nodes.empty() && pick(rng_, 4) != 0) return nodes[pick(rng_, nodes.size())]();
    return leaves[pick(rng_, leaves.size())]();
  }

  Category category_;
  Rng& rng_;
  std::size_t min_;
  std::size_t max_;
  std::size_t cap_;
  std::size_t stoch_size_ = 1;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Morphism>> homs_;
};

}  // namespace dagfix

#endif
