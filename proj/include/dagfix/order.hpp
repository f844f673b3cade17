#ifndef DAGFIX_ORDER_HPP
#define DAGFIX_ORDER_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dagfix/errors.hpp"

namespace dagfix {

enum class FixMode { exact_stabilization, metric_convergence };

struct FixPolicy {
  std::size_t max_iterations = 10000;
  double tolerance = 1e-9;
  FixMode mode = FixMode::exact_stabilization;

  static FixPolicy exact(std::size_t max_iterations = 10000) {
    return {max_iterations, 0.0, FixMode::exact_stabilization};
  }
  static FixPolicy metric(double tolerance = 1e-9, std::size_t max_iterations = 10000) {
    return {max_iterations, tolerance, FixMode::metric_convergence};
  }
};

template <class M>
struct KleeneResult {
  M value;
  std::size_t iterations = 0;
  bool converged = false;
  std::optional<double> residual;
};

// A pointed partial order of morphisms between two fixed objects. Suprema are
// only required for ascending chains.
template <class M>
struct HomDomain {
  std::string name;
  M bottom;
  std::function<bool(const M&, const M&)> leq;
  std::function<bool(const M&, const M&)> equal;
  std::function<M(std::span<const M>)> sup_of_chain;
  std::function<bool(const M&)> contains;
  std::optional<std::vector<M>> enumeration;
  std::function<double(const M&, const M&)> metric;  // numeric domains only
};

namespace detail {

template <class M>
void require_member(const HomDomain<M>& d, const M& m) {
  if (d.contains && !d.contains(m))
    throw DomainMismatch("step left the hom-domain " + d.name);
}

template <class M, class Next>
KleeneResult<M> iterate_chain(Next&& next, const HomDomain<M>& domain, const FixPolicy& policy) {
  if (policy.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  const bool exact = policy.mode == FixMode::exact_stabilization;
  if (exact && !domain.equal)
    throw std::invalid_argument("exact stabilization needs decidable equality on " + domain.name);
  if (!exact && !domain.metric)
    throw std::invalid_argument("metric convergence needs a metric on " + domain.name);

  std::vector<M> chain{domain.bottom};
  for (std::size_t i = 1; i <= policy.max_iterations; ++i) {
    M y = next(chain.back());
    require_member(domain, y);
    const M& x = chain.back();
    if (exact) {
      if (domain.equal(x, y)) return {domain.sup_of_chain(chain), i, true, std::nullopt};
    } else {
      const double d = domain.metric(x, y);
      if (d < policy.tolerance) {
        chain.push_back(std::move(y));
        return {domain.sup_of_chain(chain), i, true, d};
      }
    }
    chain.push_back(std::move(y));
  }
  throw NonConvergence("no fixed point on " + domain.name + " within " +
                           std::to_string(policy.max_iterations) + " iterations",
                       policy.max_iterations);
}

}  // namespace detail

/// Least fixed point as the supremum of ⊥ ⊑ step(⊥) ⊑ step²(⊥) ⊑ ...
/// `iterations` counts applications of step. Continuity of step is the
/// caller's obligation; see spot_check_monotone.
template <class M, class Step>
KleeneResult<M> kleene_fix(Step&& step, const HomDomain<M>& domain, const FixPolicy& policy) {
  return detail::iterate_chain<M>([&](const M& x) { return step(x); }, domain, policy);
}

/// Parametrized least fixed point: sup of ψⁿ(⊥, p) with ψ⁰(x,p) = x and
/// ψⁿ⁺¹(x,p) = ψ(ψⁿ(x,p), p).
template <class M, class P, class Step2>
KleeneResult<M> kleene_pfix(Step2&& step, const P& parameter, const HomDomain<M>& domain,
                            const FixPolicy& policy) {
  return detail::iterate_chain<M>([&](const M& x) { return step(x, parameter); }, domain,
                                  policy);
}

struct MonotonicityReport {
  std::size_t checked = 0;
  std::vector<std::size_t> violations;  // indices into the sample

  bool ok() const { return violations.empty(); }
};

/// Reports every sampled pair f ⊑ g with step(f) ⋢ step(g). Pairs that are not
/// ordered are ignored.
template <class M, class Step>
MonotonicityReport spot_check_monotone(Step&& step, const HomDomain<M>& domain,
                                       std::span<const std::pair<M, M>> sample) {
  MonotonicityReport report;
  for (std::size_t k = 0; k < sample.size(); ++k) {
    const auto& [f, g] = sample[k];
    if (!domain.leq(f, g)) continue;
    ++report.checked;
    if (!domain.leq(step(f), step(g))) report.violations.push_back(k);
  }
  return report;
}

/// All ordered pairs (f, g) with f ⊑ g from an enumerated domain.
template <class M>
std::vector<std::pair<M, M>> ordered_pairs(const HomDomain<M>& domain) {
  if (!domain.enumeration) throw std::invalid_argument(domain.name + " is not enumerable");
  std::vector<std::pair<M, M>> out;
  for (const M& f : *domain.enumeration)
    for (const M& g : *domain.enumeration)
      if (domain.leq(f, g)) out.emplace_back(f, g);
  return out;
}

}  // namespace dagfix

#endif
