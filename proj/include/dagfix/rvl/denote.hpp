#ifndef DAGFIX_RVL_DENOTE_HPP
#define DAGFIX_RVL_DENOTE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dagfix/pinj.hpp"
#include "dagfix/rvl/eval.hpp"

namespace dagfix::rvl {

inline constexpr std::size_t kDefaultUniverseCap = 1u << 16;

/// All terms with at most `bound` nodes over the constructors and the given
/// atoms, ordered by size and then by generation order.
class Universe {
 public:
  Universe(const std::vector<std::string>& atoms, std::size_t bound,
           std::size_t cap = kDefaultUniverseCap)
      : bound_(bound) {
    std::vector<std::vector<Value>> by_size(bound + 1);
    auto grow = [&](Value v) {
      if (values_.size() >= cap)
        throw TooLarge("term universe of size bound " + std::to_string(bound) + " exceeds " +
                       std::to_string(cap) + " values");
      values_.push_back(v);
      return v;
    };
    for (std::size_t n = 1; n <= bound; ++n) {
      std::vector<Value>& level = by_size[n];
      if (n == 1) {
        level.push_back(grow(Value::zero()));
        level.push_back(grow(Value::nil()));
        for (const std::string& a : atoms) level.push_back(grow(Value::make_atom(a)));
        continue;
      }
      for (const Value& t : by_size[n - 1]) level.push_back(grow(Value::succ(t)));
      for (Ctor c : {Ctor::cons, Ctor::pair})
        for (std::size_t k = 1; k + 1 < n; ++k)
          for (const Value& a : by_size[k])
            for (const Value& b : by_size[n - 1 - k])
              level.push_back(grow(Value{c, {}, {a, b}}));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) index_.emplace(values_[i], i);
  }

  std::size_t bound() const { return bound_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<Value>& values() const { return values_; }
  const Value& at(std::size_t i) const { return values_[i]; }

  std::optional<std::size_t> find(const Value& v) const {
    if (rvl::size(v) > bound_) return std::nullopt;
    const auto it = index_.find(v);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  FinObject object() const { return {size(), "terms<=" + std::to_string(bound_)}; }

 private:
  std::size_t bound_;
  std::vector<Value> values_;
  std::map<Value, std::size_t, ValueLess> index_;
};

/// The partial injection computed by fname at the given fuel on the
/// truncated universe. Results that leave the universe count as undefined.
inline PInjMorphism denote(const Evaluator& ev, const std::string& fname, const Bindings& bindings,
                           const Universe& u, std::size_t fuel) {
  PInjMorphism::Assignment map(u.size());
  std::vector<std::optional<std::size_t>> preimage(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const EvalResult r = ev.run(fname, bindings, u.at(i), fuel);
    if (!r.defined()) continue;
    const auto j = u.find(r.value);
    if (!j) continue;
    if (preimage[*j])
      throw InvalidMorphism("denotation of " + fname + " is not injective: " +
                            to_string(u.at(*preimage[*j])) + " and " + to_string(u.at(i)) +
                            " both map to " + to_string(r.value) +
                            "; the validator accepted a non-injective program");
    preimage[*j] = i;
    map[i] = *j;
  }
  return {u.object(), u.object(), std::move(map)};
}

inline PInjMorphism denote(const Program& p, const std::string& fname, const Bindings& bindings,
                           std::size_t universe_bound, std::size_t fuel,
                           std::size_t cap = kDefaultUniverseCap) {
  return denote(Evaluator(p), fname, bindings, Universe(p.atoms, universe_bound, cap), fuel);
}

}  // namespace dagfix::rvl

#endif
