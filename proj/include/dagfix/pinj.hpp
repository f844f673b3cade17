#ifndef DAGFIX_PINJ_HPP
#define DAGFIX_PINJ_HPP

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dagfix/errors.hpp"
#include "dagfix/object.hpp"
#include "dagfix/rel.hpp"

namespace dagfix {

/// A partial injection src ⇀ dst.
class PInjMorphism {
 public:
  using Assignment = std::vector<std::optional<std::size_t>>;

  PInjMorphism() = default;

  /// The nowhere-defined map.
  PInjMorphism(FinObject src, FinObject dst)
      : src_(std::move(src)), dst_(std::move(dst)), map_(src_.size) {}

  PInjMorphism(FinObject src, FinObject dst, Assignment map)
      : src_(std::move(src)), dst_(std::move(dst)), map_(std::move(map)) {
    if (map_.size() != src_.size)
      throw DimensionMismatch("pinj assignment has " + std::to_string(map_.size()) +
                              " entries for source of size " + std::to_string(src_.size));
    std::vector<bool> hit(dst_.size, false);
    for (std::size_t x = 0; x < map_.size(); ++x) {
      if (!map_[x]) continue;
      const std::size_t y = *map_[x];
      if (y >= dst_.size)
        throw DimensionMismatch("pinj target " + std::to_string(y) + " outside " +
                                to_string(dst_));
      if (hit[y])
        throw InvalidMorphism("pinj not injective: target " + std::to_string(y) +
                              " hit twice");
      hit[y] = true;
    }
  }

  PInjMorphism(FinObject src, FinObject dst,
               const std::vector<std::pair<std::size_t, std::size_t>>& graph)
      : PInjMorphism(src, dst, assignment_from(src, graph)) {}

  PInjMorphism(FinObject src, FinObject dst,
               std::initializer_list<std::pair<std::size_t, std::size_t>> graph)
      : PInjMorphism(src, dst, std::vector<std::pair<std::size_t, std::size_t>>(graph)) {}

  static PInjMorphism identity(const FinObject& x) {
    Assignment m(x.size);
    for (std::size_t i = 0; i < x.size; ++i) m[i] = i;
    return {x, x, std::move(m)};
  }

  const FinObject& src() const { return src_; }
  const FinObject& dst() const { return dst_; }
  const Assignment& assignment() const { return map_; }

  std::optional<std::size_t> operator()(std::size_t x) const {
    if (x >= map_.size()) throw DimensionMismatch("pinj argument out of range");
    return map_[x];
  }

  std::size_t defined_count() const {
    std::size_t n = 0;
    for (const auto& y : map_) n += y.has_value();
    return n;
  }

  std::vector<std::pair<std::size_t, std::size_t>> graph() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t x = 0; x < map_.size(); ++x)
      if (map_[x]) out.emplace_back(x, *map_[x]);
    return out;
  }

  friend bool operator==(const PInjMorphism&, const PInjMorphism&) = default;

 private:
  static Assignment assignment_from(const FinObject& src,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& g) {
    Assignment m(src.size);
    for (auto [x, y] : g) {
      if (x >= src.size) throw DimensionMismatch("pinj source index out of range");
      if (m[x] && *m[x] != y)
        throw InvalidMorphism("pinj not single-valued at " + std::to_string(x));
      m[x] = y;
    }
    return m;
  }

  FinObject src_;
  FinObject dst_;
  Assignment map_;
};

inline PInjMorphism compose(const PInjMorphism& g, const PInjMorphism& f) {
  if (f.dst() != g.src())
    throw DimensionMismatch("compose: " + to_string(f.dst()) + " != " + to_string(g.src()));
  PInjMorphism::Assignment m(f.src().size);
  for (std::size_t x = 0; x < m.size(); ++x)
    if (auto y = f.assignment()[x]) m[x] = g.assignment()[*y];
  return {f.src(), g.dst(), std::move(m)};
}

/// Partial inverse.
inline PInjMorphism dagger(const PInjMorphism& f) {
  PInjMorphism::Assignment m(f.dst().size);
  for (std::size_t x = 0; x < f.src().size; ++x)
    if (auto y = f.assignment()[x]) m[*y] = x;
  return {f.dst(), f.src(), std::move(m)};
}

/// Graph extension: wherever a is defined, b is defined with the same value.
inline bool leq(const PInjMorphism& a, const PInjMorphism& b) {
  if (a.src() != b.src() || a.dst() != b.dst()) throw DimensionMismatch("leq: hom-sets differ");
  for (std::size_t x = 0; x < a.src().size; ++x)
    if (a.assignment()[x] && a.assignment()[x] != b.assignment()[x]) return false;
  return true;
}

/// Union of graphs; only defined for compatible maps.
inline PInjMorphism join(const PInjMorphism& a, const PInjMorphism& b) {
  if (a.src() != b.src() || a.dst() != b.dst())
    throw DimensionMismatch("join: hom-sets differ");
  PInjMorphism::Assignment m = a.assignment();
  for (std::size_t x = 0; x < m.size(); ++x) {
    const auto& y = b.assignment()[x];
    if (!y) continue;
    if (m[x] && m[x] != y)
      throw IncompatibleJoin("join not single-valued at " + std::to_string(x));
    m[x] = y;
  }
  try {
    return {a.src(), a.dst(), std::move(m)};
  } catch (const InvalidMorphism& e) {
    throw IncompatibleJoin(std::string("join not injective: ") + e.what());
  }
}

inline RelMorphism to_rel(const PInjMorphism& f) { return {f.src(), f.dst(), f.graph()}; }

/// Throws InvalidMorphism unless r is the graph of a partial injection.
inline PInjMorphism pinj_from_rel(const RelMorphism& r) { return {r.src(), r.dst(), r.pairs()}; }

inline std::string to_string(const PInjMorphism& f) {
  std::string s = "{";
  bool first = true;
  for (auto [x, y] : f.graph()) {
    if (!first) s += ",";
    first = false;
    s += std::to_string(x) + "->" + std::to_string(y);
  }
  return s + "}";
}

}  // namespace dagfix

#endif
