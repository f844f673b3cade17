#ifndef DAGFIX_MORPHISM_HPP
#define DAGFIX_MORPHISM_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "dagfix/dstoch.hpp"
#include "dagfix/errors.hpp"
#include "dagfix/object.hpp"
#include "dagfix/pinj.hpp"
#include "dagfix/rel.hpp"

namespace dagfix {

inline constexpr std::size_t kDefaultEnumerationCap = 9;

/// An arrow of Rel, PInj or DStoch≤1.
class Morphism {
 public:
  using Variant = std::variant<RelMorphism, PInjMorphism, StochMorphism>;

  Morphism() = default;
  Morphism(RelMorphism r) : v_(std::move(r)) {}     // NOLINT(google-explicit-constructor)
  Morphism(PInjMorphism p) : v_(std::move(p)) {}    // NOLINT(google-explicit-constructor)
  Morphism(StochMorphism s) : v_(std::move(s)) {}   // NOLINT(google-explicit-constructor)

  Category category() const { return static_cast<Category>(v_.index()); }

  const FinObject& src() const {
    return std::visit([](const auto& m) -> const FinObject& { return m.src(); }, v_);
  }
  const FinObject& dst() const {
    return std::visit([](const auto& m) -> const FinObject& { return m.dst(); }, v_);
  }
  HomSpace space() const { return {category(), src(), dst()}; }

  const Variant& variant() const { return v_; }

  template <class T>
  const T& as() const {
    if (const T* p = std::get_if<T>(&v_)) return *p;
    throw DimensionMismatch("morphism is in category " + std::string(to_string(category())));
  }

  friend bool operator==(const Morphism&, const Morphism&) = default;

 private:
  Variant v_;
};

namespace detail {

template <class F>
auto visit_same(const Morphism& a, const Morphism& b, const char* op, F&& f) {
  if (a.category() != b.category())
    throw DimensionMismatch(std::string(op) + ": morphisms from different categories");
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        return f(x, std::get<T>(b.variant()));
      },
      a.variant());
}

}  // namespace detail

inline Morphism compose(const Morphism& g, const Morphism& f) {
  return detail::visit_same(g, f, "compose",
                            [](const auto& x, const auto& y) { return Morphism(compose(x, y)); });
}

inline Morphism dagger(const Morphism& f) {
  return std::visit([](const auto& m) { return Morphism(dagger(m)); }, f.variant());
}

inline bool leq(const Morphism& a, const Morphism& b, double tolerance = kDefaultTolerance) {
  return detail::visit_same(a, b, "leq", [&](const auto& x, const auto& y) {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, StochMorphism>)
      return leq(x, y, tolerance);
    else
      return leq(x, y);
  });
}

/// Binary join; DStoch≤1 provides none.
inline Morphism join(const Morphism& a, const Morphism& b) {
  return detail::visit_same(a, b, "join", [](const auto& x, const auto& y) -> Morphism {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, StochMorphism>)
      throw Unsupported("dstoch has no binary joins");
    else
      return join(x, y);
  });
}

/// Partial sum of DStoch≤1 maps.
inline Morphism add(const Morphism& a, const Morphism& b, double tolerance = kDefaultTolerance) {
  return detail::visit_same(a, b, "add", [&](const auto& x, const auto& y) -> Morphism {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, StochMorphism>)
      return add(x, y, tolerance);
    else
      throw Unsupported("add is only provided for dstoch");
  });
}

/// Exact equality for Rel/PInj, entrywise within tolerance for DStoch.
inline bool equivalent(const Morphism& a, const Morphism& b, double tolerance = kDefaultTolerance) {
  if (a.category() != b.category()) return false;
  if (a.category() == Category::dstoch)
    return approx_equal(a.as<StochMorphism>(), b.as<StochMorphism>(), tolerance);
  return a == b;
}

inline Morphism bottom(const HomSpace& s) {
  switch (s.category) {
    case Category::rel:
      return RelMorphism(s.src, s.dst);
    case Category::pinj:
      return PInjMorphism(s.src, s.dst);
    case Category::dstoch:
      return StochMorphism(s.src, s.dst);
  }
  throw Unsupported("unknown category");
}

inline Morphism identity(Category c, const FinObject& x) {
  switch (c) {
    case Category::rel:
      return RelMorphism::identity(x);
    case Category::pinj:
      return PInjMorphism::identity(x);
    case Category::dstoch:
      return StochMorphism::identity(x);
  }
  throw Unsupported("unknown category");
}

/// Checks the dimensions of m against a hom-space (and DStoch invariants).
inline bool in_space(const Morphism& m, const HomSpace& s, double tolerance = kDefaultTolerance) {
  if (m.space() != s) return false;
  if (s.category == Category::dstoch) {
    try {
      m.as<StochMorphism>().validate(tolerance);
    } catch (const InvalidMorphism&) {
      return false;
    }
  }
  return true;
}

inline std::string to_string(const Morphism& m) {
  return std::visit([](const auto& x) { return to_string(x); }, m.variant());
}

/// Every morphism X → Y of Rel or PInj, each exactly once, in a fixed order.
inline std::vector<Morphism> enumerate_homs(Category c, const FinObject& x, const FinObject& y,
                                            std::size_t cap = kDefaultEnumerationCap) {
  if (c == Category::dstoch) throw Unsupported("dstoch hom-sets are uncountable");
  if (x.size * y.size > cap)
    throw TooLarge("hom-set " + to_string(x) + " x " + to_string(y) + " exceeds enumeration cap " +
                   std::to_string(cap));
  std::vector<Morphism> out;
  if (c == Category::rel) {
    const std::size_t cells = x.size * y.size;
    const std::uint64_t count = std::uint64_t{1} << cells;
    out.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      RelMorphism r(x, y);
      for (std::size_t k = 0; k < cells; ++k)
        if ((mask >> k) & 1U) r.set(k / y.size, k % y.size);
      out.emplace_back(std::move(r));
    }
    return out;
  }
  PInjMorphism::Assignment m(x.size);
  std::vector<bool> used(y.size, false);
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == x.size) {
      out.emplace_back(PInjMorphism(x, y, m));
      return;
    }
    m[i].reset();
    go(i + 1);
    for (std::size_t j = 0; j < y.size; ++j) {
      if (used[j]) continue;
      used[j] = true;
      m[i] = j;
      go(i + 1);
      used[j] = false;
    }
    m[i].reset();
  };
  go(0);
  return out;
}

inline bool is_hermitian(const Morphism& f, double tolerance = kDefaultTolerance) {
  if (f.src() != f.dst()) throw DimensionMismatch("hermitian requires an endomorphism");
  return equivalent(f, dagger(f), tolerance);
}

inline bool is_unitary(const Morphism& f, double tolerance = kDefaultTolerance) {
  const Morphism d = dagger(f);
  return equivalent(compose(d, f), identity(f.category(), f.src()), tolerance) &&
         equivalent(compose(f, d), identity(f.category(), f.dst()), tolerance);
}

}  // namespace dagfix

#endif
