#ifndef DAGFIX_OBJECT_HPP
#define DAGFIX_OBJECT_HPP

#include <cstddef>
#include <string>
#include <string_view>

namespace dagfix {

/// A finite set {0, ..., size-1}. Objects are identified by size and label.
struct FinObject {
  std::size_t size = 0;
  std::string label;

  FinObject() = default;
  FinObject(std::size_t size, std::string label = {})  // NOLINT(google-explicit-constructor)
      : size(size), label(std::move(label)) {}

  friend bool operator==(const FinObject&, const FinObject&) = default;
};

inline std::string to_string(const FinObject& o) {
  if (o.label.empty()) return std::to_string(o.size);
  return o.label + ":" + std::to_string(o.size);
}

/// X ⊎ A, with X's elements first.
inline FinObject disjoint_union(const FinObject& x, const FinObject& a) {
  std::string label;
  if (!x.label.empty() || !a.label.empty()) label = x.label + "+" + a.label;
  return {x.size + a.size, std::move(label)};
}

enum class Category { rel, pinj, dstoch };

inline std::string_view to_string(Category c) {
  switch (c) {
    case Category::rel:
      return "rel";
    case Category::pinj:
      return "pinj";
    case Category::dstoch:
      return "dstoch";
  }
  return "?";
}

/// The hom-set C(src, dst) of one of the concrete categories.
struct HomSpace {
  Category category = Category::rel;
  FinObject src;
  FinObject dst;

  HomSpace flipped() const { return {category, dst, src}; }

  friend bool operator==(const HomSpace&, const HomSpace&) = default;
};

inline std::string to_string(const HomSpace& s) {
  return std::string(to_string(s.category)) + "(" + to_string(s.src) + "," +
         to_string(s.dst) + ")";
}

}  // namespace dagfix

#endif
