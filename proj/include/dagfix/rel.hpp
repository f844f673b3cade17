#ifndef DAGFIX_REL_HPP
#define DAGFIX_REL_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "dagfix/errors.hpp"
#include "dagfix/object.hpp"

namespace dagfix {

// A relation R ⊆ src × dst stored as a bit matrix: one row of 64-bit words
// per source element, bit j of row i set iff (i, j) ∈ R.
class RelMorphism {
 public:
  using Word = std::uint64_t;

  RelMorphism() = default;
  RelMorphism(FinObject src, FinObject dst)
      : src_(std::move(src)),
        dst_(std::move(dst)),
        words_per_row_((dst_.size + 63) / 64),
        bits_(src_.size * words_per_row_, Word{0}) {}

  RelMorphism(FinObject src, FinObject dst,
              const std::vector<std::pair<std::size_t, std::size_t>>& pairs)
      : RelMorphism(std::move(src), std::move(dst)) {
    for (auto [i, j] : pairs) set(i, j);
  }

  static RelMorphism identity(const FinObject& x) {
    RelMorphism r(x, x);
    for (std::size_t i = 0; i < x.size; ++i) r.set(i, i);
    return r;
  }

  const FinObject& src() const { return src_; }
  const FinObject& dst() const { return dst_; }

  bool contains(std::size_t i, std::size_t j) const {
    return (row(i)[j / 64] >> (j % 64)) & 1U;
  }

  void set(std::size_t i, std::size_t j) {
    if (i >= src_.size || j >= dst_.size)
      throw DimensionMismatch("pair (" + std::to_string(i) + "," + std::to_string(j) +
                              ") outside " + to_string(src_) + " x " + to_string(dst_));
    row(i)[j / 64] |= Word{1} << (j % 64);
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (Word w : bits_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool empty() const {
    for (Word w : bits_)
      if (w != 0) return false;
    return true;
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < src_.size; ++i)
      for (std::size_t j = 0; j < dst_.size; ++j)
        if (contains(i, j)) out.emplace_back(i, j);
    return out;
  }

  std::size_t words_per_row() const { return words_per_row_; }
  const Word* row(std::size_t i) const { return bits_.data() + i * words_per_row_; }
  Word* row(std::size_t i) { return bits_.data() + i * words_per_row_; }

  friend bool operator==(const RelMorphism& a, const RelMorphism& b) {
    return a.src_ == b.src_ && a.dst_ == b.dst_ && a.bits_ == b.bits_;
  }

 private:
  FinObject src_;
  FinObject dst_;
  std::size_t words_per_row_ = 0;
  boost::container::small_vector<Word, 4> bits_;
};

namespace detail {

inline void require_same_hom(const RelMorphism& a, const RelMorphism& b, const char* op) {
  if (a.src() != b.src() || a.dst() != b.dst())
    throw DimensionMismatch(std::string(op) + ": hom-sets differ");
}

}  // namespace detail

/// g ∘ f: (x, z) iff ∃y. (x, y) ∈ f ∧ (y, z) ∈ g.
inline RelMorphism compose(const RelMorphism& g, const RelMorphism& f) {
  if (f.dst() != g.src())
    throw DimensionMismatch("compose: " + to_string(f.dst()) + " != " + to_string(g.src()));
  RelMorphism out(f.src(), g.dst());
  const std::size_t w = out.words_per_row();
  for (std::size_t x = 0; x < f.src().size; ++x) {
    auto* acc = out.row(x);
    const auto* fr = f.row(x);
    for (std::size_t k = 0; k < f.words_per_row(); ++k) {
      RelMorphism::Word bits = fr[k];
      while (bits != 0) {
        const std::size_t y = k * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        const auto* gr = g.row(y);
        for (std::size_t c = 0; c < w; ++c) acc[c] |= gr[c];
      }
    }
  }
  return out;
}

/// Relational converse.
inline RelMorphism dagger(const RelMorphism& f) {
  RelMorphism out(f.dst(), f.src());
  for (std::size_t i = 0; i < f.src().size; ++i)
    for (std::size_t j = 0; j < f.dst().size; ++j)
      if (f.contains(i, j)) out.set(j, i);
  return out;
}

inline bool leq(const RelMorphism& a, const RelMorphism& b) {
  detail::require_same_hom(a, b, "leq");
  for (std::size_t i = 0; i < a.src().size; ++i)
    for (std::size_t k = 0; k < a.words_per_row(); ++k)
      if ((a.row(i)[k] & ~b.row(i)[k]) != 0) return false;
  return true;
}

inline RelMorphism join(const RelMorphism& a, const RelMorphism& b) {
  detail::require_same_hom(a, b, "join");
  RelMorphism out = a;
  for (std::size_t i = 0; i < a.src().size; ++i)
    for (std::size_t k = 0; k < a.words_per_row(); ++k) out.row(i)[k] |= b.row(i)[k];
  return out;
}

inline RelMorphism complement(const RelMorphism& a) {
  RelMorphism out(a.src(), a.dst());
  for (std::size_t i = 0; i < a.src().size; ++i)
    for (std::size_t j = 0; j < a.dst().size; ++j)
      if (!a.contains(i, j)) out.set(i, j);
  return out;
}

/// The sub-block of rows [row0, row0+rows.size) and columns [col0, col0+cols.size).
inline RelMorphism block(const RelMorphism& f, std::size_t row0, const FinObject& rows,
                         std::size_t col0, const FinObject& cols) {
  if (row0 + rows.size > f.src().size || col0 + cols.size > f.dst().size)
    throw DimensionMismatch("block outside relation");
  RelMorphism out(rows, cols);
  for (std::size_t i = 0; i < rows.size; ++i)
    for (std::size_t j = 0; j < cols.size; ++j)
      if (f.contains(row0 + i, col0 + j)) out.set(i, j);
  return out;
}

inline std::string to_string(const RelMorphism& r) {
  std::string s = "{";
  bool first = true;
  for (auto [i, j] : r.pairs()) {
    if (!first) s += ",";
    first = false;
    s += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }
  return s + "}";
}

}  // namespace dagfix

#endif
