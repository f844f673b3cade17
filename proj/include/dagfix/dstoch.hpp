#ifndef DAGFIX_DSTOCH_HPP
#define DAGFIX_DSTOCH_HPP

#include <algorithm>
#include <cmath>
#include <sstream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dagfix/errors.hpp"
#include "dagfix/object.hpp"

namespace dagfix {

inline constexpr double kDefaultTolerance = 1e-9;

// A subnormalized doubly stochastic map on an n-element set. Entry (i, j) is the
// weight sent from source element i to target element j, so g ∘ f is the
// matrix product F·G.
class StochMorphism {
 public:
  StochMorphism() = default;

  /// The zero matrix.
  StochMorphism(FinObject src, FinObject dst)
      : src_(std::move(src)), dst_(std::move(dst)), entries_(src_.size * src_.size, 0.0) {
    if (src_.size != dst_.size)
      throw DimensionMismatch("dstoch hom-sets are square: " + to_string(src_) + " vs " +
                              to_string(dst_));
  }

  StochMorphism(FinObject src, FinObject dst, const std::vector<std::vector<double>>& rows,
                double tolerance = kDefaultTolerance)
      : StochMorphism(std::move(src), std::move(dst)) {
    const std::size_t n = src_.size;
    if (rows.size() != n)
      throw DimensionMismatch("dstoch: expected " + std::to_string(n) + " rows");
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n)
        throw DimensionMismatch("dstoch: row " + std::to_string(i) + " has wrong length");
      for (std::size_t j = 0; j < n; ++j) entries_[i * n + j] = rows[i][j];
    }
    validate(tolerance);
  }

  static StochMorphism square(std::size_t n, const std::vector<std::vector<double>>& rows,
                              double tolerance = kDefaultTolerance) {
    return {FinObject{n}, FinObject{n}, rows, tolerance};
  }

  static StochMorphism identity(const FinObject& x) {
    StochMorphism m(x, x);
    for (std::size_t i = 0; i < x.size; ++i) m.entries_[i * x.size + i] = 1.0;
    return m;
  }

  const FinObject& src() const { return src_; }
  const FinObject& dst() const { return dst_; }
  std::size_t n() const { return src_.size; }
  double at(std::size_t i, std::size_t j) const { return entries_[i * n() + j]; }
  std::span<const double> entries() const { return entries_; }

  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> out(n(), std::vector<double>(n()));
    for (std::size_t i = 0; i < n(); ++i)
      for (std::size_t j = 0; j < n(); ++j) out[i][j] = at(i, j);
    return out;
  }

  /// Checks nonnegativity and row/column sums ≤ 1, both within tolerance.
  void validate(double tolerance = kDefaultTolerance) const {
    const std::size_t k = n();
    for (std::size_t i = 0; i < k; ++i) {
      double row = 0.0;
      double col = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        if (!(at(i, j) >= -tolerance))
          throw InvalidMorphism("dstoch: negative entry at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
        row += at(i, j);
        col += at(j, i);
      }
      if (row > 1.0 + tolerance)
        throw InvalidMorphism("dstoch: row " + std::to_string(i) + " sum exceeds 1");
      if (col > 1.0 + tolerance)
        throw InvalidMorphism("dstoch: column " + std::to_string(i) + " sum exceeds 1");
    }
  }

  friend bool operator==(const StochMorphism&, const StochMorphism&) = default;

 private:
  friend StochMorphism compose(const StochMorphism&, const StochMorphism&);
  friend StochMorphism dagger(const StochMorphism&);
  template <class Op>
  friend StochMorphism zip_entries(const StochMorphism&, const StochMorphism&, Op, const char*);
  friend StochMorphism scale(const StochMorphism&, double);

  FinObject src_;
  FinObject dst_;
  std::vector<double> entries_;
};

inline StochMorphism compose(const StochMorphism& g, const StochMorphism& f) {
  if (f.dst() != g.src())
    throw DimensionMismatch("compose: " + to_string(f.dst()) + " != " + to_string(g.src()));
  const std::size_t n = f.n();
  StochMorphism out(f.src(), g.dst());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += f.at(i, j) * g.at(j, k);
      out.entries_[i * n + k] = s;
    }
  return out;
}

/// Transpose.
inline StochMorphism dagger(const StochMorphism& f) {
  const std::size_t n = f.n();
  StochMorphism out(f.dst(), f.src());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.entries_[j * n + i] = f.at(i, j);
  return out;
}

template <class Op>
StochMorphism zip_entries(const StochMorphism& a, const StochMorphism& b, Op op, const char* what) {
  if (a.src() != b.src() || a.dst() != b.dst())
    throw DimensionMismatch(std::string(what) + ": hom-sets differ");
  StochMorphism out(a.src(), a.dst());
  for (std::size_t k = 0; k < out.entries_.size(); ++k)
    out.entries_[k] = op(a.entries_[k], b.entries_[k]);
  return out;
}

inline StochMorphism scale(const StochMorphism& a, double t) {
  StochMorphism out = a;
  for (double& e : out.entries_) e *= t;
  return out;
}

/// Entrywise order, within tolerance.
inline bool leq(const StochMorphism& a, const StochMorphism& b,
                double tolerance = kDefaultTolerance) {
  if (a.src() != b.src() || a.dst() != b.dst()) throw DimensionMismatch("leq: hom-sets differ");
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    if (a.entries()[k] > b.entries()[k] + tolerance) return false;
  return true;
}

/// Largest entrywise absolute difference.
inline double distance(const StochMorphism& a, const StochMorphism& b) {
  if (a.src() != b.src() || a.dst() != b.dst())
    throw DimensionMismatch("distance: hom-sets differ");
  double d = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    d = std::max(d, std::abs(a.entries()[k] - b.entries()[k]));
  return d;
}

inline bool approx_equal(const StochMorphism& a, const StochMorphism& b,
                         double tolerance = kDefaultTolerance) {
  return a.src() == b.src() && a.dst() == b.dst() && distance(a, b) <= tolerance;
}

/// Entrywise maximum; the supremum of an ascending chain.
inline StochMorphism entrywise_max(const StochMorphism& a, const StochMorphism& b) {
  return zip_entries(a, b, [](double x, double y) { return std::max(x, y); }, "sup");
}

/// Partial sum; throws InvalidMorphism when the result is not subnormalized.
inline StochMorphism add(const StochMorphism& a, const StochMorphism& b,
                         double tolerance = kDefaultTolerance) {
  StochMorphism out = zip_entries(a, b, [](double x, double y) { return x + y; }, "add");
  out.validate(tolerance);
  return out;
}

inline std::string to_string(const StochMorphism& m) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (std::size_t i = 0; i < m.n(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.n(); ++j) os << (j ? "," : "") << m.at(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace dagfix

#endif
