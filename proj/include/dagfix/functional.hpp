#ifndef DAGFIX_FUNCTIONAL_HPP
#define DAGFIX_FUNCTIONAL_HPP

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "dagfix/hom_domain.hpp"
#include "dagfix/morphism.hpp"
#include "dagfix/order.hpp"

namespace dagfix {

enum class FnOp {
  constant,
  identity,
  precompose,   // h ↦ h∘m
  postcompose,  // h ↦ m∘h
  dagger,
  join_with,
  add_with,     // DStoch partial sum h ↦ h + m
  seq,          // first, then second
  join_of,
  sum_of,
  host,
  conjugated,   // h ↦ inner(h†)†
};

using HostMap = std::function<Morphism(const Morphism&)>;

namespace detail {

struct FnNode {
  FnOp op;
  HomSpace dom;
  HomSpace cod;
  std::optional<Morphism> m;
  std::shared_ptr<const FnNode> a;
  std::shared_ptr<const FnNode> b;
  std::string name;
  HostMap host;
};

inline void require_joins(Category c, const char* what) {
  if (c == Category::dstoch)
    throw Unsupported(std::string(what) + " needs binary joins; dstoch has none");
}

inline void require_sums(Category c, const char* what) {
  if (c != Category::dstoch) throw Unsupported(std::string(what) + " is only defined on dstoch");
}

}  // namespace detail

/// A continuous functional C(X,Y) → C(X',Y') as an immutable expression tree.
class FunctionalExpr {
 public:
  using Node = detail::FnNode;

  static FunctionalExpr constant(const HomSpace& dom, Morphism m) {
    HomSpace cod = m.space();
    return make({FnOp::constant, dom, std::move(cod), std::move(m), {}, {}, {}, {}});
  }
  static FunctionalExpr identity(const HomSpace& s) {
    return make({FnOp::identity, s, s, std::nullopt, {}, {}, {}, {}});
  }
  /// h ↦ h∘m for h : m.dst → y.
  static FunctionalExpr precompose(Morphism m, const FinObject& y) {
    const Category c = m.category();
    HomSpace dom{c, m.dst(), y};
    HomSpace cod{c, m.src(), y};
    return make({FnOp::precompose, std::move(dom), std::move(cod), std::move(m), {}, {}, {}, {}});
  }
  /// h ↦ m∘h for h : x → m.src.
  static FunctionalExpr postcompose(Morphism m, const FinObject& x) {
    const Category c = m.category();
    HomSpace dom{c, x, m.src()};
    HomSpace cod{c, x, m.dst()};
    return make({FnOp::postcompose, std::move(dom), std::move(cod), std::move(m), {}, {}, {}, {}});
  }
  static FunctionalExpr dagger(const HomSpace& s) {
    return make({FnOp::dagger, s, s.flipped(), std::nullopt, {}, {}, {}, {}});
  }
  static FunctionalExpr join_with(Morphism m) {
    detail::require_joins(m.category(), "joinwith");
    HomSpace s = m.space();
    return make({FnOp::join_with, s, s, std::move(m), {}, {}, {}, {}});
  }
  static FunctionalExpr add_with(Morphism m) {
    detail::require_sums(m.category(), "addwith");
    HomSpace s = m.space();
    return make({FnOp::add_with, s, s, std::move(m), {}, {}, {}, {}});
  }
  static FunctionalExpr seq(const FunctionalExpr& first, const FunctionalExpr& second) {
    if (!(first.cod() == second.dom()))
      throw DimensionMismatch("seq: " + to_string(first.cod()) + " does not feed " +
                              to_string(second.dom()));
    return make({FnOp::seq, first.dom(), second.cod(), std::nullopt, first.node_, second.node_,
                 {}, {}});
  }
  static FunctionalExpr join_of(const FunctionalExpr& l, const FunctionalExpr& r) {
    detail::require_joins(l.dom().category, "joinof");
    same_shape(l, r, "joinof");
    return make({FnOp::join_of, l.dom(), l.cod(), std::nullopt, l.node_, r.node_, {}, {}});
  }
  static FunctionalExpr sum_of(const FunctionalExpr& l, const FunctionalExpr& r) {
    detail::require_sums(l.dom().category, "sumof");
    same_shape(l, r, "sumof");
    return make({FnOp::sum_of, l.dom(), l.cod(), std::nullopt, l.node_, r.node_, {}, {}});
  }
  /// Opaque escape hatch. The map must be continuous; nothing checks that.
  static FunctionalExpr host(std::string name, const HomSpace& dom, const HomSpace& cod,
                             HostMap fn) {
    return make({FnOp::host, dom, cod, std::nullopt, {}, {}, std::move(name), std::move(fn)});
  }

  FnOp op() const { return node_->op; }
  const HomSpace& dom() const { return node_->dom; }
  const HomSpace& cod() const { return node_->cod; }
  bool is_endo() const { return dom() == cod(); }
  const Morphism& morphism() const { return *node_->m; }
  FunctionalExpr first() const { return FunctionalExpr(node_->a); }
  FunctionalExpr second() const { return FunctionalExpr(node_->b); }
  const std::string& host_name() const { return node_->name; }
  const HostMap& host_map() const { return node_->host; }

  /// True when the tree contains no host leaves (and so can be serialized).
  bool is_closed() const {
    switch (op()) {
      case FnOp::host:
        return false;
      case FnOp::conjugated:
        return first().is_closed();
      case FnOp::seq:
      case FnOp::join_of:
      case FnOp::sum_of:
        return first().is_closed() && second().is_closed();
      default:
        return true;
    }
  }

  std::size_t depth() const {
    switch (op()) {
      case FnOp::conjugated:
        return 1 + first().depth();
      case FnOp::seq:
      case FnOp::join_of:
      case FnOp::sum_of:
        return 1 + std::max(first().depth(), second().depth());
      default:
        return 0;
    }
  }

  /// Structural equality. Host leaves compare by name and spaces.
  friend bool operator==(const FunctionalExpr& x, const FunctionalExpr& y) {
    if (x.node_ == y.node_) return true;
    const Node& a = *x.node_;
    const Node& b = *y.node_;
    if (a.op != b.op || !(a.dom == b.dom) || !(a.cod == b.cod) || a.m != b.m || a.name != b.name)
      return false;
    if (static_cast<bool>(a.a) != static_cast<bool>(b.a)) return false;
    if (a.a && !(FunctionalExpr(a.a) == FunctionalExpr(b.a))) return false;
    if (static_cast<bool>(a.b) != static_cast<bool>(b.b)) return false;
    return !a.b || FunctionalExpr(a.b) == FunctionalExpr(b.b);
  }

  friend FunctionalExpr conj(const FunctionalExpr& phi);

 private:
  explicit FunctionalExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static FunctionalExpr make(Node n) {
    return FunctionalExpr(std::make_shared<const Node>(std::move(n)));
  }

  static void same_shape(const FunctionalExpr& l, const FunctionalExpr& r, const char* what) {
    if (!(l.dom() == r.dom()) || !(l.cod() == r.cod()))
      throw DimensionMismatch(std::string(what) + ": operands have different hom-spaces");
  }

  std::shared_ptr<const Node> node_;
};

/// Conjugate φ̄ = ξ∘φ∘ξ⁻¹, i.e. h ↦ φ(h†)†, as a symbolic rewrite. Host
/// leaves are wrapped; conjugating a wrapper unwraps it.
inline FunctionalExpr conj(const FunctionalExpr& phi) {
  using Node = FunctionalExpr::Node;
  const Node& n = *phi.node_;
  auto make = [](Node x) { return FunctionalExpr::make(std::move(x)); };
  switch (n.op) {
    case FnOp::constant:
      return FunctionalExpr::constant(n.dom.flipped(), dagger(*n.m));
    case FnOp::identity:
      return FunctionalExpr::identity(n.dom.flipped());
    case FnOp::precompose:  // (h†∘m)† = m†∘h
      return FunctionalExpr::postcompose(dagger(*n.m), n.dom.dst);
    case FnOp::postcompose:  // (m∘h†)† = h∘m†
      return FunctionalExpr::precompose(dagger(*n.m), n.dom.src);
    case FnOp::dagger:
      return FunctionalExpr::dagger(n.dom.flipped());
    case FnOp::join_with:
      return FunctionalExpr::join_with(dagger(*n.m));
    case FnOp::add_with:
      return FunctionalExpr::add_with(dagger(*n.m));
    case FnOp::seq:
      return FunctionalExpr::seq(conj(phi.first()), conj(phi.second()));
    case FnOp::join_of:
      return FunctionalExpr::join_of(conj(phi.first()), conj(phi.second()));
    case FnOp::sum_of:
      return FunctionalExpr::sum_of(conj(phi.first()), conj(phi.second()));
    case FnOp::host:
      return make({FnOp::conjugated, n.dom.flipped(), n.cod.flipped(), std::nullopt, phi.node_,
                   {}, {}, {}});
    case FnOp::conjugated:
      return phi.first();
  }
  throw std::logic_error("unknown functional op");
}

namespace detail {

inline Morphism apply_unchecked(const FunctionalExpr& phi, const Morphism& h, double tol) {
  switch (phi.op()) {
    case FnOp::constant:
      return phi.morphism();
    case FnOp::identity:
      return h;
    case FnOp::precompose:
      return compose(h, phi.morphism());
    case FnOp::postcompose:
      return compose(phi.morphism(), h);
    case FnOp::dagger:
      return dagger(h);
    case FnOp::join_with:
      return join(h, phi.morphism());
    case FnOp::add_with:
      return add(h, phi.morphism(), tol);
    case FnOp::seq:
      return apply_unchecked(phi.second(), apply_unchecked(phi.first(), h, tol), tol);
    case FnOp::join_of:
      return join(apply_unchecked(phi.first(), h, tol), apply_unchecked(phi.second(), h, tol));
    case FnOp::sum_of:
      return add(apply_unchecked(phi.first(), h, tol), apply_unchecked(phi.second(), h, tol), tol);
    case FnOp::host: {
      Morphism out = phi.host_map()(h);
      if (!in_space(out, phi.cod(), tol))
        throw DimensionMismatch("host functional " + phi.host_name() + " left " +
                                to_string(phi.cod()));
      return out;
    }
    case FnOp::conjugated:
      return dagger(apply_unchecked(phi.first(), dagger(h), tol));
  }
  throw std::logic_error("unknown functional op");
}

}  // namespace detail

inline Morphism apply(const FunctionalExpr& phi, const Morphism& h,
                      double tolerance = kDefaultTolerance) {
  if (!in_space(h, phi.dom(), tolerance))
    throw DimensionMismatch("argument " + to_string(h.space()) + " not in " +
                            to_string(phi.dom()));
  return detail::apply_unchecked(phi, h, tolerance);
}

/// Least fixed point of an endo-functional.
inline KleeneResult<Morphism> fix_functional(const FunctionalExpr& phi, const FixPolicy& policy,
                                             double tolerance = kDefaultTolerance) {
  if (!phi.is_endo())
    throw DomainMismatch("fix needs an endo-functional, got " + to_string(phi.dom()) + " -> " +
                         to_string(phi.cod()));
  return kleene_fix(
      [&](const Morphism& h) { return detail::apply_unchecked(phi, h, tolerance); },
      hom_domain(phi.dom(), tolerance), policy);
}

inline std::string to_string(FnOp op) {
  switch (op) {
    case FnOp::constant: return "const";
    case FnOp::identity: return "identity";
    case FnOp::precompose: return "precompose";
    case FnOp::postcompose: return "postcompose";
    case FnOp::dagger: return "dagger";
    case FnOp::join_with: return "joinwith";
    case FnOp::add_with: return "addwith";
    case FnOp::seq: return "seq";
    case FnOp::join_of: return "joinof";
    case FnOp::sum_of: return "sumof";
    case FnOp::host: return "host";
    case FnOp::conjugated: return "conj";
  }
  return "?";
}

inline std::string to_string(const FunctionalExpr& phi) {
  const std::string head = to_string(phi.op());
  switch (phi.op()) {
    case FnOp::constant:
    case FnOp::precompose:
    case FnOp::postcompose:
    case FnOp::join_with:
    case FnOp::add_with:
      return head + "(" + to_string(phi.morphism()) + ")";
    case FnOp::identity:
    case FnOp::dagger:
      return head;
    case FnOp::seq:
    case FnOp::join_of:
    case FnOp::sum_of:
      return head + "(" + to_string(phi.first()) + ", " + to_string(phi.second()) + ")";
    case FnOp::host:
      return head + ":" + phi.host_name();
    case FnOp::conjugated:
      return head + "(" + to_string(phi.first()) + ")";
  }
  return head;
}

}  // namespace dagfix

#endif
