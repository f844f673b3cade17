#ifndef DAGFIX_PARAM_FUNCTIONAL_HPP
#define DAGFIX_PARAM_FUNCTIONAL_HPP

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "dagfix/functional.hpp"

namespace dagfix {

enum class PfOp {
  arg_x,
  arg_p,
  constant,
  precompose,   // e∘m
  postcompose,  // m∘e
  dagger,
  join_with,
  add_with,
  join_of,
  sum_of,
  compose,      // first∘second
  apply,        // fn(first)
  host,
  conjugated,   // (x, p) ↦ inner(x†, p†)†
};

using HostMap2 = std::function<Morphism(const Morphism&, const Morphism&)>;

namespace detail {

struct PfNode {
  PfOp op;
  HomSpace x_space;
  HomSpace p_space;
  HomSpace space;  // result
  std::optional<Morphism> m;
  std::shared_ptr<const PfNode> a;
  std::shared_ptr<const PfNode> b;
  std::optional<FunctionalExpr> fn;
  std::string name;
  HostMap2 host;
};

}  // namespace detail

/// A term ψ(x, p) with x ∈ x_space and p ∈ p_space.
class ParamFunctionalExpr {
 public:
  using Node = detail::PfNode;

  static ParamFunctionalExpr arg_x(const HomSpace& xs, const HomSpace& ps) {
    return make({PfOp::arg_x, xs, ps, xs, {}, {}, {}, {}, {}, {}});
  }
  static ParamFunctionalExpr arg_p(const HomSpace& xs, const HomSpace& ps) {
    return make({PfOp::arg_p, xs, ps, ps, {}, {}, {}, {}, {}, {}});
  }
  static ParamFunctionalExpr constant(const HomSpace& xs, const HomSpace& ps, Morphism m) {
    HomSpace s = m.space();
    return make({PfOp::constant, xs, ps, std::move(s), std::move(m), {}, {}, {}, {}, {}});
  }
  /// e∘m with m : A → B and e : B → Y.
  static ParamFunctionalExpr precompose(Morphism m, const ParamFunctionalExpr& e) {
    if (!(m.dst() == e.space().src) || m.category() != e.space().category)
      throw DimensionMismatch("precompose: " + to_string(m.space()) + " then " +
                              to_string(e.space()));
    HomSpace s{m.category(), m.src(), e.space().dst};
    return make({PfOp::precompose, e.x_space(), e.p_space(), std::move(s), std::move(m), e.node_,
                 {}, {}, {}, {}});
  }
  /// m∘e with e : X → A and m : A → B.
  static ParamFunctionalExpr postcompose(Morphism m, const ParamFunctionalExpr& e) {
    if (!(m.src() == e.space().dst) || m.category() != e.space().category)
      throw DimensionMismatch("postcompose: " + to_string(e.space()) + " then " +
                              to_string(m.space()));
    HomSpace s{m.category(), e.space().src, m.dst()};
    return make({PfOp::postcompose, e.x_space(), e.p_space(), std::move(s), std::move(m),
                 e.node_, {}, {}, {}, {}});
  }
  static ParamFunctionalExpr dagger(const ParamFunctionalExpr& e) {
    return make({PfOp::dagger, e.x_space(), e.p_space(), e.space().flipped(), {}, e.node_, {}, {},
                 {}, {}});
  }
  static ParamFunctionalExpr join_with(Morphism m, const ParamFunctionalExpr& e) {
    detail::require_joins(m.category(), "joinwith");
    if (!(m.space() == e.space())) throw DimensionMismatch("joinwith: operand spaces differ");
    return make({PfOp::join_with, e.x_space(), e.p_space(), e.space(), std::move(m), e.node_, {},
                 {}, {}, {}});
  }
  static ParamFunctionalExpr add_with(Morphism m, const ParamFunctionalExpr& e) {
    detail::require_sums(m.category(), "addwith");
    if (!(m.space() == e.space())) throw DimensionMismatch("addwith: operand spaces differ");
    return make({PfOp::add_with, e.x_space(), e.p_space(), e.space(), std::move(m), e.node_, {},
                 {}, {}, {}});
  }
  static ParamFunctionalExpr join_of(const ParamFunctionalExpr& l, const ParamFunctionalExpr& r) {
    detail::require_joins(l.space().category, "joinof");
    same_shape(l, r, "joinof");
    return make({PfOp::join_of, l.x_space(), l.p_space(), l.space(), {}, l.node_, r.node_, {}, {},
                 {}});
  }
  static ParamFunctionalExpr sum_of(const ParamFunctionalExpr& l, const ParamFunctionalExpr& r) {
    detail::require_sums(l.space().category, "sumof");
    same_shape(l, r, "sumof");
    return make({PfOp::sum_of, l.x_space(), l.p_space(), l.space(), {}, l.node_, r.node_, {}, {},
                 {}});
  }
  /// l∘r.
  static ParamFunctionalExpr compose(const ParamFunctionalExpr& l, const ParamFunctionalExpr& r) {
    same_arguments(l, r, "compose");
    if (!(r.space().dst == l.space().src) || r.space().category != l.space().category)
      throw DimensionMismatch("compose: " + to_string(r.space()) + " then " +
                              to_string(l.space()));
    HomSpace s{l.space().category, r.space().src, l.space().dst};
    return make({PfOp::compose, l.x_space(), l.p_space(), std::move(s), {}, l.node_, r.node_, {},
                 {}, {}});
  }
  static ParamFunctionalExpr apply(const FunctionalExpr& fn, const ParamFunctionalExpr& e) {
    if (!(fn.dom() == e.space()))
      throw DimensionMismatch("apply: " + to_string(e.space()) + " is not the domain " +
                              to_string(fn.dom()));
    return make({PfOp::apply, e.x_space(), e.p_space(), fn.cod(), {}, e.node_, {}, fn, {}, {}});
  }
  static ParamFunctionalExpr host(std::string name, const HomSpace& xs, const HomSpace& ps,
                                  const HomSpace& result, HostMap2 fn) {
    return make({PfOp::host, xs, ps, result, {}, {}, {}, {}, std::move(name), std::move(fn)});
  }

  PfOp op() const { return node_->op; }
  const HomSpace& x_space() const { return node_->x_space; }
  const HomSpace& p_space() const { return node_->p_space; }
  const HomSpace& space() const { return node_->space; }
  const Morphism& morphism() const { return *node_->m; }
  ParamFunctionalExpr first() const { return ParamFunctionalExpr(node_->a); }
  ParamFunctionalExpr second() const { return ParamFunctionalExpr(node_->b); }
  const FunctionalExpr& functional() const { return *node_->fn; }
  const std::string& host_name() const { return node_->name; }
  const HostMap2& host_map() const { return node_->host; }

  /// pfix needs ψ : C(X,Y) × C(P,Q) → C(X,Y).
  bool has_fixed_points() const { return space() == x_space(); }

  bool is_closed() const {
    switch (op()) {
      case PfOp::host:
        return false;
      case PfOp::apply:
        return functional().is_closed() && first().is_closed();
      case PfOp::precompose:
      case PfOp::postcompose:
      case PfOp::dagger:
      case PfOp::join_with:
      case PfOp::add_with:
      case PfOp::conjugated:
        return first().is_closed();
      case PfOp::join_of:
      case PfOp::sum_of:
      case PfOp::compose:
        return first().is_closed() && second().is_closed();
      default:
        return true;
    }
  }

  bool mentions(PfOp leaf) const {
    if (op() == leaf) return true;
    if (op() == PfOp::host) return true;  // opaque: assume it may
    return (node_->a && first().mentions(leaf)) || (node_->b && second().mentions(leaf));
  }

  friend bool operator==(const ParamFunctionalExpr& x, const ParamFunctionalExpr& y) {
    if (x.node_ == y.node_) return true;
    const Node& a = *x.node_;
    const Node& b = *y.node_;
    if (a.op != b.op || !(a.x_space == b.x_space) || !(a.p_space == b.p_space) ||
        !(a.space == b.space) || a.m != b.m || a.name != b.name)
      return false;
    if (a.fn.has_value() != b.fn.has_value() || (a.fn && !(*a.fn == *b.fn))) return false;
    if (static_cast<bool>(a.a) != static_cast<bool>(b.a)) return false;
    if (a.a && !(ParamFunctionalExpr(a.a) == ParamFunctionalExpr(b.a))) return false;
    if (static_cast<bool>(a.b) != static_cast<bool>(b.b)) return false;
    return !a.b || ParamFunctionalExpr(a.b) == ParamFunctionalExpr(b.b);
  }

  friend ParamFunctionalExpr conj(const ParamFunctionalExpr& psi);

 private:
  explicit ParamFunctionalExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static ParamFunctionalExpr make(Node n) {
    return ParamFunctionalExpr(std::make_shared<const Node>(std::move(n)));
  }

  static void same_arguments(const ParamFunctionalExpr& l, const ParamFunctionalExpr& r,
                             const char* what) {
    if (!(l.x_space() == r.x_space()) || !(l.p_space() == r.p_space()))
      throw DimensionMismatch(std::string(what) + ": operands take different arguments");
  }

  static void same_shape(const ParamFunctionalExpr& l, const ParamFunctionalExpr& r,
                         const char* what) {
    same_arguments(l, r, what);
    if (!(l.space() == r.space()))
      throw DimensionMismatch(std::string(what) + ": operands have different hom-spaces");
  }

  std::shared_ptr<const Node> node_;
};

/// Conjugate (x, p) ↦ ψ(x†, p†)†, rewritten symbolically.
inline ParamFunctionalExpr conj(const ParamFunctionalExpr& psi) {
  using P = ParamFunctionalExpr;
  const auto& n = *psi.node_;
  const HomSpace xs = n.x_space.flipped();
  const HomSpace ps = n.p_space.flipped();
  switch (n.op) {
    case PfOp::arg_x:
      return P::arg_x(xs, ps);
    case PfOp::arg_p:
      return P::arg_p(xs, ps);
    case PfOp::constant:
      return P::constant(xs, ps, dagger(*n.m));
    case PfOp::precompose:  // (e∘m)† = m†∘e†
      return P::postcompose(dagger(*n.m), conj(psi.first()));
    case PfOp::postcompose:
      return P::precompose(dagger(*n.m), conj(psi.first()));
    case PfOp::dagger:
      return P::dagger(conj(psi.first()));
    case PfOp::join_with:
      return P::join_with(dagger(*n.m), conj(psi.first()));
    case PfOp::add_with:
      return P::add_with(dagger(*n.m), conj(psi.first()));
    case PfOp::join_of:
      return P::join_of(conj(psi.first()), conj(psi.second()));
    case PfOp::sum_of:
      return P::sum_of(conj(psi.first()), conj(psi.second()));
    case PfOp::compose:  // (a∘b)† = b†∘a†
      return P::compose(conj(psi.second()), conj(psi.first()));
    case PfOp::apply:  // φ(e)† = φ̄(e†)
      return P::apply(conj(psi.functional()), conj(psi.first()));
    case PfOp::host:
      return P::make({PfOp::conjugated, xs, ps, n.space.flipped(), {}, psi.node_, {}, {}, {}, {}});
    case PfOp::conjugated:
      return psi.first();
  }
  throw std::logic_error("unknown parametrized functional op");
}

namespace detail {

inline Morphism evaluate_unchecked(const ParamFunctionalExpr& e, const Morphism& x,
                                   const Morphism& p, double tol) {
  auto sub = [&](const ParamFunctionalExpr& s) { return evaluate_unchecked(s, x, p, tol); };
  switch (e.op()) {
    case PfOp::arg_x:
      return x;
    case PfOp::arg_p:
      return p;
    case PfOp::constant:
      return e.morphism();
    case PfOp::precompose:
      return dagfix::compose(sub(e.first()), e.morphism());
    case PfOp::postcompose:
      return dagfix::compose(e.morphism(), sub(e.first()));
    case PfOp::dagger:
      return dagfix::dagger(sub(e.first()));
    case PfOp::join_with:
      return join(sub(e.first()), e.morphism());
    case PfOp::add_with:
      return add(sub(e.first()), e.morphism(), tol);
    case PfOp::join_of:
      return join(sub(e.first()), sub(e.second()));
    case PfOp::sum_of:
      return add(sub(e.first()), sub(e.second()), tol);
    case PfOp::compose:
      return dagfix::compose(sub(e.first()), sub(e.second()));
    case PfOp::apply:
      return apply_unchecked(e.functional(), sub(e.first()), tol);
    case PfOp::host: {
      Morphism out = e.host_map()(x, p);
      if (!in_space(out, e.space(), tol))
        throw DimensionMismatch("host functional " + e.host_name() + " left " +
                                to_string(e.space()));
      return out;
    }
    case PfOp::conjugated:
      return dagfix::dagger(
          evaluate_unchecked(e.first(), dagfix::dagger(x), dagfix::dagger(p), tol));
  }
  throw std::logic_error("unknown parametrized functional op");
}

}  // namespace detail

inline Morphism evaluate(const ParamFunctionalExpr& psi, const Morphism& x, const Morphism& p,
                         double tolerance = kDefaultTolerance) {
  if (!in_space(x, psi.x_space(), tolerance))
    throw DimensionMismatch("x argument not in " + to_string(psi.x_space()));
  if (!in_space(p, psi.p_space(), tolerance))
    throw DimensionMismatch("parameter not in " + to_string(psi.p_space()));
  return detail::evaluate_unchecked(psi, x, p, tolerance);
}

/// (pfix ψ)(p) = sup ψⁿ(⊥, p).
inline KleeneResult<Morphism> pfix_functional(const ParamFunctionalExpr& psi, const Morphism& p,
                                              const FixPolicy& policy,
                                              double tolerance = kDefaultTolerance) {
  if (!psi.has_fixed_points())
    throw DomainMismatch("pfix needs a result in " + to_string(psi.x_space()) + ", got " +
                         to_string(psi.space()));
  if (!in_space(p, psi.p_space(), tolerance))
    throw DimensionMismatch("parameter not in " + to_string(psi.p_space()));
  return kleene_pfix(
      [&](const Morphism& x, const Morphism& q) {
        return detail::evaluate_unchecked(psi, x, q, tolerance);
      },
      p, hom_domain(psi.x_space(), tolerance), policy);
}

/// The endo-functional x ↦ ψ(x, p) with p fixed.
inline FunctionalExpr bind_parameter(const ParamFunctionalExpr& psi, const Morphism& p,
                                     double tolerance = kDefaultTolerance) {
  return FunctionalExpr::host(
      "bind", psi.x_space(), psi.space(),
      [psi, p, tolerance](const Morphism& x) {
        return detail::evaluate_unchecked(psi, x, p, tolerance);
      });
}

inline std::string to_string(PfOp op) {
  switch (op) {
    case PfOp::arg_x: return "x";
    case PfOp::arg_p: return "p";
    case PfOp::constant: return "const";
    case PfOp::precompose: return "precompose";
    case PfOp::postcompose: return "postcompose";
    case PfOp::dagger: return "dagger";
    case PfOp::join_with: return "joinwith";
    case PfOp::add_with: return "addwith";
    case PfOp::join_of: return "joinof";
    case PfOp::sum_of: return "sumof";
    case PfOp::compose: return "compose";
    case PfOp::apply: return "apply";
    case PfOp::host: return "host";
    case PfOp::conjugated: return "conj";
  }
  return "?";
}

inline std::string to_string(const ParamFunctionalExpr& e) {
  const std::string head = to_string(e.op());
  switch (e.op()) {
    case PfOp::arg_x:
    case PfOp::arg_p:
      return head;
    case PfOp::constant:
      return head + "(" + to_string(e.morphism()) + ")";
    case PfOp::precompose:
    case PfOp::postcompose:
    case PfOp::join_with:
    case PfOp::add_with:
      return head + "(" + to_string(e.morphism()) + ", " + to_string(e.first()) + ")";
    case PfOp::dagger:
    case PfOp::conjugated:
      return head + "(" + to_string(e.first()) + ")";
    case PfOp::join_of:
    case PfOp::sum_of:
    case PfOp::compose:
      return head + "(" + to_string(e.first()) + ", " + to_string(e.second()) + ")";
    case PfOp::apply:
      return head + "(" + to_string(e.functional()) + ", " + to_string(e.first()) + ")";
    case PfOp::host:
      return head + ":" + e.host_name();
  }
  return head;
}

}  // namespace dagfix

#endif
