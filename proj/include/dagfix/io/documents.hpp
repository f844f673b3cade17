#ifndef DAGFIX_IO_DOCUMENTS_HPP
#define DAGFIX_IO_DOCUMENTS_HPP

#include <initializer_list>
#include <string>

#include "dagfix/functional.hpp"
#include "dagfix/morphism.hpp"
#include "dagfix/report.hpp"
#include "json.hpp"

namespace dagfix::io {

using Json = nlohmann::json;

namespace detail {

inline void require_object(const Json& j, const char* what) {
  if (!j.is_object()) throw FormatError(std::string(what) + " must be a JSON object");
}

inline void only_fields(const Json& j, std::initializer_list<const char*> allowed,
                        const char* what) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw FormatError(std::string(what) + ": unknown field \"" + key + "\"");
  }
}

inline const Json& field(const Json& j, const char* key, const char* what) {
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string(what) + ": missing field \"" + key + "\"");
  return *it;
}

inline std::size_t index(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw FormatError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

inline Category category(const Json& j) {
  if (!j.is_string()) throw FormatError("category must be a string");
  const std::string s = j.get<std::string>();
  if (s == "rel") return Category::rel;
  if (s == "pinj") return Category::pinj;
  if (s == "dstoch") return Category::dstoch;
  throw FormatError("unknown category \"" + s + "\"");
}

}  // namespace detail

/// {"type":"rel","src":3,"dst":3,"pairs":[[0,1]]},
/// {"type":"pinj","src":3,"dst":3,"map":{"0":2}},
/// {"type":"dstoch","n":2,"rows":[[0.5,0],[0,0.5]]}
inline Json to_json(const Morphism& m) {
  switch (m.category()) {
    case Category::rel: {
      Json pairs = Json::array();
      for (auto [i, j] : m.as<RelMorphism>().pairs()) pairs.push_back({i, j});
      return {{"type", "rel"}, {"src", m.src().size}, {"dst", m.dst().size}, {"pairs", pairs}};
    }
    case Category::pinj: {
      Json map = Json::object();
      for (auto [i, j] : m.as<PInjMorphism>().graph()) map[std::to_string(i)] = j;
      return {{"type", "pinj"}, {"src", m.src().size}, {"dst", m.dst().size}, {"map", map}};
    }
    case Category::dstoch:
      return {{"type", "dstoch"}, {"n", m.src().size}, {"rows", m.as<StochMorphism>().rows()}};
  }
  return {};
}

inline Morphism morphism_from_json(const Json& j, double tolerance = kDefaultTolerance) {
  detail::require_object(j, "morphism");
  const Json& type = detail::field(j, "type", "morphism");
  if (!type.is_string()) throw FormatError("morphism type must be a string");
  const std::string t = type.get<std::string>();
  if (t == "rel" || t == "pinj") {
    detail::only_fields(j, {"type", "src", "dst", t == "rel" ? "pairs" : "map"}, t.c_str());
    const FinObject src{detail::index(detail::field(j, "src", t.c_str()), "src")};
    const FinObject dst{detail::index(detail::field(j, "dst", t.c_str()), "dst")};
    std::vector<std::pair<std::size_t, std::size_t>> graph;
    if (t == "rel") {
      const Json& pairs = detail::field(j, "pairs", "rel");
      if (!pairs.is_array()) throw FormatError("rel pairs must be an array");
      for (const Json& p : pairs) {
        if (!p.is_array() || p.size() != 2) throw FormatError("rel pair must be [i, j]");
        graph.emplace_back(detail::index(p[0], "rel index"), detail::index(p[1], "rel index"));
      }
      for (auto [a, b] : graph)
        if (a >= src.size || b >= dst.size)
          throw DimensionMismatch("rel pair (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") outside " + std::to_string(src.size) + "x" +
                                  std::to_string(dst.size));
      return RelMorphism(src, dst, graph);
    }
    const Json& map = detail::field(j, "map", "pinj");
    if (!map.is_object()) throw FormatError("pinj map must be an object");
    for (const auto& [key, value] : map.items()) {
      std::size_t used = 0;
      std::size_t from = 0;
      try {
        from = std::stoul(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != key.size() || key.empty())
        throw FormatError("pinj key \"" + key + "\" is not an index");
      if (from >= src.size)
        throw DimensionMismatch("pinj source " + key + " outside " + std::to_string(src.size));
      graph.emplace_back(from, detail::index(value, "pinj target"));
    }
    return PInjMorphism(src, dst, graph);
  }
  if (t == "dstoch") {
    detail::only_fields(j, {"type", "n", "rows"}, "dstoch");
    const std::size_t n = detail::index(detail::field(j, "n", "dstoch"), "n");
    const Json& rows = detail::field(j, "rows", "dstoch");
    std::vector<std::vector<double>> m;
    try {
      m = rows.get<std::vector<std::vector<double>>>();
    } catch (const Json::exception&) {
      throw FormatError("dstoch rows must be an array of number arrays");
    }
    return StochMorphism::square(n, m, tolerance);
  }
  throw FormatError("unknown morphism type \"" + t + "\"");
}

inline Json to_json(const HomSpace& s) {
  return {{"category", std::string(to_string(s.category))}, {"src", s.src.size},
          {"dst", s.dst.size}};
}

inline HomSpace space_from_json(const Json& j) {
  detail::require_object(j, "hom-space");
  detail::only_fields(j, {"category", "src", "dst"}, "hom-space");
  return {detail::category(detail::field(j, "category", "hom-space")),
          FinObject{detail::index(detail::field(j, "src", "hom-space"), "src")},
          FinObject{detail::index(detail::field(j, "dst", "hom-space"), "dst")}};
}

/// Canonical form: every node carries what it needs, compositions are explicit
/// "seq" nodes. Host functionals have no document form.
inline Json to_json(const FunctionalExpr& f) {
  switch (f.op()) {
    case FnOp::constant:
      return {{"op", "const"}, {"dom", to_json(f.dom())}, {"m", to_json(f.morphism())}};
    case FnOp::identity:
      return {{"op", "identity"}, {"space", to_json(f.dom())}};
    case FnOp::precompose:
      return {{"op", "precompose"}, {"m", to_json(f.morphism())}, {"object", f.dom().dst.size}};
    case FnOp::postcompose:
      return {{"op", "postcompose"}, {"m", to_json(f.morphism())}, {"object", f.dom().src.size}};
    case FnOp::dagger:
      return {{"op", "dagger"}, {"space", to_json(f.dom())}};
    case FnOp::join_with:
      return {{"op", "joinwith"}, {"m", to_json(f.morphism())}};
    case FnOp::add_with:
      return {{"op", "addwith"}, {"m", to_json(f.morphism())}};
    case FnOp::seq:
      return {{"op", "seq"}, {"first", to_json(f.first())}, {"second", to_json(f.second())}};
    case FnOp::join_of:
      return {{"op", "join"}, {"left", to_json(f.first())}, {"right", to_json(f.second())}};
    case FnOp::sum_of:
      return {{"op", "sum"}, {"left", to_json(f.first())}, {"right", to_json(f.second())}};
    case FnOp::host:
    case FnOp::conjugated:
      throw FormatError("host functional " + f.host_name() + " cannot be written as a document");
  }
  return {};
}

/// Reads the canonical form plus two conveniences: any unary node may carry
/// "inner", which runs first (the node then takes inner's codomain as its
/// domain), and {"op":"conj","of":...} conjugates. Without inner or explicit
/// objects, hom-spaces default to the square one the morphism suggests.
inline FunctionalExpr functional_from_json(const Json& j, double tolerance = kDefaultTolerance) {
  using F = FunctionalExpr;
  detail::require_object(j, "functional");
  const Json& opj = detail::field(j, "op", "functional");
  if (!opj.is_string()) throw FormatError("functional op must be a string");
  const std::string op = opj.get<std::string>();
  auto sub = [&](const char* key) {
    return functional_from_json(detail::field(j, key, op.c_str()), tolerance);
  };
  auto morph = [&] { return morphism_from_json(detail::field(j, "m", op.c_str()), tolerance); };

  if (op == "seq") {
    detail::only_fields(j, {"op", "first", "second"}, "seq");
    const F first = sub("first");
    return F::seq(first, sub("second"));
  }
  if (op == "join" || op == "sum") {
    detail::only_fields(j, {"op", "left", "right"}, op.c_str());
    const F l = sub("left");
    const F r = sub("right");
    return op == "join" ? F::join_of(l, r) : F::sum_of(l, r);
  }
  if (op == "conj") {
    detail::only_fields(j, {"op", "of"}, "conj");
    return conj(sub("of"));
  }

  std::optional<F> inner;
  if (j.contains("inner")) inner = sub("inner");
  auto object = [&](std::size_t fallback) {
    return j.contains("object") ? FinObject{detail::index(j["object"], "object")}
                                : FinObject{fallback};
  };
  auto space = [&]() -> HomSpace {
    if (inner) return inner->cod();
    return space_from_json(detail::field(j, "space", op.c_str()));
  };
  F node = [&]() -> F {
    if (op == "const") {
      detail::only_fields(j, {"op", "m", "dom", "inner"}, "const");
      const Morphism m = morph();
      if (inner) return F::constant(inner->cod(), m);
      return F::constant(j.contains("dom") ? space_from_json(j["dom"]) : m.space(), m);
    }
    if (op == "identity" || op == "dagger") {
      detail::only_fields(j, {"op", "space", "inner"}, op.c_str());
      return op == "identity" ? F::identity(space()) : F::dagger(space());
    }
    if (op == "precompose") {
      detail::only_fields(j, {"op", "m", "object", "inner"}, "precompose");
      const Morphism m = morph();
      return F::precompose(m, inner ? inner->cod().dst : object(m.src().size));
    }
    if (op == "postcompose") {
      detail::only_fields(j, {"op", "m", "object", "inner"}, "postcompose");
      const Morphism m = morph();
      return F::postcompose(m, inner ? inner->cod().src : object(m.dst().size));
    }
    if (op == "joinwith" || op == "addwith") {
      detail::only_fields(j, {"op", "m", "inner"}, op.c_str());
      return op == "joinwith" ? F::join_with(morph()) : F::add_with(morph());
    }
    throw FormatError("unknown functional op \"" + op + "\"");
  }();
  return inner ? F::seq(*inner, node) : node;
}

/// Deterministic report document; elapsed time only on request.
inline Json to_json(const LawReport& r, bool timings = false) {
  Json violations = Json::array();
  for (const Violation& v : r.violations)
    violations.push_back({{"law", v.law}, {"witness", v.witness}});
  Json j{{"suite", r.suite},
         {"checked", r.checked},
         {"skipped", r.skipped},
         {"violation_count", r.violation_count},
         {"violations", violations},
         {"checked_by_law", r.checked_by_law},
         {"passed", r.passed()}};
  if (timings)
    j["elapsed_seconds"] = std::chrono::duration<double>(r.elapsed).count();
  return j;
}

}  // namespace dagfix::io

#endif
