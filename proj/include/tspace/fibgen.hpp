#pragma once

// The fibration side: cartesian morphisms of spaces over finite sets decided
// by initiality, generator-presented algebras (a point carrier mapping into
// an algebra so that the mate of the map is surjective), their reflection
// into algebras, and the pair of functors moving between generator objects
// and spaces carrying the initial structure along their generator map.

#include <optional>
#include <string>
#include <vector>

#include "tspace/reflect.hpp"

namespace tspace {

struct GenObject {
  FinMap p;           // points -> algebra carrier
  EMAlgebra algebra;
  FinMap psharp;      // the mate: structure . T(p)
};

/// Validates the generation condition: the mate of p must be surjective.
inline GenObject gen_validate(const FinMap& p, const EMAlgebra& algebra) {
  if (p.cod.size != algebra.carrier.size)
    throw PreconditionError("generator map must land in the algebra carrier");
  FinMap psharp = compose(algebra.structure, apply_functor(algebra.monad, p));
  if (!is_surjective(psharp))
    throw NotGenerating("the mate of the generator map is not surjective");
  return GenObject{p, algebra, std::move(psharp)};
}

struct GenMorphism {
  FinMap f;      // between point carriers
  FinMap fstar;  // the induced algebra homomorphism
};

/// The morphism over f, when it exists: the square commutes and the second
/// component is a homomorphism.  f determines fstar through the surjective
/// mate of the source generator map.
inline std::optional<GenMorphism> gen_morphism(const GenObject& src, const GenObject& tgt,
                                               const FinMap& f) {
  if (f.dom.size != src.p.dom.size || f.cod.size != tgt.p.dom.size) return std::nullopt;
  FinMap mate = compose(tgt.algebra.structure,
                        apply_functor(tgt.algebra.monad, compose(tgt.p, f)));
  std::vector<int> table(static_cast<std::size_t>(src.algebra.carrier.size), -1);
  for (int w = 0; w < src.psharp.dom.size; ++w) {
    int from = src.psharp(w), to = mate(w);
    if (table[static_cast<std::size_t>(from)] < 0)
      table[static_cast<std::size_t>(from)] = to;
    else if (table[static_cast<std::size_t>(from)] != to)
      return std::nullopt;  // f does not descend along the mate
  }
  FinMap fstar{src.algebra.carrier, tgt.algebra.carrier, std::move(table)};
  if (!map_equal(compose(fstar, src.p), compose(tgt.p, f))) return std::nullopt;
  FinMap lhs = compose(fstar, src.algebra.structure);
  FinMap rhs = compose(tgt.algebra.structure, apply_functor(src.algebra.monad, fstar));
  if (!map_equal(lhs, rhs)) return std::nullopt;
  return GenMorphism{f, std::move(fstar)};
}

struct GenReflection {
  GenMorphism unit;
  GenObject reflected;
};

/// Reflection of a generator object into algebras: forget the presentation.
/// The reflected object is the algebra generated by itself, the unit runs the
/// generator map over the identity.
inline GenReflection gen_reflect(const GenObject& g) {
  GenObject reflected = gen_validate(identity_map(g.algebra.carrier), g.algebra);
  GenMorphism unit{g.p, identity_map(g.algebra.carrier)};
  return GenReflection{std::move(unit), std::move(reflected)};
}

// ---------------------------------------------------------------------------
// Cartesian morphisms

/// The cartesian lifting of a point map into a space: its source carries the
/// initial structure along the map.
inline MonotoneMap cartesian_lift(const FinMap& u, const TSpace& target) {
  if (u.cod.size != target.points.size)
    throw PreconditionError("lift: map must land in the target's points");
  TSpace source = initial_structure(target.monad, u.dom, {{u, target}});
  if (target.validated == Validity::Space) source.validated = Validity::Space;
  return MonotoneMap{u, std::move(source), target};
}

struct CartesianReport {
  bool is_cartesian = false;
  // a pair of the initial structure missing from the source, when not
  std::optional<std::pair<int, int>> witness;
};

/// Over finite sets the forgetful functor is a faithful fibration, so a
/// monotone map is cartesian exactly when its source is initial along it.
inline CartesianReport is_cartesian(const MonotoneMap& m) {
  TSpace initial = initial_structure(m.source.monad, m.source.points, {{m.f, m.target}});
  CartesianReport report;
  report.is_cartesian = rel_equal(initial.converges, m.source.converges);
  if (!report.is_cartesian) {
    for (const auto& pr : initial.converges.pairs)
      if (!m.source.converges.contains(pr.first, pr.second)) {
        report.witness = pr;
        break;
      }
  }
  return report;
}

/// Cross-check by the defining factorization property: every structured cone
/// through the map must restrict to a monotone map into the source.  Cones
/// range over all spaces with at most max_cone_points points.
inline bool is_cartesian_by_cones(const MonotoneMap& m, int max_cone_points,
                                  std::size_t cap = std::size_t{1} << 22) {
  for (int n = 0; n <= max_cone_points; ++n)
    for (const auto& cone : enumerate_spaces(m.source.monad, n, cap))
      for (const auto& w : all_maps(cone.points, m.source.points))
        if (check_monotone(compose(m.f, w), cone, m.target) &&
            !check_monotone(w, cone, m.source))
          return false;
  return true;
}

// ---------------------------------------------------------------------------
// The two functors between spaces and generator objects

/// From a space with the initial structure along its algebra-reflection unit
/// to a generator object: the image of the unit's mate, generated by the
/// corestricted unit.
inline GenObject ibar(const TSpace& s) {
  if (!check_CF(s).C)
    throw PreconditionError("ibar needs a space carrying the initial structure of its unit");
  ReflectionResult beta = beta_reflection(s);
  const EMAlgebra& big = beta.congruence->algebra;
  FinMap betasharp = compose(big.structure, apply_functor(s.monad, beta.unit.f));
  ImageFactorization fact = image_factorize(betasharp);
  // restrict the algebra structure to the image carrier
  FinMap tmono = apply_functor(s.monad, fact.mono);
  FinMap onto_big = compose(big.structure, tmono);
  std::vector<int> inverse(static_cast<std::size_t>(big.carrier.size), -1);
  for (int i = 0; i < fact.mono.dom.size; ++i)
    inverse[static_cast<std::size_t>(fact.mono(i))] = i;
  std::vector<int> restricted(static_cast<std::size_t>(onto_big.dom.size));
  for (int w = 0; w < onto_big.dom.size; ++w) {
    int v = inverse[static_cast<std::size_t>(onto_big(w))];
    if (v < 0)
      throw InternalInvariantViolated("ibar: image is not closed under the structure");
    restricted[static_cast<std::size_t>(w)] = v;
  }
  EMAlgebra small = make_algebra(s.monad, fact.mono.dom,
                                 FinMap{onto_big.dom, fact.mono.dom, std::move(restricted)});
  // corestrict the unit's point map to the image
  std::vector<int> p(static_cast<std::size_t>(s.points.size));
  for (int x = 0; x < s.points.size; ++x) {
    int v = inverse[static_cast<std::size_t>(beta.unit.f(x))];
    if (v < 0) throw InternalInvariantViolated("ibar: unit misses the image");
    p[static_cast<std::size_t>(x)] = v;
  }
  return gen_validate(FinMap{s.points, small.carrier, std::move(p)}, small);
}

/// Functorial action: a monotone map between suitable spaces induces the
/// morphism over itself, with second component the induced algebra map.
inline GenMorphism ibar_map(const MonotoneMap& m) {
  GenObject src = ibar(m.source);
  GenObject tgt = ibar(m.target);
  auto gm = gen_morphism(src, tgt, m.f);
  if (!gm) throw InternalInvariantViolated("ibar_map: no induced morphism");
  return *gm;
}

/// From a generator object to the space on its points carrying the initial
/// structure along the generator map into the algebra's space.
inline TSpace jbar(const GenObject& g) {
  TSpace algebra_space = space_of_algebra(g.algebra);
  TSpace out = initial_structure(g.algebra.monad, g.p.dom, {{g.p, algebra_space}});
  out.validated = Validity::Space;
  if (!check_CF(out).C)
    throw InternalInvariantViolated("jbar: result fails the initial-structure condition");
  return out;
}

/// All generator objects with point carriers up to max_points over algebras
/// with carriers up to max_carrier.
inline std::vector<GenObject> enumerate_gen_objects(const MonadSpec& monad, int max_points,
                                                    int max_carrier) {
  std::vector<GenObject> out;
  for (int rn = 0; rn <= max_carrier; ++rn)
    for (const auto& algebra : enumerate_algebras(monad, rn))
      for (int xn = 0; xn <= max_points; ++xn)
        for (const auto& p : all_maps(make_set(xn), algebra.carrier)) {
          try {
            out.push_back(gen_validate(p, algebra));
          } catch (const NotGenerating&) {
          }
        }
  return out;
}

// ---------------------------------------------------------------------------
// Exploratory searches (reported, not asserted)

struct RoundTripReport {
  int total = 0;
  int isomorphic = 0;
  std::vector<std::string> counterexamples;
};

/// For each small generator object, forms the space it induces, reads a
/// generator object back off that space, and tests whether the canonical
/// comparison (identity on points, induced map on algebras) is an
/// isomorphism.  Whether it always is at this scale is left as a finding.
inline RoundTripReport ibar_jbar_roundtrip_search(const MonadSpec& monad, int max_points,
                                                  int max_carrier) {
  RoundTripReport report;
  for (const auto& g : enumerate_gen_objects(monad, max_points, max_carrier)) {
    GenObject back = ibar(jbar(g));
    ++report.total;
    auto cmp = gen_morphism(back, g, identity_map(back.p.dom));
    if (cmp && is_injective(cmp->fstar) && is_surjective(cmp->fstar))
      ++report.isomorphic;
    else
      report.counterexamples.push_back("algebra carrier " +
                                       std::to_string(g.algebra.carrier.size) + ", " +
                                       std::to_string(g.p.dom.size) + " points");
  }
  return report;
}

struct CartesianPreservationReport {
  int checked = 0;
  int preserved = 0;
  std::vector<std::string> failures;
};

/// For cartesian monotone maps between small spaces carrying their unit's
/// initial structure, tests whether the induced generator-object morphism is
/// cartesian for the domain fibration, i.e. has a monic algebra component.
inline CartesianPreservationReport search_ibar_cartesian_preservation(const MonadSpec& monad,
                                                                      int max_points,
                                                                      std::size_t cap = std::size_t{1}
                                                                                        << 22) {
  CartesianPreservationReport report;
  std::vector<TSpace> cspaces;
  for (int n = 0; n <= max_points; ++n)
    for (auto& s : enumerate_subcategory(monad, n, ReflKind::C, cap))
      cspaces.push_back(std::move(s));
  for (const auto& src : cspaces)
    for (const auto& tgt : cspaces)
      for (const auto& f : all_maps(src.points, tgt.points)) {
        if (!check_monotone(f, src, tgt)) continue;
        MonotoneMap m{f, src, tgt};
        if (!is_cartesian(m).is_cartesian) continue;
        ++report.checked;
        GenMorphism gm = ibar_map(m);
        if (is_injective(gm.fstar))
          ++report.preserved;
        else
          report.failures.push_back(std::to_string(src.points.size) + " -> " +
                                    std::to_string(tgt.points.size) + " points");
      }
  return report;
}

}  // namespace tspace
