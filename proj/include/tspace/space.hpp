#pragma once

// T-graphs and T-spaces over a computable monad: a carrier of points with a
// convergence relation C between TX and X.  Provides the hat-extension of C
// (the relation it induces between TTX and TX), the reflexivity/transitivity
// checkers, saturation to the least T-space structure, initial and final
// structures, binary products, the compact/Hausdorff condition report, and
// the closure-space correspondence for the powerset monad.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tspace/monad.hpp"

namespace tspace {

enum class Validity { Unknown, GraphOnly, Space };

struct TSpace {
  MonadSpec monad;
  FinSet points;
  Rel converges;  // dom: the T-carrier over points, cod: points
  Validity validated = Validity::Unknown;
};

inline TSpace make_tspace(MonadSpec monad, FinSet points,
                          std::vector<std::pair<int, int>> pairs) {
  FinSet tx = tcarrier(monad, points);
  Rel c = make_rel(tx, points, std::move(pairs));
  return TSpace{std::move(monad), std::move(points), std::move(c), Validity::GraphOnly};
}

inline bool same_points(const TSpace& a, const TSpace& b) {
  return a.points.size == b.points.size;
}

inline bool space_equal(const TSpace& a, const TSpace& b) {
  return a.monad.same_monad(b.monad) && a.points.size == b.points.size &&
         a.converges.pairs == b.converges.pairs;
}

/// The hat-extension, stored separately from the space it extends so that C
/// and its extension are never conflated.
struct ExtRelation {
  TSpace base;
  Rel pairs;  // dom: TTX, cod: TX
};

namespace detail {

/// Treats the pair list of C as an abstract carrier, applies T to both
/// projections, and collects the image pairs.  Cost is |T(C)|.
inline Rel barr_extend_by_enumeration(const TSpace& s) {
  const FinSet tx = s.converges.dom;
  const FinSet ttx = tcarrier(s.monad, tx);
  const int k = static_cast<int>(s.converges.pairs.size());
  FinSet c_carrier = make_set(k);
  std::vector<int> p1(static_cast<std::size_t>(k)), p2(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    p1[static_cast<std::size_t>(i)] = s.converges.pairs[static_cast<std::size_t>(i)].first;
    p2[static_cast<std::size_t>(i)] = s.converges.pairs[static_cast<std::size_t>(i)].second;
  }
  FinMap tp1 = apply_functor(s.monad, FinMap{c_carrier, tx, std::move(p1)});
  FinMap tp2 = apply_functor(s.monad, FinMap{c_carrier, s.points, std::move(p2)});
  // tp2 lands in T(points) = tx.
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(tp1.dom.size));
  for (int w = 0; w < tp1.dom.size; ++w) out.emplace_back(tp1(w), tp2(w));
  return make_rel(ttx, tx, std::move(out));
}

/// Powerset shortcut: a pair (A, B) of TTX x TX lies in the extension iff the
/// maximal candidate witness C /\ (A x B) projects onto both components.
inline Rel barr_extend_powerset(const TSpace& s) {
  const FinSet tx = s.converges.dom;
  const FinSet ttx = tcarrier(s.monad, tx);
  // per subset, the union of its convergence points
  std::vector<int> limits(static_cast<std::size_t>(tx.size), 0);
  for (const auto& [a, y] : s.converges.pairs) limits[static_cast<std::size_t>(a)] |= 1 << y;
  std::vector<std::pair<int, int>> out;
  for (int fam = 0; fam < ttx.size; ++fam) {
    // a member set with no convergence at all can never be covered
    bool family_covered = true;
    for (int a = 0; a < tx.size && family_covered; ++a)
      if ((fam >> a & 1) && limits[static_cast<std::size_t>(a)] == 0) family_covered = false;
    if (!family_covered) continue;
    for (int b = 0; b < tx.size; ++b) {
      int got1 = 0, got2 = 0;
      for (int a = 0; a < tx.size; ++a) {
        if (!(fam >> a & 1)) continue;
        int contrib = limits[static_cast<std::size_t>(a)] & b;
        if (contrib) got1 |= 1 << a;
        got2 |= contrib;
      }
      if (got1 == fam && got2 == b) out.emplace_back(fam, b);
    }
  }
  return make_rel(ttx, tx, std::move(out));
}

/// For every point y, the set of unions of nonempty subfamilies of the
/// supports of y, as subset bitmasks.  Drives the powerset transitivity
/// check without materializing TTX.
inline std::vector<std::vector<int>> achievable_union_table(const TSpace& s) {
  const int n = s.points.size;
  std::vector<std::vector<int>> gen(static_cast<std::size_t>(n));
  for (int y = 0; y < n; ++y) {
    std::vector<char> reach(std::size_t{1} << n, 0);
    std::vector<int> frontier;
    for (const auto& [a, z] : s.converges.pairs)
      if (z == y && !reach[static_cast<std::size_t>(a)]) {
        reach[static_cast<std::size_t>(a)] = 1;
        frontier.push_back(a);
      }
    // close under binary unions
    for (std::size_t i = 0; i < frontier.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        int u = frontier[i] | frontier[j];
        if (!reach[static_cast<std::size_t>(u)]) {
          reach[static_cast<std::size_t>(u)] = 1;
          frontier.push_back(u);
        }
      }
    gen[static_cast<std::size_t>(y)] = std::move(frontier);
  }
  return gen;
}

/// Unions achievable by families whose codomain is exactly the subset b.
inline std::vector<int> achievable_unions_for(const std::vector<std::vector<int>>& gen, int n,
                                              int b) {
  std::vector<int> acc{0};
  for (int y = 0; y < n; ++y) {
    if (!(b >> y & 1)) continue;
    const auto& g = gen[static_cast<std::size_t>(y)];
    if (g.empty()) return {};
    std::vector<char> seen(std::size_t{1} << n, 0);
    std::vector<int> next;
    for (int u : acc)
      for (int v : g) {
        int w = u | v;
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          next.push_back(w);
        }
      }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace detail

/// Generic hat-extension by enumerating T(C); the oracle the specialized
/// powerset path must match.
inline ExtRelation barr_extend_generic(const TSpace& s) {
  return ExtRelation{s, detail::barr_extend_by_enumeration(s)};
}

inline ExtRelation barr_extend(const TSpace& s) {
  if (s.monad.kind == MonadKind::Powerset)
    return ExtRelation{s, detail::barr_extend_powerset(s)};
  return barr_extend_generic(s);
}

struct TransWitness {
  int outer = -1;  // element of TTX
  int mid = -1;    // element of TX
  int point = -1;  // point the composite fails to reach
};

struct AxiomReport {
  bool reflexive = true;
  bool transitive = true;
  int reflexivity_witness = -1;  // point missing its unit pair
  std::optional<TransWitness> transitivity_witness;

  bool ok() const { return reflexive && transitive; }
};

inline AxiomReport check_axioms(const TSpace& s) {
  AxiomReport report;
  FinMap eta = unit_component(s.monad, s.points.size);
  for (int x = 0; x < s.points.size; ++x)
    if (!s.converges.contains(eta(x), x)) {
      report.reflexive = false;
      report.reflexivity_witness = x;
      break;
    }

  if (s.monad.kind == MonadKind::Powerset) {
    const int n = s.points.size;
    auto gen = detail::achievable_union_table(s);
    for (const auto& [b, z] : s.converges.pairs) {
      for (int u : detail::achievable_unions_for(gen, n, b))
        if (!s.converges.contains(u, z)) {
          report.transitive = false;
          // reconstruct a family witnessing the achievable union
          int fam = 0;
          for (int a = 0; a < (1 << n); ++a)
            if ((a | u) == u)
              for (int y = 0; y < n; ++y)
                if ((b >> y & 1) && s.converges.contains(a, y)) fam |= 1 << a;
          report.transitivity_witness = TransWitness{fam, b, z};
          return report;
        }
    }
    return report;
  }

  Rel ext = barr_extend(s).pairs;
  FinMap mu = mult_component(s.monad, s.points.size);
  for (const auto& [outer, mid] : ext.pairs)
    for (int z = 0; z < s.points.size; ++z)
      if (s.converges.contains(mid, z) && !s.converges.contains(mu(outer), z)) {
        report.transitive = false;
        report.transitivity_witness = TransWitness{outer, mid, z};
        return report;
      }
  return report;
}

inline bool check_monotone(const FinMap& f, const TSpace& src, const TSpace& tgt) {
  if (!src.monad.same_monad(tgt.monad))
    throw IncompatibleMonads("monotonicity check across different monads");
  if (f.dom.size != src.points.size || f.cod.size != tgt.points.size)
    throw PreconditionError("map does not match the point carriers");
  FinMap tf = apply_functor(src.monad, f);
  for (const auto& [t, y] : src.converges.pairs)
    if (!tgt.converges.contains(tf(t), f(y))) return false;
  return true;
}

/// A monotone map with its two spaces attached.
struct MonotoneMap {
  FinMap f;
  TSpace source, target;
};

inline MonotoneMap make_monotone(FinMap f, TSpace source, TSpace target) {
  if (!check_monotone(f, source, target))
    throw PreconditionError("map is not monotone");
  return MonotoneMap{std::move(f), std::move(source), std::move(target)};
}

/// The induced map on convergence pairs: each pair of the source is sent to
/// the pair of the target it lands on.
inline FinMap lifted_map(const MonotoneMap& m) {
  FinMap tf = apply_functor(m.source.monad, m.f);
  const auto& src = m.source.converges.pairs;
  const auto& tgt = m.target.converges.pairs;
  std::vector<int> table;
  table.reserve(src.size());
  for (const auto& [t, y] : src) {
    auto want = std::make_pair(tf(t), m.f(y));
    auto it = std::lower_bound(tgt.begin(), tgt.end(), want);
    if (it == tgt.end() || *it != want)
      throw InternalInvariantViolated("lifted map: image pair missing from target");
    table.push_back(static_cast<int>(it - tgt.begin()));
  }
  return FinMap{make_set(static_cast<int>(src.size())), make_set(static_cast<int>(tgt.size())),
                std::move(table)};
}

/// Least T-space structure containing the given graph: unit pairs are added,
/// then the transitivity rule is iterated to a fixpoint, re-extending the
/// current relation each round.
inline TSpace saturate(const TSpace& graph) {
  const int n = graph.points.size;
  std::vector<std::pair<int, int>> pairs = graph.converges.pairs;
  FinMap eta = unit_component(graph.monad, n);
  for (int x = 0; x < n; ++x) pairs.emplace_back(eta(x), x);
  TSpace cur{graph.monad, graph.points,
             make_rel(graph.converges.dom, graph.points, std::move(pairs)),
             Validity::GraphOnly};

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<int, int>> extra;
    if (graph.monad.kind == MonadKind::Powerset) {
      auto gen = detail::achievable_union_table(cur);
      for (const auto& [b, z] : cur.converges.pairs)
        for (int u : detail::achievable_unions_for(gen, n, b))
          if (!cur.converges.contains(u, z)) extra.emplace_back(u, z);
    } else {
      Rel ext = barr_extend(cur).pairs;
      FinMap mu = mult_component(cur.monad, n);
      for (const auto& [outer, mid] : ext.pairs)
        for (int z = 0; z < n; ++z)
          if (cur.converges.contains(mid, z) && !cur.converges.contains(mu(outer), z))
            extra.emplace_back(mu(outer), z);
    }
    if (!extra.empty()) {
      changed = true;
      auto merged = cur.converges.pairs;
      merged.insert(merged.end(), extra.begin(), extra.end());
      cur.converges = make_rel(cur.converges.dom, cur.points, std::move(merged));
    }
  }
  cur.validated = Validity::Space;
  return cur;
}

/// Largest structure on x making every map of the family monotone:
/// (t, y) converges iff every f_i sends it into the target's convergence.
inline TSpace initial_structure(const MonadSpec& monad, const FinSet& x,
                                const std::vector<std::pair<FinMap, TSpace>>& maps) {
  FinSet tx = tcarrier(monad, x);
  std::vector<FinMap> tf;
  tf.reserve(maps.size());
  for (const auto& [f, target] : maps) {
    if (!monad.same_monad(target.monad))
      throw IncompatibleMonads("initial structure across different monads");
    if (f.dom.size != x.size || f.cod.size != target.points.size)
      throw PreconditionError("initial structure: map shape mismatch");
    tf.push_back(apply_functor(monad, f));
  }
  std::vector<std::pair<int, int>> pairs;
  for (int t = 0; t < tx.size; ++t)
    for (int y = 0; y < x.size; ++y) {
      bool all = true;
      for (std::size_t i = 0; i < maps.size(); ++i)
        if (!maps[i].second.converges.contains(tf[i](t), maps[i].first(y))) {
          all = false;
          break;
        }
      if (all) pairs.emplace_back(t, y);
    }
  return TSpace{monad, x, make_rel(tx, x, std::move(pairs)), Validity::Unknown};
}

/// Least structure on y making every map of the family monotone: the
/// saturation of the union of the image relations.
inline TSpace final_structure(const MonadSpec& monad, const FinSet& y,
                              const std::vector<std::pair<FinMap, TSpace>>& maps) {
  FinSet ty = tcarrier(monad, y);
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [f, source] : maps) {
    if (!monad.same_monad(source.monad))
      throw IncompatibleMonads("final structure across different monads");
    if (f.cod.size != y.size || f.dom.size != source.points.size)
      throw PreconditionError("final structure: map shape mismatch");
    FinMap tf = apply_functor(monad, f);
    for (const auto& [t, z] : source.converges.pairs) pairs.emplace_back(tf(t), f(z));
  }
  return saturate(TSpace{monad, y, make_rel(ty, y, std::move(pairs)), Validity::GraphOnly});
}

/// Product carrier with the initial structure along the two projections.
inline TSpace product_space(const TSpace& a, const TSpace& b) {
  if (!a.monad.same_monad(b.monad))
    throw IncompatibleMonads("product of spaces over different monads");
  ProductCone cone = product_cone(a.points, b.points);
  return initial_structure(a.monad, cone.carrier,
                           {{cone.proj1, a}, {cone.proj2, b}});
}

struct KHWitness {
  int telem = -1;      // offending element of TX
  int first = -1;      // for H failures: two distinct limits
  int second = -1;
};

struct ConditionReport {
  bool K = false, H = false, A = false;
  std::optional<FinMap> witness_section;  // TX -> C picking the least limit
  std::optional<KHWitness> k_violation;
  std::optional<KHWitness> h_violation;
};

/// K: every T-element converges; H: to at most one point; A = K and H.
inline ConditionReport check_khaus(const TSpace& s) {
  ConditionReport report;
  const int txn = s.converges.dom.size;
  std::vector<int> least(static_cast<std::size_t>(txn), -1);
  std::vector<int> count(static_cast<std::size_t>(txn), 0);
  report.K = true;
  report.H = true;
  for (const auto& [t, y] : s.converges.pairs) {
    if (least[static_cast<std::size_t>(t)] < 0) least[static_cast<std::size_t>(t)] = y;
    if (++count[static_cast<std::size_t>(t)] == 2 && report.H) {
      report.H = false;
      report.h_violation = KHWitness{t, least[static_cast<std::size_t>(t)], y};
    }
  }
  for (int t = 0; t < txn; ++t)
    if (least[static_cast<std::size_t>(t)] < 0) {
      report.K = false;
      report.k_violation = KHWitness{t, -1, -1};
      break;
    }
  report.A = report.K && report.H;
  if (report.K) {
    // section of the domain projection d : C -> TX, choosing the least limit
    std::vector<int> sec(static_cast<std::size_t>(txn));
    for (int t = 0; t < txn; ++t) {
      auto it = std::lower_bound(s.converges.pairs.begin(), s.converges.pairs.end(),
                                 std::make_pair(t, 0));
      sec[static_cast<std::size_t>(t)] = static_cast<int>(it - s.converges.pairs.begin());
    }
    report.witness_section =
        FinMap{s.converges.dom, make_set(static_cast<int>(s.converges.pairs.size())),
               std::move(sec)};
  }
  return report;
}

struct CloReport {
  bool clo = false;
  int witness_subset = -1;  // (A, y) in C with some B >= A missing
  int witness_superset = -1;
  int witness_point = -1;
  std::vector<int> closure_table;  // per subset, the bitmask {y : A ~> y}
};

/// Powerset spaces only: checks the up-closure property and, when it holds,
/// tabulates the induced closure operation.
inline CloReport check_clo_closure(const TSpace& s) {
  if (s.monad.kind != MonadKind::Powerset)
    throw WrongMonad("closure correspondence requires the powerset monad");
  const int n = s.points.size;
  const RelMatrix conv(s.converges);
  CloReport report;
  report.clo = true;
  for (const auto& [a, y] : s.converges.pairs)
    for (int b = 0; b < (1 << n); ++b)
      if ((a & b) == a && !conv.at(b, y)) {
        report.clo = false;
        report.witness_subset = a;
        report.witness_superset = b;
        report.witness_point = y;
        return report;
      }
  report.closure_table.assign(std::size_t{1} << n, 0);
  for (const auto& [a, y] : s.converges.pairs)
    report.closure_table[static_cast<std::size_t>(a)] |= 1 << y;
  return report;
}

/// The powerset space induced by a closure table: A converges to y iff y lies
/// in the closure of A.
inline TSpace space_of_closure(const FinSet& points, const std::vector<int>& closure_table,
                               MonadSpec monad = powerset_monad()) {
  if (monad.kind != MonadKind::Powerset) throw WrongMonad("closure spaces are powerset spaces");
  const int n = points.size;
  if (closure_table.size() != (std::size_t{1} << n))
    throw PreconditionError("closure table has wrong length");
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < (1 << n); ++a)
    for (int y = 0; y < n; ++y)
      if (closure_table[static_cast<std::size_t>(a)] >> y & 1) pairs.emplace_back(a, y);
  return make_tspace(std::move(monad), points, std::move(pairs));
}

/// The powerset space a preorder induces by supremum formation: a subset
/// converges to each of its least upper bounds.  Empty subsets converge to
/// the bottom elements, when there are any.
inline TSpace supremum_space(const Rel& preorder, MonadSpec monad = powerset_monad()) {
  if (monad.kind != MonadKind::Powerset) throw WrongMonad("supremum spaces are powerset spaces");
  if (preorder.dom.size != preorder.cod.size)
    throw PreconditionError("supremum_space: order must be an endorelation");
  const int n = preorder.dom.size;
  std::vector<std::pair<int, int>> pairs;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> uppers;
    for (int u = 0; u < n; ++u) {
      bool upper = true;
      for (int p = 0; p < n && upper; ++p)
        if (mask >> p & 1) upper = preorder.contains(p, u);
      if (upper) uppers.push_back(u);
    }
    for (int u : uppers) {
      bool least = true;
      for (int v : uppers)
        if (!preorder.contains(u, v)) {
          least = false;
          break;
        }
      if (least) pairs.emplace_back(mask, u);
    }
  }
  TSpace out = make_tspace(std::move(monad), preorder.dom, std::move(pairs));
  out.validated = Validity::Space;
  return out;
}

/// Moves a pointwise convergence (identity or ultrafilter space) to a
/// powerset space by composing the membership relation with it: a subset
/// supports y iff one of its members converges to y.
inline TSpace membership_composite(const TSpace& pointwise) {
  if (pointwise.monad.kind != MonadKind::Identity &&
      pointwise.monad.kind != MonadKind::Ultrafilter)
    throw WrongMonad("membership composite starts from a pointwise space");
  const int n = pointwise.points.size;
  MonadSpec p = powerset_monad();
  p.budget = pointwise.monad.budget;
  FinSet px = tcarrier(p, pointwise.points);
  std::vector<std::pair<int, int>> member;
  for (int a = 0; a < px.size; ++a)
    for (int x = 0; x < n; ++x)
      if (a >> x & 1) member.emplace_back(a, x);
  Rel membership = make_rel(px, pointwise.points, std::move(member));
  Rel composite = rel_compose(membership, pointwise.converges);
  return TSpace{p, pointwise.points, composite, Validity::Unknown};
}

}  // namespace tspace
