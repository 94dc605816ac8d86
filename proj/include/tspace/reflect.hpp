#pragma once

// Constructive reflectors.  The algebra reflection quotients the free algebra
// (TX, mu) by the least congruence relating each converging T-element to the
// unit of its limit; the Hausdorff reflection merges points to a fixpoint;
// the complete-regularity reflection re-equips the points with the initial
// structure along the algebra-reflection unit; the F reflection quotients by
// that unit's kernel.  verify_reflection brute-forces the universal property
// against enumerated codomains and is the oracle everything else answers to.

#include <optional>
#include <string>
#include <vector>

#include "tspace/algebra.hpp"

namespace tspace {

struct CongruenceResult {
  EMAlgebra algebra;                      // the quotient
  FinMap q;                               // projection, carrier -> quotient
  std::vector<std::vector<int>> classes;  // blocks in order of least member
};

namespace detail {

/// Quotient algebra structure computed through the least-index section of q;
/// independence of the section is asserted, not assumed.
inline CongruenceResult quotient_algebra(const EMAlgebra& a, const UnionFind& uf) {
  std::vector<std::pair<int, int>> merged;
  for (int i = 0; i < a.carrier.size; ++i) merged.emplace_back(uf.find(i), i);
  Quotient quo = coequalizer_quotient(make_rel(a.carrier, a.carrier, std::move(merged)));

  std::vector<int> section(quo.classes.size());
  for (std::size_t c = 0; c < quo.classes.size(); ++c) section[c] = quo.classes[c].front();
  FinMap sec{quo.q.cod, a.carrier, std::move(section)};
  FinMap tsec = apply_functor(a.monad, sec);
  FinMap structure = compose(quo.q, compose(a.structure, tsec));

  // q must be a homomorphism for the induced structure
  FinMap tq = apply_functor(a.monad, quo.q);
  FinMap lhs = compose(quo.q, a.structure);
  FinMap rhs = compose(structure, tq);
  if (!map_equal(lhs, rhs))
    throw InternalInvariantViolated("quotient structure depends on the chosen section");

  EMAlgebra quotient = make_algebra(a.monad, quo.q.cod, std::move(structure));
  return CongruenceResult{std::move(quotient), quo.q, std::move(quo.classes)};
}

}  // namespace detail

/// Least congruence on the algebra containing the generator pairs, computed
/// with a per-monad closure rule: powerset classes close under unions with a
/// common set, monoid-action classes under every translation; for the
/// remaining shipped monads a congruence is a plain equivalence.
inline CongruenceResult congruence_closure(const EMAlgebra& a, const Rel& generators) {
  if (generators.dom.size != a.carrier.size || generators.cod.size != a.carrier.size)
    throw PreconditionError("congruence generators must live on the algebra carrier");
  const int n = a.carrier.size;
  UnionFind uf(n);
  std::vector<std::pair<int, int>> work(generators.pairs.begin(), generators.pairs.end());
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (!uf.unite(x, y)) continue;
    switch (a.monad.kind) {
      case MonadKind::Powerset:
        // close under joining both sides with a common element; the join is
        // the algebra's own binary operation, not the free union
        for (int z = 0; z < n; ++z)
          work.emplace_back(a.structure((1 << x) | (1 << z)),
                            a.structure((1 << y) | (1 << z)));
        break;
      case MonadKind::MonoidAction: {
        // the carrier is an M-set through the algebra structure itself
        const int msize = a.monad.monoid->size;
        for (int s = 0; s < msize; ++s)
          work.emplace_back(a.structure(s * n + x), a.structure(s * n + y));
        break;
      }
      case MonadKind::Identity:
      case MonadKind::Ultrafilter:
      case MonadKind::T0:
      case MonadKind::T1:
        break;  // nothing beyond the equivalence closure
    }
  }
  return detail::quotient_algebra(a, uf);
}

/// Oracle route: closes by enumerating T of the current relation, viewed as
/// an abstract carrier of pairs.  Dies loudly when T(~) exceeds the budget.
inline CongruenceResult congruence_closure_generic(const EMAlgebra& a, const Rel& generators) {
  const int n = a.carrier.size;
  UnionFind uf(n);
  for (const auto& [x, y] : generators.pairs) uf.unite(x, y);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<int, int>> rel;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (uf.same(x, y)) rel.emplace_back(x, y);
    const int k = static_cast<int>(rel.size());
    if (!tsize_opt(a.monad, static_cast<std::size_t>(k)))
      throw BudgetExceeded("generic congruence closure: |T(~)| over budget");
    FinSet rel_carrier = make_set(k);
    std::vector<int> p1(static_cast<std::size_t>(k)), p2(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      p1[static_cast<std::size_t>(i)] = rel[static_cast<std::size_t>(i)].first;
      p2[static_cast<std::size_t>(i)] = rel[static_cast<std::size_t>(i)].second;
    }
    FinMap tp1 = apply_functor(a.monad, FinMap{rel_carrier, a.carrier, std::move(p1)});
    FinMap tp2 = apply_functor(a.monad, FinMap{rel_carrier, a.carrier, std::move(p2)});
    for (int w = 0; w < tp1.dom.size; ++w)
      if (uf.unite(a.structure(tp1(w)), a.structure(tp2(w)))) changed = true;
  }
  return detail::quotient_algebra(a, uf);
}

enum class ReflKind { B, H, C, F, CF };

inline std::string refl_kind_name(ReflKind k) {
  switch (k) {
    case ReflKind::B: return "B";
    case ReflKind::H: return "H";
    case ReflKind::C: return "C";
    case ReflKind::F: return "F";
    case ReflKind::CF: return "CF";
  }
  return "?";
}

struct ReflectionResult {
  MonotoneMap unit;
  TSpace reflected;
  ReflKind kind = ReflKind::B;
  std::optional<CongruenceResult> congruence;  // set for B
};

namespace detail {

inline void require_space(const TSpace& s, const char* who) {
  if (s.validated == Validity::Space) return;
  AxiomReport rep = check_axioms(s);
  if (!rep.ok()) throw PreconditionError(std::string(who) + ": input is not a T-space");
}

}  // namespace detail

/// Reflection into algebras: quotient of the free algebra (TX, mu) by the
/// least congruence containing (t, eta(y)) for every converging pair (t, y).
/// Accepts any reflexive T-graph.
inline ReflectionResult beta_reflection(const TSpace& s) {
  AxiomReport axioms = check_axioms(s);
  if (!axioms.reflexive) throw PreconditionError("beta_reflection needs a reflexive graph");
  EMAlgebra free = free_algebra(s.monad, s.points);
  FinMap eta = unit_component(s.monad, s.points.size);
  std::vector<std::pair<int, int>> gens;
  gens.reserve(s.converges.pairs.size());
  for (const auto& [t, y] : s.converges.pairs) gens.emplace_back(t, eta(y));
  CongruenceResult cong =
      congruence_closure(free, make_rel(free.carrier, free.carrier, std::move(gens)));
  TSpace reflected = space_of_algebra(cong.algebra);
  FinMap unit = compose(cong.q, eta);
  MonotoneMap beta = make_monotone(std::move(unit), s, reflected);
  return ReflectionResult{std::move(beta), std::move(reflected), ReflKind::B, std::move(cong)};
}

/// Merges points that are joint limits of a single T-element, rebuilding the
/// quotient with its final structure until condition (H) holds.
inline ReflectionResult h_reflection(const TSpace& s) {
  detail::require_space(s, "h_reflection");
  const int n = s.points.size;
  UnionFind uf(n);
  while (true) {
    std::vector<std::pair<int, int>> merged;
    for (int i = 0; i < n; ++i) merged.emplace_back(uf.find(i), i);
    Quotient quo = coequalizer_quotient(make_rel(s.points, s.points, std::move(merged)));
    TSpace quotient = final_structure(s.monad, quo.q.cod, {{quo.q, s}});
    ConditionReport cond = check_khaus(quotient);
    if (cond.H) {
      MonotoneMap unit = make_monotone(quo.q, s, quotient);
      return ReflectionResult{std::move(unit), std::move(quotient), ReflKind::H, std::nullopt};
    }
    // merge the classes of the two limits and retry
    int ru = -1, rv = -1;
    for (int i = 0; i < n; ++i) {
      if (quo.q(i) == cond.h_violation->first && ru < 0) ru = i;
      if (quo.q(i) == cond.h_violation->second && rv < 0) rv = i;
    }
    uf.unite(ru, rv);
  }
}

struct CFFlags {
  bool C = false;
  bool F = false;
};

/// F: the algebra-reflection unit is injective on points.
/// C: the space already carries the initial structure along that unit.
inline CFFlags check_CF(const TSpace& s) {
  detail::require_space(s, "check_CF");
  ReflectionResult beta = beta_reflection(s);
  CFFlags flags;
  flags.F = is_injective(beta.unit.f);
  TSpace initial = initial_structure(s.monad, s.points, {{beta.unit.f, beta.reflected}});
  flags.C = rel_equal(initial.converges, s.converges);
  return flags;
}

/// Same points, structure replaced by the initial structure along the
/// algebra-reflection unit; the unit is the identity on points.
inline ReflectionResult c_reflection(const TSpace& s) {
  detail::require_space(s, "c_reflection");
  ReflectionResult beta = beta_reflection(s);
  TSpace restructured = initial_structure(s.monad, s.points, {{beta.unit.f, beta.reflected}});
  restructured.validated = Validity::Space;
  MonotoneMap unit = make_monotone(identity_map(s.points), s, restructured);
  return ReflectionResult{std::move(unit), std::move(restructured), ReflKind::C, std::nullopt};
}

/// Quotient of the points by the kernel of the algebra-reflection unit, with
/// the final structure.  (F) is asserted on the result rather than assumed.
inline ReflectionResult f_reflection(const TSpace& s) {
  detail::require_space(s, "f_reflection");
  ReflectionResult beta = beta_reflection(s);
  std::vector<std::pair<int, int>> kernel;
  for (int x = 0; x < s.points.size; ++x)
    for (int y = x + 1; y < s.points.size; ++y)
      if (beta.unit.f(x) == beta.unit.f(y)) kernel.emplace_back(x, y);
  Quotient quo = coequalizer_quotient(make_rel(s.points, s.points, std::move(kernel)));
  TSpace quotient = final_structure(s.monad, quo.q.cod, {{quo.q, s}});
  if (!check_CF(quotient).F)
    throw InternalInvariantViolated("f_reflection: quotient fails (F)");
  MonotoneMap unit = make_monotone(quo.q, s, quotient);
  return ReflectionResult{std::move(unit), std::move(quotient), ReflKind::F, std::nullopt};
}

/// F reflection followed by C reflection.
inline ReflectionResult cf_reflection(const TSpace& s) {
  ReflectionResult f = f_reflection(s);
  ReflectionResult c = c_reflection(f.reflected);
  FinMap unit = compose(c.unit.f, f.unit.f);
  MonotoneMap composite = make_monotone(std::move(unit), s, c.reflected);
  return ReflectionResult{std::move(composite), c.reflected, ReflKind::CF, std::nullopt};
}

inline ReflectionResult reflect_into(const TSpace& s, ReflKind kind) {
  switch (kind) {
    case ReflKind::B: return beta_reflection(s);
    case ReflKind::H: return h_reflection(s);
    case ReflKind::C: return c_reflection(s);
    case ReflKind::F: return f_reflection(s);
    case ReflKind::CF: return cf_reflection(s);
  }
  throw PreconditionError("unknown reflection kind");
}

/// The algebra map induced between the reflections of the two ends of a
/// monotone map.
inline FinMap b_functor_map(const MonotoneMap& m) {
  ReflectionResult rs = beta_reflection(m.source);
  ReflectionResult rt = beta_reflection(m.target);
  FinMap tf = apply_functor(m.source.monad, m.f);
  const FinMap& qs = rs.congruence->q;
  const FinMap& qt = rt.congruence->q;
  std::vector<int> table(static_cast<std::size_t>(qs.cod.size), -1);
  for (int t = 0; t < qs.dom.size; ++t) {
    int lhs = qs(t);
    int rhs = qt(tf(t));
    if (table[static_cast<std::size_t>(lhs)] < 0)
      table[static_cast<std::size_t>(lhs)] = rhs;
    else if (table[static_cast<std::size_t>(lhs)] != rhs)
      throw InternalInvariantViolated("b_functor_map: image not constant on classes");
  }
  return FinMap{qs.cod, qt.cod, std::move(table)};
}

// ---------------------------------------------------------------------------
// Enumeration of spaces and subcategories

/// All T-spaces on n points, by scanning every relation that contains the
/// unit pairs.  Throws when the candidate count exceeds the cap.
inline std::vector<TSpace> enumerate_spaces(const MonadSpec& monad, int n,
                                            std::size_t cap = std::size_t{1} << 22) {
  FinSet x = make_set(n);
  FinSet tx = tcarrier(monad, x);
  FinMap eta = unit_component(monad, n);
  std::vector<char> forced(static_cast<std::size_t>(tx.size * n), 0);
  for (int i = 0; i < n; ++i) forced[static_cast<std::size_t>(eta(i) * n + i)] = 1;
  std::vector<int> free_cells;
  for (int c = 0; c < tx.size * n; ++c)
    if (!forced[static_cast<std::size_t>(c)]) free_cells.push_back(c);
  if (free_cells.size() >= 8 * sizeof(std::size_t) ||
      (std::size_t{1} << free_cells.size()) > cap)
    throw BudgetExceeded("space enumeration: too many candidate relations");
  std::vector<TSpace> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << free_cells.size()); ++mask) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) pairs.emplace_back(eta(i), i);
    for (std::size_t k = 0; k < free_cells.size(); ++k)
      if (mask >> k & 1) pairs.emplace_back(free_cells[k] / n, free_cells[k] % n);
    TSpace cand{monad, x, make_rel(tx, x, std::move(pairs)), Validity::Unknown};
    AxiomReport rep = check_axioms(cand);
    if (rep.ok()) {
      cand.validated = Validity::Space;
      out.push_back(std::move(cand));
    }
  }
  return out;
}

namespace detail {

/// H-spaces as partial limit assignments TX -> X + {none}, with the unit
/// slots pinned.  Collapsing units on a carrier with two or more points leave
/// no H-space, which falls out of the pinning conflict.
inline std::vector<TSpace> enumerate_h_spaces(const MonadSpec& monad, int n, std::size_t cap) {
  FinSet x = make_set(n);
  FinSet tx = tcarrier(monad, x);
  FinMap eta = unit_component(monad, n);
  std::vector<int> pinned(static_cast<std::size_t>(tx.size), -2);  // -2 free, else limit
  for (int i = 0; i < n; ++i) {
    int slot = eta(i);
    if (pinned[static_cast<std::size_t>(slot)] == -2)
      pinned[static_cast<std::size_t>(slot)] = i;
    else if (pinned[static_cast<std::size_t>(slot)] != i)
      return {};  // unit collapses two points; reflexivity and H are incompatible
  }
  std::vector<int> free_slots;
  for (int t = 0; t < tx.size; ++t)
    if (pinned[static_cast<std::size_t>(t)] == -2) free_slots.push_back(t);
  double count = std::pow(static_cast<double>(n + 1), static_cast<double>(free_slots.size()));
  if (count > static_cast<double>(cap))
    throw BudgetExceeded("H-space enumeration: too many assignments");
  std::vector<TSpace> out;
  std::vector<int> odo(free_slots.size(), 0);  // 0 = none, 1..n = limit+1
  while (true) {
    std::vector<std::pair<int, int>> pairs;
    for (int t = 0; t < tx.size; ++t)
      if (pinned[static_cast<std::size_t>(t)] >= 0)
        pairs.emplace_back(t, pinned[static_cast<std::size_t>(t)]);
    for (std::size_t k = 0; k < free_slots.size(); ++k)
      if (odo[k] > 0) pairs.emplace_back(free_slots[k], odo[k] - 1);
    TSpace cand{monad, x, make_rel(tx, x, std::move(pairs)), Validity::Unknown};
    if (check_axioms(cand).ok()) {
      cand.validated = Validity::Space;
      out.push_back(std::move(cand));
    }
    std::size_t i = 0;
    for (; i < odo.size(); ++i) {
      if (++odo[i] <= n) break;
      odo[i] = 0;
    }
    if (i == odo.size()) break;
  }
  return out;
}

/// Visits every partition of {0..k-1} as a block-index assignment in
/// restricted-growth order.
template <typename Fn>
inline void for_each_partition(int k, Fn&& visit) {
  std::vector<int> assign(static_cast<std::size_t>(std::max(k, 1)), 0);
  if (k == 0) {
    visit(std::vector<int>{});
    return;
  }
  while (true) {
    visit(assign);
    // next restricted-growth string
    int i = k - 1;
    for (; i > 0; --i) {
      int max_prefix = 0;
      for (int j = 0; j < i; ++j) max_prefix = std::max(max_prefix, assign[static_cast<std::size_t>(j)]);
      if (assign[static_cast<std::size_t>(i)] <= max_prefix) break;
    }
    if (i == 0) return;
    ++assign[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) assign[static_cast<std::size_t>(j)] = 0;
  }
}

/// Complete enumeration of powerset C-spaces: a C-space on X is exactly the
/// pair relation of a join-congruence on the free algebra P(X) that is
/// generated by its own (subset, unit-of-point) pairs.  Preorders alone do
/// not suffice; whether the empty family takes a supremum is extra data.
inline std::vector<TSpace> powerset_c_spaces(const MonadSpec& monad, int n) {
  if (n > 3) throw BudgetExceeded("powerset C-space enumeration supported up to 3 points");
  std::vector<TSpace> out;
  FinSet x = make_set(n);
  EMAlgebra free = free_algebra(monad, x);
  FinMap eta = unit_component(monad, n);
  const int k = 1 << n;
  for_each_partition(k, [&](const std::vector<int>& block) {
    // join-congruence: blocks respect union with any common subset
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) {
        if (block[static_cast<std::size_t>(a)] != block[static_cast<std::size_t>(b)]) continue;
        for (int c = 0; c < k; ++c)
          if (block[static_cast<std::size_t>(a | c)] != block[static_cast<std::size_t>(b | c)])
            return;
      }
    std::vector<std::pair<int, int>> pairs;
    for (int mask = 0; mask < k; ++mask)
      for (int y = 0; y < n; ++y)
        if (block[static_cast<std::size_t>(mask)] == block[static_cast<std::size_t>(eta(y))])
          pairs.emplace_back(mask, y);
    TSpace cand = make_tspace(monad, x, std::move(pairs));
    // keep it only when the congruence its pairs generate is this partition
    std::vector<std::pair<int, int>> gens;
    for (const auto& [t, y] : cand.converges.pairs) gens.emplace_back(t, eta(y));
    CongruenceResult cong =
        congruence_closure(free, make_rel(free.carrier, free.carrier, std::move(gens)));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if ((cong.q(a) == cong.q(b)) !=
            (block[static_cast<std::size_t>(a)] == block[static_cast<std::size_t>(b)]))
          return;
    cand.validated = Validity::Space;
    out.push_back(std::move(cand));
  });
  return out;
}

}  // namespace detail

/// Objects of the named full subcategory on n points.
inline std::vector<TSpace> enumerate_subcategory(const MonadSpec& monad, int n, ReflKind kind,
                                                 std::size_t cap = std::size_t{1} << 22) {
  switch (kind) {
    case ReflKind::B: {
      std::vector<TSpace> out;
      for (const auto& a : enumerate_algebras(monad, n)) out.push_back(space_of_algebra(a));
      return out;
    }
    case ReflKind::H:
      return detail::enumerate_h_spaces(monad, n, cap);
    case ReflKind::F: {
      std::vector<TSpace> out;
      for (auto& s : detail::enumerate_h_spaces(monad, n, cap))
        if (check_CF(s).F) out.push_back(std::move(s));
      return out;
    }
    case ReflKind::C: {
      if (monad.kind == MonadKind::Powerset) return detail::powerset_c_spaces(monad, n);
      std::vector<TSpace> out;
      for (auto& s : enumerate_spaces(monad, n, cap))
        if (check_CF(s).C) out.push_back(std::move(s));
      return out;
    }
    case ReflKind::CF: {
      std::vector<TSpace> out;
      for (auto& s : enumerate_subcategory(monad, n, ReflKind::C, cap))
        if (check_CF(s).F) out.push_back(std::move(s));
      return out;
    }
  }
  throw PreconditionError("unknown subcategory");
}

// ---------------------------------------------------------------------------
// Universal-property verification

struct EnumPolicy {
  int max_points = 3;
  std::size_t cap = std::size_t{1} << 22;
};

struct VerificationReport {
  bool ok = true;
  std::string detail;  // first failure, when not ok
};

/// Checks that every monotone map from the reflection's source into every
/// given codomain factors through the unit by exactly one monotone map.
/// Candidate factorizations are the extensions of the forced values on the
/// unit's image; anything else violates the factorization equation outright.
inline VerificationReport verify_reflection_against(const ReflectionResult& r,
                                                    const std::vector<TSpace>& codomains) {
  const TSpace& source = r.unit.source;
  const TSpace& reflected = r.reflected;
  VerificationReport report;
  for (const auto& codomain : codomains) {
    std::vector<FinMap> maps;
    try {
      maps = all_maps(source.points, codomain.points);
    } catch (const PreconditionError&) {
      throw BudgetExceeded("verify_reflection: codomain map space too large");
    }
    for (const auto& f : maps) {
      if (!check_monotone(f, source, codomain)) continue;
      // forced values on the unit image
      std::vector<int> base(static_cast<std::size_t>(reflected.points.size), -1);
      bool consistent = true;
      for (int xp = 0; xp < source.points.size && consistent; ++xp) {
        int u = r.unit.f(xp);
        if (base[static_cast<std::size_t>(u)] < 0)
          base[static_cast<std::size_t>(u)] = f(xp);
        else
          consistent = base[static_cast<std::size_t>(u)] == f(xp);
      }
      int found = 0;
      if (consistent) {
        std::vector<int> free_idx;
        for (int i = 0; i < reflected.points.size; ++i)
          if (base[static_cast<std::size_t>(i)] < 0) free_idx.push_back(i);
        std::vector<int> odo(free_idx.size(), 0);
        bool more = codomain.points.size > 0 || free_idx.empty();
        while (more) {
          std::vector<int> table = base;
          for (std::size_t k = 0; k < free_idx.size(); ++k)
            table[static_cast<std::size_t>(free_idx[k])] = odo[k];
          FinMap h{reflected.points, codomain.points, std::move(table)};
          if (check_monotone(h, reflected, codomain)) ++found;
          std::size_t i = 0;
          for (; i < odo.size(); ++i) {
            if (++odo[i] < codomain.points.size) break;
            odo[i] = 0;
          }
          if (i == odo.size()) break;
        }
      }
      if (found != 1) {
        report.ok = false;
        report.detail = refl_kind_name(r.kind) + "-reflection: " + std::to_string(found) +
                        " factorizations for a map into a " +
                        std::to_string(codomain.points.size) + "-point codomain";
        return report;
      }
    }
  }
  return report;
}

inline VerificationReport verify_reflection(const ReflectionResult& r, const EnumPolicy& policy) {
  std::vector<TSpace> codomains;
  for (int n = 0; n <= policy.max_points; ++n)
    for (auto& s : enumerate_subcategory(r.unit.source.monad, n, r.kind, policy.cap))
      codomains.push_back(std::move(s));
  return verify_reflection_against(r, codomains);
}

}  // namespace tspace
