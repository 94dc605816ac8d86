#pragma once

// Eilenberg-Moore algebras for the shipped monads, the mutually inverse
// constructions between algebras and spaces satisfying (A), and exhaustive
// enumeration of algebras on small carriers.  Powerset algebras are exactly
// the finite lattices with all joins, so their enumeration walks partial
// orders and keeps the complete ones.

#include <optional>
#include <string>
#include <vector>

#include "tspace/space.hpp"

namespace tspace {

struct EMAlgebra {
  MonadSpec monad;
  FinSet carrier;
  FinMap structure;  // T(carrier) -> carrier
};

/// Shape check plus the unit law; the multiplication law is checked by
/// check_algebra_laws, whose domain TT(carrier) may exceed the budget.
inline EMAlgebra make_algebra(MonadSpec monad, FinSet carrier, FinMap structure) {
  std::size_t txn = tsize(monad, static_cast<std::size_t>(carrier.size));
  if (structure.dom.size != static_cast<int>(txn) || structure.cod.size != carrier.size)
    throw PreconditionError("algebra structure map has wrong shape");
  FinMap eta = unit_component(monad, carrier.size);
  for (int x = 0; x < carrier.size; ++x)
    if (structure(eta(x)) != x)
      throw LawViolation("algebra unit law fails at point " + std::to_string(x));
  return EMAlgebra{std::move(monad), std::move(carrier), std::move(structure)};
}

struct AlgebraLawReport {
  bool unit_law = true;
  bool mult_law = true;
  bool mult_checked = true;  // false when TT(carrier) exceeds the budget
  std::string witness;

  bool ok() const { return unit_law && mult_law; }
};

inline AlgebraLawReport check_algebra_laws(const EMAlgebra& a) {
  AlgebraLawReport report;
  FinMap eta = unit_component(a.monad, a.carrier.size);
  for (int x = 0; x < a.carrier.size; ++x)
    if (a.structure(eta(x)) != x) {
      report.unit_law = false;
      report.witness = "c(eta(" + std::to_string(x) + ")) != " + std::to_string(x);
      return report;
    }
  if (!detail::law_fits(ops_of(a.monad), static_cast<std::size_t>(a.carrier.size), 2)) {
    report.mult_checked = false;
    return report;
  }
  FinMap lhs = compose(a.structure, apply_functor(a.monad, a.structure));
  FinMap rhs = compose(a.structure, mult_component(a.monad, a.carrier.size));
  if (!map_equal(lhs, rhs)) {
    report.mult_law = false;
    for (int w = 0; w < lhs.dom.size; ++w)
      if (lhs(w) != rhs(w)) {
        report.witness = "c(Tc(w)) != c(mu(w)) at TT-element " + std::to_string(w);
        break;
      }
  }
  return report;
}

/// The free algebra (TX, mu_X) on a carrier.
inline EMAlgebra free_algebra(const MonadSpec& monad, const FinSet& x) {
  FinSet tx = tcarrier(monad, x);
  return EMAlgebra{monad, tx, mult_component(monad, x.size)};
}

/// An algebra seen as a space: every T-element converges exactly to its
/// structure value.
inline TSpace space_of_algebra(const EMAlgebra& a) {
  AlgebraLawReport laws = check_algebra_laws(a);
  if (!laws.ok()) throw LawViolation("not an algebra: " + laws.witness);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(a.structure.dom.size));
  for (int t = 0; t < a.structure.dom.size; ++t) pairs.emplace_back(t, a.structure(t));
  TSpace s = make_tspace(a.monad, a.carrier, std::move(pairs));
  s.validated = Validity::Space;
  return s;
}

/// A space satisfying (A) seen as an algebra; inverse to space_of_algebra.
inline EMAlgebra algebra_of_space(const TSpace& s) {
  ConditionReport cond = check_khaus(s);
  if (!cond.A) throw NotAlgebraic("space does not satisfy (A)");
  std::vector<int> table(static_cast<std::size_t>(s.converges.dom.size), -1);
  for (const auto& [t, y] : s.converges.pairs) table[static_cast<std::size_t>(t)] = y;
  return make_algebra(s.monad, s.points,
                      FinMap{s.converges.dom, s.points, std::move(table)});
}

namespace detail {

/// Complete-lattice orders give exactly the powerset algebras: the structure
/// map sends a subset to its join.
inline std::vector<EMAlgebra> powerset_algebras(const MonadSpec& monad, int n) {
  std::vector<EMAlgebra> out;
  if (n == 0) return out;  // the empty carrier admits no map P({}) -> {}
  for (const auto& order : enumerate_posets(n)) {
    // least upper bound of a subset, or -1 when none exists
    auto join_of = [&order, n](int mask) -> int {
      std::vector<int> uppers;
      for (int u = 0; u < n; ++u) {
        bool upper = true;
        for (int x = 0; x < n && upper; ++x)
          if (mask >> x & 1) upper = order.contains(x, u);
        if (upper) uppers.push_back(u);
      }
      for (int u : uppers) {
        bool least = true;
        for (int v : uppers)
          if (!order.contains(u, v)) {
            least = false;
            break;
          }
        if (least) return u;
      }
      return -1;
    };
    std::vector<int> table(std::size_t{1} << n);
    bool complete = true;
    for (int mask = 0; mask < (1 << n) && complete; ++mask) {
      int j = join_of(mask);
      if (j < 0)
        complete = false;
      else
        table[static_cast<std::size_t>(mask)] = j;
    }
    if (!complete) continue;
    out.push_back(make_algebra(monad, make_set(n),
                               FinMap{make_set(1 << n), make_set(n), std::move(table)}));
  }
  return out;
}

inline std::vector<EMAlgebra> monoid_algebras(const MonadSpec& monad, int n) {
  std::vector<EMAlgebra> out;
  const MonoidTable& mono = *monad.monoid;
  const int msize = mono.size;
  // The unit row is forced to the identity; enumerate the remaining rows and
  // keep the associative actions.
  std::vector<int> free_slots;
  for (int s = 0; s < msize; ++s)
    if (s != mono.unit)
      for (int x = 0; x < n; ++x) free_slots.push_back(s * n + x);
  double count = std::pow(static_cast<double>(std::max(n, 1)),
                          static_cast<double>(free_slots.size()));
  if (count > 2e6) throw PreconditionError("monoid algebra enumeration too large");
  std::vector<int> table(static_cast<std::size_t>(msize * n));
  for (int x = 0; x < n; ++x) table[static_cast<std::size_t>(mono.unit * n + x)] = x;
  std::vector<int> odo(free_slots.size(), 0);
  if (n == 0) {
    if (free_slots.empty())
      out.push_back(make_algebra(monad, make_set(0), FinMap{make_set(0), make_set(0), {}}));
    return out;
  }
  while (true) {
    for (std::size_t i = 0; i < free_slots.size(); ++i)
      table[static_cast<std::size_t>(free_slots[i])] = odo[i];
    bool assoc = true;
    for (int s = 0; s < msize && assoc; ++s)
      for (int t = 0; t < msize && assoc; ++t)
        for (int x = 0; x < n; ++x) {
          int via = table[static_cast<std::size_t>(s * n + table[static_cast<std::size_t>(t * n + x)])];
          int direct = table[static_cast<std::size_t>(mono.mul(s, t) * n + x)];
          if (via != direct) {
            assoc = false;
            break;
          }
        }
    if (assoc)
      out.push_back(make_algebra(monad, make_set(n),
                                 FinMap{make_set(msize * n), make_set(n), table}));
    std::size_t i = 0;
    for (; i < odo.size(); ++i) {
      if (++odo[i] < n) break;
      odo[i] = 0;
    }
    if (i == odo.size()) break;
  }
  return out;
}

}  // namespace detail

/// Every algebra of the monad on a carrier of the given size.
inline std::vector<EMAlgebra> enumerate_algebras(const MonadSpec& monad, int n) {
  std::vector<EMAlgebra> out;
  switch (monad.kind) {
    case MonadKind::Identity:
    case MonadKind::Ultrafilter: {
      // the unit law forces the structure map to be the identity
      FinSet x = make_set(n);
      out.push_back(make_algebra(monad, x, identity_map(x)));
      break;
    }
    case MonadKind::Powerset:
      out = detail::powerset_algebras(monad, n);
      break;
    case MonadKind::MonoidAction:
      out = detail::monoid_algebras(monad, n);
      break;
    case MonadKind::T0:
      if (n == 0)
        out.push_back(make_algebra(monad, make_set(0), FinMap{make_set(0), make_set(0), {}}));
      if (n == 1)
        out.push_back(make_algebra(monad, make_set(1), FinMap{make_set(1), make_set(1), {0}}));
      break;
    case MonadKind::T1:
      if (n == 1)
        out.push_back(make_algebra(monad, make_set(1), FinMap{make_set(1), make_set(1), {0}}));
      break;
  }
  return out;
}

}  // namespace tspace
