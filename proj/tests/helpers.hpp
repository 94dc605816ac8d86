#pragma once

// Shared test fixtures, independent oracles, and random generators.  The
// oracles here deliberately avoid the library's own algorithms: equivalence
// closure runs Warshall on a boolean matrix, component counting uses its own
// union-find, the preorder check is a direct triple scan.

#include <random>
#include <vector>

#include "tspace/fibgen.hpp"

namespace testutil {

using namespace tspace;

// --- fixtures --------------------------------------------------------------

inline TSpace fix_ord() {
  return make_tspace(identity_monad(), make_set(3), {{0, 0}, {1, 1}, {2, 2}, {0, 1}});
}

inline TSpace fix_ord_eq() {
  return make_tspace(identity_monad(), make_set(2), {{0, 0}, {1, 1}, {0, 1}, {1, 0}});
}

// {0} ~> 0, {1} ~> 1, {0,1} ~> 1 over two points
inline TSpace fix_plu() {
  return make_tspace(powerset_monad(), make_set(2), {{1, 0}, {2, 1}, {3, 1}});
}

// singletons plus {0,1} ~> 1, {1,2} ~> 2, {0,1,2} ~> 2 over three points
inline TSpace fix_plu3() {
  return make_tspace(powerset_monad(), make_set(3),
                     {{1, 0}, {2, 1}, {4, 2}, {3, 1}, {6, 2}, {7, 2}});
}

inline MonoidTable m2_idempotent() { return make_monoid(2, 0, {0, 1, 1, 1}); }

inline TSpace fix_m2() {
  // carrier {0,1}; (e,0)~>0, (e,1)~>1, (a,0)~>1
  return make_tspace(monoid_action_monad(m2_idempotent()), make_set(2),
                     {{0, 0}, {1, 1}, {2, 1}});
}

inline TSpace one_point_indiscrete(const MonadSpec& m) {
  FinSet x = make_set(1);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t t = 0; t < tsize(m, 1); ++t) pairs.emplace_back(static_cast<int>(t), 0);
  return make_tspace(m, x, std::move(pairs));
}

// --- independent oracles ---------------------------------------------------

/// Reflexive-symmetric-transitive closure by Warshall on a boolean matrix.
inline std::vector<std::vector<int>> oracle_equivalence_classes(
    int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::vector<char>> m(static_cast<std::size_t>(n),
                                   std::vector<char>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  for (auto [a, b] : pairs) {
    m[a][b] = 1;
    m[b][a] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (m[i][k] && m[k][j]) m[i][j] = 1;
  std::vector<int> cls(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> classes;
  for (int i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    classes.emplace_back();
    for (int j = 0; j < n; ++j)
      if (m[i][j]) {
        cls[j] = static_cast<int>(classes.size()) - 1;
        classes.back().push_back(j);
      }
  }
  return classes;
}

/// Direct definition of a preorder.
inline bool oracle_is_preorder(int n, const Rel& r) {
  for (int i = 0; i < n; ++i)
    if (!r.contains(i, i)) return false;
  for (auto [a, b] : r.pairs)
    for (int c = 0; c < n; ++c)
      if (r.contains(b, c) && !r.contains(a, c)) return false;
  return true;
}

/// Standalone component counter on the symmetrized pair list.
inline int oracle_component_count(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : pairs) {
    int ra = find(a), rb = find(b);
    if (ra != rb) parent[ra] = rb;
  }
  int count = 0;
  for (int i = 0; i < n; ++i)
    if (find(i) == i) ++count;
  return count;
}

// --- random generation -----------------------------------------------------

inline TSpace random_space(std::mt19937& rng, const MonadSpec& m, int n, double density = 0.3) {
  FinSet x = make_set(n);
  std::size_t txn = tsize(m, static_cast<std::size_t>(n));
  std::bernoulli_distribution coin(density);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t t = 0; t < txn; ++t)
    for (int y = 0; y < n; ++y)
      if (coin(rng)) pairs.emplace_back(static_cast<int>(t), y);
  return saturate(make_tspace(m, x, std::move(pairs)));
}

/// Random space where every T-element converges; saturation only adds pairs,
/// so condition (K) survives it.
inline TSpace random_k_space(std::mt19937& rng, const MonadSpec& m, int n, double density = 0.2) {
  FinSet x = make_set(n);
  std::size_t txn = tsize(m, static_cast<std::size_t>(n));
  std::bernoulli_distribution coin(density);
  std::vector<std::pair<int, int>> pairs;
  if (n > 0) {
    std::uniform_int_distribution<int> point(0, n - 1);
    for (std::size_t t = 0; t < txn; ++t) {
      pairs.emplace_back(static_cast<int>(t), point(rng));
      for (int y = 0; y < n; ++y)
        if (coin(rng)) pairs.emplace_back(static_cast<int>(t), y);
    }
  }
  return saturate(make_tspace(m, x, std::move(pairs)));
}

inline bool spaces_isomorphic(const TSpace& a, const TSpace& b) {
  if (!a.monad.same_monad(b.monad) || a.points.size != b.points.size) return false;
  const int n = a.points.size;
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    FinMap phi{a.points, b.points, perm};
    FinMap tphi = apply_functor(a.monad, phi);
    bool match = true;
    for (int t = 0; match && t < a.converges.dom.size; ++t)
      for (int y = 0; match && y < n; ++y)
        if (a.converges.contains(t, y) != b.converges.contains(tphi(t), phi(y))) match = false;
    if (match && a.converges.pairs.size() == b.converges.pairs.size()) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace testutil
