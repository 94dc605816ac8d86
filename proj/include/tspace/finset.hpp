#pragma once

// Finite sets, maps and relations: the categorical toolkit the rest of the
// library is built on.  Elements of a finite set are always the dense indices
// 0..size-1; labels are display-only.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tspace/errors.hpp"

namespace tspace {

struct FinSet {
  int size = 0;
  std::vector<std::string> labels;  // empty, or one distinct label per element

  bool has_labels() const { return !labels.empty(); }

  std::string label(int i) const {
    return has_labels() ? labels[static_cast<std::size_t>(i)] : std::to_string(i);
  }
};

inline FinSet make_set(int n) {
  if (n < 0) throw PreconditionError("finite set size must be nonnegative");
  return FinSet{n, {}};
}

inline FinSet make_set(int n, std::vector<std::string> labels) {
  if (n < 0) throw PreconditionError("finite set size must be nonnegative");
  if (labels.empty()) return FinSet{n, {}};
  if (static_cast<int>(labels.size()) != n)
    throw PreconditionError("label count does not match carrier size");
  auto sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw PreconditionError("labels must be pairwise distinct");
  return FinSet{n, std::move(labels)};
}

struct FinMap {
  FinSet dom, cod;
  std::vector<int> table;  // table[i] < cod.size, length dom.size

  int operator()(int i) const { return table[static_cast<std::size_t>(i)]; }
};

inline FinMap make_map(FinSet dom, FinSet cod, std::vector<int> table) {
  if (static_cast<int>(table.size()) != dom.size)
    throw PreconditionError("map table length does not match domain size");
  for (int v : table)
    if (v < 0 || v >= cod.size)
      throw PreconditionError("map table entry out of codomain range");
  return FinMap{std::move(dom), std::move(cod), std::move(table)};
}

inline FinMap identity_map(const FinSet& x) {
  std::vector<int> t(static_cast<std::size_t>(x.size));
  std::iota(t.begin(), t.end(), 0);
  return FinMap{x, x, std::move(t)};
}

inline FinMap constant_map(const FinSet& dom, const FinSet& cod, int value) {
  if (dom.size > 0 && (value < 0 || value >= cod.size))
    throw PreconditionError("constant value out of codomain range");
  return FinMap{dom, cod, std::vector<int>(static_cast<std::size_t>(dom.size), value)};
}

/// g after f.
inline FinMap compose(const FinMap& g, const FinMap& f) {
  if (f.cod.size != g.dom.size)
    throw PreconditionError("composition: codomain/domain size mismatch");
  std::vector<int> t(f.table.size());
  for (std::size_t i = 0; i < f.table.size(); ++i) t[i] = g.table[static_cast<std::size_t>(f.table[i])];
  return FinMap{f.dom, g.cod, std::move(t)};
}

inline bool map_equal(const FinMap& f, const FinMap& g) {
  return f.dom.size == g.dom.size && f.cod.size == g.cod.size && f.table == g.table;
}

inline bool is_injective(const FinMap& f) {
  std::vector<char> seen(static_cast<std::size_t>(f.cod.size), 0);
  for (int v : f.table) {
    if (seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

inline bool is_surjective(const FinMap& f) {
  std::vector<char> seen(static_cast<std::size_t>(f.cod.size), 0);
  for (int v : f.table) seen[static_cast<std::size_t>(v)] = 1;
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

/// A binary relation between two finite sets, stored as a deduplicated,
/// lexicographically sorted pair list.
struct Rel {
  FinSet dom, cod;
  std::vector<std::pair<int, int>> pairs;

  bool contains(int a, int b) const {
    return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(a, b));
  }
};

/// Dense membership view of a relation, for the loops where the binary
/// search on the pair list would dominate.
struct RelMatrix {
  int cod = 0;
  std::vector<char> bits;

  explicit RelMatrix(const Rel& r)
      : cod(r.cod.size),
        bits(static_cast<std::size_t>(r.dom.size) * static_cast<std::size_t>(r.cod.size), 0) {
    for (const auto& [a, b] : r.pairs)
      bits[static_cast<std::size_t>(a) * static_cast<std::size_t>(cod) +
           static_cast<std::size_t>(b)] = 1;
  }

  bool at(int a, int b) const {
    return bits[static_cast<std::size_t>(a) * static_cast<std::size_t>(cod) +
                static_cast<std::size_t>(b)] != 0;
  }
};

inline Rel make_rel(FinSet dom, FinSet cod, std::vector<std::pair<int, int>> pairs) {
  for (const auto& [a, b] : pairs)
    if (a < 0 || a >= dom.size || b < 0 || b >= cod.size)
      throw PreconditionError("relation pair out of range");
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return Rel{std::move(dom), std::move(cod), std::move(pairs)};
}

inline Rel diagonal_rel(const FinSet& x) {
  std::vector<std::pair<int, int>> p;
  p.reserve(static_cast<std::size_t>(x.size));
  for (int i = 0; i < x.size; ++i) p.emplace_back(i, i);
  return Rel{x, x, std::move(p)};
}

inline Rel full_rel(const FinSet& a, const FinSet& b) {
  std::vector<std::pair<int, int>> p;
  p.reserve(static_cast<std::size_t>(a.size) * static_cast<std::size_t>(b.size));
  for (int i = 0; i < a.size; ++i)
    for (int j = 0; j < b.size; ++j) p.emplace_back(i, j);
  return Rel{a, b, std::move(p)};
}

inline Rel rel_of_map(const FinMap& f) {
  std::vector<std::pair<int, int>> p;
  p.reserve(f.table.size());
  for (int i = 0; i < f.dom.size; ++i) p.emplace_back(i, f(i));
  return Rel{f.dom, f.cod, std::move(p)};
}

inline bool rel_equal(const Rel& r, const Rel& s) {
  return r.dom.size == s.dom.size && r.cod.size == s.cod.size && r.pairs == s.pairs;
}

/// (x,z) in the composite iff some y has (x,y) in r and (y,z) in s.
inline Rel rel_compose(const Rel& r, const Rel& s) {
  if (r.cod.size != s.dom.size)
    throw PreconditionError("rel_compose: middle carriers differ");
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(s.dom.size));
  for (const auto& [y, z] : s.pairs) succ[static_cast<std::size_t>(y)].push_back(z);
  std::vector<std::pair<int, int>> out;
  for (const auto& [x, y] : r.pairs)
    for (int z : succ[static_cast<std::size_t>(y)]) out.emplace_back(x, z);
  return make_rel(r.dom, s.cod, std::move(out));
}

struct ImageFactorization {
  FinMap epi;   // surjection onto the image carrier
  FinMap mono;  // injection into the original codomain
};

/// Factor f as mono . epi with the image carrier ordered by first occurrence
/// in the domain scan and labeled by representative preimages.
inline ImageFactorization image_factorize(const FinMap& f) {
  std::vector<int> image_index(static_cast<std::size_t>(f.cod.size), -1);
  std::vector<int> reps;       // codomain value of each image element
  std::vector<int> first_pre;  // first preimage of each image element
  std::vector<int> epi_table(f.table.size());
  for (int i = 0; i < f.dom.size; ++i) {
    int v = f(i);
    if (image_index[static_cast<std::size_t>(v)] < 0) {
      image_index[static_cast<std::size_t>(v)] = static_cast<int>(reps.size());
      reps.push_back(v);
      first_pre.push_back(i);
    }
    epi_table[static_cast<std::size_t>(i)] = image_index[static_cast<std::size_t>(v)];
  }
  std::vector<std::string> labels;
  labels.reserve(reps.size());
  for (int i : first_pre) labels.push_back(f.dom.label(i));
  FinSet image = make_set(static_cast<int>(reps.size()), std::move(labels));
  return ImageFactorization{FinMap{f.dom, image, std::move(epi_table)},
                            FinMap{image, f.cod, std::move(reps)}};
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) const {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] =
          parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }

  /// Returns true when the two classes were distinct and are now merged.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);  // keep least index as representative
    parent_[static_cast<std::size_t>(b)] = a;
    return true;
  }

  bool same(int a, int b) const { return find(a) == find(b); }

 private:
  mutable std::vector<int> parent_;
};

struct Quotient {
  FinMap q;                              // canonical projection
  std::vector<std::vector<int>> classes; // blocks in order of least member
};

/// Quotient by the least equivalence relation containing r.
inline Quotient coequalizer_quotient(const Rel& r) {
  if (r.dom.size != r.cod.size)
    throw PreconditionError("coequalizer_quotient: relation must be endo");
  const int n = r.dom.size;
  UnionFind uf(n);
  for (const auto& [a, b] : r.pairs) uf.unite(a, b);
  std::vector<int> class_index(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> classes;
  std::vector<int> q_table(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int root = uf.find(i);
    if (class_index[static_cast<std::size_t>(root)] < 0) {
      class_index[static_cast<std::size_t>(root)] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    int c = class_index[static_cast<std::size_t>(root)];
    classes[static_cast<std::size_t>(c)].push_back(i);
    q_table[static_cast<std::size_t>(i)] = c;
  }
  std::vector<std::string> labels;
  labels.reserve(classes.size());
  for (const auto& block : classes) labels.push_back(r.dom.label(block.front()));
  FinSet carrier = make_set(static_cast<int>(classes.size()), std::move(labels));
  return Quotient{FinMap{r.dom, carrier, std::move(q_table)}, std::move(classes)};
}

struct ProductCone {
  FinSet carrier;  // pairs (i,j) encoded as i*b.size + j
  FinMap proj1, proj2;
};

inline ProductCone product_cone(const FinSet& a, const FinSet& b) {
  const int n = a.size * b.size;
  std::vector<std::string> labels;
  if (a.has_labels() && b.has_labels()) {
    labels.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < a.size; ++i)
      for (int j = 0; j < b.size; ++j)
        labels.push_back("(" + a.label(i) + "," + b.label(j) + ")");
  }
  FinSet carrier = make_set(n, std::move(labels));
  std::vector<int> p1(static_cast<std::size_t>(n)), p2(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    p1[static_cast<std::size_t>(k)] = k / std::max(b.size, 1);
    p2[static_cast<std::size_t>(k)] = k % std::max(b.size, 1);
  }
  return ProductCone{carrier, FinMap{carrier, a, std::move(p1)},
                     FinMap{carrier, b, std::move(p2)}};
}

/// All maps a -> b in odometer order.  Intended for small carriers.
inline std::vector<FinMap> all_maps(const FinSet& a, const FinSet& b) {
  std::vector<FinMap> out;
  if (a.size == 0) {
    out.push_back(FinMap{a, b, {}});
    return out;
  }
  if (b.size == 0) return out;
  double count = std::pow(static_cast<double>(b.size), static_cast<double>(a.size));
  if (count > 4e6) throw PreconditionError("all_maps: too many maps to enumerate");
  std::vector<int> t(static_cast<std::size_t>(a.size), 0);
  while (true) {
    out.push_back(FinMap{a, b, t});
    int i = 0;
    while (i < a.size) {
      if (++t[static_cast<std::size_t>(i)] < b.size) break;
      t[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == a.size) break;
  }
  return out;
}

/// All reflexive-transitive relations on n elements, lexicographically ordered
/// by their off-diagonal bit pattern.
inline std::vector<Rel> enumerate_preorders(int n) {
  if (n > 4) throw PreconditionError("enumerate_preorders: carrier too large");
  FinSet x = make_set(n);
  const int cells = n * n - n;
  std::vector<std::pair<int, int>> off;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) off.emplace_back(i, j);
  std::vector<Rel> out;
  for (std::uint64_t mask = 0; mask < (1ull << cells); ++mask) {
    std::vector<std::vector<char>> le(static_cast<std::size_t>(n),
                                      std::vector<char>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) le[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    for (int k = 0; k < cells; ++k)
      if (mask >> k & 1)
        le[static_cast<std::size_t>(off[static_cast<std::size_t>(k)].first)]
          [static_cast<std::size_t>(off[static_cast<std::size_t>(k)].second)] = 1;
    bool transitive = true;
    for (int i = 0; transitive && i < n; ++i)
      for (int j = 0; transitive && j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (le[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] &&
              le[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] &&
              !le[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) {
            transitive = false;
            break;
          }
    if (!transitive) continue;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) pairs.emplace_back(i, j);
    out.push_back(make_rel(x, x, std::move(pairs)));
  }
  return out;
}

/// Antisymmetric preorders.
inline std::vector<Rel> enumerate_posets(int n) {
  std::vector<Rel> out;
  for (auto& r : enumerate_preorders(n)) {
    bool antisym = true;
    for (const auto& [a, b] : r.pairs)
      if (a != b && r.contains(b, a)) {
        antisym = false;
        break;
      }
    if (antisym) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace tspace
