#pragma once

// Computable monads on finite sets: identity, powerset, finite ultrafilter,
// commutative monoid action M x (-), and the two degenerate monads collapsing
// every nonempty carrier to a point.  Every T-carrier is addressed through a
// dense codec: element indices of TX are 0..|TX|-1.
//
// Codecs:
//   identity / ultrafilter : index = the point (finite ultrafilters are
//                            principal, so UX ~= X)
//   powerset               : index = the subset's bitmask over the carrier
//   monoid_action          : index of (s, x) = s*n + x
//   t0 / t1                : the unique element is index 0

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tspace/finset.hpp"

namespace tspace {

inline constexpr std::size_t kDefaultBudget = std::size_t{1} << 20;

enum class MonadKind { Identity, Powerset, Ultrafilter, MonoidAction, T0, T1 };

inline std::string kind_name(MonadKind k) {
  switch (k) {
    case MonadKind::Identity: return "identity";
    case MonadKind::Powerset: return "powerset";
    case MonadKind::Ultrafilter: return "ultrafilter";
    case MonadKind::MonoidAction: return "monoid_action";
    case MonadKind::T0: return "t0";
    case MonadKind::T1: return "t1";
  }
  return "?";
}

struct MonoidTable {
  int size = 1;
  int unit = 0;
  std::vector<int> table;  // row-major, size*size entries

  int mul(int a, int b) const { return table[static_cast<std::size_t>(a * size + b)]; }

  /// Display name of an element: the unit prints as "e", the others as
  /// consecutive letters.
  std::string label(int s) const {
    if (s == unit) return "e";
    int k = s < unit ? s : s - 1;
    if (k < 26) return std::string(1, static_cast<char>('a' + k));
    return "m" + std::to_string(s);
  }
};

/// Validates associativity, the two-sided unit, and commutativity.
inline MonoidTable make_monoid(int size, int unit, std::vector<int> table) {
  if (size <= 0) throw InvalidMonoid("monoid must be nonempty");
  if (unit < 0 || unit >= size) throw InvalidMonoid("unit index out of range");
  if (static_cast<int>(table.size()) != size * size)
    throw InvalidMonoid("multiplication table has wrong shape");
  for (int v : table)
    if (v < 0 || v >= size) throw InvalidMonoid("table entry out of range");
  MonoidTable m{size, unit, std::move(table)};
  for (int a = 0; a < size; ++a) {
    if (m.mul(unit, a) != a || m.mul(a, unit) != a)
      throw InvalidMonoid("unit law fails");
    for (int b = 0; b < size; ++b) {
      if (m.mul(a, b) != m.mul(b, a)) throw InvalidMonoid("monoid must be commutative");
      for (int c = 0; c < size; ++c)
        if (m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c)))
          throw InvalidMonoid("associativity fails");
    }
  }
  return m;
}

/// All commutative monoid structures on {0..size-1}, every choice of unit.
inline std::vector<MonoidTable> enumerate_commutative_monoids(int size) {
  if (size > 3) throw PreconditionError("monoid enumeration supported up to size 3");
  std::vector<MonoidTable> out;
  const int cells = size * size;
  std::uint64_t total = 1;
  for (int i = 0; i < cells; ++i) total *= static_cast<std::uint64_t>(size);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<int> table(static_cast<std::size_t>(cells));
    std::uint64_t c = code;
    for (int i = 0; i < cells; ++i) {
      table[static_cast<std::size_t>(i)] = static_cast<int>(c % static_cast<std::uint64_t>(size));
      c /= static_cast<std::uint64_t>(size);
    }
    for (int unit = 0; unit < size; ++unit) {
      try {
        out.push_back(make_monoid(size, unit, table));
      } catch (const InvalidMonoid&) {
      }
    }
  }
  return out;
}

struct MonadSpec {
  MonadKind kind = MonadKind::Identity;
  std::optional<MonoidTable> monoid;  // MonoidAction only
  std::size_t budget = kDefaultBudget;

  bool same_monad(const MonadSpec& o) const {
    if (kind != o.kind) return false;
    if (kind != MonadKind::MonoidAction) return true;
    return monoid->size == o.monoid->size && monoid->unit == o.monoid->unit &&
           monoid->table == o.monoid->table;
  }
};

inline MonadSpec identity_monad() { return MonadSpec{MonadKind::Identity, {}, kDefaultBudget}; }
inline MonadSpec powerset_monad() { return MonadSpec{MonadKind::Powerset, {}, kDefaultBudget}; }
inline MonadSpec ultrafilter_monad() { return MonadSpec{MonadKind::Ultrafilter, {}, kDefaultBudget}; }
inline MonadSpec t0_monad() { return MonadSpec{MonadKind::T0, {}, kDefaultBudget}; }
inline MonadSpec t1_monad() { return MonadSpec{MonadKind::T1, {}, kDefaultBudget}; }
inline MonadSpec monoid_action_monad(MonoidTable m) {
  return MonadSpec{MonadKind::MonoidAction, std::move(m), kDefaultBudget};
}

/// |T(carrier of size n)|, or nullopt when it exceeds the budget.
inline std::optional<std::size_t> tsize_opt(const MonadSpec& m, std::size_t n) {
  std::size_t s = 0;
  switch (m.kind) {
    case MonadKind::Identity:
    case MonadKind::Ultrafilter:
      s = n;
      break;
    case MonadKind::Powerset:
      if (n >= 63 || (std::size_t{1} << n) > m.budget) return std::nullopt;
      s = std::size_t{1} << n;
      break;
    case MonadKind::MonoidAction:
      s = static_cast<std::size_t>(m.monoid->size) * n;
      break;
    case MonadKind::T0:
      s = n == 0 ? 0 : 1;
      break;
    case MonadKind::T1:
      s = 1;
      break;
  }
  if (s > m.budget) return std::nullopt;
  return s;
}

inline std::size_t tsize(const MonadSpec& m, std::size_t n) {
  auto s = tsize_opt(m, n);
  if (!s)
    throw BudgetExceeded("|T X| for |X| = " + std::to_string(n) + " exceeds budget " +
                         std::to_string(m.budget));
  return *s;
}

/// The T-carrier over x, as an unlabeled finite set.
inline FinSet tcarrier(const MonadSpec& m, const FinSet& x) {
  return make_set(static_cast<int>(tsize(m, static_cast<std::size_t>(x.size))));
}

/// Display form of the T-element with the given codec index.
inline std::string telem_label(const MonadSpec& m, const FinSet& base, int index) {
  switch (m.kind) {
    case MonadKind::Identity:
    case MonadKind::Ultrafilter:
      return base.label(index);
    case MonadKind::Powerset: {
      std::string s = "{";
      bool first = true;
      for (int i = 0; i < base.size; ++i)
        if (index >> i & 1) {
          if (!first) s += ",";
          s += base.label(i);
          first = false;
        }
      return s + "}";
    }
    case MonadKind::MonoidAction: {
      int n = base.size;
      return "(" + m.monoid->label(index / n) + "," + base.label(index % n) + ")";
    }
    case MonadKind::T0:
    case MonadKind::T1:
      return "*";
  }
  return "?";
}

/// Functor action on a map: Tf between the codec-indexed carriers.
inline FinMap apply_functor(const MonadSpec& m, const FinMap& f) {
  FinSet ta = tcarrier(m, f.dom);
  FinSet tb = tcarrier(m, f.cod);
  std::vector<int> t(static_cast<std::size_t>(ta.size));
  switch (m.kind) {
    case MonadKind::Identity:
    case MonadKind::Ultrafilter:
      t = f.table;
      break;
    case MonadKind::Powerset:
      for (int s = 0; s < ta.size; ++s) {
        int img = 0;
        for (int i = 0; i < f.dom.size; ++i)
          if (s >> i & 1) img |= 1 << f(i);
        t[static_cast<std::size_t>(s)] = img;
      }
      break;
    case MonadKind::MonoidAction: {
      const int an = f.dom.size, bn = f.cod.size;
      for (int k = 0; k < ta.size; ++k)
        t[static_cast<std::size_t>(k)] = (k / an) * bn + f(k % an);
      break;
    }
    case MonadKind::T0:
    case MonadKind::T1:
      // T sends every nonempty carrier to the point; on empty T-carriers the
      // table is empty.
      for (int k = 0; k < ta.size; ++k) t[static_cast<std::size_t>(k)] = 0;
      break;
  }
  return FinMap{ta, tb, std::move(t)};
}

/// The unit X -> TX at carrier size n.
inline FinMap unit_component(const MonadSpec& m, int n) {
  FinSet x = make_set(n);
  FinSet tx = tcarrier(m, x);
  std::vector<int> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    switch (m.kind) {
      case MonadKind::Identity:
      case MonadKind::Ultrafilter:
        t[static_cast<std::size_t>(i)] = i;
        break;
      case MonadKind::Powerset:
        t[static_cast<std::size_t>(i)] = 1 << i;
        break;
      case MonadKind::MonoidAction:
        t[static_cast<std::size_t>(i)] = m.monoid->unit * n + i;
        break;
      case MonadKind::T0:
      case MonadKind::T1:
        t[static_cast<std::size_t>(i)] = 0;
        break;
    }
  }
  return FinMap{x, tx, std::move(t)};
}

/// The multiplication TTX -> TX at carrier size n.
inline FinMap mult_component(const MonadSpec& m, int n) {
  FinSet x = make_set(n);
  FinSet tx = tcarrier(m, x);
  FinSet ttx = tcarrier(m, tx);
  std::vector<int> t(static_cast<std::size_t>(ttx.size));
  switch (m.kind) {
    case MonadKind::Identity:
    case MonadKind::Ultrafilter:
      for (int k = 0; k < ttx.size; ++k) t[static_cast<std::size_t>(k)] = k;
      break;
    case MonadKind::Powerset:
      for (int w = 0; w < ttx.size; ++w) {
        int u = 0;
        for (int s = 0; s < tx.size; ++s)
          if (w >> s & 1) u |= s;
        t[static_cast<std::size_t>(w)] = u;
      }
      break;
    case MonadKind::MonoidAction: {
      const int txn = tx.size;  // monoid size times n
      for (int k = 0; k < ttx.size; ++k) {
        int s = k / txn;
        int inner = k % txn;
        int t2 = inner / n, xi = inner % n;
        t[static_cast<std::size_t>(k)] = m.monoid->mul(s, t2) * n + xi;
      }
      break;
    }
    case MonadKind::T0:
    case MonadKind::T1:
      for (int k = 0; k < ttx.size; ++k) t[static_cast<std::size_t>(k)] = 0;
      break;
  }
  return FinMap{ttx, tx, std::move(t)};
}

/// Abstract T-element payload, the serialization-facing view of a codec index.
struct TElem {
  MonadKind kind = MonadKind::Identity;
  int carrier = 0;
  std::vector<int> data;  // point / sorted member list / (monoid, point) / empty
};

inline TElem decode_telem(const MonadSpec& m, int n, int index) {
  if (index < 0 || static_cast<std::size_t>(index) >= tsize(m, static_cast<std::size_t>(n)))
    throw EncodingError("T-element index out of range");
  TElem e{m.kind, n, {}};
  switch (m.kind) {
    case MonadKind::Identity:
    case MonadKind::Ultrafilter:
      e.data = {index};
      break;
    case MonadKind::Powerset:
      for (int i = 0; i < n; ++i)
        if (index >> i & 1) e.data.push_back(i);
      break;
    case MonadKind::MonoidAction:
      e.data = {index / n, index % n};
      break;
    case MonadKind::T0:
    case MonadKind::T1:
      break;
  }
  return e;
}

inline int encode_telem(const MonadSpec& m, int n, const TElem& e) {
  const std::size_t bound = tsize(m, static_cast<std::size_t>(n));
  switch (m.kind) {
    case MonadKind::Identity:
    case MonadKind::Ultrafilter: {
      if (e.data.size() != 1) throw EncodingError("expected a single point");
      int v = e.data[0];
      if (v < 0 || static_cast<std::size_t>(v) >= bound)
        throw EncodingError("point out of range");
      return v;
    }
    case MonadKind::Powerset: {
      int mask = 0;
      for (int v : e.data) {
        if (v < 0 || v >= n) throw EncodingError("subset member out of range");
        mask |= 1 << v;
      }
      return mask;
    }
    case MonadKind::MonoidAction: {
      if (e.data.size() != 2) throw EncodingError("expected a (monoid, point) pair");
      int s = e.data[0], x = e.data[1];
      if (s < 0 || s >= m.monoid->size) throw EncodingError("monoid index out of range");
      if (x < 0 || x >= n) throw EncodingError("point out of range");
      return s * n + x;
    }
    case MonadKind::T0:
    case MonadKind::T1:
      if (bound == 0) throw EncodingError("carrier T X is empty");
      if (!e.data.empty() && !(e.data.size() == 1 && e.data[0] == 0))
        throw EncodingError("expected the unit element");
      return 0;
  }
  throw EncodingError("unknown monad kind");
}

// ---------------------------------------------------------------------------
// Law checking

/// The monad data as plain callables, so tests can substitute corrupted
/// components.
struct MonadOps {
  std::function<std::optional<std::size_t>(std::size_t)> size;
  std::function<FinMap(const FinMap&)> map;
  std::function<FinMap(int)> unit;
  std::function<FinMap(int)> mult;
};

inline MonadOps ops_of(const MonadSpec& m) {
  return MonadOps{
      [m](std::size_t n) { return tsize_opt(m, n); },
      [m](const FinMap& f) { return apply_functor(m, f); },
      [m](int n) { return unit_component(m, n); },
      [m](int n) { return mult_component(m, n); },
  };
}

/// A deterministic generator set of test maps a -> b: everything when small,
/// otherwise identities, constants, a rotation, and a pseudo-random sample.
inline std::vector<FinMap> sample_maps(const FinSet& a, const FinSet& b) {
  double count = a.size == 0 ? 1.0
                             : std::pow(static_cast<double>(b.size), static_cast<double>(a.size));
  if (count <= 256.0) return all_maps(a, b);
  std::vector<FinMap> out;
  if (a.size == b.size) {
    out.push_back(identity_map(a));
    std::vector<int> rot(static_cast<std::size_t>(a.size));
    for (int i = 0; i < a.size; ++i) rot[static_cast<std::size_t>(i)] = (i + 1) % a.size;
    out.push_back(FinMap{a, b, std::move(rot)});
  }
  for (int v = 0; v < b.size; ++v) out.push_back(constant_map(a, b, v));
  std::uint64_t state = 0x9e3779b97f4a7c15ull ^ (static_cast<std::uint64_t>(a.size) << 32) ^
                        static_cast<std::uint64_t>(b.size);
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  for (int k = 0; k < 24; ++k) {
    std::vector<int> t(static_cast<std::size_t>(a.size));
    for (int i = 0; i < a.size; ++i)
      t[static_cast<std::size_t>(i)] = static_cast<int>(next() % static_cast<std::uint64_t>(b.size));
    out.push_back(FinMap{a, b, std::move(t)});
  }
  return out;
}

struct LawCheck {
  std::string name;
  bool pass = true;
  int checked_up_to = -1;  // largest carrier whose instances all ran
  std::string counterexample;
};

struct LawReport {
  int requested_max_n = 0;
  std::vector<LawCheck> laws;

  bool all_pass() const {
    for (const auto& l : laws)
      if (!l.pass) return false;
    return true;
  }
};

namespace detail {

inline bool law_fits(const MonadOps& ops, std::size_t n, int depth) {
  std::optional<std::size_t> s = n;
  for (int d = 0; d < depth; ++d) {
    s = ops.size(*s);
    if (!s) return false;
  }
  return true;
}

}  // namespace detail

/// Exhaustively verifies the functor laws, naturality of unit and
/// multiplication, the two unit laws, and associativity, over all carriers up
/// to max_n whose instance carriers fit the budget.  Each law records the
/// largest carrier it actually covered; a report passes only when no checked
/// instance failed.
inline LawReport check_monad_laws(const MonadOps& ops, int max_n) {
  LawReport report;
  report.requested_max_n = max_n;

  auto run = [&](const std::string& name, int depth,
                 const std::function<std::optional<std::string>(int)>& body) {
    LawCheck check;
    check.name = name;
    for (int n = 0; n <= max_n; ++n) {
      if (!detail::law_fits(ops, static_cast<std::size_t>(n), depth)) break;
      auto bad = body(n);
      check.checked_up_to = n;
      if (bad) {
        check.pass = false;
        check.counterexample = *bad;
        break;
      }
    }
    report.laws.push_back(std::move(check));
  };

  run("functor identity", 1, [&](int n) -> std::optional<std::string> {
    FinMap tid = ops.map(identity_map(make_set(n)));
    if (!map_equal(tid, identity_map(tid.dom)))
      return "T(id_" + std::to_string(n) + ") != id";
    return std::nullopt;
  });

  run("functor composition", 1, [&](int n) -> std::optional<std::string> {
    FinSet a = make_set(n);
    for (int bn = 0; bn <= report.requested_max_n; ++bn) {
      if (!detail::law_fits(ops, static_cast<std::size_t>(bn), 1)) continue;
      for (int cn = 0; cn <= report.requested_max_n; ++cn) {
        if (!detail::law_fits(ops, static_cast<std::size_t>(cn), 1)) continue;
        FinSet b = make_set(bn), c = make_set(cn);
        for (const auto& f : sample_maps(a, b))
          for (const auto& g : sample_maps(b, c))
            if (!map_equal(ops.map(compose(g, f)), compose(ops.map(g), ops.map(f))))
              return "T(g.f) != Tg.Tf at carriers " + std::to_string(n) + "," +
                     std::to_string(bn) + "," + std::to_string(cn);
      }
    }
    return std::nullopt;
  });

  run("unit naturality", 1, [&](int n) -> std::optional<std::string> {
    FinSet a = make_set(n);
    for (int bn = 0; bn <= report.requested_max_n; ++bn) {
      if (!detail::law_fits(ops, static_cast<std::size_t>(bn), 1)) continue;
      for (const auto& f : sample_maps(a, make_set(bn)))
        if (!map_equal(compose(ops.map(f), ops.unit(n)), compose(ops.unit(bn), f)))
          return "Tf.eta != eta.f at " + std::to_string(n) + "->" + std::to_string(bn);
    }
    return std::nullopt;
  });

  run("mult naturality", 2, [&](int n) -> std::optional<std::string> {
    FinSet a = make_set(n);
    for (int bn = 0; bn <= report.requested_max_n; ++bn) {
      if (!detail::law_fits(ops, static_cast<std::size_t>(bn), 2)) continue;
      for (const auto& f : sample_maps(a, make_set(bn))) {
        FinMap tf = ops.map(f);
        if (!map_equal(compose(ops.mult(bn), ops.map(tf)), compose(tf, ops.mult(n))))
          return "mu.TTf != Tf.mu at " + std::to_string(n) + "->" + std::to_string(bn);
      }
    }
    return std::nullopt;
  });

  run("left unit law", 2, [&](int n) -> std::optional<std::string> {
    FinMap mu = ops.mult(n);
    FinMap eta_t = ops.unit(mu.cod.size);  // eta at carrier TX
    if (!map_equal(compose(mu, eta_t), identity_map(mu.cod)))
      return "mu.eta_T != id at carrier " + std::to_string(n);
    return std::nullopt;
  });

  run("right unit law", 2, [&](int n) -> std::optional<std::string> {
    FinMap mu = ops.mult(n);
    FinMap t_eta = ops.map(ops.unit(n));
    if (!map_equal(compose(mu, t_eta), identity_map(mu.cod)))
      return "mu.T(eta) != id at carrier " + std::to_string(n);
    return std::nullopt;
  });

  run("associativity", 3, [&](int n) -> std::optional<std::string> {
    FinMap mu = ops.mult(n);
    FinMap t_mu = ops.map(mu);
    FinMap mu_t = ops.mult(mu.cod.size);  // mu at carrier TX
    if (!map_equal(compose(mu, t_mu), compose(mu, mu_t)))
      return "mu.T(mu) != mu.mu_T at carrier " + std::to_string(n);
    return std::nullopt;
  });

  return report;
}

inline LawReport check_monad_laws(const MonadSpec& m, int max_n) {
  return check_monad_laws(ops_of(m), max_n);
}

}  // namespace tspace
