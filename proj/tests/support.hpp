#pragma once

// Test-only generators and brute-force oracles. Nothing here calls the
// library routine it is meant to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "posmon/matroid.hpp"
#include "posmon/monoid.hpp"
#include "posmon/poset.hpp"

namespace testing {

using posmon::Mask;
using posmon::Poset;

inline std::vector<std::string> letters(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i)
    out.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "e" + std::to_string(i));
  return out;
}

inline Poset chain(int n) {
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i + 1 < n; ++i) rel.emplace_back(i, i + 1);
  return Poset::from_index_relations(letters(n), rel);
}

inline Poset antichain(int n) { return Poset::from_index_relations(letters(n), {}); }

inline Poset p1() {
  return Poset::from_relations({"a", "b", "c", "d"}, std::vector<std::pair<std::string, std::string>>{
                                                         {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
}
inline Poset p2() {
  return Poset::from_relations({"a", "b", "c", "d"}, std::vector<std::pair<std::string, std::string>>{
                                                         {"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
}
inline Poset p3() {
  return Poset::from_relations({"a", "b", "c", "d", "e"}, std::vector<std::pair<std::string, std::string>>{
                                                              {"a", "b"}, {"b", "c"}, {"c", "e"}, {"d", "e"}});
}

/// Random order: i < j with probability `density` for i < j in index order,
/// then transitively closed by the library. Elements are then shuffled so
/// index order is not always a linear extension.
inline Poset random_poset(std::mt19937_64& rng, int n, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) rel.emplace_back(perm[i], perm[j]);
  return Poset::from_index_relations(letters(n), rel);
}

// ---- posets up to isomorphism ------------------------------------------

/// Strict-order matrix as bits i*n+j (i < j in the order), n <= 8.
inline std::uint64_t order_code(int n, const std::vector<Mask>& above, const std::vector<int>& perm) {
  // perm[new] = old
  std::uint64_t code = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((above[perm[i]] >> perm[j]) & 1) code |= std::uint64_t{1} << (i * n + j);
  return code;
}

/// Canonical code: the minimum over permutations that keep the
/// (|down|, |up|) classes in sorted order.
inline std::uint64_t canonical_code(int n, const std::vector<Mask>& above) {
  std::vector<Mask> below(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((above[i] >> j) & 1) below[j] |= Mask{1} << i;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  auto key = [&](int x) { return std::pair(std::popcount(below[x]), std::popcount(above[x])); };
  std::sort(perm.begin(), perm.end(), [&](int a, int b) { return key(a) < key(b); });
  std::vector<std::pair<int, int>> blocks;
  for (int s = 0; s < n;) {
    int e = s;
    while (e < n && key(perm[e]) == key(perm[s])) ++e;
    blocks.emplace_back(s, e);
    s = e;
  }
  std::uint64_t best = ~std::uint64_t{0};
  std::function<void(std::size_t)> rec = [&](std::size_t b) {
    if (b == blocks.size()) {
      best = std::min(best, order_code(n, above, perm));
      return;
    }
    auto [s, e] = blocks[b];
    std::sort(perm.begin() + s, perm.begin() + e);
    do {
      rec(b + 1);
    } while (std::next_permutation(perm.begin() + s, perm.begin() + e));
  };
  rec(0);
  return best;
}

/// All posets on n elements up to isomorphism (n <= 7), grown by adding a
/// maximal element above every down-closed set.
inline std::vector<Poset> all_posets(int n) {
  std::vector<std::vector<Mask>> level{{}};
  for (int size = 1; size <= n; ++size) {
    std::map<std::uint64_t, std::vector<Mask>> next;
    for (const auto& above : level) {
      const int m = size - 1;
      for (Mask d = 0; d < (Mask{1} << m); ++d) {
        bool closed = true;
        for (int x = 0; x < m && closed; ++x)
          if (((d >> x) & 1) == 0)
            for (int y = 0; y < m; ++y)
              if (((d >> y) & 1) && ((above[x] >> y) & 1)) closed = false;
        if (!closed) continue;
        std::vector<Mask> a = above;
        a.push_back(0);
        for (int x = 0; x < m; ++x)
          if ((d >> x) & 1) a[x] |= Mask{1} << m;
        next.emplace(canonical_code(size, a), a);
      }
    }
    level.clear();
    for (auto& [code, a] : next) level.push_back(std::move(a));
  }
  std::vector<Poset> out;
  for (const auto& above : level) {
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((above[i] >> j) & 1) rel.emplace_back(i, j);
    out.push_back(Poset::from_index_relations(letters(n), rel));
  }
  return out;
}

// ---- upper-set oracles ---------------------------------------------------

inline bool is_up_closed(const Poset& p, Mask s) {
  for (int x = 0; x < p.size(); ++x)
    if ((s >> x) & 1)
      for (int y = 0; y < p.size(); ++y)
        if (p.less(x, y) && !((s >> y) & 1)) return false;
  return true;
}

inline std::vector<Mask> all_upper_sets_brute(const Poset& p) {
  std::vector<Mask> out;
  for (Mask s = 0; s < (Mask{1} << p.size()); ++s)
    if (is_up_closed(p, s)) out.push_back(s);
  return out;
}

/// Definition: nonempty and no split into two disjoint nonempty upper sets.
inline bool irreducible_by_definition(const Poset& p, Mask s) {
  if (s == 0) return false;
  for (Mask t = (s - 1) & s; t; t = (t - 1) & s)
    if (is_up_closed(p, t) && is_up_closed(p, s & ~t)) return false;
  return true;
}

/// Every partition of s into irreducible upper sets (by definition).
inline std::vector<std::vector<Mask>> irreducible_partitions(const Poset& p, Mask s) {
  std::vector<std::vector<Mask>> out;
  std::vector<Mask> parts;
  std::function<void(Mask)> rec = [&](Mask rest) {
    if (rest == 0) {
      out.push_back(parts);
      return;
    }
    const Mask low = rest & (~rest + 1);
    for (Mask t = rest; t; t = (t - 1) & rest) {
      if (!(t & low)) continue;
      if (!is_up_closed(p, t) || !irreducible_by_definition(p, t)) continue;
      parts.push_back(t);
      rec(rest & ~t);
      parts.pop_back();
    }
  };
  rec(s);
  return out;
}

inline std::vector<Mask> irreducibles_brute(const Poset& p) {
  std::vector<Mask> out;
  for (Mask s : all_upper_sets_brute(p))
    if (irreducible_by_definition(p, s)) out.push_back(s);
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
    return std::pair(std::popcount(a), a) < std::pair(std::popcount(b), b);
  });
  return out;
}

// ---- monoid oracles ------------------------------------------------------

/// Random element of M(P) as a sum of random irreducible indicators.
inline std::vector<std::uint64_t> random_monotone(std::mt19937_64& rng, const Poset& p, const std::vector<Mask>& irr,
                                                  int terms) {
  std::vector<std::uint64_t> f(static_cast<std::size_t>(p.size()), 0);
  if (irr.empty()) return f;
  std::uniform_int_distribution<std::size_t> pick(0, irr.size() - 1);
  for (int t = 0; t < terms; ++t) {
    const Mask s = irr[pick(rng)];
    for (int x = 0; x < p.size(); ++x)
      if ((s >> x) & 1) ++f[x];
  }
  return f;
}

/// Peeling oracle: repeatedly subtract the indicators of the comparability
/// components of the support.
inline std::map<Mask, std::uint64_t> peel(const Poset& p, std::vector<std::uint64_t> f) {
  std::map<Mask, std::uint64_t> out;
  for (;;) {
    Mask supp = 0;
    for (int x = 0; x < p.size(); ++x)
      if (f[x]) supp |= Mask{1} << x;
    if (!supp) return out;
    // components by flood fill over comparability
    Mask left = supp;
    while (left) {
      Mask comp = left & (~left + 1), frontier = comp;
      while (frontier) {
        Mask grow = 0;
        for (int x = 0; x < p.size(); ++x)
          if ((frontier >> x) & 1)
            for (int y = 0; y < p.size(); ++y)
              if (((left >> y) & 1) && p.comparable(x, y)) grow |= Mask{1} << y;
        frontier = grow & ~comp;
        comp |= grow;
      }
      left &= ~comp;
      ++out[comp];
      for (int x = 0; x < p.size(); ++x)
        if ((comp >> x) & 1) --f[x];
    }
  }
}

inline bool nested_or_disjoint_brute(Mask a, Mask b) { return (a & b) == 0 || (a & b) == a || (a & b) == b; }

/// Number of near-chain expressions (multisets over irreducibles with
/// pairwise nested-or-disjoint supports) that evaluate to f.
inline std::size_t count_near_chain_expressions(const Poset& p, const std::vector<Mask>& irr,
                                                std::vector<std::uint64_t> f, std::size_t limit = 2) {
  std::size_t found = 0;
  std::vector<Mask> used;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (found >= limit) return;
    if (std::all_of(f.begin(), f.end(), [](auto v) { return v == 0; })) {
      ++found;
      return;
    }
    for (std::size_t k = from; k < irr.size(); ++k) {
      const Mask s = irr[k];
      bool fits = true;
      for (int x = 0; x < p.size() && fits; ++x)
        if (((s >> x) & 1) && f[x] == 0) fits = false;
      if (!fits) continue;
      if (!std::all_of(used.begin(), used.end(), [&](Mask u) { return nested_or_disjoint_brute(u, s); })) continue;
      // take s with multiplicity c >= 1, then move past it
      std::uint64_t c = 0;
      for (;;) {
        bool ok = true;
        for (int x = 0; x < p.size() && ok; ++x)
          if (((s >> x) & 1) && f[x] == 0) ok = false;
        if (!ok) break;
        for (int x = 0; x < p.size(); ++x)
          if ((s >> x) & 1) --f[x];
        ++c;
        used.push_back(s);
        rec(k + 1);
        used.pop_back();
      }
      for (int x = 0; x < p.size(); ++x)
        if ((s >> x) & 1) f[x] += c;
    }
  };
  rec(0);
  return found;
}

// ---- matroid oracles -----------------------------------------------------

using BigInt = boost::multiprecision::cpp_int;

inline BigInt determinant(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  BigInt sign = 1, prev = 1;
  // Bareiss fraction-free elimination.
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return n == 0 ? BigInt(1) : sign * a[n - 1][n - 1];
}

/// Columns of an integer matrix with `rows` rows: the matroid of linear
/// dependence over Q and the multiplicity m(A) = gcd of the rk(A) x rk(A)
/// minors of the columns in A (an arithmetic multiplicity).
struct Realization {
  posmon::Matroid matroid;
  posmon::MultiplicityFunction mult;
};

inline Realization realize(const std::vector<std::vector<long>>& cols, int rows) {
  const int n = static_cast<int>(cols.size());
  std::vector<int> ranks(std::size_t{1} << n, 0);
  std::vector<BigInt> mult(std::size_t{1} << n, 1);
  for (Mask a = 0; a < (Mask{1} << n); ++a) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if ((a >> i) & 1) members.push_back(i);
    for (int k = std::min<int>(rows, static_cast<int>(members.size())); k >= 1; --k) {
      BigInt g = 0;
      std::vector<bool> rsel(static_cast<std::size_t>(rows), false), csel(members.size(), false);
      std::fill(rsel.begin(), rsel.begin() + k, true);
      do {
        std::fill(csel.begin(), csel.end(), false);
        std::fill(csel.begin(), csel.begin() + k, true);
        do {
          std::vector<std::vector<BigInt>> m;
          for (int r = 0; r < rows; ++r) {
            if (!rsel[r]) continue;
            std::vector<BigInt> row;
            for (std::size_t c = 0; c < members.size(); ++c)
              if (csel[c]) row.push_back(cols[members[c]][r]);
            m.push_back(row);
          }
          g = gcd(g, abs(determinant(m)));
        } while (std::prev_permutation(csel.begin(), csel.end()));
      } while (std::prev_permutation(rsel.begin(), rsel.end()));
      if (g != 0) {
        ranks[a] = k;
        mult[a] = g;
        break;
      }
    }
  }
  return {posmon::Matroid::from_ranks(n, ranks), posmon::MultiplicityFunction::from_values(n, mult)};
}

inline Realization random_realization(std::mt19937_64& rng, int rows, int n, int spread) {
  std::uniform_int_distribution<long> d(-spread, spread);
  std::vector<std::vector<long>> cols(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(rows)));
  for (auto& c : cols)
    for (auto& v : c) v = d(rng);
  return realize(cols, rows);
}

// A second family of realizations of m: start from one matrix realizing it,
// then scale columns and mix rows by an invertible integer matrix.
struct Realizer {
  std::vector<std::vector<long>> base;
  int rows = 0;
};

inline std::optional<Realizer> find_realizer(std::mt19937_64& rng, const posmon::Matroid& m) {
  const int r = m.rank();
  if (r == 0) return Realizer{std::vector<std::vector<long>>(static_cast<std::size_t>(m.n)), 0};
  for (int attempt = 0; attempt < 20000; ++attempt) {
    std::uniform_int_distribution<long> d(-1, 1);
    std::vector<std::vector<long>> cols(static_cast<std::size_t>(m.n), std::vector<long>(static_cast<std::size_t>(r)));
    for (auto& c : cols)
      for (auto& v : c) v = d(rng);
    if (realize(cols, r).matroid == m) return Realizer{cols, r};
  }
  return std::nullopt;
}

inline posmon::MultiplicityFunction random_arithmetic(std::mt19937_64& rng, const Realizer& z) {
  std::uniform_int_distribution<long> scale(1, 3), mix(-2, 2);
  std::bernoulli_distribution neg(0.5);
  auto cols = z.base;
  for (auto& c : cols) {
    const long s = scale(rng) * (neg(rng) ? -1 : 1);
    for (auto& v : c) v *= s;
  }
  if (z.rows > 0) {
    std::vector<std::vector<BigInt>> t;
    std::vector<std::vector<long>> mat;
    do {
      mat.assign(static_cast<std::size_t>(z.rows), std::vector<long>(static_cast<std::size_t>(z.rows)));
      t.assign(static_cast<std::size_t>(z.rows), std::vector<BigInt>(static_cast<std::size_t>(z.rows)));
      for (int i = 0; i < z.rows; ++i)
        for (int j = 0; j < z.rows; ++j) t[i][j] = mat[i][j] = mix(rng);
    } while (determinant(t) == 0);
    for (auto& c : cols) {
      std::vector<long> next(static_cast<std::size_t>(z.rows), 0);
      for (int i = 0; i < z.rows; ++i)
        for (int j = 0; j < z.rows; ++j) next[i] += mat[i][j] * c[j];
      c = next;
    }
  }
  return realize(cols, z.rows).mult;
}

// 2^g 3^h with g, h monotone on the slice poset: A1 holds by construction.
inline posmon::MultiplicityFunction random_sliced(std::mt19937_64& rng, const posmon::Matroid& m) {
  const Poset p = posmon::slice_poset(m);
  const auto irr = irreducibles_brute(p);
  const auto g = random_monotone(rng, p, irr, 2);
  const auto h = random_monotone(rng, p, irr, 1);
  std::vector<BigInt> vals(g.size());
  for (std::size_t a = 0; a < g.size(); ++a)
    vals[a] = boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(g[a])) *
              boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(h[a]));
  return posmon::MultiplicityFunction::from_values(m.n, vals);
}

/// Molecule identity checked directly on every A between R and R u F u T.
inline bool is_molecule_brute(const posmon::Matroid& m, Mask r, Mask f, Mask t) {
  if ((r & f) || (r & t) || (f & t)) return false;
  const Mask free = f | t;
  for (Mask s = free;; s = (s - 1) & free) {
    const Mask a = r | s;
    if (m.rank(a) != m.rank(r) + std::popcount(a & f)) return false;
    if (s == 0) break;
  }
  return true;
}

}  // namespace testing

namespace testing {

/// Exact phase-one simplex (Bland's rule): is b a nonnegative combination
/// of the given vectors?
inline bool in_cone(const std::vector<std::vector<std::int64_t>>& vectors, const std::vector<std::int64_t>& b) {
  using Q = boost::multiprecision::cpp_rational;
  const std::size_t m = b.size(), k = vectors.size(), cols = k + m;
  std::vector<std::vector<Q>> t(m, std::vector<Q>(cols + 1));
  std::vector<Q> z(cols + 1);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Q sign = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < k; ++j) t[i][j] = sign * vectors[j][i];
    t[i][k + i] = 1;
    t[i][cols] = sign * b[i];
    basis[i] = k + i;
    for (std::size_t j = 0; j < k; ++j) z[j] -= t[i][j];
    z[cols] -= t[i][cols];
  }
  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (z[j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = m;
    Q best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      const Q ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) return true;  // unbounded cannot happen in phase one
    const Q piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Q f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    const Q f = z[enter];
    for (std::size_t j = 0; j <= cols; ++j) z[j] -= f * t[leave][j];
    basis[leave] = enter;
  }
  return z[cols] == 0;
}

/// Interior lattice points (strictly increasing along covers, >= 1 on
/// minimal elements) with every coordinate <= bound.
inline std::vector<std::vector<std::uint64_t>> interior_points(const Poset& p, std::uint64_t bound) {
  // order elements by number of predecessors: a linear extension
  std::vector<int> order(static_cast<std::size_t>(p.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return std::popcount(p.strictly_below(a)) < std::popcount(p.strictly_below(b)); });
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> f(static_cast<std::size_t>(p.size()), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == order.size()) {
      out.push_back(f);
      return;
    }
    const int x = order[k];
    std::uint64_t lo = 1;
    for (int y = 0; y < p.size(); ++y)
      if (p.less(y, x)) lo = std::max(lo, f[y] + 1);
    for (std::uint64_t v = lo; v <= bound; ++v) {
      f[x] = v;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

/// g <=_M f: f - g is nonnegative and monotone.
inline bool divides_brute(const Poset& p, const std::vector<std::uint64_t>& g, const std::vector<std::uint64_t>& f) {
  std::vector<std::int64_t> d(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    d[i] = static_cast<std::int64_t>(f[i]) - static_cast<std::int64_t>(g[i]);
    if (d[i] < 0) return false;
  }
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y)
      if (p.less(x, y) && d[x] > d[y]) return false;
  return true;
}

/// Minimal interior points among those with coordinates <= bound; since
/// divisors only shrink coordinates these are exactly the minimal interior
/// generators that fit in the box.
inline std::vector<std::vector<std::uint64_t>> minimal_interior_brute(const Poset& p, std::uint64_t bound) {
  const auto pts = interior_points(p, bound);
  std::vector<std::vector<std::uint64_t>> out;
  for (const auto& f : pts) {
    bool minimal = true;
    for (const auto& g : pts)
      if (g != f && divides_brute(p, g, f)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline int longest_chain(const Poset& p) {
  std::vector<int> depth(static_cast<std::size_t>(p.size()), 1);
  int best = 0;
  for (int round = 0; round < p.size(); ++round)
    for (int x = 0; x < p.size(); ++x)
      for (int y = 0; y < p.size(); ++y)
        if (p.less(y, x)) depth[x] = std::max(depth[x], depth[y] + 1);
  for (int d : depth) best = std::max(best, d);
  return best;
}

}  // namespace testing
