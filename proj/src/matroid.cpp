#include "posmon/matroid.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace posmon {

namespace {

char element_name(int i) { return static_cast<char>('a' + i); }

// Inserts a zero bit at position e.
Mask expand(Mask a, int e) { return (a & low_mask(e)) | ((a >> e) << (e + 1)); }

void require_ground(int n) {
  if (n < 0 || n > max_ground_set)
    throw Error(Errc::ground_set_too_large, "ground set of size " + std::to_string(n) + ", at most 6 supported");
}

}  // namespace

Matroid Matroid::from_ranks(int n, std::vector<int> ranks) {
  require_ground(n);
  if (ranks.size() != (std::size_t{1} << n))
    throw Error(Errc::size_mismatch, "rank table needs 2^" + std::to_string(n) + " entries");
  return Matroid{n, std::move(ranks)};
}

std::string subset_key(Mask a) {
  std::string s;
  for_each_bit(a, [&](int i) { s += element_name(i); });
  return s;
}

Mask parse_subset_key(const std::string& key, int n) {
  Mask a = 0;
  for (char c : key) {
    int i = c - 'a';
    if (i < 0 || i >= n) throw Error(Errc::unknown_element, "unknown element '" + std::string(1, c) + "'");
    if (a & bit(i)) throw Error(Errc::invalid_input, "element '" + std::string(1, c) + "' repeated in '" + key + "'");
    a |= bit(i);
  }
  return a;
}

std::string subset_label(Mask a) {
  std::string s = "{";
  bool first = true;
  for_each_bit(a, [&](int i) {
    if (!first) s += ',';
    s += element_name(i);
    first = false;
  });
  return s + "}";
}

Matroid uniform(int r, int n) {
  if (n < 0 || n > max_ground_set || r < 0 || r > n)
    throw Error(Errc::out_of_range, "uniform(" + std::to_string(r) + "," + std::to_string(n) +
                                        ") needs 0 <= r <= n <= 6");
  std::vector<int> ranks(std::size_t{1} << n);
  for (std::size_t a = 0; a < ranks.size(); ++a) ranks[a] = std::min(popcount(a), r);
  return Matroid{n, std::move(ranks)};
}

std::vector<Violation> validate_matroid(const Matroid& m) {
  std::vector<Violation> out;
  const Mask size = Mask{1} << m.n;
  for (Mask x = 0; x < size; ++x) {
    if (m.rank(x) < 0 || m.rank(x) > popcount(x))
      out.push_back({"R1", x, x, "rk(" + subset_label(x) + ") = " + std::to_string(m.rank(x)) + " exceeds |X|"});
  }
  for (Mask x = 0; x < size; ++x) {
    for (Mask y = 0; y < size; ++y) {
      if (contains(y, x) && m.rank(x) > m.rank(y))
        out.push_back({"R2", x, y, "rk(" + subset_label(x) + ") > rk(" + subset_label(y) + ") although X is a subset of Y"});
      if (x < y && m.rank(x | y) + m.rank(x & y) > m.rank(x) + m.rank(y))
        out.push_back({"R3", x, y, "submodularity fails for " + subset_label(x) + ", " + subset_label(y)});
    }
  }
  return out;
}

std::vector<Mask> bases(const Matroid& m) {
  std::vector<Mask> out;
  const int r = m.rank();
  for (Mask a = 0; a < (Mask{1} << m.n); ++a)
    if (popcount(a) == r && m.rank(a) == r) out.push_back(a);
  return out;
}

Matroid deletion(const Matroid& m, int e) {
  if (e < 0 || e >= m.n) throw Error(Errc::unknown_element, "element index " + std::to_string(e));
  std::vector<int> ranks(std::size_t{1} << (m.n - 1));
  for (std::size_t a = 0; a < ranks.size(); ++a) ranks[a] = m.rank(expand(a, e));
  return Matroid{m.n - 1, std::move(ranks)};
}

Matroid contraction(const Matroid& m, int e) {
  if (e < 0 || e >= m.n) throw Error(Errc::unknown_element, "element index " + std::to_string(e));
  std::vector<int> ranks(std::size_t{1} << (m.n - 1));
  for (std::size_t a = 0; a < ranks.size(); ++a) ranks[a] = m.rank(expand(a, e) | bit(e)) - m.rank(bit(e));
  return Matroid{m.n - 1, std::move(ranks)};
}

namespace {

bool is_molecule(const Matroid& m, Mask r, Mask f, Mask t) {
  const Mask free = f | t;
  const int base = m.rank(r);
  // Walk all submasks of F u T.
  for (Mask s = free;; s = (s - 1) & free) {
    if (m.rank(r | s) != base + popcount(s & f)) return false;
    if (s == 0) break;
  }
  return true;
}

template <typename Fn>
void for_each_disjoint_triple(int n, Fn&& fn) {
  // Each element goes to none/R/F/T.
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= 4;
  for (std::size_t code = 0; code < total; ++code) {
    Mask r = 0, f = 0, t = 0;
    std::size_t c = code;
    for (int i = 0; i < n; ++i, c /= 4) {
      switch (c % 4) {
        case 1: r |= bit(i); break;
        case 2: f |= bit(i); break;
        case 3: t |= bit(i); break;
        default: break;
      }
    }
    fn(r, f, t);
  }
}

}  // namespace

std::vector<Molecule> molecules(const Matroid& m, bool nontrivial_only) {
  std::vector<Molecule> out;
  for_each_disjoint_triple(m.n, [&](Mask r, Mask f, Mask t) {
    if (nontrivial_only && !(f && t)) return;
    if (is_molecule(m, r, f, t)) out.push_back({r, f, t});
  });
  return out;
}

MultiplicityFunction MultiplicityFunction::constant(int n, const BigInt& value) {
  return from_values(n, std::vector<BigInt>(std::size_t{1} << n, value));
}

MultiplicityFunction MultiplicityFunction::from_values(int n, std::vector<BigInt> values) {
  require_ground(n);
  if (values.size() != (std::size_t{1} << n))
    throw Error(Errc::size_mismatch, "multiplicity needs 2^" + std::to_string(n) + " values");
  for (std::size_t a = 0; a < values.size(); ++a)
    if (values[a] <= 0)
      throw Error(Errc::invalid_input, "multiplicity of " + subset_label(a) + " must be positive");
  return MultiplicityFunction{n, std::move(values)};
}

namespace {

void require_same_ground(const Matroid& m, const MultiplicityFunction& mult) {
  if (m.n != mult.n) throw Error(Errc::size_mismatch, "matroid and multiplicity ground sets differ");
}

bool divides(const BigInt& a, const BigInt& b) { return b % a == 0; }

}  // namespace

bool check_a1(const Matroid& m, const MultiplicityFunction& mult) {
  require_same_ground(m, mult);
  for (Mask a = 0; a < (Mask{1} << m.n); ++a) {
    for (int e = 0; e < m.n; ++e) {
      if (a & bit(e)) continue;
      const Mask b = a | bit(e);
      bool ok = m.rank(b) > m.rank(a) ? divides(mult(a), mult(b)) : divides(mult(b), mult(a));
      if (!ok) return false;
    }
  }
  return true;
}

bool check_a2(const Matroid& m, const MultiplicityFunction& mult) {
  require_same_ground(m, mult);
  for (const Molecule& mol : molecules(m, false))
    if (mult(mol.r) * mult(mol.r | mol.f | mol.t) != mult(mol.r | mol.f) * mult(mol.r | mol.t)) return false;
  return true;
}

bool check_p(const Matroid& m, const MultiplicityFunction& mult) {
  require_same_ground(m, mult);
  for (const Molecule& mol : molecules(m, false)) {
    const Mask top = mol.r | mol.f | mol.t;
    const Mask free = mol.f | mol.t;
    BigInt sum = 0;
    for (Mask s = free;; s = (s - 1) & free) {
      const Mask a = mol.r | s;
      if (popcount(top & ~a) % 2) sum -= mult(a);
      else sum += mult(a);
      if (s == 0) break;
    }
    if (popcount(mol.t) % 2) sum = -sum;
    if (sum < 0) return false;
  }
  return true;
}

MultiplicityFunction multiply(const MultiplicityFunction& a, const MultiplicityFunction& b) {
  if (a.n != b.n || a.values.size() != b.values.size())
    throw Error(Errc::size_mismatch, "multiplicities on different ground sets");
  MultiplicityFunction out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= b.values[i];
  return out;
}

Digraph digraph(const Matroid& m) {
  Digraph g;
  g.vertices = 1 << m.n;
  const Mask size = Mask{1} << m.n;
  std::vector<int> outdeg(size, 0), indeg(size, 0);
  std::vector<std::vector<Mask>> succ(size);
  for (Mask a = 0; a < size; ++a) {
    for (int e = 0; e < m.n; ++e) {
      if (a & bit(e)) continue;
      const Mask b = a | bit(e);
      auto edge = m.rank(a) < m.rank(b) ? std::pair{a, b} : std::pair{b, a};
      g.edges.push_back(edge);
      succ[edge.first].push_back(edge.second);
      ++outdeg[edge.first];
      ++indeg[edge.second];
    }
  }
  for (Mask a = 0; a < size; ++a)
    if (outdeg[a] == 0) g.sinks.push_back(a);
  // Kahn's algorithm, smallest mask first.
  std::vector<Mask> ready;
  for (Mask a = 0; a < size; ++a)
    if (indeg[a] == 0) ready.push_back(a);
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end());
    Mask a = *it;
    ready.erase(it);
    g.topological_order.push_back(a);
    for (Mask b : succ[a])
      if (--indeg[b] == 0) ready.push_back(b);
  }
  g.acyclic = g.topological_order.size() == size;
  return g;
}

Poset slice_poset(const Matroid& m) {
  require_ground(m.n);
  const Digraph g = digraph(m);
  std::vector<std::string> labels;
  for (Mask a = 0; a < (Mask{1} << m.n); ++a) labels.push_back(subset_label(a));
  std::vector<std::pair<int, int>> rel;
  for (auto [t, h] : g.edges) rel.emplace_back(static_cast<int>(t), static_cast<int>(h));
  return Poset::from_index_relations(std::move(labels), rel);
}

bool is_prime_number(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> support_primes(const MultiplicityFunction& m, std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (BigInt v : m.values) {
    for (std::uint64_t d = 2; v > 1 && BigInt(d) * d <= v; ++d) {
      if (d > limit) throw Error(Errc::out_of_range, "trial division limit reached");
      if (v % d == 0) {
        out.push_back(d);
        while (v % d == 0) v /= d;
      }
    }
    // What remains is 1 or a prime.
    if (v > 1) {
      if (v > std::numeric_limits<std::uint64_t>::max())
        throw Error(Errc::out_of_range, "prime factor does not fit 64 bits");
      out.push_back(static_cast<std::uint64_t>(v));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SlicedMultiplicity p_slice(const MultiplicityFunction& m, std::uint64_t p) {
  if (!is_prime_number(p)) throw Error(Errc::not_prime, std::to_string(p) + " is not prime");
  SlicedMultiplicity s{p, std::vector<std::uint64_t>(m.values.size(), 0)};
  for (std::size_t a = 0; a < m.values.size(); ++a) {
    BigInt v = m.values[a];
    while (v % p == 0) {
      v /= p;
      ++s.values[a];
    }
  }
  return s;
}

MultiplicityFunction reconstruct(int n, const std::vector<SlicedMultiplicity>& slices) {
  require_ground(n);
  std::vector<std::uint64_t> seen;
  std::vector<BigInt> values(std::size_t{1} << n, BigInt(1));
  for (const auto& s : slices) {
    if (!is_prime_number(s.prime)) throw Error(Errc::not_prime, std::to_string(s.prime) + " is not prime");
    if (std::find(seen.begin(), seen.end(), s.prime) != seen.end())
      throw Error(Errc::duplicate_prime, "prime " + std::to_string(s.prime) + " given twice");
    seen.push_back(s.prime);
    if (s.values.size() != values.size()) throw Error(Errc::size_mismatch, "slice has the wrong number of values");
    for (std::size_t a = 0; a < values.size(); ++a)
      values[a] *= boost::multiprecision::pow(BigInt(s.prime), static_cast<unsigned>(s.values[a]));
  }
  return MultiplicityFunction::from_values(n, std::move(values));
}

}  // namespace posmon
