#include "posmon/structure.hpp"

#include <algorithm>
#include <numeric>

namespace posmon {

namespace {

// Elements sorted so that x < y implies x comes first.
std::vector<int> linear_extension(const Poset& p) {
  std::vector<int> order(static_cast<std::size_t>(p.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return popcount(p.strictly_below(a)) < popcount(p.strictly_below(b));
  });
  return order;
}

}  // namespace

std::vector<std::int64_t> ray_vector(const Poset& p, UpperSet u) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(p.size()), 0);
  for_each_bit(u.members, [&](int x) { v[x] = 1; });
  return v;
}

ConeDescription cone_description(const Poset& p) {
  ConeDescription c;
  c.rays = enumerate_irreducible_upper_sets(p);
  for_each_bit(p.minimal(), [&](int x) { c.facets.push_back({Facet::Kind::nonneg, x}); });
  for (auto [x, y] : p.covers()) {
    c.facets.push_back({Facet::Kind::cover, x, y});
    std::vector<std::int64_t> w(static_cast<std::size_t>(p.size()), 0);
    for_each_bit(p.up(x) & ~bit(y), [&](int z) { w[z] = 1; });
    c.cover_witnesses.push_back(std::move(w));
  }
  return c;
}

int integer_rank(std::vector<std::vector<std::int64_t>> rows) {
  int rank = 0;
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t k = r + 1; k < rows.size(); ++k) {
      if (rows[k][c] == 0) continue;
      const std::int64_t a = rows[r][c], b = rows[k][c];
      std::int64_t g = 0;
      for (std::size_t j = 0; j < cols; ++j) {
        rows[k][j] = rows[k][j] * a - rows[r][j] * b;
        g = std::gcd(g, rows[k][j]);
      }
      if (g > 1)
        for (auto& v : rows[k]) v /= g;
    }
    ++r;
    ++rank;
  }
  return rank;
}

bool is_extremal_ray(const Poset& p, UpperSet u) {
  const auto v = ray_vector(p, u);
  std::vector<std::vector<std::int64_t>> tight;
  const auto n = static_cast<std::size_t>(p.size());
  for (const Facet& f : cone_description(p).facets) {
    if (f.evaluate(v) != 0) continue;
    std::vector<std::int64_t> normal(n, 0);
    if (f.kind == Facet::Kind::nonneg) {
      normal[f.x] = 1;
    } else {
      normal[f.y] = 1;
      normal[f.x] = -1;
    }
    tight.push_back(std::move(normal));
  }
  return integer_rank(std::move(tight)) == p.size() - 1;
}

std::optional<LevelFunction> level_function(const Poset& p) {
  LevelFunction g{std::vector<std::uint64_t>(static_cast<std::size_t>(p.size()), 0)};
  for (int x : linear_extension(p)) {
    Mask lower = p.lower_covers(x);
    if (!lower) {
      g.values[x] = 1;
      continue;
    }
    std::uint64_t want = g.values[lowest(lower)] + 1;
    bool consistent = true;
    for_each_bit(lower, [&](int z) { consistent = consistent && g.values[z] + 1 == want; });
    if (!consistent) return std::nullopt;
    g.values[x] = want;
  }
  return g;
}

std::vector<int> chain_depth(const Poset& p) {
  std::vector<int> d(static_cast<std::size_t>(p.size()), 1);
  for (int x : linear_extension(p))
    for_each_bit(p.lower_covers(x), [&](int z) { d[x] = std::max(d[x], d[z] + 1); });
  return d;
}

std::vector<int> coheight(const Poset& p) {
  std::vector<int> h(static_cast<std::size_t>(p.size()), 0);
  auto order = linear_extension(p);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for_each_bit(p.upper_covers(*it), [&](int y) { h[*it] = std::max(h[*it], h[y] + 1); });
  return h;
}

bool is_interior(const Poset& p, std::span<const std::uint64_t> f) {
  if (f.size() != static_cast<std::size_t>(p.size())) return false;
  bool ok = true;
  for_each_bit(p.minimal(), [&](int m) { ok = ok && f[m] >= 1; });
  for (auto [x, y] : p.covers()) ok = ok && f[y] > f[x];
  return ok;
}

bool is_minimal_interior(const Poset& p, std::span<const std::uint64_t> f) {
  // f - chi_U stays interior iff U avoids the minimal elements where f = 1 and
  // contains x whenever it contains a y covering x with f(y) = f(x) + 1. The
  // smallest such closures start from single maximal elements.
  if (!is_interior(p, f)) return false;
  Mask blocked = 0;
  for_each_bit(p.minimal(), [&](int m) {
    if (f[m] == 1) blocked |= bit(m);
  });
  bool minimal = true;
  for_each_bit(p.maximal(), [&](int z) {
    if (!minimal) return;
    Mask closure = bit(z);
    Mask frontier = closure;
    while (frontier && !(closure & blocked)) {
      Mask next = 0;
      for_each_bit(frontier, [&](int y) {
        next |= p.strictly_above(y);
        for_each_bit(p.lower_covers(y), [&](int x) {
          if (f[y] == f[x] + 1) next |= p.up(x);
        });
      });
      next &= ~closure;
      closure |= next;
      frontier = next;
    }
    if (!(closure & blocked)) minimal = false;
  });
  return minimal;
}

namespace {

// Enumerates strictly monotone f with depth(x) <= f(x) <= cap[x], in
// linear-extension order. Returns false when fn asks to stop.
template <typename Fn>
bool for_each_interior_point(const Poset& p, const std::vector<int>& order, const std::vector<int>& depth,
                             const std::vector<std::int64_t>& cap, std::vector<std::uint64_t>& f, std::size_t pos,
                             Fn&& fn) {
  if (pos == order.size()) return fn(std::as_const(f));
  const int x = order[pos];
  std::int64_t lo = depth[x];
  for_each_bit(p.lower_covers(x), [&](int z) { lo = std::max(lo, static_cast<std::int64_t>(f[z]) + 1); });
  for (std::int64_t v = lo; v <= cap[x]; ++v) {
    f[x] = static_cast<std::uint64_t>(v);
    if (!for_each_interior_point(p, order, depth, cap, f, pos + 1, fn)) return false;
  }
  return true;
}

bool divides_values(const Poset& p, std::span<const std::uint64_t> g, std::span<const std::uint64_t> f) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] < g[i]) return false;
  for (auto [x, y] : p.covers())
    if (f[x] - g[x] > f[y] - g[y]) return false;
  return true;
}

std::vector<std::vector<std::uint64_t>> connected_interior_generators(const Poset& p,
                                                                      const InteriorOptions& opts) {
  const auto depth = chain_depth(p);
  const auto coht = coheight(p);
  const int longest = *std::max_element(depth.begin(), depth.end());
  const auto order = linear_extension(p);
  const auto n = static_cast<std::size_t>(p.size());

  // A minimal generator never exceeds longest - coheight(x): otherwise the
  // elements with f(x) > longest - coht(x) form an upper set U with f - chi_U
  // still interior. Larger windows only run if the self-check disagrees.
  for (int scale = 1; scale <= 4; scale *= 2) {
    std::vector<std::int64_t> cap(n);
    for (std::size_t x = 0; x < n; ++x) cap[x] = static_cast<std::int64_t>(scale) * longest - coht[x];

    std::vector<std::vector<std::uint64_t>> gens;
    std::vector<std::uint64_t> f(n, 0);
    for_each_interior_point(p, order, depth, cap, f, 0, [&](const std::vector<std::uint64_t>& g) {
      if (is_minimal_interior(p, g)) gens.push_back(g);
      return true;
    });

    bool complete = true;
    if (opts.self_check_budget) {
      std::vector<std::int64_t> wide(n, 2 * static_cast<std::int64_t>(longest));
      std::uint64_t seen = 0;
      for_each_interior_point(p, order, depth, wide, f, 0, [&](const std::vector<std::uint64_t>& pt) {
        if (++seen > opts.self_check_budget) return false;
        bool hit = std::any_of(gens.begin(), gens.end(), [&](const auto& g) { return divides_values(p, g, pt); });
        if (!hit) complete = false;
        return complete;
      });
    }
    if (complete) return gens;
  }
  throw Error(Errc::search_bound_exceeded, "interior generators not found within 4x the longest chain");
}

}  // namespace

InteriorGenerators interior_minimal_generators(const Poset& p, const InteriorOptions& opts) {
  InteriorGenerators out;
  const auto n = static_cast<std::size_t>(p.size());
  if (n == 0) {
    out.generators.push_back(MonotoneFunction(p));
    return out;
  }
  // M(P) is the product over comparability components, and so is its interior.
  std::vector<std::vector<std::uint64_t>> combined{std::vector<std::uint64_t>(n, 0)};
  for (Mask comp : comparability_components(p, p.all())) {
    std::vector<int> idx;
    for_each_bit(comp, [&](int x) { idx.push_back(x); });
    const Poset sub = p.induced(comp);
    auto local = connected_interior_generators(sub, opts);
    std::vector<std::vector<std::uint64_t>> next;
    next.reserve(combined.size() * local.size());
    for (const auto& base : combined) {
      for (const auto& g : local) {
        auto v = base;
        for (std::size_t k = 0; k < idx.size(); ++k) v[idx[k]] = g[k];
        next.push_back(std::move(v));
      }
    }
    combined = std::move(next);
  }
  std::sort(combined.begin(), combined.end());
  for (auto& v : combined) out.generators.push_back(MonotoneFunction::make(p, std::move(v)));
  return out;
}

std::size_t cm_type(const Poset& p, const InteriorOptions& opts) {
  return interior_minimal_generators(p, opts).generators.size();
}

namespace {

void require_irreducible(const Poset& p, UpperSet i) {
  if (!is_irreducible_upper_set(p, i.members))
    throw Error(Errc::not_irreducible, p.format_set(i.members) + " is not an irreducible upper set");
}

}  // namespace

bool is_prime(const Poset& p, UpperSet i) {
  require_irreducible(p, i);
  // 1. I is principal, I = up(v).
  int v = -1;
  for_each_bit(i.members, [&](int x) {
    if (p.up(x) == i.members) v = x;
  });
  if (v < 0) return false;
  // 2. every x outside I reaching into I lies below v.
  Mask touching = 0;
  for_each_bit(p.all() & ~i.members, [&](int x) {
    if (p.up(x) & i.members) touching |= bit(x);
  });
  if (!contains(p.strictly_below(v), touching)) return false;
  // 3. those x are empty or have a maximum.
  if (!touching) return true;
  bool has_max = false;
  for_each_bit(touching, [&](int w) { has_max = has_max || contains(p.down(w), touching); });
  return has_max;
}

bool is_prime_by_relations(const Poset& p, UpperSet i) {
  require_irreducible(p, i);
  const auto irr = enumerate_irreducible_upper_sets(p);
  for (UpperSet j : irr)
    if (j != i && !nested_or_disjoint(i.members, j.members)) return false;
  // chi_I divides chi_S iff I is a union of components of S.
  auto divides_indicator = [&](Mask s) {
    return contains(s, i.members) && p.is_upper_set(s & ~i.members);
  };
  for (UpperSet g : irr) {
    if (g == i) continue;
    for (UpperSet h : irr) {
      if (h == i) continue;
      if (divides_indicator(g.members | h.members)) return false;
      if ((g.members & h.members) && divides_indicator(g.members & h.members)) return false;
    }
  }
  return true;
}

std::vector<UpperSet> primes(const Poset& p) {
  std::vector<UpperSet> out;
  for (UpperSet i : enumerate_irreducible_upper_sets(p))
    if (is_prime(p, i)) out.push_back(i);
  return out;
}

bool has_private_support(const Poset& p, UpperSet i) {
  require_irreducible(p, i);
  Mask others = 0;
  for (UpperSet j : enumerate_irreducible_upper_sets(p))
    if (j != i) others |= j.members;
  return (i.members & ~others) != 0;
}

namespace {

// Values packed as 8-bit lanes, one lane per element (|P| <= 8).
using Packed = std::uint64_t;
constexpr Packed lane_low = 0x7f7f7f7f7f7f7f7fULL;
constexpr Packed lane_high = 0x8080808080808080ULL;

Packed pack_indicator(Mask s) {
  Packed v = 0;
  for_each_bit(s, [&](int x) { v |= Packed{1} << (8 * x); });
  return v;
}

int lane(Packed v, int x) { return static_cast<int>((v >> (8 * x)) & 0xff); }

}  // namespace

bool prime_oracle(const Poset& p, UpperSet i, int degree_bound) {
  require_irreducible(p, i);
  if (p.size() > 8) throw Error(Errc::too_large, "prime_oracle supports at most 8 elements");
  if (degree_bound < 1 || degree_bound > 60) throw Error(Errc::out_of_range, "degree_bound must be in [1, 60]");
  const auto irr = enumerate_irreducible_upper_sets(p);
  const Packed chi_i = pack_indicator(i.members);
  Packed i_lanes = 0;  // 0x80 in every lane of I
  for_each_bit(i.members, [&](int x) { i_lanes |= Packed{0x80} << (8 * x); });
  const auto& covers = p.covers();

  auto divisible = [&](Packed s) {
    // every lane of I must be >= 1, then s - chi_I must be monotone
    if (((s + lane_low) & i_lanes) != i_lanes) return false;
    Packed d = s - chi_i;
    for (auto [x, y] : covers)
      if (lane(d, x) > lane(d, y)) return false;
    return true;
  };

  // All nonzero sums of at most degree_bound irreducibles.
  std::vector<Packed> elems;
  {
    std::vector<Packed> layer{0};
    std::vector<std::size_t> start{0};  // smallest generator index allowed next
    for (int d = 1; d <= degree_bound; ++d) {
      std::vector<Packed> next;
      std::vector<std::size_t> next_start;
      for (std::size_t k = 0; k < layer.size(); ++k) {
        for (std::size_t g = start[k]; g < irr.size(); ++g) {
          next.push_back(layer[k] + pack_indicator(irr[g].members));
          next_start.push_back(g);
        }
      }
      elems.insert(elems.end(), next.begin(), next.end());
      layer = std::move(next);
      start = std::move(next_start);
    }
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  }
  std::vector<Packed> candidates;
  for (Packed g : elems)
    if (!divisible(g)) candidates.push_back(g);
  // Small sums first so refutations surface early.
  std::sort(candidates.begin(), candidates.end(), [](Packed a, Packed b) {
    return std::pair(std::popcount(a), a) < std::pair(std::popcount(b), b);
  });
  for (std::size_t a = 0; a < candidates.size(); ++a)
    for (std::size_t b = a; b < candidates.size(); ++b)
      if (divisible(candidates[a] + candidates[b])) return false;
  return true;
}

}  // namespace posmon
