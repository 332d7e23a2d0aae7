#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "posmon/counting.hpp"
#include "posmon/structure.hpp"
#include "support.hpp"

using namespace posmon;

namespace {

Matroid loop_coloop() { return Matroid::from_ranks(2, {0, 1, 0, 1}); }

bool is_uniform(const Matroid& m) { return m == uniform(m.rank(), m.n); }

MultiplicityFunction from_ints(int n, std::vector<long> v) {
  std::vector<BigInt> b(v.begin(), v.end());
  return MultiplicityFunction::from_values(n, b);
}

std::vector<Matroid> test_matroids() {
  std::vector<Matroid> out;
  for (int n = 0; n <= 3; ++n)
    for (const Matroid& m : all_matroids(n)) out.push_back(m);
  out.push_back(uniform(2, 4));
  out.push_back(uniform(1, 4));
  return out;
}


}  // namespace

TEST_CASE("uniform") {
  CHECK(uniform(1, 2).ranks == std::vector<int>{0, 1, 1, 1});
  CHECK(uniform(0, 3).ranks == std::vector<int>(8, 0));
  const auto u = uniform(2, 4);
  REQUIRE(u.ranks.size() == 16);
  for (Mask a = 0; a < 16; ++a) CHECK(u.rank(a) == std::min(popcount(a), 2));
  CHECK_THROWS_AS(uniform(3, 2), Error);
  CHECK_THROWS_AS(uniform(1, 7), Error);
}

TEST_CASE("validate_matroid") {
  CHECK(validate_matroid(uniform(2, 4)).empty());
  const auto v1 = validate_matroid(Matroid::from_ranks(1, {0, 2}));
  REQUIRE_FALSE(v1.empty());
  CHECK(v1.front().axiom == "R1");
  CHECK(v1.front().x == 1);
  const auto v2 = validate_matroid(Matroid::from_ranks(2, {0, 1, 1, 0}));
  REQUIRE_FALSE(v2.empty());
  CHECK(v2.front().axiom == "R2");
  CHECK_THROWS_AS(Matroid::from_ranks(2, {0, 1}), Error);
  CHECK_THROWS_AS(Matroid::from_ranks(7, std::vector<int>(128)), Error);
}

TEST_CASE("all_matroids counts") {
  // matroids on labelled sets of size 0..3
  CHECK(all_matroids(0).size() == 1);
  CHECK(all_matroids(1).size() == 2);
  CHECK(all_matroids(2).size() == 5);
  CHECK(all_matroids(3).size() == 16);
}

TEST_CASE("deletion and contraction") {
  for (int e = 0; e < 4; ++e) {
    CHECK(contraction(uniform(2, 4), e) == uniform(1, 3));
    CHECK(deletion(uniform(2, 4), e) == uniform(2, 3));
  }
  CHECK(contraction(uniform(0, 2), 0) == uniform(0, 1));
  CHECK_THROWS_AS(deletion(uniform(1, 2), 2), Error);
  for (const Matroid& m : test_matroids())
    for (int e = 0; e < m.n; ++e) {
      CHECK(validate_matroid(deletion(m, e)).empty());
      CHECK(validate_matroid(contraction(m, e)).empty());
    }
  // loop-coloop: deleting the coloop a leaves a loop
  CHECK(deletion(loop_coloop(), 0) == uniform(0, 1));
  CHECK(contraction(loop_coloop(), 1) == uniform(1, 1));
}

TEST_CASE("molecules match brute force; lemma both directions") {
  for (const Matroid& m : test_matroids()) {
    std::vector<Molecule> brute;
    const Mask full = m.ground();
    // enumerate 4^n assignments of each element to R, F, T or none
    std::vector<int> assign(static_cast<std::size_t>(m.n), 0);
    for (;;) {
      Molecule mol;
      for (int i = 0; i < m.n; ++i) {
        if (assign[i] == 1) mol.r |= bit(i);
        if (assign[i] == 2) mol.f |= bit(i);
        if (assign[i] == 3) mol.t |= bit(i);
      }
      if (testing::is_molecule_brute(m, mol.r, mol.f, mol.t)) brute.push_back(mol);
      int k = 0;
      while (k < m.n && assign[k] == 3) assign[k++] = 0;
      if (k == m.n) break;
      ++assign[k];
    }
    auto mine = molecules(m, false);
    auto key = [](const Molecule& x) { return std::tuple(x.r, x.f, x.t); };
    auto less = [&](const Molecule& x, const Molecule& y) { return key(x) < key(y); };
    std::sort(brute.begin(), brute.end(), less);
    std::sort(mine.begin(), mine.end(), less);
    CHECK(mine == brute);
    // trivial molecules (F = T = empty) for every R
    for (Mask r = 0; r <= full; ++r)
      CHECK(std::find(mine.begin(), mine.end(), Molecule{r, 0, 0}) != mine.end());
    CHECK(molecules(m, true).empty() == is_uniform(m));
  }
  for (int n = 0; n <= 5; ++n)
    for (int r = 0; r <= n; ++r) CHECK(molecules(uniform(r, n), true).empty());
  const auto lc = molecules(loop_coloop(), false);
  CHECK(std::find(lc.begin(), lc.end(), Molecule{0, 1, 2}) != lc.end());
}

TEST_CASE("axiom checks examples") {
  for (const Matroid& m : test_matroids()) {
    const auto one = MultiplicityFunction::constant(m.n, 1);
    CHECK(check_a1(m, one));
    CHECK(check_a2(m, one));
    CHECK(check_p(m, one));
  }
  const auto bad = from_ints(2, {1, 2, 1, 3});
  CHECK_FALSE(check_a2(loop_coloop(), bad));

  std::mt19937_64 rng(59);
  for (int n = 1; n <= 4; ++n)
    for (int r = 0; r <= n; ++r)
      for (int t = 0; t < 20; ++t) {
        const auto m = testing::random_sliced(rng, uniform(r, n));
        CHECK(check_a1(uniform(r, n), m));
        CHECK(check_a2(uniform(r, n), m));
      }
  CHECK_THROWS_AS(from_ints(1, {1, 0}), Error);
}

TEST_CASE("arithmetic multiplicities satisfy A1, A2, P") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + t % 4, rows = 1 + t % 3;
    const auto z = testing::random_realization(rng, rows, n, 3);
    CHECK(validate_matroid(z.matroid).empty());
    CHECK(check_a1(z.matroid, z.mult));
    CHECK(check_a2(z.matroid, z.mult));
    CHECK(check_p(z.matroid, z.mult));
  }
}

TEST_CASE("multiply") {
  const auto m = from_ints(2, {1, 2, 3, 6});
  CHECK(multiply(m, MultiplicityFunction::constant(2, 1)) == m);
  CHECK(multiply(m, m) == from_ints(2, {1, 4, 9, 36}));
  CHECK_THROWS_AS(multiply(m, MultiplicityFunction::constant(3, 1)), Error);
  const auto a = from_ints(2, {1, 2, 2, 2}), b = from_ints(2, {1, 3, 3, 3});
  REQUIRE(check_a1(uniform(1, 2), a));
  REQUIRE(check_a1(uniform(1, 2), b));
  CHECK(check_a1(uniform(1, 2), multiply(a, b)));
}

TEST_CASE("product closure of A1, A2 and P") {
  std::mt19937_64 rng(67);
  for (const Matroid& m : test_matroids()) {
    const auto z = testing::find_realizer(rng, m);
    REQUIRE(z);
    auto sample = [&]() {
      std::uniform_int_distribution<int> kind(0, 2);
      switch (kind(rng)) {
        case 0:
          if (is_uniform(m)) return testing::random_sliced(rng, m);
          [[fallthrough]];
        case 1:
          return testing::random_arithmetic(rng, *z);
        default:
          return multiply(testing::random_arithmetic(rng, *z),
                          MultiplicityFunction::constant(m.n, std::uniform_int_distribution<int>(1, 5)(rng)));
      }
    };
    for (int t = 0; t < 60; ++t) {
      const auto a = sample(), b = sample();
      REQUIRE((check_a1(m, a) && check_a2(m, a)));
      REQUIRE((check_a1(m, b) && check_a2(m, b)));
      const auto c = multiply(a, b);
      CHECK(check_a1(m, c));
      CHECK(check_a2(m, c));
      if (check_p(m, a) && check_p(m, b)) CHECK(check_p(m, c));
    }
  }
}

TEST_CASE("digraph") {
  const auto g = digraph(uniform(1, 2));
  CHECK(g.sinks == std::vector<Mask>{1, 2});
  const auto lc = digraph(loop_coloop());
  CHECK(lc.sinks == std::vector<Mask>{1});
  auto edges = lc.edges;
  std::sort(edges.begin(), edges.end());
  CHECK(edges == std::vector<std::pair<Mask, Mask>>{{0, 1}, {2, 0}, {2, 3}, {3, 1}});
  auto check_graph = [](const Matroid& m) {
    const auto d = digraph(m);
    CHECK(d.acyclic);
    auto b = bases(m);
    auto s = d.sinks;
    std::sort(b.begin(), b.end());
    std::sort(s.begin(), s.end());
    CHECK(s == b);
    std::vector<std::size_t> pos(std::size_t{1} << m.n);
    for (std::size_t i = 0; i < d.topological_order.size(); ++i) pos[d.topological_order[i]] = i;
    for (auto [t, h] : d.edges) CHECK(pos[t] < pos[h]);
  };
  for (const Matroid& m : test_matroids()) check_graph(m);
  for (int n = 4; n <= 5; ++n)
    for (int r = 0; r <= n; ++r) check_graph(uniform(r, n));
}

TEST_CASE("slice_poset") {
  const Poset p = slice_poset(uniform(1, 2));
  CHECK(p.size() == 4);
  CHECK(p.minimal() == (bit(0) | bit(3)));
  CHECK(p.maximal() == (bit(1) | bit(2)));
  CHECK(enumerate_irreducible_upper_sets(p).size() == 5);
  CHECK(p.label(3) == "{a,b}");
  CHECK(p.label(0) == "{}");

  const Poset c = slice_poset(uniform(0, 1));
  CHECK(c.covers() == std::vector<std::pair<int, int>>{{1, 0}});

  const Poset b = slice_poset(uniform(0, 3));
  for (Mask x = 0; x < 8; ++x)
    for (Mask y = 0; y < 8; ++y)
      CHECK(b.less(static_cast<int>(x), static_cast<int>(y)) == (x != y && contains(x, y)));

  CHECK_THROWS_AS(slice_poset(Matroid{7, std::vector<int>(128, 0)}), Error);
}

TEST_CASE("slice poset duality via complements") {
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= n; ++k) {
      const Poset a = slice_poset(uniform(k, n)), b = slice_poset(uniform(n - k, n));
      const Mask full = low_mask(n);
      for (int x = 0; x < a.size(); ++x)
        for (int y = 0; y < a.size(); ++y)
          CHECK(a.less(x, y) == b.less(static_cast<int>(full & ~Mask(x)), static_cast<int>(full & ~Mask(y))));
      CHECK(count_irreducibles(a).count == count_irreducibles(b).count);
      CHECK(cm_type(a) == cm_type(b));
    }
}

TEST_CASE("A1 is monotonicity on the slice poset") {
  std::mt19937_64 rng(71);
  std::vector<Matroid> ms = test_matroids();
  for (int r = 0; r <= 4; ++r) ms.push_back(uniform(r, 4));
  int agree = 0, monotone = 0;
  for (int t = 0; t < 500; ++t) {
    const Matroid& m = ms[static_cast<std::size_t>(t) % ms.size()];
    const Poset p = slice_poset(m);
    std::vector<std::uint64_t> g;
    if (t % 2 == 0) {
      g = testing::random_monotone(rng, p, testing::irreducibles_brute(p), 3);
    } else {
      std::uniform_int_distribution<std::uint64_t> d(0, 2);
      g.resize(static_cast<std::size_t>(p.size()));
      for (auto& v : g) v = d(rng);
    }
    std::vector<BigInt> vals;
    for (auto v : g) vals.push_back(boost::multiprecision::pow(BigInt(5), static_cast<unsigned>(v)));
    const auto mult = MultiplicityFunction::from_values(m.n, vals);
    const bool mono = is_monotone(p, g);
    monotone += mono;
    agree += check_a1(m, mult) == mono;
  }
  CHECK(agree == 500);
  CHECK(monotone >= 250);
}

TEST_CASE("p_slice and reconstruct") {
  const auto one = MultiplicityFunction::constant(2, 1);
  CHECK(p_slice(one, 7).values == std::vector<std::uint64_t>(4, 0));
  const auto m = from_ints(1, {1, 12});
  CHECK(p_slice(m, 2).values == std::vector<std::uint64_t>{0, 2});
  CHECK(p_slice(m, 3).values == std::vector<std::uint64_t>{0, 1});
  CHECK_THROWS_AS(p_slice(m, 4), Error);
  CHECK_THROWS_AS(p_slice(m, 1), Error);
  CHECK(support_primes(m) == std::vector<std::uint64_t>{2, 3});
  CHECK_THROWS_AS(reconstruct(1, {p_slice(m, 2), p_slice(m, 2)}), Error);
  CHECK(reconstruct(2, {}) == one);

  std::vector<std::uint64_t> small_primes;
  for (std::uint64_t q = 2; q <= 1000; ++q)
    if (is_prime_number(q)) small_primes.push_back(q);
  CHECK(small_primes.size() == 168);

  std::mt19937_64 rng(73);
  std::uniform_int_distribution<long> d(1, 1000);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 4;
    std::vector<long> v(std::size_t{1} << n);
    for (auto& x : v) x = d(rng);
    const auto mult = from_ints(n, v);
    std::vector<SlicedMultiplicity> slices;
    for (auto q : support_primes(mult)) slices.push_back(p_slice(mult, q));
    CHECK(reconstruct(n, slices) == mult);
    if (t % 10 == 0) {
      std::vector<SlicedMultiplicity> all;
      for (auto q : small_primes) all.push_back(p_slice(mult, q));
      CHECK(reconstruct(n, all) == mult);
    }
  }
}
