#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "posmon/monoid.hpp"
#include "posmon/poset.hpp"

namespace posmon {

/// Supporting inequality of the cone C(P).
struct Facet {
  enum class Kind { nonneg, cover };
  Kind kind;
  int x;
  int y = -1;  ///< cover only: f(y) - f(x) >= 0

  /// Value of the linear form on f.
  std::int64_t evaluate(std::span<const std::int64_t> f) const {
    return kind == Kind::nonneg ? f[x] : f[y] - f[x];
  }
  friend bool operator==(const Facet&, const Facet&) = default;
};

struct ConeDescription {
  /// Extremal rays: indicators of the irreducible upper sets, generator order.
  std::vector<UpperSet> rays;
  /// f(x) >= 0 for minimal x, then f(y) - f(x) >= 0 for every cover.
  std::vector<Facet> facets;
  /// For each cover facet (same order as the cover facets), a 0/1 vector
  /// violating it and satisfying every other facet.
  std::vector<std::vector<std::int64_t>> cover_witnesses;
};

ConeDescription cone_description(const Poset& p);

std::vector<std::int64_t> ray_vector(const Poset& p, UpperSet u);

/// Rank of an integer matrix (rows), exact.
int integer_rank(std::vector<std::vector<std::int64_t>> rows);

/// chi_I spans an extremal ray iff the facets tight at chi_I have rank |P| - 1.
bool is_extremal_ray(const Poset& p, UpperSet u);

/// gamma with gamma(min) = 1 and gamma(y) = gamma(x) + 1 along covers.
struct LevelFunction {
  std::vector<std::uint64_t> values;
};

/// Present exactly when P is graded (M(P) Gorenstein).
std::optional<LevelFunction> level_function(const Poset& p);

/// Strictly monotone along covers and >= 1 on minimal elements.
bool is_interior(const Poset& p, std::span<const std::uint64_t> f);

/// Interior and f - chi_I is not interior for every irreducible I.
bool is_minimal_interior(const Poset& p, std::span<const std::uint64_t> f);

/// Longest chain ending at x (element count).
std::vector<int> chain_depth(const Poset& p);
/// Longest chain strictly above x (element count); 0 for maximal x.
std::vector<int> coheight(const Poset& p);

struct InteriorGenerators {
  /// Minimal interior lattice points, sorted lexicographically by values.
  std::vector<MonotoneFunction> generators;
};

struct InteriorOptions {
  /// Interior points checked by the completeness self-check before it gives
  /// up; 0 disables the check.
  std::uint64_t self_check_budget = 200'000;
};

/// Minimal generators of the interior ideal int(C(P)) n M(P).
/// Throws search_bound_exceeded if the completeness self-check fails.
InteriorGenerators interior_minimal_generators(const Poset& p, const InteriorOptions& opts = {});

/// Cohen-Macaulay type: the number of minimal interior generators.
std::size_t cm_type(const Poset& p, const InteriorOptions& opts = {});

/// Combinatorial prime criterion for chi_I. Throws not_irreducible.
bool is_prime(const Poset& p, UpperSet i);

/// Criterion in terms of the relations: {I, J} is a near-chain for all
/// irreducible J != I, and chi_I divides neither chi_{G u H} nor
/// chi_{G n H} for irreducible G, H != I. Throws not_irreducible.
bool is_prime_by_relations(const Poset& p, UpperSet i);

/// Irreducible upper sets passing is_prime, generator order.
std::vector<UpperSet> primes(const Poset& p);

/// Bounded brute force over the definition of a prime: for all g, h that are
/// sums of at most `degree_bound` irreducibles, chi_I | g + h implies
/// chi_I | g or chi_I | h. False means refuted; true means no refutation
/// within the bound. Throws not_irreducible or too_large (|P| > 8).
bool prime_oracle(const Poset& p, UpperSet i, int degree_bound = 3);

/// The support of chi_I is not covered by the other irreducibles' supports.
bool has_private_support(const Poset& p, UpperSet i);

}  // namespace posmon
