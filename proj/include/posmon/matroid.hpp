#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "posmon/poset.hpp"

namespace posmon {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int max_ground_set = 6;

/// Matroid on the ground set {0..n-1} given by its full rank table, indexed
/// by subset bitmask. Elements are named a, b, c, ... in input order.
struct Matroid {
  int n = 0;
  std::vector<int> ranks;

  /// Throws ground_set_too_large or size_mismatch; does not check the axioms.
  static Matroid from_ranks(int n, std::vector<int> ranks);

  int rank(Mask a) const { return ranks.at(static_cast<std::size_t>(a)); }
  int rank() const { return rank(low_mask(n)); }
  Mask ground() const noexcept { return low_mask(n); }

  friend bool operator==(const Matroid&, const Matroid&) = default;
};

/// "" for the empty set, otherwise concatenated element names ("ab").
std::string subset_key(Mask a);
/// Inverse of subset_key for a ground set of size n. Throws unknown_element.
Mask parse_subset_key(const std::string& key, int n);
/// "{a,b}" style rendering; "{}" for the empty set.
std::string subset_label(Mask a);

/// U(r, n): rk(A) = min(|A|, r). Throws out_of_range.
Matroid uniform(int r, int n);

struct Violation {
  std::string axiom;  ///< "R1", "R2" or "R3"
  Mask x = 0;
  Mask y = 0;
  std::string message;
};

/// Empty iff the rank table satisfies R1-R3 for all pairs.
std::vector<Violation> validate_matroid(const Matroid& m);

std::vector<Mask> bases(const Matroid& m);

/// Throws unknown_element. Elements above e shift down by one.
Matroid deletion(const Matroid& m, int e);
Matroid contraction(const Matroid& m, int e);

struct Molecule {
  Mask r = 0, f = 0, t = 0;
  bool nontrivial() const noexcept { return f && t; }
  friend bool operator==(const Molecule&, const Molecule&) = default;
};

/// All (R, F, T) pairwise disjoint with rk(A) = rk(R) + |A n F| for every
/// R <= A <= R u F u T.
std::vector<Molecule> molecules(const Matroid& m, bool nontrivial_only);

/// Multiplicity m: 2^E -> N, values indexed by subset bitmask.
struct MultiplicityFunction {
  int n = 0;
  std::vector<BigInt> values;

  static MultiplicityFunction constant(int n, const BigInt& value);
  /// Throws size_mismatch or invalid_input (non-positive value).
  static MultiplicityFunction from_values(int n, std::vector<BigInt> values);

  const BigInt& operator()(Mask a) const { return values.at(static_cast<std::size_t>(a)); }
  friend bool operator==(const MultiplicityFunction&, const MultiplicityFunction&) = default;
};

bool check_a1(const Matroid& m, const MultiplicityFunction& mult);
bool check_a2(const Matroid& m, const MultiplicityFunction& mult);
bool check_p(const Matroid& m, const MultiplicityFunction& mult);

/// Pointwise product. Throws size_mismatch.
MultiplicityFunction multiply(const MultiplicityFunction& a, const MultiplicityFunction& b);

/// G_M on 2^E: A -> A u {e} when the rank grows, A u {e} -> A otherwise.
struct Digraph {
  int vertices = 0;
  std::vector<std::pair<Mask, Mask>> edges;  ///< (tail, head)
  std::vector<Mask> sinks;
  /// Every edge goes forward in this order.
  std::vector<Mask> topological_order;
  bool acyclic = false;
};

Digraph digraph(const Matroid& m);

/// Poset on 2^E ordered by reachability in G_M (tail < head). Element i is
/// the subset with bitmask i, labelled by subset_label. Throws
/// ground_set_too_large for n > 6.
Poset slice_poset(const Matroid& m);

struct SlicedMultiplicity {
  std::uint64_t prime = 0;
  std::vector<std::uint64_t> values;  ///< v_p(m(A)) by subset bitmask
  friend bool operator==(const SlicedMultiplicity&, const SlicedMultiplicity&) = default;
};

bool is_prime_number(std::uint64_t p);
/// Distinct primes dividing some value of m (values must be factorable by
/// trial division up to `limit`). Throws out_of_range otherwise.
std::vector<std::uint64_t> support_primes(const MultiplicityFunction& m, std::uint64_t limit = 1'000'000);

/// Throws not_prime.
SlicedMultiplicity p_slice(const MultiplicityFunction& m, std::uint64_t p);
/// Product of p^slice over the given slices on a ground set of size n.
/// Throws duplicate_prime, not_prime or size_mismatch.
MultiplicityFunction reconstruct(int n, const std::vector<SlicedMultiplicity>& slices);

}  // namespace posmon
