#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "posmon/poset.hpp"

namespace posmon {

/// Natural-valued monotone function on a poset: an element of M(P).
///
/// Holds a non-owning pointer to its poset, which must outlive it.
class MonotoneFunction {
 public:
  using value_type = std::uint64_t;

  /// The zero function.
  explicit MonotoneFunction(const Poset& p);

  /// Throws size_mismatch or not_monotone.
  static MonotoneFunction make(const Poset& p, std::vector<value_type> values);
  static MonotoneFunction indicator(const Poset& p, UpperSet u);

  const Poset& poset() const noexcept { return *poset_; }
  std::span<const value_type> values() const noexcept { return values_; }
  value_type operator[](int x) const { return values_.at(static_cast<std::size_t>(x)); }

  Mask support() const noexcept;
  bool is_zero() const noexcept { return support() == 0; }
  /// Sum of all values. Throws arithmetic_overflow.
  value_type degree() const;

  friend bool operator==(const MonotoneFunction& a, const MonotoneFunction& b) {
    return a.values_ == b.values_;
  }

 private:
  MonotoneFunction(const Poset& p, std::vector<value_type> values)
      : poset_(&p), values_(std::move(values)) {}

  const Poset* poset_;
  std::vector<value_type> values_;
};

bool is_monotone(const Poset& p, std::span<const MonotoneFunction::value_type> values);

/// Pointwise sum. Throws poset_mismatch or arithmetic_overflow.
MonotoneFunction add(const MonotoneFunction& f, const MonotoneFunction& g);

/// g - f when it lies in M(P), i.e. when f divides g in the monoid.
std::optional<MonotoneFunction> subtract(const MonotoneFunction& g, const MonotoneFunction& f);

/// f <=_M g.
inline bool divides(const MonotoneFunction& f, const MonotoneFunction& g) {
  return subtract(g, f).has_value();
}

/// Coefficients keyed by irreducible upper set, iterated in generator order.
using Terms = std::map<UpperSet, std::uint64_t>;

/// Element of the free commutative monoid on the irreducible upper sets:
/// a formal sum of irreducibles with positive coefficients.
class FormalExpr {
 public:
  explicit FormalExpr(const Poset& p) : poset_(&p) {}
  /// Throws not_irreducible for a non-irreducible key and invalid_input for a
  /// zero coefficient.
  FormalExpr(const Poset& p, Terms terms);

  const Poset& poset() const noexcept { return *poset_; }
  const Terms& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::uint64_t coefficient(UpperSet u) const;

  /// Sum of coefficient * |I|.
  std::uint64_t degree() const;
  bool is_near_chain() const;

  /// Adds `count` copies of an irreducible (checked).
  void add(UpperSet u, std::uint64_t count = 1);
  /// Removes one copy; throws not_applicable when absent.
  void remove_one(UpperSet u);

  friend bool operator==(const FormalExpr& a, const FormalExpr& b) { return a.terms_ == b.terms_; }

 private:
  const Poset* poset_;
  Terms terms_;
};

/// Formal expression whose support is a near-chain (pairwise nested or
/// disjoint): the canonical form of an element of M(P).
class NearChainExpr {
 public:
  /// Throws invalid_input if `e` is not a near-chain.
  explicit NearChainExpr(FormalExpr e);

  const FormalExpr& expr() const noexcept { return expr_; }
  const Terms& terms() const noexcept { return expr_.terms(); }

  friend bool operator==(const NearChainExpr& a, const NearChainExpr& b) = default;

 private:
  FormalExpr expr_;
};

NearChainExpr near_chain_decompose(const MonotoneFunction& f);

MonotoneFunction evaluate(const FormalExpr& e);
inline MonotoneFunction evaluate(const NearChainExpr& e) { return evaluate(e.expr()); }

/// Pairs {I, J} of the support that are neither nested nor disjoint, as
/// (I, J) with I < J, sorted lexicographically in generator order.
std::vector<std::pair<UpperSet, UpperSet>> violating_pairs(const FormalExpr& e);

/// Replaces one I and one J by the components of I n J and of I u J.
/// Throws not_applicable when a term is absent or {I, J} is a near-chain.
FormalExpr rewrite_step(const FormalExpr& e, UpperSet i, UpperSet j);

/// Chooses the index of the next pair to rewrite among the violating pairs.
using PairChooser = std::function<std::size_t(std::span<const std::pair<UpperSet, UpperSet>>)>;

/// Rewrites until a near-chain remains, always taking the smallest pair.
NearChainExpr normal_form(const FormalExpr& e);
NearChainExpr normal_form(const FormalExpr& e, const PairChooser& choose);

/// The term order: degree first, then reverse lexicographic over the
/// generator order (a larger coefficient on the smallest differing
/// generator makes an expression smaller). Throws poset_mismatch.
std::strong_ordering compare_expr(const FormalExpr& a, const FormalExpr& b);

struct Relation {
  FormalExpr lhs;
  FormalExpr rhs;
};

/// One relation chi_I + chi_J = sum chi_U + sum chi_V per non-near-chain pair.
std::vector<Relation> presentation(const Poset& p);

/// Binomial x_I x_J - prod x_U prod x_V; rhs sorted in generator order.
struct BinomialRelation {
  UpperSet i;
  UpperSet j;
  std::vector<UpperSet> rhs;

  friend bool operator==(const BinomialRelation&, const BinomialRelation&) = default;
};

struct GroebnerBasis {
  /// Variables in term order, smallest first; deg x_I = |I|.
  std::vector<UpperSet> generators;
  std::vector<BinomialRelation> binomials;
};

GroebnerBasis groebner_basis(const Poset& p);

/// Maximal near-chains of irreducible upper sets, each sorted in generator
/// order, the list sorted lexicographically.
std::vector<std::vector<UpperSet>> maximal_near_chains(const Poset& p);

}  // namespace posmon
