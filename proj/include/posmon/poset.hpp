#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "posmon/bits.hpp"
#include "posmon/error.hpp"

namespace posmon {

inline constexpr int max_poset_size = 64;

/// Finite strict partial order on at most 64 labelled elements.
///
/// Elements are indexed 0..size()-1 in input order. The order is stored as
/// its transitive closure (one mask of strict successors per element) and
/// the covers are recomputed from it, whatever relation pairs were given.
class Poset {
 public:
  Poset() = default;

  /// Builds a poset from labels and pairs (x, y) meaning x < y. Pairs need
  /// not be covers; the closure and reduction are always recomputed.
  static Poset from_relations(std::vector<std::string> labels,
                              std::span<const std::pair<std::string, std::string>> pairs);

  /// Same as from_relations but with index pairs.
  static Poset from_index_relations(std::vector<std::string> labels,
                                    std::span<const std::pair<int, int>> pairs);

  int size() const noexcept { return static_cast<int>(labels_.size()); }
  Mask all() const noexcept { return low_mask(size()); }

  const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Throws unknown_label.
  int index_of(std::string_view label) const;
  Mask mask_of(std::span<const std::string> labels) const;

  bool less(int x, int y) const noexcept { return (above_[x] >> y) & 1; }
  bool comparable(int x, int y) const noexcept { return less(x, y) || less(y, x); }

  Mask strictly_above(int x) const noexcept { return above_[x]; }
  Mask strictly_below(int x) const noexcept { return below_[x]; }
  Mask up(int x) const noexcept { return above_[x] | bit(x); }
  Mask down(int x) const noexcept { return below_[x] | bit(x); }
  /// Elements comparable to x, x excluded.
  Mask comparable_to(int x) const noexcept { return above_[x] | below_[x]; }
  /// Elements covering x.
  Mask upper_covers(int x) const noexcept { return upper_covers_[x]; }
  Mask lower_covers(int x) const noexcept { return lower_covers_[x]; }

  /// Cover pairs (x, y), y covers x, sorted by (x, y).
  const std::vector<std::pair<int, int>>& covers() const noexcept { return covers_; }

  Mask minimal() const noexcept;
  Mask maximal() const noexcept;

  Mask up_closure(Mask x) const noexcept;
  Mask down_closure(Mask x) const noexcept;
  bool is_upper_set(Mask s) const noexcept { return up_closure(s) == s; }

  /// Labels of the members of s, in element order.
  std::vector<std::string> labels_of(Mask s) const;
  /// "{a,c,d}" style rendering.
  std::string format_set(Mask s) const;

  /// Restriction of the order to the elements of s, relabelled in index order.
  Poset induced(Mask s) const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.labels_ == b.labels_ && a.above_ == b.above_;
  }

 private:
  void finish();

  std::vector<std::string> labels_;
  std::vector<Mask> above_;
  std::vector<Mask> below_;
  std::vector<Mask> upper_covers_;
  std::vector<Mask> lower_covers_;
  std::vector<std::pair<int, int>> covers_;
};

/// Up-closed subset of a poset, stored as an element mask.
///
/// Upper sets order by (cardinality, mask value); this is the fixed total
/// order on generators used throughout the library.
struct UpperSet {
  Mask members = 0;

  /// Throws not_an_upper_set if `members` is not up-closed in p.
  static UpperSet checked(const Poset& p, Mask members);

  int size() const noexcept { return popcount(members); }
  bool empty() const noexcept { return members == 0; }

  friend bool operator==(UpperSet, UpperSet) = default;
  friend std::strong_ordering operator<=>(UpperSet a, UpperSet b) noexcept {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    return a.members <=> b.members;
  }
};

/// Two upper sets are compatible when nested or disjoint.
constexpr bool nested_or_disjoint(Mask a, Mask b) noexcept {
  return (a & b) == 0 || contains(a, b) || contains(b, a);
}

UpperSet up_closure(const Poset& p, std::span<const std::string> labels);

/// Connected components of the comparability graph induced on s.
std::vector<Mask> comparability_components(const Poset& p, Mask s);

/// Nonempty and not a disjoint union of two nonempty upper sets.
/// Throws not_an_upper_set.
bool is_irreducible_upper_set(const Poset& p, Mask s);

/// The unique partition of an upper set into irreducible upper sets, in
/// generator order. Throws not_an_upper_set.
std::vector<UpperSet> decompose_upper_set(const Poset& p, Mask s);

/// All irreducible upper sets in generator order.
std::vector<UpperSet> enumerate_irreducible_upper_sets(const Poset& p);

/// Calls fn(mask) for every upper set of p (the empty set included).
/// Binary include/exclude branching: each upper set is produced once.
template <typename Fn>
void for_each_upper_set(const Poset& p, Fn&& fn) {
  struct Frame {
    Mask in, out;
  };
  const Mask all = p.all();
  std::vector<Frame> stack{{0, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    Mask undecided = all & ~(f.in | f.out);
    if (!undecided) {
      fn(f.in);
      continue;
    }
    int x = lowest(undecided);
    stack.push_back({f.in, f.out | p.down(x)});
    stack.push_back({f.in | p.up(x), f.out});
  }
}

}  // namespace posmon
