#include "posmon/poset.hpp"

#include <algorithm>
#include <unordered_map>

namespace posmon {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::cycle_detected: return "CycleDetected";
    case Errc::duplicate_label: return "DuplicateLabel";
    case Errc::unknown_label: return "UnknownLabel";
    case Errc::too_large: return "TooLarge";
    case Errc::not_an_upper_set: return "NotAnUpperSet";
    case Errc::not_irreducible: return "NotIrreducible";
    case Errc::not_monotone: return "NotMonotone";
    case Errc::poset_mismatch: return "PosetMismatch";
    case Errc::arithmetic_overflow: return "ArithmeticOverflow";
    case Errc::not_applicable: return "NotApplicable";
    case Errc::search_bound_exceeded: return "SearchBoundExceeded";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::unknown_element: return "UnknownElement";
    case Errc::not_prime: return "NotPrime";
    case Errc::duplicate_prime: return "DuplicatePrime";
    case Errc::size_mismatch: return "SizeMismatch";
    case Errc::ground_set_too_large: return "GroundSetTooLarge";
    case Errc::invalid_input: return "InvalidInput";
    case Errc::timeout: return "Timeout";
  }
  return "Unknown";
}

Poset Poset::from_relations(std::vector<std::string> labels,
                            std::span<const std::pair<std::string, std::string>> pairs) {
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!index.emplace(labels[i], static_cast<int>(i)).second)
      throw Error(Errc::duplicate_label, "label '" + labels[i] + "' appears twice");
  }
  std::vector<std::pair<int, int>> idx;
  idx.reserve(pairs.size());
  for (const auto& [x, y] : pairs) {
    auto ix = index.find(x);
    if (ix == index.end()) throw Error(Errc::unknown_label, "unknown label '" + x + "'");
    auto iy = index.find(y);
    if (iy == index.end()) throw Error(Errc::unknown_label, "unknown label '" + y + "'");
    idx.emplace_back(ix->second, iy->second);
  }
  return from_index_relations(std::move(labels), idx);
}

Poset Poset::from_index_relations(std::vector<std::string> labels,
                                  std::span<const std::pair<int, int>> pairs) {
  if (labels.size() > static_cast<std::size_t>(max_poset_size))
    throw Error(Errc::too_large, std::to_string(labels.size()) + " elements, at most 64 supported");
  {
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end())
      throw Error(Errc::duplicate_label, "label '" + *it + "' appears twice");
  }
  Poset p;
  p.labels_ = std::move(labels);
  const int n = p.size();
  p.above_.assign(static_cast<std::size_t>(n), 0);
  for (auto [x, y] : pairs) {
    if (x < 0 || y < 0 || x >= n || y >= n)
      throw Error(Errc::unknown_label, "relation index out of range");
    if (x == y) throw Error(Errc::cycle_detected, "relation " + p.labels_[x] + " < " + p.labels_[x]);
    p.above_[x] |= bit(y);
  }
  // Warshall closure over bit rows.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if ((p.above_[i] >> k) & 1) p.above_[i] |= p.above_[k];
  for (int i = 0; i < n; ++i)
    if ((p.above_[i] >> i) & 1)
      throw Error(Errc::cycle_detected, "relations force " + p.labels_[i] + " < " + p.labels_[i]);
  p.finish();
  return p;
}

void Poset::finish() {
  const int n = size();
  below_.assign(static_cast<std::size_t>(n), 0);
  for (int x = 0; x < n; ++x) for_each_bit(above_[x], [&](int y) { below_[y] |= bit(x); });
  upper_covers_.assign(static_cast<std::size_t>(n), 0);
  lower_covers_.assign(static_cast<std::size_t>(n), 0);
  covers_.clear();
  for (int x = 0; x < n; ++x) {
    Mask indirect = 0;
    for_each_bit(above_[x], [&](int z) { indirect |= above_[z]; });
    upper_covers_[x] = above_[x] & ~indirect;
    for_each_bit(upper_covers_[x], [&](int y) {
      lower_covers_[y] |= bit(x);
      covers_.emplace_back(x, y);
    });
  }
}

int Poset::index_of(std::string_view label) const {
  for (int i = 0; i < size(); ++i)
    if (labels_[i] == label) return i;
  throw Error(Errc::unknown_label, "unknown label '" + std::string(label) + "'");
}

Mask Poset::mask_of(std::span<const std::string> labels) const {
  Mask m = 0;
  for (const auto& l : labels) m |= bit(index_of(l));
  return m;
}

Mask Poset::minimal() const noexcept {
  Mask m = 0;
  for (int x = 0; x < size(); ++x)
    if (!below_[x]) m |= bit(x);
  return m;
}

Mask Poset::maximal() const noexcept {
  Mask m = 0;
  for (int x = 0; x < size(); ++x)
    if (!above_[x]) m |= bit(x);
  return m;
}

Mask Poset::up_closure(Mask x) const noexcept {
  Mask r = x;
  for_each_bit(x, [&](int i) { r |= above_[i]; });
  return r;
}

Mask Poset::down_closure(Mask x) const noexcept {
  Mask r = x;
  for_each_bit(x, [&](int i) { r |= below_[i]; });
  return r;
}

std::vector<std::string> Poset::labels_of(Mask s) const {
  std::vector<std::string> out;
  for_each_bit(s, [&](int i) { out.push_back(labels_[i]); });
  return out;
}

std::string Poset::format_set(Mask s) const {
  std::string out = "{";
  bool first = true;
  for_each_bit(s, [&](int i) {
    if (!first) out += ',';
    out += labels_[i];
    first = false;
  });
  out += '}';
  return out;
}

Poset Poset::induced(Mask s) const {
  std::vector<int> old;
  for_each_bit(s, [&](int i) { old.push_back(i); });
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> rel;
  for (std::size_t i = 0; i < old.size(); ++i) {
    labels.push_back(labels_[old[i]]);
    for (std::size_t j = 0; j < old.size(); ++j)
      if (less(old[i], old[j])) rel.emplace_back(static_cast<int>(i), static_cast<int>(j));
  }
  return from_index_relations(std::move(labels), rel);
}

UpperSet UpperSet::checked(const Poset& p, Mask members) {
  if (members & ~p.all()) throw Error(Errc::not_an_upper_set, "members outside the poset");
  if (!p.is_upper_set(members))
    throw Error(Errc::not_an_upper_set, p.format_set(members) + " is not up-closed");
  return UpperSet{members};
}

UpperSet up_closure(const Poset& p, std::span<const std::string> labels) {
  return UpperSet{p.up_closure(p.mask_of(labels))};
}

std::vector<Mask> comparability_components(const Poset& p, Mask s) {
  std::vector<Mask> out;
  Mask rest = s;
  while (rest) {
    Mask comp = bit(lowest(rest));
    Mask frontier = comp;
    while (frontier) {
      Mask next = 0;
      for_each_bit(frontier, [&](int x) { next |= p.comparable_to(x); });
      next &= s & ~comp;
      comp |= next;
      frontier = next;
    }
    out.push_back(comp);
    rest &= ~comp;
  }
  return out;
}

bool is_irreducible_upper_set(const Poset& p, Mask s) {
  UpperSet::checked(p, s);
  if (!s) return false;
  return comparability_components(p, s).size() == 1;
}

std::vector<UpperSet> decompose_upper_set(const Poset& p, Mask s) {
  UpperSet::checked(p, s);
  std::vector<UpperSet> parts;
  for (Mask c : comparability_components(p, s)) parts.push_back(UpperSet{c});
  std::sort(parts.begin(), parts.end());
  return parts;
}

std::vector<UpperSet> enumerate_irreducible_upper_sets(const Poset& p) {
  std::vector<UpperSet> out;
  for_each_upper_set(p, [&](Mask u) {
    if (u && comparability_components(p, u).size() == 1) out.push_back(UpperSet{u});
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace posmon
