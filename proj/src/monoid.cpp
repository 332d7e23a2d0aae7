#include "posmon/monoid.hpp"

#include <algorithm>

namespace posmon {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::arithmetic_overflow, "64-bit sum overflows");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::arithmetic_overflow, "64-bit product overflows");
  return r;
}

void require_same(const Poset& a, const Poset& b) {
  if (&a != &b && !(a == b)) throw Error(Errc::poset_mismatch, "operands live on different posets");
}

}  // namespace

MonotoneFunction::MonotoneFunction(const Poset& p)
    : poset_(&p), values_(static_cast<std::size_t>(p.size()), 0) {}

bool is_monotone(const Poset& p, std::span<const MonotoneFunction::value_type> values) {
  if (values.size() != static_cast<std::size_t>(p.size())) return false;
  for (auto [x, y] : p.covers())
    if (values[x] > values[y]) return false;
  return true;
}

MonotoneFunction MonotoneFunction::make(const Poset& p, std::vector<value_type> values) {
  if (values.size() != static_cast<std::size_t>(p.size()))
    throw Error(Errc::size_mismatch, "expected " + std::to_string(p.size()) + " values, got " +
                                         std::to_string(values.size()));
  for (auto [x, y] : p.covers())
    if (values[x] > values[y])
      throw Error(Errc::not_monotone, "value at " + p.label(x) + " exceeds value at " + p.label(y));
  return MonotoneFunction(p, std::move(values));
}

MonotoneFunction MonotoneFunction::indicator(const Poset& p, UpperSet u) {
  UpperSet::checked(p, u.members);
  std::vector<value_type> v(static_cast<std::size_t>(p.size()), 0);
  for_each_bit(u.members, [&](int x) { v[x] = 1; });
  return MonotoneFunction(p, std::move(v));
}

Mask MonotoneFunction::support() const noexcept {
  Mask m = 0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i]) m |= bit(static_cast<int>(i));
  return m;
}

MonotoneFunction::value_type MonotoneFunction::degree() const {
  value_type d = 0;
  for (auto v : values_) d = checked_add(d, v);
  return d;
}

MonotoneFunction add(const MonotoneFunction& f, const MonotoneFunction& g) {
  require_same(f.poset(), g.poset());
  std::vector<MonotoneFunction::value_type> v(f.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = checked_add(f.values()[i], g.values()[i]);
  return MonotoneFunction::make(f.poset(), std::move(v));
}

std::optional<MonotoneFunction> subtract(const MonotoneFunction& g, const MonotoneFunction& f) {
  require_same(f.poset(), g.poset());
  std::vector<MonotoneFunction::value_type> v(g.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (g.values()[i] < f.values()[i]) return std::nullopt;
    v[i] = g.values()[i] - f.values()[i];
  }
  if (!is_monotone(g.poset(), v)) return std::nullopt;
  return MonotoneFunction::make(g.poset(), std::move(v));
}

FormalExpr::FormalExpr(const Poset& p, Terms terms) : poset_(&p) {
  for (auto [u, a] : terms) add(u, a);
}

std::uint64_t FormalExpr::coefficient(UpperSet u) const {
  auto it = terms_.find(u);
  return it == terms_.end() ? 0 : it->second;
}

std::uint64_t FormalExpr::degree() const {
  std::uint64_t d = 0;
  for (auto [u, a] : terms_) d = checked_add(d, checked_mul(a, static_cast<std::uint64_t>(u.size())));
  return d;
}

bool FormalExpr::is_near_chain() const {
  for (auto i = terms_.begin(); i != terms_.end(); ++i)
    for (auto j = std::next(i); j != terms_.end(); ++j)
      if (!nested_or_disjoint(i->first.members, j->first.members)) return false;
  return true;
}

void FormalExpr::add(UpperSet u, std::uint64_t count) {
  if (count == 0) throw Error(Errc::invalid_input, "coefficients must be positive");
  if (!is_irreducible_upper_set(*poset_, u.members))
    throw Error(Errc::not_irreducible, poset_->format_set(u.members) + " is not irreducible");
  auto& slot = terms_[u];
  slot = checked_add(slot, count);
}

void FormalExpr::remove_one(UpperSet u) {
  auto it = terms_.find(u);
  if (it == terms_.end())
    throw Error(Errc::not_applicable, poset_->format_set(u.members) + " does not occur");
  if (--it->second == 0) terms_.erase(it);
}

NearChainExpr::NearChainExpr(FormalExpr e) : expr_(std::move(e)) {
  if (!expr_.is_near_chain()) throw Error(Errc::invalid_input, "support is not a near-chain");
}

NearChainExpr near_chain_decompose(const MonotoneFunction& f) {
  // Peel off the support one layer at a time: chi_supp(f) is the sum of the
  // indicators of its components, and f - chi_supp(f) is again monotone.
  const Poset& p = f.poset();
  std::vector<MonotoneFunction::value_type> rest(f.values().begin(), f.values().end());
  FormalExpr out(p);
  for (;;) {
    Mask supp = 0;
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (rest[i]) supp |= bit(static_cast<int>(i));
    if (!supp) break;
    // Subtract the minimum positive value at once: the support stays fixed
    // until some coordinate reaches zero.
    MonotoneFunction::value_type step = ~MonotoneFunction::value_type{0};
    for_each_bit(supp, [&](int x) { step = std::min(step, rest[x]); });
    for (Mask comp : comparability_components(p, supp)) out.add(UpperSet{comp}, step);
    for_each_bit(supp, [&](int x) { rest[x] -= step; });
  }
  return NearChainExpr(std::move(out));
}

MonotoneFunction evaluate(const FormalExpr& e) {
  const Poset& p = e.poset();
  std::vector<MonotoneFunction::value_type> v(static_cast<std::size_t>(p.size()), 0);
  for (auto [u, a] : e.terms()) for_each_bit(u.members, [&](int x) { v[x] = checked_add(v[x], a); });
  return MonotoneFunction::make(p, std::move(v));
}

std::vector<std::pair<UpperSet, UpperSet>> violating_pairs(const FormalExpr& e) {
  std::vector<std::pair<UpperSet, UpperSet>> out;
  const auto& t = e.terms();
  for (auto i = t.begin(); i != t.end(); ++i)
    for (auto j = std::next(i); j != t.end(); ++j)
      if (!nested_or_disjoint(i->first.members, j->first.members)) out.emplace_back(i->first, j->first);
  return out;
}

FormalExpr rewrite_step(const FormalExpr& e, UpperSet i, UpperSet j) {
  const Poset& p = e.poset();
  if (e.coefficient(i) == 0 || e.coefficient(j) == 0)
    throw Error(Errc::not_applicable, "pair does not occur in the expression");
  if (i == j || nested_or_disjoint(i.members, j.members))
    throw Error(Errc::not_applicable, p.format_set(i.members) + " and " + p.format_set(j.members) +
                                          " form a near-chain");
  FormalExpr out = e;
  out.remove_one(i);
  out.remove_one(j);
  for (UpperSet u : decompose_upper_set(p, i.members & j.members)) out.add(u);
  for (UpperSet v : decompose_upper_set(p, i.members | j.members)) out.add(v);
  return out;
}

NearChainExpr normal_form(const FormalExpr& e) {
  return normal_form(e, [](std::span<const std::pair<UpperSet, UpperSet>>) { return std::size_t{0}; });
}

NearChainExpr normal_form(const FormalExpr& e, const PairChooser& choose) {
  FormalExpr cur = e;
  for (;;) {
    auto pairs = violating_pairs(cur);
    if (pairs.empty()) return NearChainExpr(std::move(cur));
    auto [i, j] = pairs.at(choose(pairs));
    cur = rewrite_step(cur, i, j);
  }
}

std::strong_ordering compare_expr(const FormalExpr& a, const FormalExpr& b) {
  require_same(a.poset(), b.poset());
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea || ib != eb) {
    // Walk both supports in generator order; a missing key has coefficient 0.
    UpperSet key;
    if (ib == eb || (ia != ea && ia->first < ib->first)) key = ia->first;
    else key = ib->first;
    std::uint64_t ca = (ia != ea && ia->first == key) ? ia->second : 0;
    std::uint64_t cb = (ib != eb && ib->first == key) ? ib->second : 0;
    if (ca != cb) return cb <=> ca;
    if (ia != ea && ia->first == key) ++ia;
    if (ib != eb && ib->first == key) ++ib;
  }
  return std::strong_ordering::equal;
}

std::vector<Relation> presentation(const Poset& p) {
  std::vector<Relation> out;
  for (const auto& b : groebner_basis(p).binomials) {
    FormalExpr lhs(p);
    lhs.add(b.i);
    lhs.add(b.j);
    FormalExpr rhs(p);
    for (UpperSet u : b.rhs) rhs.add(u);
    out.push_back({std::move(lhs), std::move(rhs)});
  }
  return out;
}

GroebnerBasis groebner_basis(const Poset& p) {
  GroebnerBasis gb;
  gb.generators = enumerate_irreducible_upper_sets(p);
  const auto& g = gb.generators;
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = a + 1; b < g.size(); ++b) {
      if (nested_or_disjoint(g[a].members, g[b].members)) continue;
      BinomialRelation rel{g[a], g[b], decompose_upper_set(p, g[a].members & g[b].members)};
      for (UpperSet v : decompose_upper_set(p, g[a].members | g[b].members)) rel.rhs.push_back(v);
      std::sort(rel.rhs.begin(), rel.rhs.end());
      gb.binomials.push_back(std::move(rel));
    }
  }
  return gb;
}

namespace {

// Bron-Kerbosch with pivoting over the compatibility graph.
void maximal_cliques(const std::vector<std::vector<bool>>& adj, std::vector<int>& r, std::vector<int> cand,
                     std::vector<int> excl, std::vector<std::vector<int>>& out) {
  if (cand.empty() && excl.empty()) {
    out.push_back(r);
    return;
  }
  int pivot = !cand.empty() ? cand.front() : excl.front();
  std::size_t best = 0;
  for (const auto* set : {&cand, &excl}) {
    for (int u : *set) {
      std::size_t deg = 0;
      for (int v : cand) deg += adj[u][v];
      if (deg >= best) best = deg, pivot = u;
    }
  }
  std::vector<int> todo;
  for (int v : cand)
    if (!adj[pivot][v]) todo.push_back(v);
  for (int v : todo) {
    std::vector<int> c2, x2;
    for (int u : cand)
      if (adj[v][u]) c2.push_back(u);
    for (int u : excl)
      if (adj[v][u]) x2.push_back(u);
    r.push_back(v);
    maximal_cliques(adj, r, std::move(c2), std::move(x2), out);
    r.pop_back();
    std::erase(cand, v);
    excl.push_back(v);
  }
}

}  // namespace

std::vector<std::vector<UpperSet>> maximal_near_chains(const Poset& p) {
  auto irr = enumerate_irreducible_upper_sets(p);
  const std::size_t n = irr.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      adj[a][b] = a != b && nested_or_disjoint(irr[a].members, irr[b].members);
  std::vector<int> all(n);
  for (std::size_t a = 0; a < n; ++a) all[a] = static_cast<int>(a);
  std::vector<std::vector<int>> cliques;
  std::vector<int> r;
  if (n) maximal_cliques(adj, r, all, {}, cliques);
  std::vector<std::vector<UpperSet>> out;
  for (auto& c : cliques) {
    std::sort(c.begin(), c.end());
    std::vector<UpperSet> fam;
    for (int k : c) fam.push_back(irr[static_cast<std::size_t>(k)]);
    out.push_back(std::move(fam));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace posmon
