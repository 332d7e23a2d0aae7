#include "posmon/counting.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace posmon {

namespace {

using Clock = std::chrono::steady_clock;

struct Node {
  Mask candidates;
  Mask forbidden;
  Mask allowed;
};

class AntichainEngine {
 public:
  explicit AntichainEngine(const Poset& p) {
    for (int v = 0; v < p.size(); ++v) {
      incomparable_[v] = p.all() & ~p.comparable_to(v) & ~bit(v);
      Mask nb = 0;
      for_each_bit(incomparable_[v], [&](int u) {
        if (p.up(u) & p.up(v)) nb |= bit(u);
      });
      overlap_[v] = nb;
    }
    all_ = p.all();
  }

  // Children of the empty root: one single-element antichain per vertex.
  std::vector<Node> roots() const {
    std::vector<Node> out;
    Mask forbidden = 0;
    for_each_bit(all_, [&](int v) {
      out.push_back({overlap_[v] & ~forbidden, forbidden, incomparable_[v]});
      forbidden |= bit(v);
    });
    return out;
  }

  std::vector<Node> children(const Node& n) const {
    std::vector<Node> out;
    Mask c = n.candidates, f = n.forbidden;
    while (c) {
      const int v = lowest(c);
      c &= c - 1;
      const Mask allowed = n.allowed & incomparable_[v];
      out.push_back({(c | overlap_[v]) & allowed & ~f, f, allowed});
      f |= bit(v);
    }
    return out;
  }

  // Number of connected antichains in the subtree of n (n included).
  std::uint64_t count(Mask candidates, Mask forbidden, Mask allowed) {
    std::uint64_t total = 1;
    while (candidates) {
      const int v = lowest(candidates);
      candidates &= candidates - 1;
      const Mask allowed2 = allowed & incomparable_[v];
      const Mask next = (candidates | overlap_[v]) & allowed2 & ~forbidden;
      if (next) {
        total += count(next, forbidden, allowed2);
      } else {
        ++total;
      }
      forbidden |= bit(v);
      if ((++ticks_ & 0xfffff) == 0 && poll_stop()) return total;
    }
    return total;
  }

  void set_deadline(std::optional<Clock::time_point> deadline, std::atomic<bool>* stop) {
    deadline_ = deadline;
    stop_ = stop;
  }

 private:
  bool poll_stop() {
    if (stop_->load(std::memory_order_relaxed)) return true;
    if (deadline_ && Clock::now() > *deadline_) {
      stop_->store(true);
      return true;
    }
    return false;
  }

  std::array<Mask, 64> incomparable_{};
  std::array<Mask, 64> overlap_{};
  Mask all_ = 0;
  std::uint64_t ticks_ = 0;
  std::optional<Clock::time_point> deadline_;
  std::atomic<bool>* stop_ = nullptr;
};

}  // namespace

std::uint64_t count_irreducibles_by_enumeration(const Poset& p) {
  std::uint64_t n = 0;
  for_each_upper_set(p, [&](Mask u) {
    if (u && comparability_components(p, u).size() == 1) ++n;
  });
  return n;
}

CountResult count_irreducibles(const Poset& p, const CountOptions& opts, std::string descriptor) {
  const auto start = Clock::now();
  std::optional<Clock::time_point> deadline;
  if (opts.budget) deadline = start + *opts.budget;
  const unsigned threads = std::max(1u, opts.threads);

  AntichainEngine proto(p);
  // Expand the top of the tree until there are enough independent subtrees;
  // every expanded node is itself one connected antichain.
  std::uint64_t expanded = 0;
  std::vector<Node> tasks = proto.roots();
  const std::size_t want = threads > 1 ? 64 * static_cast<std::size_t>(threads) : 0;
  for (int depth = 0; depth < 4 && tasks.size() < want; ++depth) {
    std::vector<Node> next;
    for (const Node& n : tasks) {
      ++expanded;
      auto kids = proto.children(n);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    tasks = std::move(next);
  }

  std::atomic<bool> stop{false};
  std::atomic<std::size_t> next_task{0};
  std::vector<std::uint64_t> partial(threads, 0);
  auto worker = [&](unsigned id) {
    AntichainEngine engine = proto;
    engine.set_deadline(deadline, &stop);
    for (;;) {
      if (stop.load(std::memory_order_relaxed)) return;
      const std::size_t t = next_task.fetch_add(1);
      if (t >= tasks.size()) return;
      const Node& n = tasks[t];
      partial[id] += engine.count(n.candidates, n.forbidden, n.allowed);
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, i);
  }

  CountResult r;
  r.descriptor = std::move(descriptor);
  r.method = std::string(engine_method);
  r.timed_out = stop.load();
  r.count = expanded;
  for (auto c : partial) r.count += c;
  if (!r.timed_out && opts.cross_check && p.size() <= 12) {
    const auto check = count_irreducibles_by_enumeration(p);
    if (check != r.count)
      throw std::logic_error("counting engines disagree: " + std::to_string(r.count) + " vs " + std::to_string(check));
  }
  r.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  return r;
}

std::string uniform_descriptor(int k, int n) { return "U(" + std::to_string(k) + "," + std::to_string(n) + ")"; }

CountResult count_uniform(int k, int n, const CountOptions& opts) {
  const Poset p = slice_poset(uniform(k, n));
  return count_irreducibles(p, opts, uniform_descriptor(k, n));
}

CountResult dedekind_column(int n, const CountOptions& opts) { return count_uniform(0, n, opts); }

ResultCache::ResultCache(std::filesystem::path dir) : file_(std::move(dir) / "counts.json") {}

std::filesystem::path ResultCache::default_dir() {
  if (const char* env = std::getenv("POSMON_CACHE"); env && *env) return env;
  return ".posmon-cache";
}

namespace {

nlohmann::json read_cache(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return nlohmann::json::object();
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return nlohmann::json::object();
  return j;
}

std::string cache_key(const std::string& descriptor) { return descriptor + "|" + std::string(engine_version); }

}  // namespace

std::optional<CountResult> ResultCache::lookup(const std::string& descriptor) const {
  const auto j = read_cache(file_);
  auto it = j.find(cache_key(descriptor));
  if (it == j.end()) return std::nullopt;
  try {
    CountResult r;
    r.descriptor = descriptor;
    r.count = std::stoull(it->at("count").get<std::string>());
    r.elapsed = std::chrono::milliseconds(it->at("millis").get<std::int64_t>());
    r.method = it->at("method").get<std::string>();
    return r;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void ResultCache::store(const CountResult& r) {
  if (r.timed_out) return;
  std::filesystem::create_directories(file_.parent_path());
  auto j = read_cache(file_);
  j[cache_key(r.descriptor)] = {
      {"count", std::to_string(r.count)}, {"millis", r.elapsed.count()}, {"method", r.method}};
  const auto tmp = file_.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, file_);
}

CountResult count_uniform_cached(int k, int n, const CountOptions& opts, ResultCache* cache) {
  if (cache)
    if (auto hit = cache->lookup(uniform_descriptor(k, n))) return *hit;
  auto r = count_uniform(k, n, opts);
  if (cache && !r.timed_out) cache->store(r);
  return r;
}

std::vector<Table1Entry> table1(int max_n, const Table1Options& opts) {
  if (max_n < 1 || max_n > max_ground_set) throw Error(Errc::out_of_range, "max_n must be in [1, 6]");
  std::vector<Table1Entry> out;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<Table1Entry> row(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n / 2; ++k) {
      auto& e = row[static_cast<std::size_t>(k)];
      e.n = n;
      e.k = k;
      if (n == 6 && k >= 2 && !opts.include_stretch) {
        e.skipped = true;
        continue;
      }
      e.result = count_uniform_cached(k, n, opts.count, opts.cache);
    }
    for (int k = n / 2 + 1; k <= n; ++k) {
      auto& e = row[static_cast<std::size_t>(k)];
      const auto& mirror = row[static_cast<std::size_t>(n - k)];
      e.n = n;
      e.k = k;
      e.by_duality = true;
      e.skipped = mirror.skipped;
      if (mirror.result) {
        e.result = mirror.result;
        e.result->descriptor = uniform_descriptor(k, n);
      }
    }
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

std::vector<Matroid> all_matroids(int n) {
  if (n < 0 || n > 3) throw Error(Errc::out_of_range, "rank-table sweep supports n <= 3");
  const std::size_t size = std::size_t{1} << n;
  std::vector<Matroid> out;
  std::vector<int> ranks(size, 0);
  // Odometer over rk(A) in [0, |A|] with rk(empty) = 0.
  for (;;) {
    Matroid m{n, ranks};
    if (validate_matroid(m).empty()) out.push_back(m);
    std::size_t a = 1;
    while (a < size) {
      if (ranks[a] < popcount(a)) {
        ++ranks[a];
        break;
      }
      ranks[a] = 0;
      ++a;
    }
    if (a >= size) break;
  }
  return out;
}

SweepReport conjecture_sweep(int n) {
  SweepReport rep;
  rep.n = n;
  for (const Matroid& m : all_matroids(n)) {
    SweepRow row;
    row.matroid = m;
    row.rank = m.rank();
    row.is_uniform = m == uniform(row.rank, n);
    row.count = count_irreducibles(slice_poset(m)).count;
    rep.rows.push_back(std::move(row));
  }
  for (int r = 0; r <= n; ++r) {
    SweepReport::PerRank pr;
    pr.rank = r;
    for (const auto& row : rep.rows) {
      if (row.rank != r) continue;
      pr.max_count = std::max(pr.max_count, row.count);
      if (row.is_uniform) pr.uniform_count = row.count;
    }
    pr.uniform_attains_max = pr.uniform_count == pr.max_count;
    rep.per_rank.push_back(pr);
  }
  for (const auto& row : rep.rows) {
    rep.max_overall = std::max(rep.max_overall, row.count);
    if (row.is_uniform) rep.max_uniform = std::max(rep.max_uniform, row.count);
    if (row.is_uniform && row.rank == n / 2) rep.middle_uniform = row.count;
  }
  rep.middle_uniform_is_max_uniform = rep.middle_uniform == rep.max_uniform;
  rep.middle_uniform_is_max_overall = rep.middle_uniform == rep.max_overall;
  return rep;
}

}  // namespace posmon
