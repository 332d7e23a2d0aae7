#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "posmon/matroid.hpp"
#include "posmon/poset.hpp"

namespace posmon {

/// Bumped whenever the engine could produce different numbers; part of the
/// cache key.
inline constexpr std::string_view engine_version = "connected-antichain-1";
inline constexpr std::string_view engine_method = "connected-antichain-dfs";

struct CountOptions {
  unsigned threads = 1;
  /// Wall-clock budget; the count is abandoned (timed_out) when exceeded.
  std::optional<std::chrono::milliseconds> budget;
  /// Recount by full upper-set enumeration when |P| <= 12.
  bool cross_check = true;
};

struct CountResult {
  std::string descriptor;
  std::uint64_t count = 0;
  std::chrono::milliseconds elapsed{0};
  std::string method;
  bool timed_out = false;
};

/// Number of irreducible (connected, nonempty) upper sets, counted without
/// materializing them.
///
/// Every such upper set is up(A) for a unique antichain A whose principal
/// up-sets overlap in a connected pattern. The engine enumerates those
/// antichains as connected induced subgraphs of the overlap graph, each
/// exactly once: a node fixes a set S, a candidate frontier C and a set F of
/// vertices excluded by earlier siblings. Subtrees are disjoint, so the
/// root-level split parallelizes with a plain sum.
CountResult count_irreducibles(const Poset& p, const CountOptions& opts = {}, std::string descriptor = "poset");

/// Independent route: enumerate every upper set and test connectivity.
std::uint64_t count_irreducibles_by_enumeration(const Poset& p);

std::string uniform_descriptor(int k, int n);
CountResult count_uniform(int k, int n, const CountOptions& opts = {});

/// Irreducible count of the slice poset of U(0, n): a Dedekind number minus one.
CountResult dedekind_column(int n, const CountOptions& opts = {});

/// Results cache: one JSON file, keys combine descriptor and engine version.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  /// POSMON_CACHE if set, else ".posmon-cache".
  static std::filesystem::path default_dir();

  std::optional<CountResult> lookup(const std::string& descriptor) const;
  void store(const CountResult& r);

  const std::filesystem::path& file() const noexcept { return file_; }

 private:
  std::filesystem::path file_;
};

/// count_uniform through an optional cache; timed-out results are not stored.
CountResult count_uniform_cached(int k, int n, const CountOptions& opts, ResultCache* cache);

struct Table1Entry {
  int n = 0;
  int k = 0;
  std::optional<CountResult> result;  ///< empty when skipped
  bool by_duality = false;            ///< copied from U(n-k, n)
  bool skipped = false;               ///< opt-in entry not requested
};

struct Table1Options {
  CountOptions count;
  /// Also compute n = 6, k in {2, 3, 4} (about 1.8e9 objects).
  bool include_stretch = false;
  ResultCache* cache = nullptr;
};

/// Entries U(k, n) for 1 <= n <= max_n and 0 <= k <= n; k > n/2 is filled
/// from U(n-k, n). Throws out_of_range for max_n > 6.
std::vector<Table1Entry> table1(int max_n, const Table1Options& opts = {});

/// Every valid rank table on n elements (brute force, n <= 3).
std::vector<Matroid> all_matroids(int n);

struct SweepRow {
  Matroid matroid;
  int rank = 0;
  bool is_uniform = false;
  std::uint64_t count = 0;
};

struct SweepReport {
  int n = 0;
  std::vector<SweepRow> rows;
  /// For each rank r = 0..n: the maximum count over matroids of rank r, the
  /// count of U(r, n), and whether U(r, n) attains the maximum.
  struct PerRank {
    int rank = 0;
    std::uint64_t max_count = 0;
    std::uint64_t uniform_count = 0;
    bool uniform_attains_max = false;
  };
  std::vector<PerRank> per_rank;
  /// Maximum over uniform matroids vs U(floor(n/2), n).
  std::uint64_t max_uniform = 0;
  std::uint64_t middle_uniform = 0;
  bool middle_uniform_is_max_uniform = false;
  /// Maximum over all matroids vs U(floor(n/2), n).
  std::uint64_t max_overall = 0;
  bool middle_uniform_is_max_overall = false;
};

/// Throws out_of_range for n > 3.
SweepReport conjecture_sweep(int n);

}  // namespace posmon
