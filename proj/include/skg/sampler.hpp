#ifndef SKG_SAMPLER_HPP_
#define SKG_SAMPLER_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "skg/combinatorics.hpp"
#include "skg/edge.hpp"
#include "skg/genmatrix.hpp"
#include "skg/rng.hpp"

namespace skg {

// One class of equiprobable cells of P^{(x)t}. The cell symbol s = i*k + j
// stands for the digit pair (i, j); m[s] says how many of the t positions
// carry that pair. Every cell in the class has probability exp(log_q).
struct CellGroup {
  std::vector<int> m;
  double log_q = 0.0;         // -inf when the class has probability zero
  UInt128 size = 0;           // t! / prod m_s!
  std::uint64_t index = 0;    // lexicographic position among all compositions
};

inline constexpr std::uint64_t kMaxGroups = 100'000'000;

// Compositions of t into k^2 parts in lexicographic order. Probability-zero
// classes are skipped but still counted in `skipped_cells`.
class GroupEnumerator {
 public:
  GroupEnumerator(const GeneratorMatrix& p, int t, std::uint64_t max_groups = kMaxGroups);

  std::optional<CellGroup> Next();

  std::uint64_t total_groups() const noexcept { return total_; }
  UInt128 skipped_cells() const noexcept { return skipped_cells_; }
  std::uint64_t skipped_groups() const noexcept { return skipped_groups_; }

 private:
  std::vector<double> log_p_;
  int t_;
  std::vector<int> counts_;
  std::uint64_t total_;
  std::uint64_t next_index_ = 0;
  bool done_ = false;
  UInt128 skipped_cells_ = 0;
  std::uint64_t skipped_groups_ = 0;
};

// t!/prod m! for a class of t positions. Throws OverflowError past 128 bits.
UInt128 GroupSize(std::span<const int> m, int t);
BigInt GroupSizeBig(std::span<const int> m, int t);

// The r-th arrangement of the multiset m, in lexicographic order of the cell
// symbols (0,0) < (0,1) < ... < (k-1,k-1). Position i of the arrangement gives
// digit i of u and v.
std::pair<VertexWord, VertexWord> UnrankCell(std::span<const int> m, int k, UInt128 r);
UInt128 RankCell(std::span<const int> m, const VertexWord& u, const VertexWord& v);
// Same as UnrankCell but straight to vertex ids.
Edge UnrankCellIds(std::span<const int> m, int k, int t, UInt128 r);

using EdgeSink = std::function<void(std::uint64_t u, std::uint64_t v)>;

// How a group's counts compare with those of its transpose group (symbol (a,b)
// swapped for (b,a)), lexicographically in symbol order.
enum class TransposeOrder { kOwner, kPartner, kSymmetric };
TransposeOrder CompareWithTranspose(std::span<const int> m, int k);

// One Bernoulli(q) draw per unordered pair {u,v}, u != v, whose cell lies in
// this group or its transpose. An owner group draws all its cells and emits
// them as (min, max); a partner emits nothing; a symmetric group keeps its
// u < v cells. Summed over all groups every pair is drawn exactly once.
void SampleGroup(const CellGroup& g, int k, int t, CounterStream& stream, const EdgeSink& emit);

enum class SamplerId { kNaive, kGrasshop };

struct SampledGraph {
  int k = 0;
  int t = 0;
  std::uint64_t n = 0;
  std::vector<Edge> edges;  // sorted, u < v, no duplicates
  std::uint64_t seed = 0;
  SamplerId sampler = SamplerId::kGrasshop;
};

inline constexpr std::uint64_t kNaiveMaxN = std::uint64_t{1} << 13;
inline constexpr std::uint64_t kSamplerMaxN = std::uint64_t{1} << 40;

// One Bernoulli draw per unordered pair; quadratic, for small graphs only.
SampledGraph SampleNaive(const GeneratorMatrix& p, int t, std::uint64_t seed);

// Exact sampler: group-and-skip over equiprobability classes. Output is a pure
// function of (p, t, seed), independent of the worker count.
SampledGraph Sample(const GeneratorMatrix& p, int t, std::uint64_t seed, int workers = 1,
                    std::uint64_t max_groups = kMaxGroups);

// Streams the same edge set as Sample() without materializing it. Edges come
// in group order, not sorted.
void ForEachSampledEdge(const GeneratorMatrix& p, int t, std::uint64_t seed, const EdgeSink& emit,
                        std::uint64_t max_groups = kMaxGroups);

// (S^t - d^t)/2 with S the sum of all entries and d the trace.
double ExpectedEdgeCount(const GeneratorMatrix& p, int t);

}  // namespace skg

#endif  // SKG_SAMPLER_HPP_
