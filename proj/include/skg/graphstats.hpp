#ifndef SKG_GRAPHSTATS_HPP_
#define SKG_GRAPHSTATS_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "skg/edge.hpp"
#include "skg/genmatrix.hpp"
#include "skg/sampler.hpp"

namespace skg {

inline constexpr std::uint64_t kStatsMaxN = std::uint64_t{1} << 28;

struct ComponentStats {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t isolated = 0;
  std::uint64_t largest = 0;
  std::uint64_t second_largest = 0;
  std::uint64_t component_count = 0;  // singletons included
  double largest_fraction = 0.0;
};

// Union-find (union by size, path halving) fed one edge at a time, so the edge
// list never has to exist in memory.
class ComponentTracker {
 public:
  explicit ComponentTracker(std::uint64_t n);

  void AddEdge(std::uint64_t u, std::uint64_t v);
  std::uint32_t Find(std::uint32_t x);
  // Folds another tracker over the same vertex set into this one.
  void Merge(ComponentTracker& other);
  ComponentStats Finish();

 private:
  // Parent and size side by side so a union touches one cache line per
  // vertex. n <= 2^28 leaves the top bit of `size` free for "has an edge".
  struct Node {
    std::uint32_t parent;
    std::uint32_t size;
  };
  static constexpr std::uint32_t kTouched = 0x80000000u;
  static constexpr std::uint32_t kSizeMask = ~kTouched;

  void Union(std::uint32_t a, std::uint32_t b);

  std::vector<Node> nodes_;
  std::uint64_t edges_ = 0;
};

ComponentStats ComputeComponentStats(const SampledGraph& g);
ComponentStats ComputeComponentStats(std::span<const Edge> edges, std::uint64_t n);
// Splits the edges across workers, each with its own union-find, then merges.
// Equal to the sequential result.
ComponentStats ComputeComponentStatsParallel(const SampledGraph& g, int workers);

// Compressed adjacency lists.
class CsrGraph {
 public:
  static CsrGraph FromEdges(std::uint64_t n, std::span<const Edge> edges);
  // `produce` must emit the same edges every time it is called; it is called
  // twice (degree count, then fill).
  static CsrGraph FromStream(std::uint64_t n, const std::function<void(const EdgeSink&)>& produce);

  std::uint64_t n() const noexcept { return offsets_.size() - 1; }
  std::uint64_t degree(std::uint64_t v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  std::span<const std::uint32_t> neighbors(std::uint64_t v) const noexcept {
    return {adj_.data() + offsets_[v], static_cast<std::size_t>(degree(v))};
  }

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint32_t> adj_;
};

// BFS hop counts from `source`; -1 where unreachable.
std::vector<std::int32_t> BfsDistances(const CsrGraph& g, std::uint64_t source);
// Within the component of v.
std::int64_t Eccentricity(const CsrGraph& g, std::uint64_t v);

inline constexpr std::uint64_t kExactDiameterMaxN = 4096;
// Largest eccentricity over all vertices (per component). n <= 4096.
std::int64_t DiameterExact(const CsrGraph& g);

struct DiameterEstimate {
  std::int64_t lower_bound = 0;
  int sweeps = 0;
};
// Double-sweep BFS from `starts` random vertices of the largest component.
// The result is a lower bound on the diameter of that component.
DiameterEstimate DiameterLowerBound(const CsrGraph& g, std::uint64_t seed, int starts = 16);

struct NeighborSignatureStats {
  Signature mean_sig;
  double max_dev = 0.0;      // max over neighbors u of ||sigma(u) - sigma(v) M||_inf
  std::uint64_t degree = 0;
  double radius = 0.0;       // sqrt(ln(6k) / (2t))
  std::uint64_t within_radius = 0;
};

NeighborSignatureStats NeighborSignatures(const CsrGraph& g, const GeneratorMatrix& p, int t,
                                          std::uint64_t v);
NeighborSignatureStats NeighborSignatures(const SampledGraph& g, const GeneratorMatrix& p,
                                          std::uint64_t v);

struct DegreeRow {
  std::uint64_t id = 0;
  std::uint64_t degree = 0;
  double expected_with_loop = 0.0;  // exp(t <sigma, L>)
  double expected = 0.0;            // minus the diagonal cell, which is never sampled
  double ratio = 0.0;               // degree / expected
};

std::vector<DegreeRow> DegreeVsExpected(const SampledGraph& g, const GeneratorMatrix& p,
                                        std::span<const std::uint64_t> vertices);
std::vector<DegreeRow> DegreeVsExpected(const CsrGraph& g, const GeneratorMatrix& p, int t,
                                        std::span<const std::uint64_t> vertices);

}  // namespace skg

#endif  // SKG_GRAPHSTATS_HPP_
