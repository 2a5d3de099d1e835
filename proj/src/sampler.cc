#include "skg/sampler.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "skg/errors.hpp"

namespace skg {
namespace {

constexpr std::uint64_t kNaiveStream = ~std::uint64_t{0};
constexpr double kDenseFallbackQ = 0.99;

// u vs v prefix order so far; once u's prefix is larger no completion can
// give u < v.
enum class PrefixOrder { kLess, kEqual, kGreater };

template <class Leaf>
void EnumerateUpperCells(std::vector<int>& counts, int k, int remaining, std::uint64_t u,
                         std::uint64_t v, PrefixOrder order, Leaf& leaf) {
  if (remaining == 0) {
    if (order == PrefixOrder::kLess) leaf(u, v);
    return;
  }
  const int symbols = k * k;
  for (int s = 0; s < symbols; ++s) {
    if (counts[s] == 0) continue;
    const int du = s / k;
    const int dv = s % k;
    PrefixOrder next = order;
    if (order == PrefixOrder::kEqual) {
      next = du < dv ? PrefixOrder::kLess : (du > dv ? PrefixOrder::kGreater : PrefixOrder::kEqual);
    }
    if (next == PrefixOrder::kGreater) continue;
    --counts[s];
    EnumerateUpperCells(counts, k, remaining - 1, u * k + du, v * k + dv, next, leaf);
    ++counts[s];
  }
}

// N * c / len, exact whenever the true value is an integer (as it is for
// multinomial block sizes), without forming N * c.
UInt128 ScaleExact(UInt128 n, int c, int len) {
  const int g = std::gcd(c, len);
  return (n / static_cast<UInt128>(len / g)) * static_cast<UInt128>(c / g);
}

void CheckSampleShape(const GeneratorMatrix& p, int t) {
  if (t < 0) throw DomainError("order t must be nonnegative");
  const std::uint64_t n = VertexCount(p.k(), t);
  if (n > kSamplerMaxN) {
    throw GuardError("k^t = " + std::to_string(n) + " exceeds the sampler vertex limit");
  }
}

}  // namespace

UInt128 GroupSize(std::span<const int> m, int t) {
  const int total = std::accumulate(m.begin(), m.end(), 0);
  if (total != t) throw DomainError("group counts must sum to t");
  return Multinomial(m);
}

BigInt GroupSizeBig(std::span<const int> m, int t) {
  const int total = std::accumulate(m.begin(), m.end(), 0);
  if (total != t) throw DomainError("group counts must sum to t");
  return MultinomialBig(m);
}

GroupEnumerator::GroupEnumerator(const GeneratorMatrix& p, int t, std::uint64_t max_groups)
    : t_(t) {
  CheckSampleShape(p, t);
  const int k = p.k();
  log_p_.resize(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      log_p_[i * k + j] = p(i, j) > 0.0 ? std::log(p(i, j)) : -std::numeric_limits<double>::infinity();
    }
  }
  total_ = CompositionCount(t, k * k);
  if (total_ > max_groups) {
    throw GuardError("P^(x)t has " + std::to_string(total_) + " cell groups, above the limit of " +
                     std::to_string(max_groups));
  }
  counts_ = FirstComposition(t, k * k);
}

std::optional<CellGroup> GroupEnumerator::Next() {
  while (!done_) {
    CellGroup g;
    g.index = next_index_++;
    g.m = counts_;
    g.log_q = 0.0;
    for (std::size_t s = 0; s < counts_.size(); ++s) {
      if (counts_[s] > 0) g.log_q += counts_[s] * log_p_[s];
    }
    g.size = Multinomial(counts_);
    done_ = !NextComposition(counts_);
    if (std::isinf(g.log_q)) {
      skipped_cells_ += g.size;
      ++skipped_groups_;
      continue;
    }
    return g;
  }
  return std::nullopt;
}

std::pair<VertexWord, VertexWord> UnrankCell(std::span<const int> m, int k, UInt128 r) {
  const int t = std::accumulate(m.begin(), m.end(), 0);
  if (static_cast<int>(m.size()) != k * k) throw DomainError("group must have k^2 counts");
  std::vector<int> counts(m.begin(), m.end());
  UInt128 n = Multinomial(counts);
  if (r >= n) throw DomainError("rank " + ToString(r) + " out of range for group of size " + ToString(n));
  std::vector<int> du(t), dv(t);
  int len = t;
  for (int pos = 0; pos < t; ++pos) {
    for (int s = 0; s < k * k; ++s) {
      if (counts[s] == 0) continue;
      const UInt128 block = ScaleExact(n, counts[s], len);
      if (r < block) {
        du[pos] = s / k;
        dv[pos] = s % k;
        n = block;
        --counts[s];
        --len;
        break;
      }
      r -= block;
    }
  }
  return {VertexWord(k, std::move(du)), VertexWord(k, std::move(dv))};
}

namespace {

// x / d for x known to be a multiple of d: shift out the power of two, then
// multiply by the inverse of the odd part mod 2^64.
struct ExactDivisor {
  int shift = 0;
  std::uint64_t inverse = 1;
};

constexpr auto kExactDivisors = [] {
  std::array<ExactDivisor, 128> table{};
  for (std::uint64_t d = 1; d < table.size(); ++d) {
    std::uint64_t odd = d;
    int shift = 0;
    while (odd % 2 == 0) {
      odd /= 2;
      ++shift;
    }
    std::uint64_t inv = odd;  // correct to 3 bits; each step doubles that
    for (int i = 0; i < 5; ++i) inv *= 2 - odd * inv;
    table[d] = {shift, inv};
  }
  return table;
}();

inline std::uint64_t DivideExact(std::uint64_t x, int d) {
  const ExactDivisor& e = kExactDivisors[d];
  return (x >> e.shift) * e.inverse;
}

// Same walk in 64 bits. Block s spans n*c_s/len ranks, so the symbol holding r
// is the first s with r*len < n*(c_1+...+c_s); no per-block division. Needs
// n*t < 2^64.
Edge UnrankWithSize64(std::span<const int> m, int k, int t, std::uint64_t r, std::uint64_t n) {
  thread_local std::vector<int> counts;
  counts.assign(m.begin(), m.end());
  const int symbols = k * k;
  std::uint64_t u = 0, v = 0;
  for (int len = t; len > 0; --len) {
    const std::uint64_t target = r * static_cast<std::uint64_t>(len);
    std::uint64_t below = 0;
    for (int s = 0; s < symbols; ++s) {
      const std::uint64_t upto = below + n * static_cast<std::uint64_t>(counts[s]);
      if (counts[s] > 0 && target < upto) {
        u = u * k + static_cast<std::uint64_t>(s / k);
        v = v * k + static_cast<std::uint64_t>(s % k);
        r = DivideExact(target - below, len);
        n = DivideExact(n * static_cast<std::uint64_t>(counts[s]), len);
        --counts[s];
        break;
      }
      below = upto;
    }
  }
  return {u, v};
}

Edge UnrankWithSize(std::span<const int> m, int k, int t, UInt128 r, UInt128 size) {
  if (size < (UInt128{1} << 57) && t < 128) {
    return UnrankWithSize64(m, k, t, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(size));
  }
  thread_local std::vector<int> counts;
  counts.assign(m.begin(), m.end());
  const int symbols = k * k;
  UInt128 n = size;
  std::uint64_t u = 0, v = 0;
  int len = t;
  for (int pos = 0; pos < t; ++pos) {
    for (int s = 0; s < symbols; ++s) {
      if (counts[s] == 0) continue;
      const UInt128 block = ScaleExact(n, counts[s], len);
      if (r < block) {
        u = u * k + static_cast<std::uint64_t>(s / k);
        v = v * k + static_cast<std::uint64_t>(s % k);
        n = block;
        --counts[s];
        --len;
        break;
      }
      r -= block;
    }
  }
  return {u, v};
}

}  // namespace

Edge UnrankCellIds(std::span<const int> m, int k, int t, UInt128 r) {
  const UInt128 size = GroupSize(m, t);
  if (r >= size) throw DomainError("rank " + ToString(r) + " out of range for group of size " + ToString(size));
  return UnrankWithSize(m, k, t, r, size);
}

UInt128 RankCell(std::span<const int> m, const VertexWord& u, const VertexWord& v) {
  const int k = u.k();
  const int t = u.length();
  if (v.length() != t || v.k() != k) throw DomainError("cell words do not match");
  std::vector<int> counts(m.begin(), m.end());
  UInt128 n = Multinomial(counts);
  UInt128 rank = 0;
  int len = t;
  for (int pos = 0; pos < t; ++pos) {
    const int sym = u.digits()[pos] * k + v.digits()[pos];
    if (counts[sym] == 0) throw DomainError("cell does not belong to this group");
    for (int s = 0; s < sym; ++s) {
      if (counts[s] > 0) rank += ScaleExact(n, counts[s], len);
    }
    n = ScaleExact(n, counts[sym], len);
    --counts[sym];
    --len;
  }
  return rank;
}

TransposeOrder CompareWithTranspose(std::span<const int> m, int k) {
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      const int mine = m[a * k + b];
      const int mirrored = m[b * k + a];
      if (mine != mirrored) return mine > mirrored ? TransposeOrder::kOwner : TransposeOrder::kPartner;
    }
  }
  return TransposeOrder::kSymmetric;
}

void SampleGroup(const CellGroup& g, int k, int t, CounterStream& stream, const EdgeSink& emit) {
  if (std::isinf(g.log_q)) return;
  // Transposing every symbol maps a group's cells (u,v) onto its partner's
  // (v,u). The owner draws each of its cells once and reports it as an
  // unordered pair; the partner then has nothing left to draw.
  const TransposeOrder order = CompareWithTranspose(g.m, k);
  if (order == TransposeOrder::kPartner) return;
  const bool owner = order == TransposeOrder::kOwner;
  const PrefixOrder start = owner ? PrefixOrder::kLess : PrefixOrder::kEqual;
  auto emit_pair = [&](std::uint64_t u, std::uint64_t v) {
    if (u < v) {
      emit(u, v);
    } else if (owner) {
      emit(v, u);
    }
  };
  const double q = std::exp(g.log_q);
  if (g.log_q == 0.0) {
    std::vector<int> counts = g.m;
    EnumerateUpperCells(counts, k, t, 0, 0, start, emit_pair);
    return;
  }
  if (q > kDenseFallbackQ) {
    std::vector<int> counts = g.m;
    auto leaf = [&](std::uint64_t u, std::uint64_t v) {
      if (stream.NextOpenUnit() < q) emit_pair(u, v);
    };
    EnumerateUpperCells(counts, k, t, 0, 0, start, leaf);
    return;
  }
  // Geometric skips: the gap to the next included cell is Geometric(q).
  const double log_miss = std::log1p(-q);
  const double size = ToDouble(g.size);
  UInt128 base = 0;
  while (base < g.size) {
    const double skip = std::floor(std::log(stream.NextOpenUnit()) / log_miss);
    if (ToDouble(base) + skip >= size) break;
    const UInt128 index = base + static_cast<UInt128>(skip);
    if (index >= g.size) break;
    const Edge cell = UnrankWithSize(g.m, k, t, index, g.size);
    emit_pair(cell.u, cell.v);
    base = index + 1;
  }
}

SampledGraph SampleNaive(const GeneratorMatrix& p, int t, std::uint64_t seed) {
  CheckSampleShape(p, t);
  const int k = p.k();
  const std::uint64_t n = VertexCount(k, t);
  if (n > kNaiveMaxN) throw GuardError("naive sampler is limited to k^t <= 2^13");
  SampledGraph g{k, t, n, {}, seed, SamplerId::kNaive};
  std::vector<std::vector<int>> words(n);
  for (std::uint64_t id = 0; id < n; ++id) {
    const VertexWord w = VertexWord::FromId(id, k, t);
    words[id].assign(w.digits().begin(), w.digits().end());
  }
  CounterStream stream(seed, kNaiveStream);
  for (std::uint64_t u = 0; u < n; ++u) {
    for (std::uint64_t v = u + 1; v < n; ++v) {
      double prob = 1.0;
      for (int i = 0; i < t; ++i) prob *= p(words[u][i], words[v][i]);
      if (stream.NextOpenUnit() < prob) g.edges.push_back({u, v});
    }
  }
  return g;
}

void ForEachSampledEdge(const GeneratorMatrix& p, int t, std::uint64_t seed, const EdgeSink& emit,
                        std::uint64_t max_groups) {
  GroupEnumerator groups(p, t, max_groups);
  while (auto g = groups.Next()) {
    CounterStream stream(seed, g->index);
    SampleGroup(*g, p.k(), t, stream, emit);
  }
}

SampledGraph Sample(const GeneratorMatrix& p, int t, std::uint64_t seed, int workers,
                    std::uint64_t max_groups) {
  SampledGraph out{p.k(), t, VertexCount(p.k(), t), {}, seed, SamplerId::kGrasshop};
  GroupEnumerator enumerator(p, t, max_groups);
  std::vector<CellGroup> groups;
  while (auto g = enumerator.Next()) groups.push_back(std::move(*g));

  std::vector<std::vector<Edge>> per_group(groups.size());
  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    for (std::size_t i = cursor.fetch_add(1); i < groups.size(); i = cursor.fetch_add(1)) {
      CounterStream stream(seed, groups[i].index);
      std::vector<Edge>& sink = per_group[i];
      SampleGroup(groups[i], p.k(), t, stream,
                  [&sink](std::uint64_t u, std::uint64_t v) { sink.push_back({u, v}); });
    }
  };
  workers = std::max(1, workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::size_t total = 0;
  for (const auto& edges : per_group) total += edges.size();
  out.edges.reserve(total);
  for (auto& edges : per_group) {
    out.edges.insert(out.edges.end(), edges.begin(), edges.end());
    std::vector<Edge>().swap(edges);
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

double ExpectedEdgeCount(const GeneratorMatrix& p, int t) {
  double total = 0.0, trace = 0.0;
  for (int i = 0; i < p.k(); ++i) {
    trace += p(i, i);
    for (int j = 0; j < p.k(); ++j) total += p(i, j);
  }
  return (std::pow(total, t) - std::pow(trace, t)) / 2.0;
}

}  // namespace skg
