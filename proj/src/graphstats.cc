#include "skg/graphstats.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <thread>

#include "skg/errors.hpp"
#include "skg/rng.hpp"

namespace skg {
namespace {

void CheckStatsN(std::uint64_t n) {
  if (n > kStatsMaxN) {
    throw GuardError("graph statistics are limited to n <= 2^28 (got " + std::to_string(n) + ")");
  }
}

}  // namespace

ComponentTracker::ComponentTracker(std::uint64_t n) {
  CheckStatsN(n);
  nodes_.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) nodes_[i] = {static_cast<std::uint32_t>(i), 1};
}

std::uint32_t ComponentTracker::Find(std::uint32_t x) {
  while (nodes_[x].parent != x) {
    const std::uint32_t up = nodes_[nodes_[x].parent].parent;
    nodes_[x].parent = up;
    x = up;
  }
  return x;
}

void ComponentTracker::Union(std::uint32_t a, std::uint32_t b) {
  a = Find(a);
  b = Find(b);
  if (a == b) return;
  if ((nodes_[a].size & kSizeMask) < (nodes_[b].size & kSizeMask)) std::swap(a, b);
  nodes_[b].parent = a;
  nodes_[a].size += nodes_[b].size & kSizeMask;
}

void ComponentTracker::AddEdge(std::uint64_t u, std::uint64_t v) {
  if (u >= nodes_.size() || v >= nodes_.size()) throw DomainError("edge endpoint out of range");
  ++edges_;
  nodes_[u].size |= kTouched;
  nodes_[v].size |= kTouched;
  Union(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
}

void ComponentTracker::Merge(ComponentTracker& other) {
  if (other.nodes_.size() != nodes_.size()) throw DomainError("trackers cover different vertex sets");
  for (std::uint64_t v = 0; v < nodes_.size(); ++v) {
    nodes_[v].size |= other.nodes_[v].size & kTouched;
    const std::uint32_t r = other.Find(static_cast<std::uint32_t>(v));
    if (r != v) Union(static_cast<std::uint32_t>(v), r);
  }
  edges_ += other.edges_;
}

ComponentStats ComponentTracker::Finish() {
  ComponentStats s;
  s.n = nodes_.size();
  s.m = edges_;
  for (std::uint64_t v = 0; v < nodes_.size(); ++v) {
    if (!(nodes_[v].size & kTouched)) ++s.isolated;
    if (nodes_[v].parent != v) continue;
    ++s.component_count;
    const std::uint64_t sz = nodes_[v].size & kSizeMask;
    if (sz > s.largest) {
      s.second_largest = s.largest;
      s.largest = sz;
    } else if (sz > s.second_largest) {
      s.second_largest = sz;
    }
  }
  s.largest_fraction = s.n == 0 ? 0.0 : static_cast<double>(s.largest) / static_cast<double>(s.n);
  return s;
}

ComponentStats ComputeComponentStats(std::span<const Edge> edges, std::uint64_t n) {
  ComponentTracker tracker(n);
  for (const Edge& e : edges) tracker.AddEdge(e.u, e.v);
  return tracker.Finish();
}

ComponentStats ComputeComponentStats(const SampledGraph& g) {
  return ComputeComponentStats(g.edges, g.n);
}

ComponentStats ComputeComponentStatsParallel(const SampledGraph& g, int workers) {
  workers = std::max(1, workers);
  CheckStatsN(g.n);
  std::vector<ComponentTracker> partial;
  partial.reserve(workers);
  for (int w = 0; w < workers; ++w) partial.emplace_back(g.n);
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (g.edges.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t lo = std::min(g.edges.size(), chunk * w);
        const std::size_t hi = std::min(g.edges.size(), lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) partial[w].AddEdge(g.edges[i].u, g.edges[i].v);
      });
    }
  }
  for (int w = 1; w < workers; ++w) partial[0].Merge(partial[w]);
  return partial[0].Finish();
}

CsrGraph CsrGraph::FromEdges(std::uint64_t n, std::span<const Edge> edges) {
  return FromStream(n, [&](const EdgeSink& sink) {
    for (const Edge& e : edges) sink(e.u, e.v);
  });
}

CsrGraph CsrGraph::FromStream(std::uint64_t n,
                              const std::function<void(const EdgeSink&)>& produce) {
  CheckStatsN(n);
  CsrGraph g;
  g.offsets_.assign(n + 1, 0);
  produce([&](std::uint64_t u, std::uint64_t v) {
    if (u >= n || v >= n) throw DomainError("edge endpoint out of range");
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  });
  for (std::uint64_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.adj_.resize(g.offsets_[n]);
  std::vector<std::uint64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  produce([&](std::uint64_t u, std::uint64_t v) {
    if (fill[u] >= g.offsets_[u + 1] || fill[v] >= g.offsets_[v + 1]) {
      throw DomainError("edge stream changed between passes");
    }
    g.adj_[fill[u]++] = static_cast<std::uint32_t>(v);
    g.adj_[fill[v]++] = static_cast<std::uint32_t>(u);
  });
  return g;
}

std::vector<std::int32_t> BfsDistances(const CsrGraph& g, std::uint64_t source) {
  if (source >= g.n()) throw DomainError("BFS source out of range");
  std::vector<std::int32_t> dist(g.n(), -1);
  std::vector<std::uint32_t> frontier{static_cast<std::uint32_t>(source)};
  std::vector<std::uint32_t> next;
  dist[source] = 0;
  std::int32_t level = 0;
  while (!frontier.empty()) {
    ++level;
    next.clear();
    for (std::uint32_t x : frontier) {
      for (std::uint32_t y : g.neighbors(x)) {
        if (dist[y] < 0) {
          dist[y] = level;
          next.push_back(y);
        }
      }
    }
    frontier.swap(next);
  }
  return dist;
}

std::int64_t Eccentricity(const CsrGraph& g, std::uint64_t v) {
  const auto dist = BfsDistances(g, v);
  return *std::max_element(dist.begin(), dist.end());
}

std::int64_t DiameterExact(const CsrGraph& g) {
  if (g.n() > kExactDiameterMaxN) throw GuardError("exact diameter is limited to n <= 4096");
  std::int64_t diameter = 0;
  for (std::uint64_t v = 0; v < g.n(); ++v) diameter = std::max(diameter, Eccentricity(g, v));
  return diameter;
}

DiameterEstimate DiameterLowerBound(const CsrGraph& g, std::uint64_t seed, int starts) {
  DiameterEstimate out;
  if (g.n() == 0) return out;
  // Label components to find the largest one.
  std::vector<std::uint32_t> label(g.n(), UINT32_MAX);
  std::uint32_t best_label = 0;
  std::uint64_t best_size = 0;
  std::uint32_t next_label = 0;
  std::vector<std::uint32_t> stack;
  for (std::uint64_t s = 0; s < g.n(); ++s) {
    if (label[s] != UINT32_MAX) continue;
    std::uint64_t size = 0;
    stack.push_back(static_cast<std::uint32_t>(s));
    label[s] = next_label;
    while (!stack.empty()) {
      const std::uint32_t x = stack.back();
      stack.pop_back();
      ++size;
      for (std::uint32_t y : g.neighbors(x)) {
        if (label[y] == UINT32_MAX) {
          label[y] = next_label;
          stack.push_back(y);
        }
      }
    }
    if (size > best_size) {
      best_size = size;
      best_label = next_label;
    }
    ++next_label;
  }
  std::vector<std::uint32_t> members;
  members.reserve(best_size);
  for (std::uint64_t v = 0; v < g.n(); ++v) {
    if (label[v] == best_label) members.push_back(static_cast<std::uint32_t>(v));
  }
  CounterStream stream(seed, 0);
  for (int i = 0; i < starts; ++i) {
    const std::uint32_t root = members[stream.NextU64() % members.size()];
    const auto first = BfsDistances(g, root);
    const auto far = static_cast<std::uint64_t>(std::max_element(first.begin(), first.end()) - first.begin());
    const auto second = BfsDistances(g, far);
    out.lower_bound = std::max<std::int64_t>(out.lower_bound,
                                             *std::max_element(second.begin(), second.end()));
    out.sweeps += 2;
  }
  return out;
}

NeighborSignatureStats NeighborSignatures(const CsrGraph& g, const GeneratorMatrix& p, int t,
                                          std::uint64_t v) {
  const DerivedQuantities d = Derive(p);
  if (!d.has_walk()) throw DomainError("neighbor signatures need positive column sums");
  if (g.degree(v) == 0) {
    throw DomainError("vertex " + std::to_string(v) + " is isolated; no neighbor signatures");
  }
  const int k = p.k();
  const Signature own = SignatureOf(VertexWord::FromId(v, k, t));
  const std::vector<double> target = RowTimes(own.sigma, *d.M);

  NeighborSignatureStats out;
  out.mean_sig.sigma.assign(k, 0.0);
  out.degree = g.degree(v);
  out.radius = std::sqrt(std::log(6.0 * k) / (2.0 * t));
  for (std::uint32_t u : g.neighbors(v)) {
    const Signature s = SignatureOf(VertexWord::FromId(u, k, t));
    double dev = 0.0;
    for (int i = 0; i < k; ++i) {
      out.mean_sig.sigma[i] += s.sigma[i];
      dev = std::max(dev, std::abs(s.sigma[i] - target[i]));
    }
    out.max_dev = std::max(out.max_dev, dev);
    if (dev <= out.radius) ++out.within_radius;
  }
  for (double& x : out.mean_sig.sigma) x /= static_cast<double>(out.degree);
  return out;
}

NeighborSignatureStats NeighborSignatures(const SampledGraph& g, const GeneratorMatrix& p,
                                          std::uint64_t v) {
  std::vector<Edge> incident;
  for (const Edge& e : g.edges) {
    if (e.u == v || e.v == v) incident.push_back(e);
  }
  return NeighborSignatures(CsrGraph::FromEdges(g.n, incident), p, g.t, v);
}

namespace {

std::vector<DegreeRow> DegreeRows(const std::function<std::uint64_t(std::uint64_t)>& degree_of,
                                  const GeneratorMatrix& p, int t,
                                  std::span<const std::uint64_t> vertices) {
  const DerivedQuantities d = Derive(p);
  std::vector<DegreeRow> rows;
  rows.reserve(vertices.size());
  for (std::uint64_t v : vertices) {
    const VertexWord w = VertexWord::FromId(v, p.k(), t);
    DegreeRow row;
    row.id = v;
    row.degree = degree_of(v);
    row.expected_with_loop = t == 0 ? 1.0 : ExpectedDegree(SignatureOf(w), t, d);
    row.expected = row.expected_with_loop - EdgeProbability(w, w, p);
    row.ratio = row.expected > 0.0 ? static_cast<double>(row.degree) / row.expected : std::nan("");
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<DegreeRow> DegreeVsExpected(const SampledGraph& g, const GeneratorMatrix& p,
                                        std::span<const std::uint64_t> vertices) {
  std::vector<std::uint64_t> degree(g.n, 0);
  for (const Edge& e : g.edges) {
    ++degree[e.u];
    ++degree[e.v];
  }
  return DegreeRows([&](std::uint64_t v) { return degree[v]; }, p, g.t, vertices);
}

std::vector<DegreeRow> DegreeVsExpected(const CsrGraph& g, const GeneratorMatrix& p, int t,
                                        std::span<const std::uint64_t> vertices) {
  return DegreeRows([&](std::uint64_t v) { return g.degree(v); }, p, t, vertices);
}

}  // namespace skg
