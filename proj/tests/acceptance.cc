// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "skg/classify.hpp"
#include "skg/genmatrix.hpp"
#include "skg/graphstats.hpp"
#include "skg/harness.hpp"
#include "skg/sampler.hpp"
#include "skg/spectral.hpp"

namespace {

using namespace skg;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Streams one sample straight into a union-find.
ComponentStats StreamedStats(const GeneratorMatrix& p, int t, std::uint64_t seed) {
  ComponentTracker tracker(VertexCount(p.k(), t));
  ForEachSampledEdge(p, t, seed, [&](std::uint64_t u, std::uint64_t v) { tracker.AddEdge(u, v); });
  return tracker.Finish();
}

const GeneratorMatrix& MainMatrix() {
  static const GeneratorMatrix p = GeneratorMatrix::FromRows({{0.9, 0.6}, {0.6, 0.3}});
  return p;
}

// 1. Per-pair inclusion frequencies of both samplers against p_uv.
Outcome SamplerExactness() {
  const int t = 3, reps = 20000;
  const auto kp = oracle::KronPower({{0.9, 0.6}, {0.6, 0.3}}, t);
  const std::uint64_t n = kp.size();
  std::vector<double> fast(n * n, 0), slow(n * n, 0);
  for (int rep = 0; rep < reps; ++rep) {
    for (const Edge& e : Sample(MainMatrix(), t, rep).edges) fast[e.u * n + e.v] += 1;
    for (const Edge& e : SampleNaive(MainMatrix(), t, rep).edges) slow[e.u * n + e.v] += 1;
  }
  double worst = 0;
  int pairs = 0;
  for (std::uint64_t u = 0; u < n; ++u)
    for (std::uint64_t v = u + 1; v < n; ++v) {
      ++pairs;
      const double q = kp[u][v];
      const double sd = std::sqrt(q * (1 - q) / reps);
      const double a = fast[u * n + v] / reps, b = slow[u * n + v] / reps;
      worst = std::max({worst, std::abs(a - q) / sd, std::abs(b - q) / sd, std::abs(a - b) / (std::sqrt(2.0) * sd)});
    }
  return {pairs == 28 && worst <= 4.0, Fmt("%d pairs, worst deviation %.2f sigma", pairs, worst)};
}

// 2. Mean edge count against (S^t - d^t)/2.
Outcome ExpectedEdges() {
  std::mt19937_64 rng(2002);
  const int t = 4, reps = 10000;
  double worst = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto dense = oracle::RandomSymmetric(rng, 2 + trial % 2, 0.0, 1.0, 0.1);
    const auto p = GeneratorMatrix::FromRows(dense);
    const auto kp = oracle::KronPower(dense, t);
    double var = 0;
    for (std::size_t u = 0; u < kp.size(); ++u)
      for (std::size_t v = u + 1; v < kp.size(); ++v) var += kp[u][v] * (1 - kp[u][v]);
    double sum = 0;
    for (int rep = 0; rep < reps; ++rep) sum += static_cast<double>(Sample(p, t, 77 * rep + trial).edges.size());
    const double z = std::abs(sum / reps - ExpectedEdgeCount(p, t)) / std::sqrt(var / reps);
    worst = std::max(worst, z);
  }
  return {worst <= 3.0, Fmt("5 matrices, worst |z| = %.2f", worst)};
}

// 3. Golden regime table.
Outcome RegimeTable() {
  struct Golden {
    std::vector<std::vector<std::string>> rows;
    std::set<int> cases;
    ComponentRegime component;
    ConnectivityRegime connectivity;
  };
  using CR = ComponentRegime;
  using NR = ConnectivityRegime;
  const std::vector<Golden> suite = {
      {{{"1/2", "7/10"}, {"7/10", "3/5"}}, {4, 8}, CR::kGiant, NR::kConnected},
      {{{"1", "1"}, {"1", "0"}}, {4, 7}, CR::kGiant, NR::kConnected},
      {{{"9/10", "7/10"}, {"7/10", "3/10"}}, {4, 6}, CR::kGiant, NR::kSomeIsolated},
      {{{"1/4", "1/2"}, {"1/2", "1/2"}}, {2, 5}, CR::kShattered, NR::kManyIsolated},
      {{{"0", "1"}, {"1", "0"}}, {1}, CR::kSmallComponents, NR::kNotApplicable},
      {{{"1/2", "1/2"}, {"1/2", "1/2"}}, {6}, CR::kUndeterminedCritical, NR::kSomeIsolated},
      {{{"9/10", "3/5"}, {"3/5", "3/10"}}, {4, 5}, CR::kGiant, NR::kManyIsolated},
      {{{"3/5", "1/5"}, {"1/5", "3/5"}}, {2, 5}, CR::kShattered, NR::kManyIsolated},
      {{{"1", "1/2"}, {"1/2", "1/6"}}, {3, 5}, CR::kGiant, NR::kManyIsolated},
      {{{"1/2", "0"}, {"0", "1/2"}}, {1}, CR::kSmallComponents, NR::kNotApplicable},
      {{{"0", "1", "0"}, {"1", "0", "1"}, {"0", "1", "1/2"}}, {4, 7}, CR::kGiant, NR::kConnected},
      {{{"0", "1/2", "1/2"}, {"1/2", "0", "0"}, {"1/2", "0", "0"}}, {1}, CR::kSmallComponents, NR::kNotApplicable},
  };
  int ok = 0;
  std::string bad;
  std::set<int> covered;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto r = Classify(GeneratorMatrix::FromRationalRows(suite[i].rows));
    const bool match = r.exact && r.case_ids == suite[i].cases && r.component_regime == suite[i].component &&
                       r.connectivity_regime == suite[i].connectivity;
    if (match) {
      ++ok;
      covered.insert(r.case_ids.begin(), r.case_ids.end());
    } else {
      bad += " #" + std::to_string(i + 1);
    }
  }
  const bool all_cases = covered.size() == 8;
  return {ok == 12 && all_cases, Fmt("%d/12 matrices match, cases covered %zu/8%s", ok, covered.size(), bad.c_str())};
}

// 4. Giant component sweep.
Outcome GiantSweep() {
  std::vector<double> medians;
  std::string detail;
  bool ok = true;
  for (int t = 10; t <= 20; t += 2) {
    std::vector<double> f;
    for (int rep = 0; rep < 20; ++rep) f.push_back(StreamedStats(MainMatrix(), t, RowSeed(4, t, rep)).largest_fraction);
    medians.push_back(Median(f));
    ok = ok && medians.back() >= 0.01;
    detail += Fmt(" t=%d:%.3f", t, medians.back());
  }
  ok = ok && medians.back() >= 0.5 * medians.front();
  return {ok, "median largest_fraction" + detail};
}

// 5. Shattered sweep.
Outcome ShatteredSweep() {
  const auto p = GeneratorMatrix::FromRows({{0.6, 0.2}, {0.2, 0.6}});
  const auto report = Classify(p);
  const double delta = *report.params.subcritical_delta;
  bool ok = std::abs(delta - 0.678) < 1e-3;
  double prev = 2.0;
  std::string detail = Fmt("delta=%.4f", delta);
  int worst_hits = 20;
  for (int t = 12; t <= 20; ++t) {
    int hits = 0;
    std::vector<double> f;
    for (int rep = 0; rep < 20; ++rep) {
      const auto s = StreamedStats(p, t, RowSeed(5, t, rep));
      const double n = static_cast<double>(s.n);
      hits += static_cast<double>(s.isolated) >= n - 10 * std::pow(n, delta);
      f.push_back(s.largest_fraction);
    }
    const double med = Median(f);
    ok = ok && hits >= 18 && med < prev;
    worst_hits = std::min(worst_hits, hits);
    prev = med;
  }
  detail += Fmt(", worst isolated-floor hits %d/20, final median fraction %.2e", worst_hits, prev);
  return {ok, detail};
}

// 6. Small-components bound on bipartite and disconnected matrices.
Outcome SmallComponents() {
  struct Case {
    oracle::Dense p;
    std::vector<int> ts;
  };
  const std::vector<Case> cases = {
      {{{0, 1}, {1, 0}}, {4, 8, 12, 16}},
      {{{0, 0.8}, {0.8, 0}}, {4, 8, 12, 16}},
      {{{0, 1, 1}, {1, 0, 0}, {1, 0, 0}}, {4, 6, 8, 10}},
      {{{0, 0.9, 0.7}, {0.9, 0, 0}, {0.7, 0, 0}}, {4, 8, 12}},
      {{{1, 0, 0}, {0, 1, 1}, {0, 1, 1}}, {4, 6, 8, 10}},
      {{{0.5, 0}, {0, 0.9}}, {4, 8, 12, 16}},
      {{{0.9, 0.4, 0}, {0.4, 0.8, 0}, {0, 0, 0.7}}, {4, 8, 12}},
  };
  int runs = 0, ok_runs = 0;
  double tightest = 0;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto p = GeneratorMatrix::FromRows(cases[c].p);
    const auto support = CheckSupport(p);
    if (support.connected && !support.bipartite) return {false, "golden matrix is not small-component"};
    for (int t : cases[c].ts) {
      const double bound = std::pow(p.k() - 1.0, t) + 1;
      for (int rep = 0; rep < 5; ++rep) {
        const auto s = StreamedStats(p, t, RowSeed(6 + c, t, rep));
        ++runs;
        ok_runs += static_cast<double>(s.largest) <= bound;
        tightest = std::max(tightest, static_cast<double>(s.largest) / bound);
      }
    }
  }
  return {ok_runs == runs, Fmt("%d/%d replicates within (k-1)^t + 1, max largest/bound %.3f", ok_runs, runs, tightest)};
}

// 7. Connectivity sweep with diameter against the spectral bound.
constexpr int kDiameterReplicates = 5;

Outcome ConnectivitySweep() {
  const std::vector<oracle::Dense> mats = {{{1, 1}, {1, 0}}, {{0.1, 1}, {1, 0.5}}};
  bool ok = true;
  std::string detail;
  for (std::size_t mi = 0; mi < mats.size(); ++mi) {
    const auto p = GeneratorMatrix::FromRows(mats[mi]);
    const auto lap = DenseLaplacianEigs(SquareMatrix::FromRows(oracle::KronPower(mats[mi], 6)));
    const double lambda1 = lap.eigenvalues.at(1);
    int connected = 0, total = 0, diam_ok = 0, diam_checked = 0;
    for (int t = 10; t <= 18; ++t) {
      const std::uint64_t n = VertexCount(2, t);
      const long long bound = DiameterBound(lambda1, n);
      for (int rep = 0; rep < 20; ++rep) {
        const std::uint64_t seed = RowSeed(7 + mi, t, rep);
        const auto s = StreamedStats(p, t, seed);
        ++total;
        connected += s.component_count == 1;
        // Exact diameter up to 4096 vertices. Above that a CSR costs two more
        // sampling passes, so only the first replicates get a double sweep.
        if (n > kExactDiameterMaxN && rep >= kDiameterReplicates) continue;
        const auto g = CsrGraph::FromStream(n, [&](const EdgeSink& sink) { ForEachSampledEdge(p, t, seed, sink); });
        const long long diam = n <= kExactDiameterMaxN ? DiameterExact(g) : DiameterLowerBound(g, seed, 2).lower_bound;
        ++diam_checked;
        diam_ok += diam <= bound;
      }
    }
    const bool this_ok = connected >= 0.95 * total && diam_ok == diam_checked;
    ok = ok && this_ok;
    detail += Fmt("%sP%zu: lambda1=%.4f connected %d/%d, diameter within bound %d/%d", mi ? "; " : "", mi + 1,
                  lambda1, connected, total, diam_ok, diam_checked);
  }
  return {ok, detail};
}

// 8. Kronecker spectrum against the dense Laplacian of the explicit power.
Outcome SpectralProductLaw() {
  std::mt19937_64 rng(8008);
  double worst = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const int k = 2 + trial % 2;
    const auto dense = oracle::RandomSymmetric(rng, k);
    const auto s = ComputeWalkSpectrum(Derive(GeneratorMatrix::FromRows(dense)));
    for (int t : {2, 3}) {
      const auto kron = ExpandKronSpectrum(s, t);
      const auto lap = DenseLaplacianEigs(SquareMatrix::FromRows(oracle::KronPower(dense, t)));
      if (kron.size() != lap.eigenvalues.size()) return {false, "spectrum sizes differ"};
      for (std::size_t i = 0; i < kron.size(); ++i) worst = std::max(worst, std::abs(kron[i] - lap.eigenvalues[i]));
    }
  }
  return {worst <= 1e-9, Fmt("max |deviation| = %.2e", worst)};
}

// 9. Stationarity and the two monotonicity properties.
Outcome MarkovInvariants() {
  std::mt19937_64 rng(9009);
  double worst = 0;
  for (int trial = 0; trial < 1000;) {
    const auto d = Derive(GeneratorMatrix::FromRows(oracle::RandomSymmetric(rng, 2 + trial % 5, 0.0, 1.0, 0.2)));
    if (!d.has_walk()) continue;
    const auto pm = RowTimes(*d.pi, *d.M);
    for (int i = 0; i < d.k; ++i) worst = std::max(worst, std::abs(pm[i] - (*d.pi)[i]));
    ++trial;
  }
  int cprod_fail = 0;
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const int k = 2 + trial % 5;
    std::vector<double> c(k);
    for (double& x : c) x = u(rng);
    if (trial % 10 == 0) c.assign(k, 1.0);
    double lp = 0;
    for (double x : c) lp += std::log(x);
    if (lp < 0)
      for (double& x : c) x *= std::exp(-lp / k);
    std::sort(c.begin(), c.end());
    double a = 0, dev = 0;
    for (double x : c) {
      a += x * std::log(x);
      dev = std::max(dev, std::abs(x - 1));
    }
    cprod_fail += a < -1e-12 || (std::abs(a) <= 1e-12 && dev > 1e-9);
  }
  int uniform_fail = 0;
  for (int seen = 0; seen < 500;) {
    const auto dense = oracle::RandomSymmetric(rng, 2 + seen % 4, 0.0, 1.0, 0.2);
    if (!oracle::IsConnectedNonBipartite(dense)) continue;
    const auto d = Derive(GeneratorMatrix::FromRows(dense));
    if (!d.has_walk() || d.c_max() - d.c_min() < 1e-3) continue;
    ++seen;
    for (const auto& f : {*d.L, d.c}) {
      double base = 0;
      for (double x : f) base += x;
      std::vector<double> x(d.k, 1.0);
      for (int step = 1; step <= 20; ++step) {
        x = RowTimes(x, *d.M);
        if (!(Dot(x, f) > base + 1e-12)) {
          ++uniform_fail;
          break;
        }
      }
    }
  }
  return {worst <= 1e-12 && cprod_fail == 0 && uniform_fail == 0,
          Fmt("max |pi M - pi| = %.1e; sum c ln c failures %d/2000; uniform-start failures %d/1000", worst,
              cprod_fail, uniform_fail)};
}

// 10. Mixing steps certified by the exact Delta(s).
Outcome MixingCertification() {
  std::mt19937_64 rng(1010);
  int checked = 0, failures = 0;
  double worst_ratio = 0;
  while (checked < 100) {
    const auto dense = oracle::RandomSymmetric(rng, 2 + checked % 4, 0.0, 1.0, 0.3);
    if (!oracle::IsConnectedNonBipartite(dense)) continue;
    const auto d = Derive(GeneratorMatrix::FromRows(dense));
    if (!d.has_walk()) continue;
    const auto s = ComputeWalkSpectrum(d);
    for (double eps : {0.1, 0.01}) {
      const double delta = RpdDelta(d, MixingSteps(s, d, eps));
      failures += !(delta < eps);
      worst_ratio = std::max(worst_ratio, delta / eps);
    }
    ++checked;
  }
  return {failures == 0, Fmt("%d chains, failures %d, max Delta(s)/eps = %.3g", checked, failures, worst_ratio)};
}

// 11. Subcritical exponent residuals.
Outcome SubcriticalResiduals() {
  std::mt19937_64 rng(1111);
  int seen = 0, general = 0, bad = 0;
  double worst = 0;
  while (seen < 500) {
    const auto d = Derive(GeneratorMatrix::FromRows(oracle::RandomSymmetric(rng, 2 + seen % 4, 0.01, 0.6)));
    double lp = 0;
    for (double c : d.c) lp += std::log(c);
    if (!(lp < 0)) continue;
    ++seen;
    const auto s = ComputeSubcriticalDelta(d);
    if (!s.alpha) continue;
    ++general;
    const double a = *s.alpha;
    const double res = std::abs(a - 2 * (s.eps - a) * (s.eps - a) / (s.spread * s.spread));
    worst = std::max(worst, res);
    bad += !(res <= 1e-12 && a >= 0 && a <= s.eps);
  }
  int eq_bad = 0;
  for (double c : {0.3, 0.5, 0.8, 0.95}) {
    for (int k : {2, 3, 4}) {
      oracle::Dense p(k, std::vector<double>(k, c / k));
      const auto s = ComputeSubcriticalDelta(Derive(GeneratorMatrix::FromRows(p)));
      eq_bad += s.branch != SubcriticalBranch::kEqualColumns || std::abs(s.delta - (1 + std::log(c) / std::log(k))) > 1e-12;
    }
  }
  return {bad == 0 && eq_bad == 0,
          Fmt("%d general-branch matrices, max residual %.1e, bad %d; equal-columns mismatches %d/12", general, worst,
              bad, eq_bad)};
}

// 12. Worker-count independence.
Outcome Determinism() {
  std::mt19937_64 rng(1212);
  int identical = 0;
  for (int cfg = 0; cfg < 10; ++cfg) {
    const int k = 2 + cfg % 3;
    const int t = k == 2 ? 12 : (k == 3 ? 8 : 6);
    const auto p = GeneratorMatrix::FromRows(oracle::RandomSymmetric(rng, k, 0.0, 1.0, 0.1));
    const auto base = Sample(p, t, 1000 + cfg, 1);
    bool same = true;
    for (int w : {4, 16}) same = same && Sample(p, t, 1000 + cfg, w).edges == base.edges;
    identical += same;
  }
  return {identical == 10, Fmt("%d/10 configurations identical for workers 1, 4, 16", identical)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"sampler exactness", SamplerExactness},
      {"expected edge count", ExpectedEdges},
      {"regime table", RegimeTable},
      {"giant component sweep", GiantSweep},
      {"shattered sweep", ShatteredSweep},
      {"small-components bound", SmallComponents},
      {"connectivity sweep", ConnectivitySweep},
      {"spectral product law", SpectralProductLaw},
      {"markov invariants", MarkovInvariants},
      {"mixing certification", MixingCertification},
      {"subcritical delta", SubcriticalResiduals},
      {"determinism", Determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && !only.contains(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %2d  %-24s %s  [%.1f s]\n", out.pass ? "PASS" : "FAIL", id, criteria[i].first,
                out.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !out.pass;
  }
  return failed == 0 ? 0 : 1;
}
