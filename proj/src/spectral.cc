#include "skg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "skg/errors.hpp"

namespace skg {
namespace {

double OffDiagonalNorm(const SquareMatrix& a) {
  double acc = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < a.size(); ++j) {
      if (i != j) acc += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(acc);
}

double FrobeniusNorm(const SquareMatrix& a) {
  double acc = 0.0;
  for (double x : a.data()) acc += x * x;
  return std::sqrt(acc);
}

}  // namespace

SymmetricEigen JacobiEigen(const SquareMatrix& input, int max_sweeps) {
  const int n = input.size();
  SquareMatrix a = input;
  SquareMatrix v = SquareMatrix::Identity(n);
  const double scale = std::max(FrobeniusNorm(a), std::numeric_limits<double>::min());

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (OffDiagonalNorm(a) <= 1e-17 * scale) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int r = 0; r < n; ++r) {
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
        }
        for (int r = 0; r < n; ++r) {
          const double apr = a(p, r);
          const double aqr = a(q, r);
          a(p, r) = c * apr - s * aqr;
          a(q, r) = s * apr + c * aqr;
        }
        for (int r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) > a(y, y); });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = SquareMatrix(n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (int r = 0; r < n; ++r) out.vectors(r, j) = v(r, order[j]);
  }
  return out;
}

WalkSpectrum ComputeWalkSpectrum(const DerivedQuantities& d) {
  if (!d.has_walk()) {
    throw DomainError("walk spectrum needs every column sum positive");
  }
  const SquareMatrix& m1 = *d.M1;
  const int k = d.k;
  SymmetricEigen eig = JacobiEigen(m1);

  WalkSpectrum s;
  s.mu = eig.values;
  for (int j = 0; j < k; ++j) {
    double residual = 0.0;
    for (int r = 0; r < k; ++r) {
      double mx = 0.0;
      for (int c = 0; c < k; ++c) mx += m1(r, c) * eig.vectors(c, j);
      residual = std::max(residual, std::abs(mx - eig.values[j] * eig.vectors(r, j)));
    }
    s.max_residual = std::max(s.max_residual, residual);
  }
  if (s.max_residual > kEigenResidualTol) {
    throw ConvergenceError("Jacobi eigensolver residual " + std::to_string(s.max_residual) +
                               " exceeds tolerance",
                           s.max_residual);
  }
  s.lap.resize(k);
  for (int j = 0; j < k; ++j) s.lap[j] = 1.0 - s.mu[j];

  if (k == 1) {
    s.gap = 1.0;
    s.literal_gap = 1.0;
    return s;
  }
  const SupportReport shape = AnalyzeSupport(d.support_adj, d.backbone_adj);
  const double mu1 = s.mu[1];
  const double mu_last = s.mu[k - 1];
  s.literal_gap = std::max(std::abs(1.0 - mu1), std::abs(mu_last - 1.0));
  s.gap = (shape.connected && !shape.bipartite) ? std::min(1.0 - mu1, 1.0 + mu_last) : 0.0;
  return s;
}

KronPowerSpectrum::KronPowerSpectrum(const WalkSpectrum& s, int t)
    : mu_(s.mu), t_(t), counts_(FirstComposition(t, static_cast<int>(s.mu.size()))) {
  if (t < 1) throw DomainError("Kronecker power spectrum needs t >= 1");
  total_ = CompositionCount(t, static_cast<int>(mu_.size()));
  if (total_ > kMaxMultisets) {
    throw GuardError("Kronecker spectrum has " + std::to_string(total_) +
                     " index multisets, more than the enumeration limit");
  }
}

std::optional<KronEigenvalue> KronPowerSpectrum::Next() {
  if (done_) return std::nullopt;
  KronEigenvalue out;
  double product = 1.0;
  for (std::size_t i = 0; i < mu_.size(); ++i) {
    if (counts_[i] > 0) product *= std::pow(mu_[i], counts_[i]);
  }
  out.value = 1.0 - product;
  out.multiplicity = Multinomial(counts_);
  out.counts = counts_;
  done_ = !NextComposition(counts_);
  return out;
}

std::vector<std::pair<double, UInt128>> CollectKronSpectrum(const WalkSpectrum& s, int t,
                                                            double merge_tol) {
  std::vector<std::pair<double, UInt128>> all;
  KronPowerSpectrum range(s, t);
  while (auto e = range.Next()) all.emplace_back(e->value, e->multiplicity);
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<double, UInt128>> merged;
  for (const auto& [value, mult] : all) {
    if (!merged.empty() && value - merged.back().first <= merge_tol) {
      merged.back().second += mult;
    } else {
      merged.emplace_back(value, mult);
    }
  }
  return merged;
}

std::vector<double> ExpandKronSpectrum(const WalkSpectrum& s, int t) {
  const std::uint64_t n = VertexCount(static_cast<int>(s.mu.size()), t);
  if (n > (std::uint64_t{1} << 24)) throw GuardError("expanded spectrum too large");
  std::vector<double> out;
  out.reserve(n);
  KronPowerSpectrum range(s, t);
  while (auto e = range.Next()) {
    out.insert(out.end(), static_cast<std::size_t>(e->multiplicity), e->value);
  }
  std::sort(out.begin(), out.end());
  return out;
}

long long MixingSteps(const WalkSpectrum& s, const DerivedQuantities& d, double eps,
                      GapChoice choice) {
  if (!(eps > 0.0)) throw DomainError("mixing steps need eps > 0");
  if (!(s.gap > 0.0)) {
    throw DomainError("walk on W has no spectral gap (W disconnected or bipartite)");
  }
  const double gap = choice == GapChoice::kConservative ? s.gap : s.literal_gap;
  const double steps = std::ceil(std::log(2.0 * d.vol_w / (d.c_min() * eps)) / gap);
  return std::max<long long>(1, static_cast<long long>(steps));
}

double RpdDelta(const DerivedQuantities& d, long long s) {
  if (!d.has_walk()) throw DomainError("relative pointwise distance needs positive column sums");
  const SquareMatrix power = MatrixPower(*d.M, s);
  const std::vector<double>& pi = *d.pi;
  double worst = 0.0;
  for (int j = 0; j < d.k; ++j) {
    for (int i = 0; i < d.k; ++i) {
      worst = std::max(worst, std::abs(power(j, i) - pi[i]) / pi[i]);
    }
  }
  return worst;
}

CheegerInterval CheegerFromLambda(double lambda1) {
  if (!(lambda1 >= 0.0 && lambda1 <= 2.0)) {
    throw DomainError("Cheeger interval needs lambda1 in [0,2]");
  }
  return {lambda1 / 2.0, std::sqrt(2.0 * lambda1)};
}

long long DiameterBound(double lambda1, std::uint64_t n) {
  if (n < 2) throw DomainError("diameter bound needs n >= 2");
  if (!(lambda1 > 0.0)) throw DomainError("diameter bound needs lambda1 > 0");
  if (lambda1 >= 1.0 || n == 2) return 1;
  const double ratio = std::log(static_cast<double>(n - 1)) / -std::log1p(-lambda1);
  // Shave a few ulps so exact integers such as ln(1024)/ln(2) do not round up.
  const double steps = std::ceil(ratio * (1.0 - 1e-13));
  return std::max<long long>(1, static_cast<long long>(steps));
}

ConcentrationBound ConcentrationBoundFor(double delta_min, double n, double eps) {
  if (!(delta_min > 0.0)) throw DomainError("concentration bound needs delta_min > 0");
  const double threshold = 3.0 * std::log(4.0 * n / eps);
  return {3.0 * std::sqrt(threshold / delta_min), delta_min >= threshold};
}

LaplacianSpectrum DenseLaplacianEigs(const SquareMatrix& weights) {
  const int n = weights.size();
  if (static_cast<std::uint64_t>(n) > kDenseOracleMaxN) {
    throw GuardError("dense Laplacian oracle is limited to n <= 4096");
  }
  std::vector<double> degree(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) degree[i] += weights(i, j);
  }
  LaplacianSpectrum out;
  std::vector<int> keep;
  for (int i = 0; i < n; ++i) {
    if (degree[i] > 0.0) {
      keep.push_back(i);
    } else {
      out.isolated.push_back(static_cast<std::uint64_t>(i));
    }
  }
  const int m = static_cast<int>(keep.size());
  Eigen::MatrixXd lap(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const int i = keep[a];
      const int j = keep[b];
      lap(a, b) = (a == b ? 1.0 : 0.0) - weights(i, j) / std::sqrt(degree[i] * degree[j]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("dense Laplacian eigensolve failed", std::nan(""));
  }
  out.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + m);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

LaplacianSpectrum DenseGraphEigs(std::span<const Edge> edges, std::uint64_t n) {
  if (n > kDenseOracleMaxN) throw GuardError("dense graph oracle is limited to n <= 4096");
  SquareMatrix adj(static_cast<int>(n));
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) throw DomainError("edge endpoint out of range");
    adj(static_cast<int>(e.u), static_cast<int>(e.v)) = 1.0;
    adj(static_cast<int>(e.v), static_cast<int>(e.u)) = 1.0;
  }
  return DenseLaplacianEigs(adj);
}

}  // namespace skg
