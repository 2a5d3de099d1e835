#ifndef SKG_SPECTRAL_HPP_
#define SKG_SPECTRAL_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "skg/combinatorics.hpp"
#include "skg/dense.hpp"
#include "skg/edge.hpp"
#include "skg/genmatrix.hpp"

namespace skg {

struct SymmetricEigen {
  std::vector<double> values;  // nonincreasing
  SquareMatrix vectors;        // column j pairs with values[j]
};

// Cyclic Jacobi rotations. Intended for k <= 64.
SymmetricEigen JacobiEigen(const SquareMatrix& a, int max_sweeps = 64);

// Eigenvalues of M1 = C^{-1/2} P C^{-1/2}, which are also those of the walk
// matrix M. `gap` is the two-sided gap min(1 - mu_1, 1 + mu_{k-1}) and is
// exactly 0 when the support graph is disconnected or bipartite.
struct WalkSpectrum {
  std::vector<double> mu;
  std::vector<double> lap;
  double gap = 0.0;
  // max{|1 - mu_1|, |mu_{k-1} - 1|}, kept for comparison with the conservative gap.
  double literal_gap = 0.0;
  double max_residual = 0.0;
};

inline constexpr double kEigenResidualTol = 1e-10;

WalkSpectrum ComputeWalkSpectrum(const DerivedQuantities& d);

// One eigenvalue 1 - mu_{a_1}...mu_{a_t} of I - M1^{(x)t}, for one multiset
// of indices (counts[i] copies of index i).
struct KronEigenvalue {
  double value = 0.0;
  UInt128 multiplicity = 0;
  std::vector<int> counts;
};

// Lazily walks all index multisets of size t. Single consumer.
class KronPowerSpectrum {
 public:
  static constexpr std::uint64_t kMaxMultisets = 10'000'000;

  KronPowerSpectrum(const WalkSpectrum& s, int t);

  std::optional<KronEigenvalue> Next();
  std::uint64_t multiset_count() const noexcept { return total_; }

 private:
  std::vector<double> mu_;
  int t_;
  std::vector<int> counts_;
  std::uint64_t total_;
  bool done_ = false;
};

// Distinct eigenvalues (merged within `merge_tol`) with multiplicities, ascending.
std::vector<std::pair<double, UInt128>> CollectKronSpectrum(const WalkSpectrum& s, int t,
                                                            double merge_tol = 1e-12);
// Every eigenvalue repeated by multiplicity, ascending. Guarded to k^t <= 2^24.
std::vector<double> ExpandKronSpectrum(const WalkSpectrum& s, int t);

enum class GapChoice { kConservative, kLiteral };

// s = ceil((1/gap) ln(2 vol(W) / (c_min eps))), at least 1.
long long MixingSteps(const WalkSpectrum& s, const DerivedQuantities& d, double eps,
                      GapChoice choice = GapChoice::kConservative);

// Delta(s) = sup over the simplex of max_i |(sigma M^s)_i - pi_i| / pi_i. The
// supremum of a convex function over the simplex sits at a vertex, so only the
// k basis vectors are evaluated.
double RpdDelta(const DerivedQuantities& d, long long s);

struct CheegerInterval {
  double lo = 0.0;
  double hi = 0.0;
};
CheegerInterval CheegerFromLambda(double lambda1);

// ceil(ln(n-1) / ln(1/(1-lambda1))), at least 1.
long long DiameterBound(double lambda1, std::uint64_t n);

struct ConcentrationBound {
  double bound = 0.0;
  bool hypothesis_holds = false;  // delta_min >= 3 ln(4n/eps)
};
ConcentrationBound ConcentrationBoundFor(double delta_min, double n, double eps);

// Normalized Laplacian I - D^{-1/2} A D^{-1/2} of a small graph. Vertices of
// degree zero are left out of the matrix and listed separately.
struct LaplacianSpectrum {
  std::vector<double> eigenvalues;  // ascending
  std::vector<std::uint64_t> isolated;
};

inline constexpr std::uint64_t kDenseOracleMaxN = 4096;

LaplacianSpectrum DenseGraphEigs(std::span<const Edge> edges, std::uint64_t n);
// Weighted variant: `weights` is the full symmetric adjacency, loops included.
LaplacianSpectrum DenseLaplacianEigs(const SquareMatrix& weights);

}  // namespace skg

#endif  // SKG_SPECTRAL_HPP_
