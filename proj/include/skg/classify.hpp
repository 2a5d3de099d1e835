#ifndef SKG_CLASSIFY_HPP_
#define SKG_CLASSIFY_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "skg/combinatorics.hpp"
#include "skg/genmatrix.hpp"
#include "skg/spectral.hpp"

namespace skg {

enum class ComponentRegime { kSmallComponents, kShattered, kGiant, kUndeterminedCritical };
enum class ConnectivityRegime { kNotApplicable, kManyIsolated, kSomeIsolated, kConnected };
enum class Relation { kLess, kEqual, kGreater };

const char* ToString(ComponentRegime r);
const char* ToString(ConnectivityRegime r);
const char* ToString(Relation r);

struct RegimeFlags {
  bool w_connected = false;
  bool w_bipartite = false;
  Relation prod_c = Relation::kEqual;  // prod_i c_i against 1
  Relation c_min = Relation::kEqual;   // smallest column sum against 1
  int backbone_min_degree = 0;
  bool c_all_equal = false;
};

struct RegimeParams {
  double prod_c = 0.0;
  std::optional<double> sum_c_ln_c;
  std::optional<double> eps_max;        // may be +inf
  std::optional<double> core_eps;       // epsilon used for core_growth_d and mixing_s
  std::optional<double> core_growth_d;
  std::optional<double> subcritical_alpha;
  std::optional<double> subcritical_delta;
  std::optional<long long> mixing_s;
  std::optional<double> gap;
};

struct RegimeReport {
  std::set<int> case_ids;
  ComponentRegime component_regime = ComponentRegime::kSmallComponents;
  ConnectivityRegime connectivity_regime = ConnectivityRegime::kNotApplicable;
  RegimeFlags flags;
  RegimeParams params;
  bool exact = false;  // knife edges decided with rational arithmetic
  double tol = 0.0;
  // Quantities within 10*tol of 1 but decided as strict inequalities.
  std::vector<std::string> warnings;
};

inline constexpr double kDefaultClassifyTol = 1e-12;

RegimeReport Classify(const GeneratorMatrix& p, double tol = kDefaultClassifyTol);

// Upper end of the admissible core radius:
// sum c_i ln c_i / (sum c_i ln c_i - vol(W) ln c_min). +inf when all c_i are equal.
double EpsilonMax(const DerivedQuantities& d);

// d = exp(eps ln c_min + (1-eps)/vol(W) * sum c_i ln c_i), which exceeds 1 on (0, eps_max).
double CoreGrowthD(const DerivedQuantities& d, double eps);

enum class SubcriticalBranch { kGeneral, kEqualColumns };

struct SubcriticalDelta {
  std::optional<double> alpha;
  double delta = 0.0;
  double eps = 0.0;     // -(1/k) sum ln c_i
  double spread = 0.0;  // ln c_max - ln c_min
  SubcriticalBranch branch = SubcriticalBranch::kGeneral;
};

// Exponent delta with n - O(n^delta) isolated vertices when prod c_i < 1.
// General branch: alpha is the smaller root of 2a^2 - (4eps + D^2)a + 2eps^2.
SubcriticalDelta ComputeSubcriticalDelta(const DerivedQuantities& d);

struct ComponentCensusEntry {
  BigInt size;
  BigInt count;
};

struct SmallComponentBound {
  BigInt bound;
  bool bipartite_branch = false;
  // Bipartite branch only: component sizes with the number of distinct
  // components of that shape, indexed by i = 0..floor(t/2).
  std::vector<ComponentCensusEntry> census;
};

SmallComponentBound LemmaSmallComponentBound(const SupportReport& s, int k, int t);

bool InCore(const Signature& sigma, double eps, const DerivedQuantities& d);

struct SigmaNuMembership {
  bool member = false;
  bool certified = false;
  long long steps_checked = 0;
};

// Checks <sigma M^s, L> >= nu for every s >= 0, truncating once the tail bound
// |<sigma M^s, L> - <pi, L>| <= Delta(s) sum_i pi_i |L_i| settles the rest.
SigmaNuMembership SigmaNuMember(const Signature& sigma, double nu, const DerivedQuantities& d,
                                const WalkSpectrum& s, long long max_steps = 100000);

}  // namespace skg

#endif  // SKG_CLASSIFY_HPP_
