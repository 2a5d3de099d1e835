#include "skg/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skg/errors.hpp"

namespace skg {
namespace {

Relation RelationToOne(const Rational& x) {
  if (x < 1) return Relation::kLess;
  if (x > 1) return Relation::kGreater;
  return Relation::kEqual;
}

Relation RelationToOne(double x, double tol, const char* name, std::vector<std::string>& warnings) {
  const double dev = x - 1.0;
  if (std::abs(dev) <= tol) return Relation::kEqual;
  if (std::abs(dev) <= 10.0 * tol) {
    warnings.push_back(std::string(name) + " is within 10*tol of 1 (deviation " +
                       std::to_string(dev) + ")");
  }
  return dev < 0.0 ? Relation::kLess : Relation::kGreater;
}

double SumCLnC(const DerivedQuantities& d) {
  double acc = 0.0;
  for (double c : d.c) {
    if (c <= 0.0) throw DomainError("sum c_i ln c_i needs positive column sums");
    acc += c * std::log(c);
  }
  return acc;
}

}  // namespace

const char* ToString(ComponentRegime r) {
  switch (r) {
    case ComponentRegime::kSmallComponents: return "SMALL_COMPONENTS";
    case ComponentRegime::kShattered: return "SHATTERED";
    case ComponentRegime::kGiant: return "GIANT";
    case ComponentRegime::kUndeterminedCritical: return "UNDETERMINED_CRITICAL";
  }
  return "?";
}

const char* ToString(ConnectivityRegime r) {
  switch (r) {
    case ConnectivityRegime::kNotApplicable: return "NOT_APPLICABLE";
    case ConnectivityRegime::kManyIsolated: return "MANY_ISOLATED";
    case ConnectivityRegime::kSomeIsolated: return "SOME_ISOLATED";
    case ConnectivityRegime::kConnected: return "CONNECTED";
  }
  return "?";
}

const char* ToString(Relation r) {
  switch (r) {
    case Relation::kLess: return "<";
    case Relation::kEqual: return "=";
    case Relation::kGreater: return ">";
  }
  return "?";
}

double EpsilonMax(const DerivedQuantities& d) {
  const double a = SumCLnC(d);
  if (!(a > 0.0)) {
    throw DomainError("core radius bound needs sum c_i ln c_i > 0 (got " + std::to_string(a) + ")");
  }
  const double b = d.vol_w * std::log(d.c_min());
  if (std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a))) {
    return std::numeric_limits<double>::infinity();
  }
  return a / (a - b);
}

double CoreGrowthD(const DerivedQuantities& d, double eps) {
  const double eps_max = EpsilonMax(d);
  if (!(eps > 0.0 && eps < eps_max)) {
    throw DomainError("core growth needs 0 < eps < eps_max");
  }
  const double a = SumCLnC(d);
  double ln_d = eps * std::log(d.c_min()) + (1.0 - eps) / d.vol_w * a;
  if (std::isfinite(eps_max)) {
    // Same quantity written as (A/vol)(1 - eps/eps_max), which keeps its sign
    // right next to eps_max.
    ln_d = a / d.vol_w * (1.0 - eps / eps_max);
  }
  const double growth = std::exp(ln_d);
  if (!(growth > 1.0)) {
    throw DomainError("core growth rate rounded to 1; eps is too close to eps_max");
  }
  return growth;
}

SubcriticalDelta ComputeSubcriticalDelta(const DerivedQuantities& d) {
  if (d.k < 2) throw DomainError("subcritical exponent needs k >= 2");
  if (d.c_min() <= 0.0) throw DomainError("subcritical exponent needs positive column sums");
  double sum_ln = 0.0;
  for (double c : d.c) sum_ln += std::log(c);
  if (!(sum_ln < 0.0)) throw DomainError("subcritical exponent needs prod c_i < 1");

  SubcriticalDelta out;
  out.eps = -sum_ln / d.k;
  out.spread = std::log(d.c_max()) - std::log(d.c_min());
  if (d.c_max() == d.c_min()) {
    out.branch = SubcriticalBranch::kEqualColumns;
    out.delta = 1.0 + std::log(d.c_min()) / std::log(static_cast<double>(d.k));
    return out;
  }
  const double e = out.eps;
  const double sq = out.spread * out.spread;
  // Smaller root of 2a^2 - (4e + D^2)a + 2e^2, via the product of the roots
  // (e^2) to avoid cancellation; the discriminant simplifies to D^2 (8e + D^2).
  const double big = (4.0 * e + sq + out.spread * std::sqrt(8.0 * e + sq)) / 4.0;
  const double alpha = e * e / big;
  out.alpha = alpha;
  out.delta = 1.0 - alpha / std::log(static_cast<double>(d.k));
  out.branch = SubcriticalBranch::kGeneral;
  return out;
}

SmallComponentBound LemmaSmallComponentBound(const SupportReport& s, int k, int t) {
  if (s.connected && !s.bipartite) {
    throw DomainError("small-component bound needs W disconnected or bipartite");
  }
  if (t < 0) throw DomainError("negative order");
  SmallComponentBound out;
  if (!s.connected) {
    out.bound = boost::multiprecision::pow(BigInt(k - 1), static_cast<unsigned>(t));
    return out;
  }
  out.bipartite_branch = true;
  const long a = std::count(s.coloring.begin(), s.coloring.end(), 0);
  const long b = k - a;
  const BigInt big_a(a), big_b(b);
  for (int i = 0; 2 * i <= t; ++i) {
    ComponentCensusEntry entry;
    const BigInt left = boost::multiprecision::pow(big_a, static_cast<unsigned>(i)) *
                        boost::multiprecision::pow(big_b, static_cast<unsigned>(t - i));
    const BigInt right = boost::multiprecision::pow(big_a, static_cast<unsigned>(t - i)) *
                         boost::multiprecision::pow(big_b, static_cast<unsigned>(i));
    entry.size = t == 0 ? BigInt(1) : left + right;
    BigInt count = 1;
    for (int j = 1; j <= i; ++j) {
      count *= t - i + j;
      count /= j;
    }
    // Side patterns S and its complement give the same component.
    if (2 * i == t && t > 0) count /= 2;
    entry.count = count;
    out.bound = std::max(out.bound, entry.size);
    out.census.push_back(std::move(entry));
  }
  return out;
}

bool InCore(const Signature& sigma, double eps, const DerivedQuantities& d) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("core membership needs 0 < eps < 1");
  if (!d.pi) throw DomainError("core membership needs the stationary distribution");
  for (int i = 0; i < d.k; ++i) {
    if (!(sigma.sigma[i] > (1.0 - eps) * (*d.pi)[i])) return false;
  }
  return true;
}

SigmaNuMembership SigmaNuMember(const Signature& sigma, double nu, const DerivedQuantities& d,
                                const WalkSpectrum& s, long long max_steps) {
  if (!d.has_walk()) throw DomainError("Sigma_nu needs positive column sums");
  if (!(s.gap > 0.0)) throw DomainError("Sigma_nu needs W connected and non-bipartite");
  const std::vector<double>& l = *d.L;
  const std::vector<double>& pi = *d.pi;
  const double pi_l = Dot(pi, l);
  double tail_scale = 0.0;
  for (int i = 0; i < d.k; ++i) tail_scale += pi[i] * std::abs(l[i]);
  const double min_l = *std::min_element(l.begin(), l.end());

  SigmaNuMembership out;
  if (nu <= min_l) {
    out.member = out.certified = true;  // every point of the simplex clears min_i L_i
    return out;
  }
  std::vector<double> x = sigma.sigma;
  SquareMatrix power = SquareMatrix::Identity(d.k);
  for (long long step = 0; step <= max_steps; ++step) {
    out.steps_checked = step;
    if (Dot(x, l) < nu) {
      out.member = false;
      out.certified = true;
      return out;
    }
    double delta = 0.0;
    for (int j = 0; j < d.k; ++j) {
      for (int i = 0; i < d.k; ++i) {
        delta = std::max(delta, std::abs(power(j, i) - pi[i]) / pi[i]);
      }
    }
    if (pi_l - delta * tail_scale >= nu) {
      out.member = out.certified = true;
      return out;
    }
    x = RowTimes(x, *d.M);
    power = power * *d.M;
  }
  out.member = true;
  out.certified = false;
  return out;
}

RegimeReport Classify(const GeneratorMatrix& p, double tol) {
  const DerivedQuantities d = Derive(p);
  const SupportReport support = AnalyzeSupport(d.support_adj, d.backbone_adj);
  RegimeReport r;
  r.tol = tol;
  r.exact = p.has_rational();
  r.flags.w_connected = support.connected;
  r.flags.w_bipartite = support.bipartite;
  r.flags.backbone_min_degree = support.backbone_min_degree;

  double prod = 1.0;
  for (double c : d.c) prod *= c;
  r.params.prod_c = prod;

  if (r.exact) {
    const int k = p.k();
    std::vector<Rational> c(k, Rational(0));
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) c[j] += p.rational(i, j);
    }
    Rational exact_prod = 1;
    for (const Rational& x : c) exact_prod *= x;
    r.flags.prod_c = RelationToOne(exact_prod);
    const Rational cmin = *std::min_element(c.begin(), c.end());
    r.flags.c_min = RelationToOne(cmin);
    r.flags.c_all_equal = std::all_of(c.begin(), c.end(), [&](const Rational& x) { return x == c[0]; });
  } else {
    r.flags.prod_c = RelationToOne(prod, tol, "prod c_i", r.warnings);
    r.flags.c_min = RelationToOne(d.c_min(), tol, "c_min", r.warnings);
    r.flags.c_all_equal = d.c_max() - d.c_min() <= tol * std::max(1.0, d.c_max());
  }

  if (!support.connected || support.bipartite) {
    r.case_ids.insert(1);
    r.component_regime = ComponentRegime::kSmallComponents;
    r.connectivity_regime = ConnectivityRegime::kNotApplicable;
  } else {
    switch (r.flags.prod_c) {
      case Relation::kLess:
        r.case_ids.insert(2);
        r.component_regime = ComponentRegime::kShattered;
        break;
      case Relation::kEqual:
        if (r.flags.c_all_equal) {
          r.component_regime = ComponentRegime::kUndeterminedCritical;
        } else {
          r.case_ids.insert(3);
          r.component_regime = ComponentRegime::kGiant;
        }
        break;
      case Relation::kGreater:
        r.case_ids.insert(4);
        r.component_regime = ComponentRegime::kGiant;
        break;
    }
    switch (r.flags.c_min) {
      case Relation::kLess:
        r.case_ids.insert(5);
        r.connectivity_regime = ConnectivityRegime::kManyIsolated;
        break;
      case Relation::kEqual:
        if (support.backbone_min_degree == 0) {
          r.case_ids.insert(6);
          r.connectivity_regime = ConnectivityRegime::kSomeIsolated;
        } else {
          r.case_ids.insert(7);
          r.connectivity_regime = ConnectivityRegime::kConnected;
        }
        break;
      case Relation::kGreater:
        r.case_ids.insert(8);
        r.connectivity_regime = ConnectivityRegime::kConnected;
        break;
    }
  }

  if (!d.has_walk()) return r;
  const double a = SumCLnC(d);
  r.params.sum_c_ln_c = a;
  const bool walk_ok = support.connected && !support.bipartite;
  std::optional<WalkSpectrum> spectrum;
  if (walk_ok) {
    spectrum = ComputeWalkSpectrum(d);
    r.params.gap = spectrum->gap;
  }
  if (a > 0.0) {
    const double eps_max = EpsilonMax(d);
    r.params.eps_max = eps_max;
    const double eps = std::min(eps_max / 2.0, 0.5);
    r.params.core_eps = eps;
    r.params.core_growth_d = CoreGrowthD(d, eps);
    if (walk_ok) r.params.mixing_s = MixingSteps(*spectrum, d, eps);
  }
  if (walk_ok && r.flags.prod_c == Relation::kLess && d.k >= 2) {
    const SubcriticalDelta sub = ComputeSubcriticalDelta(d);
    r.params.subcritical_alpha = sub.alpha;
    r.params.subcritical_delta = sub.delta;
  }
  return r;
}

}  // namespace skg
