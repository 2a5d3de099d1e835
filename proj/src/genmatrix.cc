#include "skg/genmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "skg/errors.hpp"

namespace skg {
namespace {

std::string EntryName(int i, int j) {
  return "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::string Fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

bool WithinOneUlp(double a, double b) {
  if (a == b) return true;
  const double ulp = std::max(std::nextafter(std::abs(a), std::numeric_limits<double>::infinity()) -
                                  std::abs(a),
                              std::numeric_limits<double>::denorm_min());
  return std::abs(a - b) <= ulp;
}

}  // namespace

Rational ParseRational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(boost::multiprecision::cpp_int(text));
    }
    const boost::multiprecision::cpp_int num(text.substr(0, slash));
    const boost::multiprecision::cpp_int den(text.substr(slash + 1));
    if (den == 0) throw ValidationError("zero denominator in rational '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw ValidationError("cannot parse rational '" + text + "'");
  }
}

GeneratorMatrix::GeneratorMatrix(SquareMatrix entries, std::optional<std::vector<Rational>> rational)
    : entries_(std::move(entries)), rational_(std::move(rational)) {
  const int k = entries_.size();
  if (k < 1) throw ValidationError("generator matrix must have k >= 1");
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double x = entries_(i, j);
      if (!(x >= 0.0 && x <= 1.0)) {
        throw ValidationError(EntryName(i, j) + " = " + Fmt(x) + " is outside [0,1]");
      }
      if (x != entries_(j, i)) {
        throw ValidationError(EntryName(i, j) + " = " + Fmt(x) + " differs from " +
                              EntryName(j, i) + " = " + Fmt(entries_(j, i)));
      }
    }
  }
  if (rational_) {
    if (static_cast<int>(rational_->size()) != k * k) {
      throw ValidationError("rational entries must be k x k");
    }
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        const Rational& r = (*rational_)[i * k + j];
        if (r != (*rational_)[j * k + i]) {
          throw ValidationError("rational " + EntryName(i, j) + " differs from " + EntryName(j, i));
        }
        if (!WithinOneUlp(static_cast<double>(r), entries_(i, j))) {
          throw ValidationError("rational " + EntryName(i, j) + " = " + r.str() +
                                " does not match float entry " + Fmt(entries_(i, j)));
        }
      }
    }
  }
}

GeneratorMatrix GeneratorMatrix::FromRationalRows(
    const std::vector<std::vector<std::string>>& rows) {
  const int k = static_cast<int>(rows.size());
  SquareMatrix m(k);
  std::vector<Rational> exact(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i) {
    if (static_cast<int>(rows[i].size()) != k) {
      throw ValidationError("rational row " + std::to_string(i) + " has wrong length");
    }
    for (int j = 0; j < k; ++j) {
      exact[i * k + j] = ParseRational(rows[i][j]);
      m(i, j) = static_cast<double>(exact[i * k + j]);
    }
  }
  return GeneratorMatrix(std::move(m), std::move(exact));
}

DerivedQuantities Derive(const GeneratorMatrix& p) {
  const int k = p.k();
  DerivedQuantities d;
  d.k = k;
  d.c.assign(k, 0.0);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < k; ++i) d.c[j] += p(i, j);
  }
  d.c_sorted = d.c;
  std::sort(d.c_sorted.begin(), d.c_sorted.end());
  d.vol_w = std::accumulate(d.c.begin(), d.c.end(), 0.0);

  d.support_adj = Adjacency(k);
  d.backbone_adj = Adjacency(k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      if (p(i, j) > 0.0) d.support_adj.set(i, j);
      if (p(i, j) == 1.0) d.backbone_adj.set(i, j);
    }
  }

  if (d.c_sorted.front() <= 0.0) return d;

  std::vector<double> l(k);
  for (int i = 0; i < k; ++i) l[i] = std::log(d.c[i]);
  d.L = std::move(l);

  SquareMatrix m(k), m1(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      m(i, j) = p(i, j) / d.c[i];
      m1(i, j) = p(i, j) / std::sqrt(d.c[i] * d.c[j]);
    }
  }
  d.M = std::move(m);
  d.M1 = std::move(m1);

  std::vector<double> pi(k);
  for (int i = 0; i < k; ++i) pi[i] = d.c[i] / d.vol_w;
  d.pi = std::move(pi);
  return d;
}

SupportReport AnalyzeSupport(const Adjacency& support, const Adjacency& backbone) {
  const int k = support.size();
  SupportReport report;
  std::vector<int> component(k, -1);
  std::vector<int> color(k, -1);
  bool bipartite = true;

  for (int start = 0; start < k; ++start) {
    if (component[start] >= 0) continue;
    const int id = static_cast<int>(report.components.size());
    report.components.emplace_back();
    std::queue<int> frontier;
    frontier.push(start);
    component[start] = id;
    color[start] = 0;
    while (!frontier.empty()) {
      const int i = frontier.front();
      frontier.pop();
      report.components[id].push_back(i);
      for (int j = 0; j < k; ++j) {
        if (!support(i, j)) continue;
        if (i == j) {
          bipartite = false;  // a loop is a closed walk of length one
          continue;
        }
        if (component[j] < 0) {
          component[j] = id;
          color[j] = 1 - color[i];
          frontier.push(j);
        } else if (color[j] == color[i]) {
          bipartite = false;
        }
      }
    }
    std::sort(report.components[id].begin(), report.components[id].end());
  }

  report.connected = report.components.size() == 1;
  report.bipartite = bipartite;
  if (bipartite) report.coloring = std::move(color);

  int min_degree = std::numeric_limits<int>::max();
  for (int i = 0; i < k; ++i) {
    int degree = 0;
    for (int j = 0; j < k; ++j) degree += backbone(i, j) ? 1 : 0;
    min_degree = std::min(min_degree, degree);
  }
  report.backbone_min_degree = min_degree;
  return report;
}

SupportReport CheckSupport(const GeneratorMatrix& p) {
  const DerivedQuantities d = Derive(p);
  return AnalyzeSupport(d.support_adj, d.backbone_adj);
}

std::uint64_t VertexCount(int k, int t) {
  if (k < 1 || t < 0) throw DomainError("vertex count needs k >= 1 and t >= 0");
  std::uint64_t n = 1;
  for (int i = 0; i < t; ++i) {
    if (n > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(k)) {
      throw GuardError("k^t = " + std::to_string(k) + "^" + std::to_string(t) +
                       " does not fit in 64 bits");
    }
    n *= static_cast<std::uint64_t>(k);
  }
  return n;
}

VertexWord::VertexWord(int k, std::vector<int> digits) : k_(k), digits_(std::move(digits)) {
  if (k < 1) throw DomainError("word alphabet needs k >= 1");
  for (int d : digits_) {
    if (d < 0 || d >= k) {
      throw DomainError("word digit " + std::to_string(d) + " outside [0," + std::to_string(k) + ")");
    }
  }
}

VertexWord VertexWord::FromId(std::uint64_t id, int k, int t) {
  if (id >= VertexCount(k, t)) {
    throw DomainError("vertex id " + std::to_string(id) + " out of range for k^t");
  }
  std::vector<int> digits(t);
  for (int i = t - 1; i >= 0; --i) {
    digits[i] = static_cast<int>(id % static_cast<std::uint64_t>(k));
    id /= static_cast<std::uint64_t>(k);
  }
  return VertexWord(k, std::move(digits));
}

VertexWord VertexWord::FromSymbols(int k, const std::vector<int>& one_based) {
  std::vector<int> digits(one_based.size());
  std::transform(one_based.begin(), one_based.end(), digits.begin(), [](int s) { return s - 1; });
  return VertexWord(k, std::move(digits));
}

std::uint64_t VertexWord::id() const {
  VertexCount(k_, length());
  std::uint64_t id = 0;
  for (int d : digits_) id = id * static_cast<std::uint64_t>(k_) + static_cast<std::uint64_t>(d);
  return id;
}

Signature SignatureOf(const VertexWord& w) {
  if (w.length() == 0) throw DomainError("signature of the empty word is undefined");
  Signature s{std::vector<double>(w.k(), 0.0)};
  for (int d : w.digits()) s.sigma[d] += 1.0;
  for (double& x : s.sigma) x /= w.length();
  return s;
}

double ExpectedDegree(const Signature& sigma, int t, const DerivedQuantities& d) {
  if (static_cast<int>(sigma.sigma.size()) != d.k) {
    throw DomainError("signature length does not match k");
  }
  double log_degree = 0.0;
  for (int i = 0; i < d.k; ++i) {
    if (sigma.sigma[i] == 0.0 || t == 0) continue;
    if (d.c[i] <= 0.0) {
      throw DomainError("expected degree is exactly 0: column sum c_" + std::to_string(i) +
                        " = 0 while sigma_" + std::to_string(i) + " > 0");
    }
    log_degree += sigma.sigma[i] * std::log(d.c[i]);
  }
  return std::exp(t * log_degree);
}

double EdgeProbability(const VertexWord& u, const VertexWord& v, const GeneratorMatrix& p) {
  if (u.length() != v.length()) {
    throw DomainError("words have different lengths " + std::to_string(u.length()) + " and " +
                      std::to_string(v.length()));
  }
  if (u.k() != p.k() || v.k() != p.k()) throw DomainError("word alphabet does not match k");
  double prob = 1.0;
  for (int i = 0; i < u.length(); ++i) prob *= p(u.digits()[i], v.digits()[i]);
  return prob;
}

}  // namespace skg
