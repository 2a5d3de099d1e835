#ifndef SKG_GENMATRIX_HPP_
#define SKG_GENMATRIX_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "skg/dense.hpp"

namespace skg {

using Rational = boost::multiprecision::cpp_rational;

// The symmetric k x k generator P in [0,1]^{k x k}. Optionally carries exact
// rational entries mirroring the doubles; classification uses them to decide
// equalities that sit exactly on a regime boundary.
class GeneratorMatrix {
 public:
  // Throws ValidationError naming the first offending entry.
  explicit GeneratorMatrix(SquareMatrix entries,
                           std::optional<std::vector<Rational>> rational = std::nullopt);

  static GeneratorMatrix FromRows(const std::vector<std::vector<double>>& rows) {
    return GeneratorMatrix(SquareMatrix::FromRows(rows));
  }
  // Builds both the exact and the double representation from "num/den" strings.
  static GeneratorMatrix FromRationalRows(const std::vector<std::vector<std::string>>& rows);

  int k() const noexcept { return entries_.size(); }
  double operator()(int i, int j) const noexcept { return entries_(i, j); }
  const SquareMatrix& entries() const noexcept { return entries_; }

  bool has_rational() const noexcept { return rational_.has_value(); }
  const Rational& rational(int i, int j) const { return (*rational_)[i * k() + j]; }

 private:
  SquareMatrix entries_;
  std::optional<std::vector<Rational>> rational_;
};

Rational ParseRational(const std::string& text);

// Symmetric boolean k x k relation.
class Adjacency {
 public:
  Adjacency() = default;
  explicit Adjacency(int k) : k_(k), bits_(static_cast<std::size_t>(k) * k, 0) {}
  int size() const noexcept { return k_; }
  bool operator()(int i, int j) const noexcept { return bits_[i * k_ + j] != 0; }
  void set(int i, int j) noexcept { bits_[i * k_ + j] = bits_[j * k_ + i] = 1; }

 private:
  int k_ = 0;
  std::vector<unsigned char> bits_;
};

// Quantities derived from P. Column sums keep the original index order; the
// nondecreasing copy is what classification works with. When some column sum
// is zero, the walk-related fields (L, M, M1, pi) are absent.
struct DerivedQuantities {
  int k = 0;
  std::vector<double> c;
  std::vector<double> c_sorted;
  double vol_w = 0.0;
  std::optional<std::vector<double>> L;
  std::optional<SquareMatrix> M;   // C^{-1} P, row-stochastic
  std::optional<SquareMatrix> M1;  // C^{-1/2} P C^{-1/2}
  std::optional<std::vector<double>> pi;
  Adjacency support_adj;   // P_ij > 0
  Adjacency backbone_adj;  // P_ij == 1

  bool has_walk() const noexcept { return M.has_value(); }
  double c_min() const { return c_sorted.front(); }
  double c_max() const { return c_sorted.back(); }
};

DerivedQuantities Derive(const GeneratorMatrix& p);

struct SupportReport {
  bool connected = false;
  bool bipartite = false;
  std::vector<std::vector<int>> components;
  // 0/1 side per vertex when bipartite, empty otherwise.
  std::vector<int> coloring;
  // Degree in the backbone graph; a loop counts once at its vertex.
  int backbone_min_degree = 0;
};

SupportReport CheckSupport(const GeneratorMatrix& p);
SupportReport AnalyzeSupport(const Adjacency& support, const Adjacency& backbone);

// A vertex of the order-t graph as a word over {0,...,k-1} (symbol s is printed
// as s+1). The id is the big-endian base-k reading of the digits.
class VertexWord {
 public:
  VertexWord(int k, std::vector<int> digits);
  static VertexWord FromId(std::uint64_t id, int k, int t);
  // Digits given with 1-based symbols, e.g. {1,2,1,2,5,1}.
  static VertexWord FromSymbols(int k, const std::vector<int>& one_based);

  int k() const noexcept { return k_; }
  int length() const noexcept { return static_cast<int>(digits_.size()); }
  std::span<const int> digits() const noexcept { return digits_; }
  std::uint64_t id() const;

 private:
  int k_;
  std::vector<int> digits_;
};

// k^t, throwing GuardError if it does not fit in 64 bits.
std::uint64_t VertexCount(int k, int t);

struct Signature {
  std::vector<double> sigma;
};

Signature SignatureOf(const VertexWord& w);

// E[deg v] = prod_i c_i^{sigma_i t} = exp(t <sigma, L>). The diagonal cell is
// included, matching the Kronecker-power row sum.
double ExpectedDegree(const Signature& sigma, int t, const DerivedQuantities& d);

double EdgeProbability(const VertexWord& u, const VertexWord& v, const GeneratorMatrix& p);

}  // namespace skg

#endif  // SKG_GENMATRIX_HPP_
