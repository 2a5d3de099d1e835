#ifndef SKG_DENSE_HPP_
#define SKG_DENSE_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace skg {

// Row-major n x n matrix of doubles. Sized for generator-level work (k <= 64),
// plus the occasional dense Kronecker power in tests.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n, double fill = 0.0)
      : n_(n), data_(static_cast<std::size_t>(n) * n, fill) {}
  SquareMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static SquareMatrix Identity(int n);
  static SquareMatrix FromRows(const std::vector<std::vector<double>>& rows);

  int size() const noexcept { return n_; }
  double& operator()(int i, int j) noexcept { return data_[idx(i, j)]; }
  double operator()(int i, int j) const noexcept { return data_[idx(i, j)]; }
  std::span<const double> row(int i) const noexcept {
    return {data_.data() + idx(i, 0), static_cast<std::size_t>(n_)};
  }
  std::span<const double> data() const noexcept { return data_; }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t idx(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * n_ + j;
  }

  int n_ = 0;
  std::vector<double> data_;
};

// x M for a row vector x.
std::vector<double> RowTimes(std::span<const double> x, const SquareMatrix& m);

// M^s by repeated squaring.
SquareMatrix MatrixPower(const SquareMatrix& m, long long s);

double Dot(std::span<const double> a, std::span<const double> b);

}  // namespace skg

#endif  // SKG_DENSE_HPP_
