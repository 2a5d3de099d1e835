#include "skg/dense.hpp"

#include <cassert>

#include "skg/errors.hpp"

namespace skg {

SquareMatrix::SquareMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : n_(static_cast<int>(rows.size())) {
  data_.reserve(static_cast<std::size_t>(n_) * n_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n_) {
      throw ValidationError("matrix is not square");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

SquareMatrix SquareMatrix::Identity(int n) {
  SquareMatrix id(n);
  for (int i = 0; i < n; ++i) id(i, i) = 1.0;
  return id;
}

SquareMatrix SquareMatrix::FromRows(const std::vector<std::vector<double>>& rows) {
  SquareMatrix m(static_cast<int>(rows.size()));
  for (int i = 0; i < m.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != m.size()) {
      throw ValidationError("matrix row " + std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(m.size()));
    }
    for (int j = 0; j < m.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
  assert(a.size() == b.size());
  const int n = a.size();
  SquareMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) {
      const double ail = a(i, l);
      if (ail == 0.0) continue;
      for (int j = 0; j < n; ++j) out(i, j) += ail * b(l, j);
    }
  }
  return out;
}

std::vector<double> RowTimes(std::span<const double> x, const SquareMatrix& m) {
  assert(static_cast<int>(x.size()) == m.size());
  std::vector<double> out(x.size(), 0.0);
  for (int i = 0; i < m.size(); ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < m.size(); ++j) out[j] += x[i] * m(i, j);
  }
  return out;
}

SquareMatrix MatrixPower(const SquareMatrix& m, long long s) {
  if (s < 0) throw DomainError("negative matrix power");
  SquareMatrix result = SquareMatrix::Identity(m.size());
  SquareMatrix base = m;
  while (s > 0) {
    if (s & 1) result = result * base;
    s >>= 1;
    if (s > 0) base = base * base;
  }
  return result;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace skg
