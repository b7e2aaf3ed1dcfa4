#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "sofree/errors.hpp"

namespace sofree {

/// Small dense square matrix over an exact scalar (mpq_class by default).
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), T(0)) {}

  static DenseMatrix identity(int n) {
    DenseMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static DenseMatrix diagonal(const std::vector<T>& entries) {
    DenseMatrix m(static_cast<int>(entries.size()));
    for (int i = 0; i < m.n_; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
    return m;
  }

  int rows() const { return n_; }
  int cols() const { return n_; }

  T& operator()(int i, int j) { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[index(i, j)]; }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    detail::require(a.n_ == b.n_, "matrix product: dimension mismatch");
    DenseMatrix out(a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < a.n_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  T trace() const {
    T t(0);
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }
  int n_ = 0;
  std::vector<T> data_;
};

using ExactMatrix = DenseMatrix<mpq_class>;

}  // namespace sofree
