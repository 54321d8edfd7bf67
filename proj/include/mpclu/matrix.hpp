#pragma once

// Dense matrices of expansions.
//
// RealMatrix stores one row-major plane per component: plane c holds the
// c-th component of every entry, so consecutive entries of equal
// significance are contiguous. ComplexMatrix keeps separate real and
// imaginary RealMatrix planes.

#include <cstddef>
#include <span>
#include <vector>

#include "mpclu/complex.hpp"
#include "mpclu/error.hpp"
#include "mpclu/expansion.hpp"

namespace mpclu {

template <int K>
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(K) * rows * cols, 0.0) {}

  static RealMatrix identity(std::size_t n) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, Expansion<K>(1.0));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return rows_ * cols_; }
  bool empty() const { return size() == 0; }

  Expansion<K> operator()(std::size_t i, std::size_t j) const {
    Expansion<K> x;
    const std::size_t at = i * cols_ + j, stride = size();
    for (int c = 0; c < K; ++c) x.c[c] = data_[c * stride + at];
    return x;
  }

  void set(std::size_t i, std::size_t j, const Expansion<K>& x) {
    const std::size_t at = i * cols_ + j, stride = size();
    for (int c = 0; c < K; ++c) data_[c * stride + at] = x.c[c];
  }

  std::span<double> plane(int c) { return {data_.data() + c * size(), size()}; }
  std::span<const double> plane(int c) const { return {data_.data() + c * size(), size()}; }

  /// Copy of the nr x nc submatrix at (r0, c0).
  RealMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    RealMatrix out(nr, nc);
    for (int c = 0; c < K; ++c) {
      const double* src = data_.data() + c * size();
      double* dst = out.data_.data() + c * out.size();
      for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) dst[i * nc + j] = src[(r0 + i) * cols_ + c0 + j];
    }
    return out;
  }

  void set_block(std::size_t r0, std::size_t c0, const RealMatrix& b) {
    for (int c = 0; c < K; ++c) {
      const double* src = b.data_.data() + c * b.size();
      double* dst = data_.data() + c * size();
      for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) dst[(r0 + i) * cols_ + c0 + j] = src[i * b.cols_ + j];
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (int c = 0; c < K; ++c) {
      double* p = data_.data() + c * size();
      for (std::size_t j = 0; j < cols_; ++j) std::swap(p[a * cols_ + j], p[b * cols_ + j]);
    }
  }

  friend bool operator==(const RealMatrix&, const RealMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Complex matrix in planar layout.
template <int K>
struct ComplexMatrix {
  RealMatrix<K> re;
  RealMatrix<K> im;

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : re(rows, cols), im(rows, cols) {}
  ComplexMatrix(RealMatrix<K> r, RealMatrix<K> i) : re(std::move(r)), im(std::move(i)) {
    if (re.rows() != im.rows() || re.cols() != im.cols())
      throw DimensionError("real and imaginary planes differ in shape");
  }

  static ComplexMatrix identity(std::size_t n) { return {RealMatrix<K>::identity(n), RealMatrix<K>(n, n)}; }

  std::size_t rows() const { return re.rows(); }
  std::size_t cols() const { return re.cols(); }

  Complex<K> operator()(std::size_t i, std::size_t j) const { return {re(i, j), im(i, j)}; }
  void set(std::size_t i, std::size_t j, const Complex<K>& z) {
    re.set(i, j, z.re);
    im.set(i, j, z.im);
  }

  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    return {re.block(r0, c0, nr, nc), im.block(r0, c0, nr, nc)};
  }
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b) {
    re.set_block(r0, c0, b.re);
    im.set_block(r0, c0, b.im);
  }
  void swap_rows(std::size_t a, std::size_t b) {
    re.swap_rows(a, b);
    im.swap_rows(a, b);
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;
};

/// Complex vector in planar layout.
template <int K>
struct ComplexVector {
  std::vector<Expansion<K>> re;
  std::vector<Expansion<K>> im;

  ComplexVector() = default;
  explicit ComplexVector(std::size_t n) : re(n), im(n) {}

  std::size_t size() const { return re.size(); }
  Complex<K> operator()(std::size_t i) const { return {re[i], im[i]}; }
  void set(std::size_t i, const Complex<K>& z) {
    re[i] = z.re;
    im[i] = z.im;
  }

  friend bool operator==(const ComplexVector&, const ComplexVector&) = default;
};

/// Plain row-major binary64 matrix, the operand type of split products.
struct Binary64Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Binary64Matrix() = default;
  Binary64Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  friend bool operator==(const Binary64Matrix&, const Binary64Matrix&) = default;
};

template <int M, int K>
RealMatrix<M> convert(const RealMatrix<K>& a) {
  RealMatrix<M> out(a.rows(), a.cols());
  for (int c = 0; c < M && c < K; ++c) {
    auto src = a.plane(c);
    auto dst = out.plane(c);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return out;
}

template <int M, int K>
ComplexMatrix<M> convert(const ComplexMatrix<K>& a) {
  return {convert<M>(a.re), convert<M>(a.im)};
}

template <int M, int K>
ComplexVector<M> convert(const ComplexVector<K>& v) {
  ComplexVector<M> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.re[i] = convert<M>(v.re[i]);
    out.im[i] = convert<M>(v.im[i]);
  }
  return out;
}

}  // namespace mpclu
