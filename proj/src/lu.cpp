#include "mpclu/lu.hpp"

#include <string>

#include "mpclu/parallel.hpp"

namespace mpclu {

namespace {

// Factors columns [j0, j1) of m in place. Row swaps span the whole row;
// eliminations touch only columns below j1.
template <int K>
void factor_panel(ComplexMatrix<K>& m, std::vector<std::size_t>& pivots, std::size_t j0, std::size_t j1,
                  int threads, Method method) {
  const std::size_t n = m.rows();
  for (std::size_t j = j0; j < j1; ++j) {
    std::size_t p = j;
    Expansion<K> best = abs1(m(j, j));
    for (std::size_t i = j + 1; i < n; ++i) {
      Expansion<K> v = abs1(m(i, j));
      if (compare(v, best) > 0) {
        best = v;
        p = i;
      }
    }
    if (best.is_zero()) throw SingularError("singular matrix at column " + std::to_string(j));
    pivots[j] = p;
    m.swap_rows(j, p);

    const Complex<K> diag = m(j, j);
    std::vector<Complex<K>> urow(j1 - j - 1);
    for (std::size_t c = j + 1; c < j1; ++c) urow[c - j - 1] = m(j, c);

    parallel_for(threads, j + 1, n, [&](std::size_t i) {
      const Complex<K> l = cdiv(m(i, j), diag);
      m.set(i, j, l);
      for (std::size_t c = j + 1; c < j1; ++c) m.set(i, c, m(i, c) - cmul(l, urow[c - j - 1], method));
    });
  }
}

}  // namespace

template <int K>
LUFactors<K> lu_normal(const ComplexMatrix<K>& a, int threads, Method method) {
  if (a.rows() != a.cols()) throw DimensionError("LU needs a square matrix");
  if (threads < 1) throw ConfigError("thread count must be >= 1");
  LUFactors<K> f{a, std::vector<std::size_t>(a.rows())};
  factor_panel(f.packed, f.pivots, 0, a.rows(), threads, method);
  return f;
}

template <int K>
LUFactors<K> lu_blocked(const ComplexMatrix<K>& a, std::size_t block, const KernelChoice& kc) {
  const std::size_t n = a.rows();
  if (a.rows() != a.cols()) throw DimensionError("LU needs a square matrix");
  if (block < 1 || block > std::max<std::size_t>(n, 1)) throw ConfigError("block size K must lie in [1, n]");
  kc.validate();
  LUFactors<K> f{a, std::vector<std::size_t>(n)};
  ComplexMatrix<K>& m = f.packed;
  for (std::size_t j0 = 0; j0 < n; j0 += block) {
    const std::size_t j1 = std::min(n, j0 + block), w = j1 - j0, rest = n - j1;
    factor_panel(m, f.pivots, j0, j1, kc.threads, kc.method);
    if (rest == 0) break;
    ComplexMatrix<K> u12 = trsm_unit_lower(m.block(j0, j0, w, w), m.block(j0, j1, w, rest), kc.threads, kc.method);
    m.set_block(j0, j1, u12);
    ComplexMatrix<K> prod = cgemm(m.block(j1, j0, rest, w), u12, kc);
    ComplexMatrix<K> a22 = m.block(j1, j1, rest, rest);
    m.set_block(j1, j1, {mat_sub(a22.re, prod.re, kc.threads), mat_sub(a22.im, prod.im, kc.threads)});
  }
  return f;
}

template <int K>
ComplexMatrix<K> trsm_unit_lower(const ComplexMatrix<K>& l, const ComplexMatrix<K>& b, int threads, Method method) {
  const std::size_t n = l.rows();
  if (l.cols() != n || b.rows() != n) throw DimensionError("triangular solve shape mismatch");
  ComplexMatrix<K> x = b;
  parallel_for(threads, 0, b.cols(), [&](std::size_t c) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex<K> xk = x(k, c);
      for (std::size_t i = k + 1; i < n; ++i) x.set(i, c, x(i, c) - cmul(l(i, k), xk, method));
    }
  });
  return x;
}

template <int K>
ComplexVector<K> apply_pivots(const std::vector<std::size_t>& pivots, const ComplexVector<K>& v) {
  if (pivots.size() != v.size()) throw DimensionError("pivot vector length mismatch");
  ComplexVector<K> out = v;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    std::swap(out.re[i], out.re[pivots[i]]);
    std::swap(out.im[i], out.im[pivots[i]]);
  }
  return out;
}

template <int K>
ComplexVector<K> solve(const LUFactors<K>& f, const ComplexVector<K>& b, Method method) {
  const ComplexMatrix<K>& m = f.packed;
  const std::size_t n = m.rows();
  if (b.size() != n) throw DimensionError("right-hand side length mismatch");
  ComplexVector<K> y = apply_pivots(f.pivots, b);
  for (std::size_t i = 0; i < n; ++i) {
    Complex<K> s = y(i);
    for (std::size_t k = 0; k < i; ++k) s = s - cmul(m(i, k), y(k), method);
    y.set(i, s);
  }
  for (std::size_t i = n; i-- > 0;) {
    Complex<K> s = y(i);
    for (std::size_t k = i + 1; k < n; ++k) s = s - cmul(m(i, k), y(k), method);
    y.set(i, cdiv(s, m(i, i)));
  }
  return y;
}

template <int K>
Expansion<K> max_rel_err(const ComplexVector<K>& xhat, const ComplexVector<K>& x) {
  if (xhat.size() != x.size()) throw DimensionError("vector length mismatch");
  Expansion<K> worst;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Expansion<K> den = norm(x(k));
    if (den.is_zero()) throw Error("relative error undefined for a zero true component");
    const Expansion<K> r = norm(xhat(k) - x(k)) / den;
    if (compare(r, worst) > 0) worst = r;
  }
  return sqrt(worst);
}

template <int K>
double lu_residual(const ComplexMatrix<K>& a, const LUFactors<K>& f, int threads) {
  constexpr int W = K + 1;
  const std::size_t n = a.rows();
  if (a.cols() != n || f.packed.rows() != n) throw DimensionError("residual shape mismatch");
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = 0; i < n; ++i) std::swap(perm[i], perm[f.pivots[i]]);

  const ComplexMatrix<W> lu = convert<W>(f.packed);
  std::vector<double> row_max(n, 0.0);
  parallel_for(threads, 0, n, [&](std::size_t i) {
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t kmax = std::min(i, j);
      Complex<W> s = convert<W>(a(perm[i], j));
      for (std::size_t k = 0; k < kmax; ++k) s = s - cmul_4m(lu(i, k), lu(k, j));
      s = s - (i <= j ? lu(i, j) : cmul_4m(lu(i, j), lu(j, j)));
      worst = std::max({worst, std::fabs(s.re.c[0]), std::fabs(s.im.c[0])});
    }
    row_max[i] = worst;
  });
  double amax = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      amax = std::max({amax, std::fabs(a.re(i, j).c[0]), std::fabs(a.im(i, j).c[0])});
  double worst = 0.0;
  for (double r : row_max) worst = std::max(worst, r);
  return amax == 0.0 ? worst : worst / amax;
}

#define MPCLU_INSTANTIATE_LU(K)                                                                           \
  template LUFactors<K> lu_normal<K>(const ComplexMatrix<K>&, int, Method);                               \
  template LUFactors<K> lu_blocked<K>(const ComplexMatrix<K>&, std::size_t, const KernelChoice&);         \
  template ComplexMatrix<K> trsm_unit_lower<K>(const ComplexMatrix<K>&, const ComplexMatrix<K>&, int, Method); \
  template ComplexVector<K> solve<K>(const LUFactors<K>&, const ComplexVector<K>&, Method);               \
  template Expansion<K> max_rel_err<K>(const ComplexVector<K>&, const ComplexVector<K>&);                 \
  template double lu_residual<K>(const ComplexMatrix<K>&, const LUFactors<K>&, int);                      \
  template ComplexVector<K> apply_pivots<K>(const std::vector<std::size_t>&, const ComplexVector<K>&);

MPCLU_INSTANTIATE_LU(2)
MPCLU_INSTANTIATE_LU(3)
MPCLU_INSTANTIATE_LU(4)
MPCLU_INSTANTIATE_LU(8)

}  // namespace mpclu
