#include <gtest/gtest.h>

#include <random>

#include "mpclu/bench.hpp"
#include "mpclu/lu.hpp"
#include "oracle.hpp"

using namespace mpclu;

namespace {

// max |PA - LU| over real and imaginary parts at 8 components, divided by
// max |A|.
template <int K>
double reconstruction_error(const ComplexMatrix<K>& a, const LUFactors<K>& f) {
  const std::size_t n = a.rows();
  ComplexMatrix<8> pa = convert<8>(a);
  for (std::size_t i = 0; i < n; ++i) pa.swap_rows(i, f.pivots[i]);
  const auto m = convert<8>(f.packed);
  double worst = 0.0, amax = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex<8> s;
      for (std::size_t k = 0; k <= std::min(i, j); ++k) {
        const Complex<8> l = k == i ? Complex<8>(1.0) : m(i, k);
        s = s + cmul_4m(l, m(k, j));
      }
      const Complex<8> d = pa(i, j) - s;
      worst = std::max({worst, std::fabs(d.re.c[0]), std::fabs(d.im.c[0])});
      amax = std::max({amax, std::fabs(a.re(i, j).c[0]), std::fabs(a.im(i, j).c[0])});
    }
  return worst / amax;
}

template <int K>
double max_rel_err_d(const ComplexVector<K>& xhat, const ComplexVector<K>& x) {
  return max_rel_err(xhat, x).c[0];
}

KernelChoice ozaki(int d) {
  KernelChoice kc;
  kc.kernel = RealKernel::kOzaki;
  kc.splits = d;
  return kc;
}

}  // namespace

TEST(LuNormal, Identity) {
  const auto id = ComplexMatrix<2>::identity(5);
  const auto f = lu_normal(id);
  EXPECT_EQ(f.packed, id);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(f.pivots[i], i);
}

TEST(LuNormal, TwoByTwoHandElimination) {
  ComplexMatrix<3> a(2, 2);
  a.set(0, 0, Complex<3>(1.0));
  a.set(0, 1, Complex<3>(2.0));
  a.set(1, 0, Complex<3>(3.0));
  a.set(1, 1, Complex<3>(4.0));
  const auto f = lu_normal(a);
  EXPECT_EQ(f.pivots[0], 1u);
  EXPECT_EQ(f.pivots[1], 1u);
  EXPECT_EQ(f.packed(0, 0), Complex<3>(3.0));
  EXPECT_EQ(f.packed(0, 1), Complex<3>(4.0));
  EXPECT_LE(oracle::rel_err(f.packed(1, 0).re, mpq_class(1, 3)), eps<3>());
  EXPECT_TRUE(f.packed(1, 0).im.is_zero());
  EXPECT_LE(oracle::rel_err(f.packed(1, 1).re, mpq_class(2, 3)), 4 * eps<3>());
}

TEST(LuNormal, PivotTiesPickLowestRow) {
  ComplexMatrix<2> a(3, 3);
  a.set(0, 0, Complex<2>(1.0));
  a.set(1, 0, Complex<2>(0.0, 2.0));
  a.set(2, 0, Complex<2>(-1.0, 1.0));
  a.set(1, 1, Complex<2>(1.0));
  a.set(2, 2, Complex<2>(1.0));
  EXPECT_EQ(lu_normal(a).pivots[0], 1u);
}

TEST(LuNormal, ReconstructionDoubleDouble) {
  std::mt19937_64 g(81);
  const auto a = oracle::random_complex_matrix<2>(64, 64, g);
  const auto f = lu_normal(a);
  const double r = reconstruction_error(a, f);
  EXPECT_LE(r, 64 * eps<2>());
  EXPECT_NEAR(lu_residual(a, f), r, 1e-3 * r + eps<2>() * 1e-3);
}

TEST(LuNormal, ReconstructionAllPrecisions) {
  std::mt19937_64 g(82);
  const auto a2 = oracle::random_complex_matrix<2>(24, 24, g);
  const auto a3 = oracle::random_complex_matrix<3>(24, 24, g);
  const auto a4 = oracle::random_complex_matrix<4>(24, 24, g);
  EXPECT_LE(reconstruction_error(a2, lu_normal(a2, 1, Method::k4M)), 64 * eps<2>());
  EXPECT_LE(reconstruction_error(a3, lu_normal(a3)), 64 * eps<3>());
  EXPECT_LE(reconstruction_error(a4, lu_normal(a4)), 64 * eps<4>());
}

TEST(LuNormal, PivotGrowthIsModest) {
  std::mt19937_64 g(83);
  const auto a = oracle::random_complex_matrix<2>(48, 48, g);
  const auto f = lu_normal(a);
  double umax = 0.0;
  for (std::size_t i = 0; i < 48; ++i)
    for (std::size_t j = i; j < 48; ++j)
      umax = std::max({umax, std::fabs(f.packed.re(i, j).c[0]), std::fabs(f.packed.im(i, j).c[0])});
  EXPECT_LE(umax, 16 * std::max(oracle::max_abs(a.re), oracle::max_abs(a.im)));
}

TEST(LuNormal, SingularColumnReported) {
  ComplexMatrix<2> a(3, 3);
  a.set(0, 0, Complex<2>(1.0));
  a.set(1, 0, Complex<2>(2.0));
  a.set(0, 1, Complex<2>(2.0));
  a.set(1, 1, Complex<2>(4.0));
  a.set(2, 2, Complex<2>(1.0));
  try {
    (void)lu_normal(a);
    FAIL() << "expected SingularError";
  } catch (const SingularError& e) {
    EXPECT_STREQ(e.what(), "singular matrix at column 1");
  }
  EXPECT_THROW(lu_blocked(a, 2, KernelChoice{}), SingularError);
  EXPECT_THROW(lu_normal(ComplexMatrix<2>(2, 3)), DimensionError);
}

TEST(LuBlocked, FullWidthPanelEqualsNormal) {
  std::mt19937_64 g(84);
  const auto a = oracle::random_complex_matrix<3>(40, 40, g);
  const auto fn = lu_normal(a);
  for (RealKernel k : {RealKernel::kNaive, RealKernel::kStrassen, RealKernel::kOzaki}) {
    KernelChoice kc;
    kc.kernel = k;
    const auto fb = lu_blocked(a, 40, kc);
    EXPECT_EQ(fb.pivots, fn.pivots);
    EXPECT_EQ(fb.packed, fn.packed);
  }
}

TEST(LuBlocked, IdentityAnyBlock) {
  const auto id = ComplexMatrix<4>::identity(10);
  for (std::size_t k : {1u, 3u, 4u, 10u}) {
    const auto f = lu_blocked(id, k, KernelChoice{});
    EXPECT_EQ(f.packed, id) << "K=" << k;
  }
}

TEST(LuBlocked, ReconstructionWithEveryKernel) {
  std::mt19937_64 g(85);
  const auto a = oracle::random_complex_matrix<2>(50, 50, g);
  for (RealKernel k : {RealKernel::kNaive, RealKernel::kBlocked, RealKernel::kStrassen, RealKernel::kOzaki})
    for (Method m : {Method::k3M, Method::k4M}) {
      KernelChoice kc;
      kc.kernel = k;
      kc.method = m;
      kc.threshold = 8;
      const auto f = lu_blocked(a, 16, kc);
      EXPECT_LE(reconstruction_error(a, f), 64 * eps<2>()) << to_string(k) << " " << to_string(m);
    }
}

TEST(LuBlocked, InvalidBlockSize) {
  const auto id = ComplexMatrix<2>::identity(4);
  EXPECT_THROW(lu_blocked(id, 0, KernelChoice{}), ConfigError);
  EXPECT_THROW(lu_blocked(id, 5, KernelChoice{}), ConfigError);
}

TEST(LuBlocked, QuadDoubleOzakiMatchesNormal) {
  const std::size_t n = 128;
  const auto p = gen_problem<4>(n, 3);
  const auto xn = solve(lu_normal(p.a), p.b);
  const auto xb = solve(lu_blocked(p.a, 32, ozaki(12)), p.b);
  for (std::size_t k = 0; k < n; ++k) {
    const double rel = std::sqrt(norm(xb(k) - xn(k)).c[0] / norm(xn(k)).c[0]);
    ASSERT_LE(rel, 1e3 * eps<4>()) << "k=" << k;
  }
}

TEST(LuBlocked, ThreadCountInvariant) {
  std::mt19937_64 g(86);
  const auto a = oracle::random_complex_matrix<2>(48, 48, g);
  const auto n1 = lu_normal(a, 1);
  KernelChoice kc;
  kc.kernel = RealKernel::kStrassen;
  kc.threshold = 8;
  const auto b1 = lu_blocked(a, 16, kc);
  for (int t : {2, 8}) {
    EXPECT_EQ(lu_normal(a, t).packed, n1.packed);
    kc.threads = t;
    EXPECT_EQ(lu_blocked(a, 16, kc).packed, b1.packed);
  }
}

TEST(Trsm, IdentityAndHandSubstitution) {
  std::mt19937_64 g(87);
  const auto b = oracle::random_complex_matrix<2>(4, 3, g);
  EXPECT_EQ(trsm_unit_lower(ComplexMatrix<2>::identity(4), b), b);
  ComplexMatrix<2> l = ComplexMatrix<2>::identity(2);
  l.set(1, 0, Complex<2>(2.0));
  ComplexMatrix<2> rhs(2, 1);
  rhs.set(0, 0, Complex<2>(1.0));
  const auto x = trsm_unit_lower(l, rhs);
  EXPECT_EQ(x(0, 0), Complex<2>(1.0));
  EXPECT_EQ(x(1, 0), Complex<2>(-2.0));
}

TEST(Trsm, RandomPanelAgainstReference) {
  std::mt19937_64 g(88);
  const std::size_t k = 16;
  auto l = oracle::random_complex_matrix<3>(k, k, g, -0.5, 0.5);
  for (std::size_t i = 0; i < k; ++i) l.set(i, i, Complex<3>(1.0));
  const auto b = oracle::random_complex_matrix<3>(k, 5, g);
  const auto x = trsm_unit_lower(l, b);
  const auto xw = trsm_unit_lower(convert<8>(l), convert<8>(b));
  double worst = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      const double den = std::sqrt(norm(xw(i, j)).c[0]);
      const double num = std::sqrt(norm(convert<8>(x(i, j)) - xw(i, j)).c[0]);
      worst = std::max(worst, num / den);
    }
  EXPECT_LE(worst, 32 * k * eps<3>());
}

TEST(Solve, IdentityAndHandSystem) {
  std::mt19937_64 g(89);
  ComplexVector<2> b(3);
  for (std::size_t i = 0; i < 3; ++i) b.set(i, oracle::random_complex<2>(g));
  EXPECT_EQ(solve(lu_normal(ComplexMatrix<2>::identity(3)), b), b);

  // [[1, i], [2, 1]] x = (1+2i + i(3+4i), 2(1+2i) + 3+4i) = (-3+5i, 5+8i)
  ComplexMatrix<2> a(2, 2);
  a.set(0, 0, Complex<2>(1.0));
  a.set(0, 1, Complex<2>(0.0, 1.0));
  a.set(1, 0, Complex<2>(2.0));
  a.set(1, 1, Complex<2>(1.0));
  ComplexVector<2> rhs(2);
  rhs.set(0, Complex<2>(-3.0, 5.0));
  rhs.set(1, Complex<2>(5.0, 8.0));
  const auto x = solve(lu_normal(a), rhs);
  EXPECT_EQ(x(0), Complex<2>(1.0, 2.0));
  EXPECT_EQ(x(1), Complex<2>(3.0, 4.0));
}

TEST(Solve, BenchmarkSystemDoubleDouble) {
  const auto p = gen_problem<2>(64, 1);
  const auto xhat = solve(lu_normal(p.a), p.b);
  EXPECT_LT(max_rel_err_d(xhat, p.x), 1e4 * eps<2>());
  EXPECT_THROW(solve(lu_normal(p.a), ComplexVector<2>(3)), DimensionError);
}

TEST(MaxRelErr, Examples) {
  const auto x = true_solution<3>(6);
  EXPECT_TRUE(max_rel_err(x, x).is_zero());
  auto y = x;
  y.set(2, x(2) + x(2));
  EXPECT_EQ(max_rel_err(y, x), TD(1.0));
  auto z = x;
  const TD s = TD(1.0) + TD(1e-30);
  for (std::size_t k = 0; k < 6; ++k) z.set(k, Complex<3>(x.re[k] * s, x.im[k] * s));
  EXPECT_LE(std::fabs(max_rel_err(z, x).c[0] - 1e-30), 1e-30 * 1e-15);
  ComplexVector<3> zero(6);
  EXPECT_THROW(max_rel_err(x, zero), Error);
}
