#include <gtest/gtest.h>

#include <random>

#include "mpclu/complex.hpp"
#include "oracle.hpp"

using namespace mpclu;

namespace {

template <int K>
double modulus(const Complex<K>& z) {
  return std::hypot(z.re.c[0], z.im.c[0]);
}

template <int K>
void check_agreement(std::uint64_t seed) {
  std::mt19937_64 g(seed);
  for (int i = 0; i < 10000; ++i) {
    const auto a = oracle::random_complex<K>(g), b = oracle::random_complex<K>(g);
    const auto p3 = cmul_3m(a, b), p4 = cmul_4m(a, b);
    ASSERT_EQ(p3.re, p4.re);
    const double bound = 8 * eps<K>() * modulus(a) * modulus(b);
    ASSERT_LE(std::fabs((convert<8>(p3.im) - convert<8>(p4.im)).c[0]), bound);
  }
}

}  // namespace

TEST(ComplexAdd, SmallIntegersAndZero) {
  const Complex<2> a(1.0, 2.0), b(3.0, 4.0);
  EXPECT_EQ(a + b, Complex<2>(4.0, 6.0));
  EXPECT_EQ(a + Complex<2>(), a);
  EXPECT_EQ(a - a, Complex<2>());
}

TEST(ComplexAdd, RandomAgainstReference) {
  std::mt19937_64 g(41);
  for (int i = 0; i < 2000; ++i) {
    const auto a = oracle::random_complex<3>(g), b = oracle::random_complex<3>(g);
    const auto s = a + b;
    const auto w = convert<8>(a) + convert<8>(b);
    ASSERT_LE(oracle::rel_diff(s.re, w.re), 2 * eps<3>());
    ASSERT_LE(oracle::rel_diff(s.im, w.im), 2 * eps<3>());
  }
}

TEST(ComplexMul, SmallIntegersBothMethods) {
  const Complex<2> a(1.0, 2.0), b(3.0, 4.0);
  EXPECT_EQ(cmul_4m(a, b), Complex<2>(-5.0, 10.0));
  EXPECT_EQ(cmul_3m(a, b), Complex<2>(-5.0, 10.0));
  const Complex<4> c(7.0, -3.0), d(-2.0, 5.0);
  EXPECT_EQ(cmul_3m(c, d).im, cmul_4m(c, d).im);
}

TEST(ComplexMul, RealOnlyIsExactProduct) {
  std::mt19937_64 g(42);
  const auto x = oracle::random_expansion<3>(g), y = oracle::random_expansion<3>(g);
  const auto p = cmul_4m(Complex<3>(x), Complex<3>(y));
  EXPECT_EQ(p.re, x * y);
  EXPECT_TRUE(p.im.is_zero());
}

TEST(ComplexMul, DoubleDoubleAgainstReference) {
  std::mt19937_64 g(43);
  for (int i = 0; i < 5000; ++i) {
    const auto a = oracle::random_complex<2>(g), b = oracle::random_complex<2>(g);
    const auto want = cmul_4m(convert<8>(a), convert<8>(b));
    const double scale = eps<2>() * modulus(a) * modulus(b);
    // Componentwise relative error, compared absolutely when a part cancels
    // far below |a||b|.
    for (const auto& got : {cmul_4m(a, b), cmul_3m(a, b)}) {
      const double abs_re = std::fabs((convert<8>(got.re) - want.re).c[0]);
      const double abs_im = std::fabs((convert<8>(got.im) - want.im).c[0]);
      ASSERT_TRUE(abs_re <= 8 * eps<2>() * std::fabs(want.re.c[0]) || abs_re <= 8 * scale);
      ASSERT_TRUE(abs_im <= 8 * eps<2>() * std::fabs(want.im.c[0]) || abs_im <= 8 * scale);
    }
  }
}

TEST(ComplexMul, ThreeAndFourMultiplicationAgreeDD) { check_agreement<2>(44); }
TEST(ComplexMul, ThreeAndFourMultiplicationAgreeTD) { check_agreement<3>(45); }
TEST(ComplexMul, ThreeAndFourMultiplicationAgreeQD) { check_agreement<4>(46); }

TEST(ComplexMul, ApproximatelyDistributive) {
  std::mt19937_64 g(47);
  for (int i = 0; i < 2000; ++i) {
    const auto a = oracle::random_complex<3>(g), b = oracle::random_complex<3>(g), c = oracle::random_complex<3>(g);
    const auto lhs = cmul_3m(a, b + c), rhs = cmul_3m(a, b) + cmul_3m(a, c);
    const double bound = 16 * eps<3>() * modulus(a) * (modulus(b) + modulus(c));
    ASSERT_LE(std::fabs((convert<8>(lhs.re) - convert<8>(rhs.re)).c[0]), bound);
    ASSERT_LE(std::fabs((convert<8>(lhs.im) - convert<8>(rhs.im)).c[0]), bound);
  }
}

TEST(ComplexDiv, InvertsMultiplication) {
  EXPECT_EQ(cdiv(Complex<2>(-5.0, 10.0), Complex<2>(3.0, 4.0)), Complex<2>(1.0, 2.0));
  const auto inv = cinv(Complex<4>(0.0, 1.0));
  EXPECT_EQ(inv.re, Expansion<4>(0.0));
  EXPECT_EQ(inv.im, Expansion<4>(-1.0));
}

TEST(ComplexDiv, SelfDivisionAndRoundTrip) {
  std::mt19937_64 g(48);
  for (int i = 0; i < 2000; ++i) {
    const auto a = oracle::random_complex<4>(g), b = oracle::random_complex<4>(g);
    const auto one = cdiv(b, b);
    ASSERT_LE(oracle::rel_err(one.re, 1), 4 * eps<4>());
    ASSERT_LE(std::fabs(one.im.c[0]), 4 * eps<4>());
    if (modulus(b) < 0.25) continue;
    const auto back = cdiv(cmul_3m(a, b), b);
    const double tol = 32 * eps<4>() * modulus(a);
    ASSERT_LE(std::fabs((convert<8>(back.re) - convert<8>(a.re)).c[0]), tol);
    ASSERT_LE(std::fabs((convert<8>(back.im) - convert<8>(a.im)).c[0]), tol);
  }
}

TEST(ComplexDiv, RandomAgainstReference) {
  std::mt19937_64 g(49);
  for (int i = 0; i < 2000; ++i) {
    const auto a = oracle::random_complex<3>(g), b = oracle::random_complex<3>(g);
    const auto got = cdiv(a, b);
    const auto want = cdiv(convert<8>(a), convert<8>(b));
    const double scale = modulus(a) / modulus(b);
    ASSERT_LE(std::fabs((convert<8>(got.re) - want.re).c[0]), 16 * eps<3>() * scale);
    ASSERT_LE(std::fabs((convert<8>(got.im) - want.im).c[0]), 16 * eps<3>() * scale);
  }
}

TEST(ComplexDiv, ZeroDivisorThrows) {
  EXPECT_THROW(cdiv(Complex<2>(1.0), Complex<2>()), SingularError);
  EXPECT_THROW(cinv(Complex<3>()), SingularError);
}

TEST(ComplexAbs, PivotMagnitudeAndNorm) {
  const Complex<2> z(-3.0, 4.0);
  EXPECT_EQ(abs1(z), Expansion<2>(7.0));
  EXPECT_EQ(norm(z), Expansion<2>(25.0));
}
