#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "mpclu/expansion.hpp"
#include "mpclu/expansion_io.hpp"
#include "oracle.hpp"

using namespace mpclu;

namespace {

// The leading component must be within half an ulp of the exact value.
template <int K>
void expect_leading_rounds(const Expansion<K>& x) {
  const mpq_class v = oracle::exact(x);
  const mpq_class gap = oracle::qabs(v - oracle::exact(x.c[0]));
  EXPECT_LE(gap, oracle::exact(ulp(x.c[0])) / 2);
}

template <int K>
void check_ops(std::uint64_t seed, double add_tol, double mul_tol, double div_tol) {
  std::mt19937_64 g(seed);
  double worst_add = 0, worst_mul = 0, worst_div = 0;
  for (int i = 0; i < 3000; ++i) {
    const auto x = oracle::random_expansion<K>(g), y = oracle::random_expansion<K>(g);
    const auto s = x + y, p = x * y, q = x / y;
    ASSERT_TRUE(is_normalized(s));
    ASSERT_TRUE(is_normalized(p));
    ASSERT_TRUE(is_normalized(q));
    const auto xw = convert<8>(x), yw = convert<8>(y);
    worst_add = std::max(worst_add, oracle::rel_diff(s, xw + yw));
    worst_mul = std::max(worst_mul, oracle::rel_diff(p, xw * yw));
    worst_div = std::max(worst_div, oracle::rel_diff(q, xw / yw));
  }
  EXPECT_LE(worst_add, add_tol * eps<K>());
  EXPECT_LE(worst_mul, mul_tol * eps<K>());
  EXPECT_LE(worst_div, div_tol * eps<K>());
}

}  // namespace

TEST(Eps, UnitRoundoffMatchesBitCounts) {
  EXPECT_EQ(eps<2>(), 0x1p-105);
  EXPECT_EQ(eps<3>(), 0x1p-158);
  EXPECT_EQ(eps<4>(), 0x1p-211);
}

TEST(Renormalize, AlreadyNormalized) {
  const std::vector<double> raw{1.0, 0.0};
  const DD x = renormalize<2>(raw);
  EXPECT_EQ(x.c[0], 1.0);
  EXPECT_EQ(x.c[1], 0.0);
}

TEST(Renormalize, ReordersIntoCanonicalForm) {
  const std::vector<double> raw{0x1p-60, 1.0};
  const DD x = renormalize<2>(raw);
  EXPECT_EQ(x.c[0], 1.0);
  EXPECT_EQ(x.c[1], 0x1p-60);
}

TEST(Renormalize, RandomListsAgainstExactSum) {
  std::mt19937_64 g(21);
  for (int trial = 0; trial < 5000; ++trial) {
    std::vector<double> raw(6);
    mpq_class sum = 0;
    for (double& v : raw) {
      v = oracle::wide_double(g, -40, 40);
      sum += oracle::exact(v);
    }
    const QD x = renormalize<4>(raw);
    ASSERT_TRUE(is_normalized(x));
    ASSERT_LE(oracle::rel_err(x, sum), eps<4>());
    expect_leading_rounds(x);
  }
}

TEST(Renormalize, HeavyCancellationIsExactWhenRepresentable) {
  const std::vector<double> raw{1.0, 0x1p-80, -1.0, 0x1p-200, -0x1p-80};
  const TD x = renormalize<3>(raw);
  EXPECT_EQ(x.c[0], 0x1p-200);
  EXPECT_EQ(x.c[1], 0.0);
}

TEST(Renormalize, NonoverlapBoundHolds) {
  std::mt19937_64 g(22);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> raw(10);
    for (double& v : raw) v = oracle::wide_double(g, -20, 20);
    const Expansion<8> x = renormalize<8>(raw);
    for (int i = 0; i + 1 < 8; ++i) {
      if (x.c[i] == 0.0) break;
      ASSERT_LE(std::fabs(x.c[i + 1]), ulp(x.c[i]) / 2);
    }
  }
}

TEST(ExpAdd, IdentityAndCancellation) {
  std::mt19937_64 g(23);
  const QD x = oracle::random_expansion<4>(g);
  EXPECT_EQ(x + QD(0.0), x);
  EXPECT_TRUE((x + (-x)).is_zero());
  const DD y = oracle::random_expansion<2>(g);
  EXPECT_EQ(y + DD(0.0), y);
  EXPECT_TRUE((y - y).is_zero());
}

TEST(ExpMul, IdentityAndSmallIntegers) {
  std::mt19937_64 g(24);
  const TD x = oracle::random_expansion<3>(g);
  EXPECT_EQ(x * TD(1.0), x);
  EXPECT_EQ(DD(3.0) * DD(4.0), DD(12.0));
  EXPECT_EQ(QD(3.0) * QD(4.0), QD(12.0));
}

TEST(ExpDiv, SelfDivisionIdentityAndZero) {
  std::mt19937_64 g(25);
  const TD x = oracle::random_expansion<3>(g);
  EXPECT_LE(oracle::rel_err(x / x, 1), eps<3>());
  EXPECT_EQ(x / TD(1.0), x);
  try {
    (void)(x / TD(0.0));
    FAIL() << "expected SingularError";
  } catch (const SingularError& e) {
    EXPECT_STREQ(e.what(), "singular scalar divide");
  }
}

TEST(ExpArith, DoubleDoubleAgainstReference) { check_ops<2>(31, 2.0, 4.0, 8.0); }
TEST(ExpArith, TripleDoubleAgainstReference) { check_ops<3>(32, 2.0, 4.0, 8.0); }
TEST(ExpArith, QuadDoubleAgainstReference) { check_ops<4>(33, 2.0, 4.0, 8.0); }

TEST(ExpArith, ReferenceAgainstExactRationals) {
  std::mt19937_64 g(34);
  for (int i = 0; i < 500; ++i) {
    const auto x = oracle::random_expansion<8>(g), y = oracle::random_expansion<8>(g);
    const mpq_class ex = oracle::exact(x), ey = oracle::exact(y);
    ASSERT_LE(oracle::rel_err(x + y, ex + ey), 2 * eps<8>());
    ASSERT_LE(oracle::rel_err(x * y, ex * ey), 4 * eps<8>());
    ASSERT_LE(oracle::rel_err(x / y, ex / ey), 8 * eps<8>());
  }
}

TEST(ExpArith, CommutativeBitwise) {
  std::mt19937_64 g(35);
  for (int i = 0; i < 2000; ++i) {
    const auto a = oracle::random_expansion<3>(g), b = oracle::random_expansion<3>(g);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    const auto c = oracle::random_expansion<2>(g), d = oracle::random_expansion<2>(g);
    ASSERT_EQ(c + d, d + c);
    ASSERT_EQ(c * d, d * c);
    const auto e = oracle::random_expansion<4>(g), f = oracle::random_expansion<4>(g);
    ASSERT_EQ(e + f, f + e);
    ASSERT_EQ(e * f, f * e);
  }
}

TEST(ExpArith, PrecisionLadderOnScalars) {
  std::mt19937_64 g(36);
  double e2 = 0, e3 = 0, e4 = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto x = oracle::random_expansion<8>(g), y = oracle::random_expansion<8>(g);
    const auto ref = x * y + x;
    e2 = std::max(e2, oracle::rel_diff(convert<2>(x) * convert<2>(y) + convert<2>(x), ref));
    e3 = std::max(e3, oracle::rel_diff(convert<3>(x) * convert<3>(y) + convert<3>(x), ref));
    e4 = std::max(e4, oracle::rel_diff(convert<4>(x) * convert<4>(y) + convert<4>(x), ref));
  }
  EXPECT_LE(e4, e3);
  EXPECT_LE(e3, e2);
}

TEST(ExpArith, OutputsPassNonoverlapCheckUnderCancellation) {
  std::mt19937_64 g(37);
  for (int i = 0; i < 3000; ++i) {
    const auto x = oracle::random_expansion<4>(g);
    auto y = x;
    y.c[3] *= 0.5;
    const auto d = x - y;
    ASSERT_TRUE(is_normalized(d));
    ASSERT_EQ(oracle::exact(d), oracle::exact(x) - oracle::exact(y));
    expect_leading_rounds(x * y);
  }
}

TEST(Compare, SignOfExactDifference) {
  const TD a(1.0);
  TD b = a + 0x1p-150;
  EXPECT_EQ(compare(a, b), -1);
  EXPECT_EQ(compare(b, a), 1);
  EXPECT_EQ(compare(b, b), 0);
}

TEST(Sqrt, SquaresBack) {
  std::mt19937_64 g(38);
  for (int i = 0; i < 200; ++i) {
    const auto x = abs(oracle::random_expansion<4>(g));
    const auto r = sqrt(x);
    ASSERT_LE(oracle::rel_err(r * r, oracle::exact(x)), 8 * eps<4>());
  }
  EXPECT_EQ(sqrt(QD(1.0)), QD(1.0));
}

TEST(DecimalIo, OneAndHalf) {
  EXPECT_EQ(to_string(DD(1.0), 5), "1.0000e+00");
  EXPECT_EQ(to_string(DD(1.0)).substr(0, 4), "1.00");
  const TD h = from_string<3>("0.5");
  EXPECT_EQ(h.c[0], 0.5);
  EXPECT_EQ(h.c[1], 0.0);
  EXPECT_EQ(h.c[2], 0.0);
}

TEST(DecimalIo, PiRoundTripsAtQuadDouble) {
  const std::string pi = "3.14159265358979323846264338327950288419716939937510582097494459";
  const QD x = from_string<4>(pi);
  EXPECT_EQ(x.c[0], 3.141592653589793116e+00);
  EXPECT_EQ(x.c[1], 1.224646799147353207e-16);
  EXPECT_EQ(x.c[2], -2.994769809718339666e-33);
  // The string is a 63-digit truncation of pi, so only the last component
  // departs from the correctly rounded constant; check it against the exact
  // rational value of the string instead.
  const mpq_class exact_string("314159265358979323846264338327950288419716939937510582097494459/"
                               "100000000000000000000000000000000000000000000000000000000000000");
  EXPECT_LE(oracle::rel_err(x, exact_string), eps<4>());
  EXPECT_NEAR(x.c[3], 1.112454220863365282e-49, 1e-62);
  EXPECT_EQ(decimal_digits<4>(), 63);
  EXPECT_EQ(to_string(x), "3.14159265358979323846264338327950288419716939937510582097494459e+00");
}

TEST(DecimalIo, RoundTripsRandomValues) {
  std::mt19937_64 g(39);
  for (int i = 0; i < 300; ++i) {
    const auto x = oracle::random_expansion<3>(g) * std::ldexp(1.0, static_cast<int>(g() % 200) - 100);
    const std::string s = to_string(x);
    ASSERT_EQ(to_string(from_string<3>(s)), s);
    const auto y = oracle::random_expansion<2>(g);
    ASSERT_EQ(to_string(from_string<2>(to_string(y))), to_string(y));
  }
}

TEST(DecimalIo, SignsExponentsAndErrors) {
  EXPECT_EQ(from_string<2>("-2.5e-3").c[0], -2.5e-3);
  EXPECT_EQ(from_string<2>("+125E+1").c[0], 1250.0);
  EXPECT_EQ(to_string(DD(-1250.0), 3), "-1.25e+03");
  EXPECT_EQ(to_string(DD(0.0), 3), "0.00e+00");
  for (const char* bad : {"", "abc", "1.2.3", "1e", "1e+", "--1", "1x", "."})
    EXPECT_THROW(from_string<2>(bad), ParseError) << bad;
}
