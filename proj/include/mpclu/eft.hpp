#pragma once

// Error-free transformations on binary64.
//
// All routines assume round-to-nearest-even and no contraction of a*b+c
// into an fma by the compiler (the build passes -ffp-contract=off).

#include <cmath>
#include <utility>

namespace mpclu {

struct SumErr {
  double s;
  double e;
};

// s + e == a + b exactly, s == fl(a + b).
inline SumErr two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}

// Requires |a| >= |b| or a == 0.
inline SumErr fast_two_sum(double a, double b) {
  double s = a + b;
  double e = b - (s - a);
  return {s, e};
}

// Veltkamp split into two 26-bit halves.
inline std::pair<double, double> veltkamp_split(double a) {
  constexpr double kSplitter = 134217729.0;  // 2^27 + 1
  double t = kSplitter * a;
  double hi = t - (t - a);
  return {hi, a - hi};
}

inline SumErr two_prod_dekker(double a, double b) {
  double p = a * b;
  auto [ah, al] = veltkamp_split(a);
  auto [bh, bl] = veltkamp_split(b);
  double e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
  return {p, e};
}

inline SumErr two_prod_fma(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

// p + e == a * b exactly, p == fl(a * b). Uses the hardware fma when the
// target has one; the Dekker form gives bit-identical output otherwise.
inline SumErr two_prod(double a, double b) {
#if defined(__FMA__) || defined(__aarch64__)
  return two_prod_fma(a, b);
#else
  return two_prod_dekker(a, b);
#endif
}

}  // namespace mpclu
