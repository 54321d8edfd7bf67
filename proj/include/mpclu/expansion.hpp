#pragma once

// Multi-component extended precision reals.
//
// An Expansion<K> is an unevaluated sum of K binary64 values, most
// significant first, kept nonoverlapping: for every adjacent pair with a
// nonzero head, fl(c[i] + c[i+1]) == c[i], and zeros only trail. K = 2, 3, 4
// are the double-double, triple-double and quad-double formats; K = 8 is used
// as a reference precision when checking the others.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>
#include <algorithm>

#include "mpclu/eft.hpp"
#include "mpclu/error.hpp"

namespace mpclu {

template <int K>
struct Expansion {
  static_assert(K >= 2, "an expansion needs at least two components");
  static constexpr int kComponents = K;

  std::array<double, K> c{};

  constexpr Expansion() = default;
  constexpr Expansion(double x) : c{x} {}  // NOLINT: implicit by design of the numeric type

  constexpr double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  constexpr double leading() const { return c[0]; }
  constexpr bool is_zero() const { return c[0] == 0.0; }

  friend constexpr bool operator==(const Expansion&, const Expansion&) = default;
};

using DD = Expansion<2>;
using TD = Expansion<3>;
using QD = Expansion<4>;
using Reference = Expansion<8>;

/// Unit round-off of a K-component expansion, 2^-(53K - 1).
template <int K>
constexpr double eps() {
  double e = 1.0;
  for (int i = 0; i < 53 * K - 1; ++i) e *= 0.5;
  return e;
}

/// Spacing of binary64 numbers at |x| (ulp(1) == 2^-52).
inline double ulp(double x) {
  if (x == 0.0 || !std::isfinite(x)) return 0.0;
  int e;
  std::frexp(x, &e);
  return std::ldexp(1.0, e - 53);
}

namespace detail {

// Strict weak order by decreasing magnitude; equal magnitudes are ordered by
// value, so the sorted sequence depends only on the multiset of terms.
inline bool before(double a, double b) {
  double fa = std::fabs(a), fb = std::fabs(b);
  return fa > fb || (fa == fb && a > b);
}

inline int drop_zeros(double* t, int n) {
  int m = 0;
  for (int i = 0; i < n; ++i)
    if (t[i] != 0.0) t[m++] = t[i];
  for (int i = m; i < n; ++i) t[i] = 0.0;
  return m;
}

inline void insertion_sort(double* t, int n) {
  for (int i = 1; i < n; ++i) {
    double v = t[i];
    int j = i - 1;
    while (j >= 0 && before(v, t[j])) {
      t[j + 1] = t[j];
      --j;
    }
    t[j + 1] = v;
  }
}

// Repeated bottom-up VecSum passes (each exact) until a pass changes nothing,
// which happens exactly when adjacent terms no longer overlap; the leading K
// terms are then extracted. Input should be roughly sorted by decreasing
// magnitude for fast convergence.
template <int K>
inline Expansion<K> vecsum_extract(double* t, int n) {
  n = drop_zeros(t, n);
  const int max_passes = 2 * n + 4;
  for (int pass = 0; pass < max_passes && n > 1; ++pass) {
    bool changed = false;
    double s = t[n - 1];
    for (int i = n - 2; i >= 0; --i) {
      SumErr r = two_sum(t[i], s);
      changed |= (r.e != t[i + 1]);
      t[i + 1] = r.e;
      s = r.s;
    }
    changed |= (s != t[0]);
    t[0] = s;
    n = drop_zeros(t, n);
    if (!changed) break;
  }
  Expansion<K> out;
  for (int i = 0; i < K && i < n; ++i) out.c[i] = t[i];
  return out;
}

// Arithmetic-path extraction: one exact VecSum pass, then a single sweep that
// keeps a partial sum until it produces a nonzero error, stopping after K+1
// outputs. The short list is then brought to the fixed point. Differs from
// vecsum_extract by under one unit round-off on sorted inputs.
template <int K>
inline Expansion<K> extract_leading(double* t, int n) {
  n = drop_zeros(t, n);
  if (n == 0) return {};
  double s = t[n - 1];
  for (int i = n - 2; i >= 0; --i) {
    SumErr r = two_sum(t[i], s);
    t[i + 1] = r.e;
    s = r.s;
  }
  t[0] = s;
  std::array<double, K + 1> r;
  int j = 0;
  double e = t[0];
  for (int i = 1; i < n; ++i) {
    SumErr p = two_sum(e, t[i]);
    if (p.e != 0.0) {
      r[j++] = p.s;
      e = p.e;
      if (j == K) break;
    } else {
      e = p.s;
    }
  }
  r[j++] = e;
  return vecsum_extract<K>(r.data(), j);
}

inline DD dd_add(const DD& x, const DD& y) {
  SumErr s = two_sum(x.c[0], y.c[0]);
  SumErr t = two_sum(x.c[1], y.c[1]);
  s.e += t.s;
  s = fast_two_sum(s.s, s.e);
  s.e += t.e;
  s = fast_two_sum(s.s, s.e);
  DD r;
  r.c = {s.s, s.e};
  return r;
}

inline DD dd_mul(const DD& x, const DD& y) {
  SumErr p = two_prod(x.c[0], y.c[0]);
  p.e += x.c[0] * y.c[1] + x.c[1] * y.c[0];
  p = fast_two_sum(p.s, p.e);
  DD r;
  r.c = {p.s, p.e};
  return r;
}

}  // namespace detail

/// Renormalizes an arbitrary finite list of binary64 terms into a K-component
/// expansion whose value is the exact sum truncated to K components.
template <int K>
Expansion<K> renormalize(std::span<const double> raw) {
  std::vector<double> t(raw.begin(), raw.end());
  std::stable_sort(t.begin(), t.end(), detail::before);
  return detail::vecsum_extract<K>(t.data(), static_cast<int>(t.size()));
}

/// True when x satisfies the nonoverlapping invariant.
template <int K>
bool is_normalized(const Expansion<K>& x) {
  for (int i = 0; i < K; ++i) {
    if (!std::isfinite(x.c[i])) return false;
    if (i + 1 == K) break;
    if (x.c[i] == 0.0) {
      if (x.c[i + 1] != 0.0) return false;
      continue;
    }
    if (x.c[i] + x.c[i + 1] != x.c[i]) return false;
  }
  return true;
}

template <int K>
constexpr Expansion<K> operator-(const Expansion<K>& x) {
  Expansion<K> r;
  for (int i = 0; i < K; ++i) r.c[i] = -x.c[i];
  return r;
}

template <int K>
Expansion<K> operator+(const Expansion<K>& x, const Expansion<K>& y) {
  if constexpr (K == 2) {
    return detail::dd_add(x, y);
  } else {
    std::array<double, 2 * K> t;
    int i = 0, j = 0, n = 0;
    while (i < K && j < K) t[n++] = detail::before(y.c[j], x.c[i]) ? y.c[j++] : x.c[i++];
    while (i < K) t[n++] = x.c[i++];
    while (j < K) t[n++] = y.c[j++];
    return detail::extract_leading<K>(t.data(), n);
  }
}

template <int K>
Expansion<K> operator-(const Expansion<K>& x, const Expansion<K>& y) {
  return x + (-y);
}

template <int K>
Expansion<K> operator+(const Expansion<K>& x, double d) {
  std::array<double, K + 1> t;
  int i = 0, n = 0;
  bool placed = false;
  while (i < K) {
    if (!placed && detail::before(d, x.c[i])) {
      t[n++] = d;
      placed = true;
    } else {
      t[n++] = x.c[i++];
    }
  }
  if (!placed) t[n++] = d;
  return detail::extract_leading<K>(t.data(), n);
}

template <int K>
Expansion<K> operator*(const Expansion<K>& x, double d) {
  std::array<double, 2 * K> t;
  for (int i = 0; i < K; ++i) {
    SumErr p = two_prod(x.c[i], d);
    t[2 * i] = p.s;
    t[2 * i + 1] = p.e;
  }
  detail::insertion_sort(t.data(), 2 * K);
  return detail::extract_leading<K>(t.data(), 2 * K);
}

template <int K>
Expansion<K> operator*(const Expansion<K>& x, const Expansion<K>& y) {
  if constexpr (K == 2) {
    return detail::dd_mul(x, y);
  } else {
    // Exact partial products of significance levels 0..K-1, plus the rounded
    // level-K products; deeper levels are below the unit round-off.
    constexpr int kTerms = K * (K + 1) + (K - 1);
    std::array<double, kTerms> t;
    int n = 0;
    for (int level = 0; level < K; ++level) {
      for (int i = 0; i <= level; ++i) {
        SumErr p = two_prod(x.c[i], y.c[level - i]);
        t[n++] = p.s;
        t[n++] = p.e;
      }
    }
    for (int i = 1; i < K; ++i) t[n++] = x.c[i] * y.c[K - i];
    detail::insertion_sort(t.data(), n);
    return detail::extract_leading<K>(t.data(), n);
  }
}

/// Long division: K+1 binary64 quotient digits, each refining the remainder.
template <int K>
Expansion<K> operator/(const Expansion<K>& x, const Expansion<K>& y) {
  if (y.c[0] == 0.0) throw SingularError("singular scalar divide");
  std::array<double, K + 1> q;
  Expansion<K> r = x;
  for (int i = 0; i <= K; ++i) {
    q[i] = r.c[0] / y.c[0];
    if (i < K) r = r - y * q[i];
  }
  detail::insertion_sort(q.data(), K + 1);
  return detail::extract_leading<K>(q.data(), K + 1);
}

template <int K>
Expansion<K>& operator+=(Expansion<K>& x, const Expansion<K>& y) {
  return x = x + y;
}
template <int K>
Expansion<K>& operator-=(Expansion<K>& x, const Expansion<K>& y) {
  return x = x - y;
}
template <int K>
Expansion<K>& operator*=(Expansion<K>& x, const Expansion<K>& y) {
  return x = x * y;
}

template <int K>
Expansion<K> abs(const Expansion<K>& x) {
  return x.c[0] < 0.0 ? -x : x;
}

/// Sign of x - y: -1, 0 or 1, from the exact fixed point of the merged terms.
template <int K>
int compare(const Expansion<K>& x, const Expansion<K>& y) {
  std::array<double, 2 * K> t;
  for (int i = 0; i < K; ++i) {
    t[2 * i] = x.c[i];
    t[2 * i + 1] = -y.c[i];
  }
  detail::insertion_sort(t.data(), 2 * K);
  double d = detail::vecsum_extract<K>(t.data(), 2 * K).c[0];
  return (d > 0.0) - (d < 0.0);
}

template <int K>
double to_double(const Expansion<K>& x) {
  double s = 0.0;
  for (int i = K - 1; i >= 0; --i) s += x.c[i];
  return s;
}

/// Widens with zero components or truncates to the leading M components.
template <int M, int K>
Expansion<M> convert(const Expansion<K>& x) {
  Expansion<M> r;
  for (int i = 0; i < M && i < K; ++i) r.c[i] = x.c[i];
  return r;
}

/// Square root by Newton refinement from the binary64 root. Only used for
/// moduli in error metrics.
template <int K>
Expansion<K> sqrt(const Expansion<K>& v) {
  if (v.c[0] <= 0.0) return Expansion<K>();
  Expansion<K> y(std::sqrt(v.c[0]));
  // Each step roughly doubles the number of correct bits.
  for (int bits = 53; bits < 53 * K + 53; bits *= 2) {
    y = y + (v - y * y) / (y * 2.0);
  }
  return y;
}

}  // namespace mpclu
