#pragma once

// Decimal conversion for expansions. Conversions run two components wider
// than the target so that parse -> print round-trips at the format's full
// digit count.

#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "mpclu/expansion.hpp"

namespace mpclu {

/// Significant decimal digits a K-component expansion carries.
template <int K>
constexpr int decimal_digits() {
  // floor((53K - 2) * log10(2))
  return static_cast<int>((53 * K - 2) * 0.30102999566398119521);
}

namespace detail {

template <int M>
Expansion<M> pow10(int e) {
  Expansion<M> result(1.0);
  Expansion<M> base(10.0);
  for (unsigned n = static_cast<unsigned>(e); n != 0; n >>= 1) {
    if (n & 1u) result = result * base;
    if (n > 1) base = base * base;
  }
  return result;
}

// Multiplies by 10^e in chunks that stay inside the binary64 range.
template <int M>
Expansion<M> scale10(Expansion<M> r, int e) {
  constexpr int kChunk = 256;
  while (e > 0) {
    int step = e > kChunk ? kChunk : e;
    r = r * pow10<M>(step);
    e -= step;
  }
  while (e < 0) {
    int step = -e > kChunk ? kChunk : -e;
    r = r / pow10<M>(step);
    e += step;
  }
  return r;
}

}  // namespace detail

/// Scientific notation with `digits` significant digits, e.g.
/// "3.14159e+00". Defaults to the full precision of the format.
template <int K>
std::string to_string(const Expansion<K>& x, int digits = decimal_digits<K>()) {
  if (digits < 1) digits = 1;
  if (!std::isfinite(x.c[0])) return std::isnan(x.c[0]) ? "nan" : (x.c[0] > 0 ? "inf" : "-inf");
  std::string out;
  if (x.c[0] < 0.0) out.push_back('-');
  if (x.c[0] == 0.0) {
    out += "0.";
    out.append(static_cast<std::size_t>(digits > 1 ? digits - 1 : 1), '0');
    out += "e+00";
    return out;
  }

  constexpr int M = K + 2;
  Expansion<M> r = abs(convert<M>(x));
  int e = static_cast<int>(std::floor(std::log10(std::fabs(x.c[0]))));
  r = detail::scale10(r, -e);
  const Expansion<M> ten(10.0), one(1.0);
  while (compare(r, ten) >= 0) {
    r = r / ten;
    ++e;
  }
  while (compare(r, one) < 0) {
    r = r * 10.0;
    --e;
  }

  // One guard digit for rounding.
  std::vector<int> d(static_cast<std::size_t>(digits) + 1);
  for (auto& digit : d) {
    double f = std::floor(r.c[0]);
    r = r + (-f);
    if (r.c[0] < 0.0) {
      f -= 1.0;
      r = r + 1.0;
    }
    digit = static_cast<int>(f);
    r = r * 10.0;
  }
  if (d.back() >= 5) {
    int i = digits - 1;
    for (; i >= 0; --i) {
      if (++d[static_cast<std::size_t>(i)] < 10) break;
      d[static_cast<std::size_t>(i)] = 0;
    }
    if (i < 0) {
      d.insert(d.begin(), 1);
      ++e;
    }
  }

  out.push_back(static_cast<char>('0' + d[0]));
  out.push_back('.');
  if (digits == 1) out.push_back('0');
  for (int i = 1; i < digits; ++i) out.push_back(static_cast<char>('0' + d[static_cast<std::size_t>(i)]));
  out.push_back('e');
  out.push_back(e < 0 ? '-' : '+');
  std::string exp = std::to_string(std::abs(e));
  if (exp.size() < 2) exp.insert(exp.begin(), '0');
  out += exp;
  return out;
}

/// Parses [sign] digits [. digits] [e|E [sign] digits]. Throws ParseError.
template <int K>
Expansion<K> from_string(std::string_view s) {
  constexpr int M = K + 2;
  auto fail = [&]() -> ParseError { return ParseError("malformed number: '" + std::string(s) + "'"); };
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';

  Expansion<M> r;
  int mantissa_digits = 0, fraction_digits = 0;
  bool seen_point = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '.') {
      if (seen_point) throw fail();
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      r = r * 10.0 + static_cast<double>(ch - '0');
      ++mantissa_digits;
      if (seen_point) ++fraction_digits;
    } else {
      break;
    }
  }
  if (mantissa_digits == 0) throw fail();

  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw fail();
    ++i;
    bool exp_negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) exp_negative = s[i++] == '-';
    if (i == s.size()) throw fail();
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw fail();
      exponent = exponent * 10 + (s[i] - '0');
      if (exponent > 100000) throw ParseError("exponent out of range: '" + std::string(s) + "'");
    }
    if (exp_negative) exponent = -exponent;
  }

  r = detail::scale10(r, static_cast<int>(exponent) - fraction_digits);
  Expansion<K> out = convert<K>(r);
  return negative ? -out : out;
}

}  // namespace mpclu
