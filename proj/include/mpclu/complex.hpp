#pragma once

#include "mpclu/expansion.hpp"

namespace mpclu {

/// Complex multiplication scheme: four real products, or three real
/// products with three extra additions.
enum class Method { k3M, k4M };

template <int K>
struct Complex {
  Expansion<K> re;
  Expansion<K> im;

  constexpr Complex() = default;
  constexpr Complex(Expansion<K> r, Expansion<K> i = {}) : re(r), im(i) {}  // NOLINT
  constexpr Complex(double r, double i = 0.0) : re(r), im(i) {}             // NOLINT

  friend constexpr bool operator==(const Complex&, const Complex&) = default;
};

template <int K>
Complex<K> operator+(const Complex<K>& a, const Complex<K>& b) {
  return {a.re + b.re, a.im + b.im};
}

template <int K>
Complex<K> operator-(const Complex<K>& a, const Complex<K>& b) {
  return {a.re - b.re, a.im - b.im};
}

template <int K>
Complex<K> operator-(const Complex<K>& a) {
  return {-a.re, -a.im};
}

template <int K>
Complex<K> cmul_4m(const Complex<K>& a, const Complex<K>& b) {
  return {a.re * b.re - a.im * b.im, a.im * b.re + a.re * b.im};
}

template <int K>
Complex<K> cmul_3m(const Complex<K>& a, const Complex<K>& b) {
  Expansion<K> t1 = a.re * b.re;
  Expansion<K> t2 = a.im * b.im;
  Expansion<K> t3 = (a.re + a.im) * (b.re + b.im);
  return {t1 - t2, t3 - t1 - t2};
}

template <int K>
Complex<K> cmul(const Complex<K>& a, const Complex<K>& b, Method method) {
  return method == Method::k3M ? cmul_3m(a, b) : cmul_4m(a, b);
}

/// a / b without scaling; throws SingularError for b == 0.
template <int K>
Complex<K> cdiv(const Complex<K>& a, const Complex<K>& b) {
  if (b.re.is_zero() && b.im.is_zero()) throw SingularError("singular scalar divide");
  Expansion<K> d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

template <int K>
Complex<K> cinv(const Complex<K>& b) {
  return cdiv(Complex<K>(1.0), b);
}

/// |Re| + |Im|, the pivoting magnitude.
template <int K>
Expansion<K> abs1(const Complex<K>& a) {
  return abs(a.re) + abs(a.im);
}

/// |a|^2 = Re^2 + Im^2.
template <int K>
Expansion<K> norm(const Complex<K>& a) {
  return a.re * a.re + a.im * a.im;
}

template <int M, int K>
Complex<M> convert(const Complex<K>& a) {
  return {convert<M>(a.re), convert<M>(a.im)};
}

}  // namespace mpclu
