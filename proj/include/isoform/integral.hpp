#pragma once

// Integer images of exact scalars: a row or column of rationals is scaled by
// the lcm of its denominators so that products and elimination can run on
// mpz values without repeated canonicalization.

#include <gmpxx.h>

#include <type_traits>
#include <utility>

#include "isoform/scalars.hpp"

namespace isoform::detail {

/// Gaussian integer with the few operations fraction-free elimination needs.
struct GaussInt {
  mpz_class re, im;
  bool isZero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

inline bool ffZero(const mpz_class& x) { return sgn(x) == 0; }
inline bool ffZero(const GaussInt& x) { return x.isZero(); }

/// out = (p x - a y) / d, exact.
inline void ffUpdate(mpz_class& x, const mpz_class& p, const mpz_class& a, const mpz_class& y, const mpz_class& d,
                     mpz_class& tmp) {
  x *= p;
  tmp = a * y;
  x -= tmp;
  if (d != 1) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
}

struct GaussDivisor {
  GaussInt d;
  GaussInt dConj;
  mpz_class norm;
  bool one = true;
  bool real = true;

  explicit GaussDivisor(const GaussInt& v) : d(v), dConj{v.re, -v.im}, norm(v.re * v.re + v.im * v.im) {
    real = sgn(v.im) == 0;
    one = real && v.re == 1;
  }
};

struct GaussScratch {
  mpz_class t1, t2, t3;
};

inline void gmul(mpz_class& outRe, mpz_class& outIm, const GaussInt& a, const GaussInt& b, GaussScratch& s) {
  s.t1 = a.re * b.re;
  s.t2 = a.im * b.im;
  s.t3 = a.re * b.im;
  outIm = a.im * b.re;
  outIm += s.t3;
  outRe = s.t1 - s.t2;
}

inline void ffUpdate(GaussInt& x, const GaussInt& p, const GaussInt& a, const GaussInt& y, const GaussDivisor& d,
                     GaussScratch& s) {
  mpz_class pr, pi, ar, ai;
  gmul(pr, pi, p, x, s);
  if (!a.isZero() && !y.isZero()) {
    gmul(ar, ai, a, y, s);
    pr -= ar;
    pi -= ai;
  }
  if (d.one) {
    x.re = std::move(pr);
    x.im = std::move(pi);
  } else if (d.real) {
    mpz_divexact(x.re.get_mpz_t(), pr.get_mpz_t(), d.d.re.get_mpz_t());
    mpz_divexact(x.im.get_mpz_t(), pi.get_mpz_t(), d.d.re.get_mpz_t());
  } else {
    const GaussInt num{std::move(pr), std::move(pi)};
    gmul(x.re, x.im, num, d.dConj, s);
    mpz_divexact(x.re.get_mpz_t(), x.re.get_mpz_t(), d.norm.get_mpz_t());
    mpz_divexact(x.im.get_mpz_t(), x.im.get_mpz_t(), d.norm.get_mpz_t());
  }
}

template <class T>
struct IntegralOf;
template <>
struct IntegralOf<Rational> {
  using type = mpz_class;
  using divisor = mpz_class;
  using scratch = mpz_class;
};
template <>
struct IntegralOf<Gaussian> {
  using type = GaussInt;
  using divisor = GaussDivisor;
  using scratch = GaussScratch;
};

inline void lcmInto(mpz_class& l, const Rational& x) { mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.value().get_den_mpz_t()); }
inline void lcmInto(mpz_class& l, const Gaussian& x) {
  lcmInto(l, x.re);
  lcmInto(l, x.im);
}

inline mpz_class scaledInteger(const Rational& x, const mpz_class& l) {
  mpz_class r = l / x.value().get_den();
  return r * x.value().get_num();
}
inline mpz_class toIntegral(const Rational& x, const mpz_class& l) { return scaledInteger(x, l); }
inline GaussInt toIntegral(const Gaussian& x, const mpz_class& l) { return {scaledInteger(x.re, l), scaledInteger(x.im, l)}; }

inline Rational fromIntegral(const mpz_class& x, const mpz_class& d) { return Rational(x, d); }
inline Gaussian fromIntegral(const GaussInt& x, const GaussInt& d) {
  if (sgn(d.im) == 0) return {Rational(x.re, d.re), Rational(x.im, d.re)};
  const mpz_class n = d.re * d.re + d.im * d.im;
  return {Rational(x.re * d.re + x.im * d.im, n), Rational(x.im * d.re - x.re * d.im, n)};
}
inline mpz_class negated(const mpz_class& x) { return -x; }
inline GaussInt negated(const GaussInt& x) { return {-x.re, -x.im}; }

struct QuatInt {
  mpz_class a, b, c, d;
};

inline void lcmInto(mpz_class& l, const Quaternion& x) {
  lcmInto(l, x.a);
  lcmInto(l, x.b);
  lcmInto(l, x.c);
  lcmInto(l, x.d);
}
inline QuatInt toIntegral(const Quaternion& x, const mpz_class& l) {
  return {scaledInteger(x.a, l), scaledInteger(x.b, l), scaledInteger(x.c, l), scaledInteger(x.d, l)};
}

/// acc += x * y
inline void mulAdd(mpz_class& acc, const mpz_class& x, const mpz_class& y) {
  mpz_addmul(acc.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
}
inline void mulAdd(GaussInt& acc, const GaussInt& x, const GaussInt& y) {
  mpz_addmul(acc.re.get_mpz_t(), x.re.get_mpz_t(), y.re.get_mpz_t());
  mpz_submul(acc.re.get_mpz_t(), x.im.get_mpz_t(), y.im.get_mpz_t());
  mpz_addmul(acc.im.get_mpz_t(), x.re.get_mpz_t(), y.im.get_mpz_t());
  mpz_addmul(acc.im.get_mpz_t(), x.im.get_mpz_t(), y.re.get_mpz_t());
}
inline void mulAdd(QuatInt& acc, const QuatInt& x, const QuatInt& y) {
  auto add = [](mpz_class& t, const mpz_class& u, const mpz_class& v) {
    mpz_addmul(t.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
  };
  auto sub = [](mpz_class& t, const mpz_class& u, const mpz_class& v) {
    mpz_submul(t.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
  };
  add(acc.a, x.a, y.a); sub(acc.a, x.b, y.b); sub(acc.a, x.c, y.c); sub(acc.a, x.d, y.d);
  add(acc.b, x.a, y.b); add(acc.b, x.b, y.a); add(acc.b, x.c, y.d); sub(acc.b, x.d, y.c);
  add(acc.c, x.a, y.c); sub(acc.c, x.b, y.d); add(acc.c, x.c, y.a); add(acc.c, x.d, y.b);
  add(acc.d, x.a, y.d); add(acc.d, x.b, y.c); sub(acc.d, x.c, y.b); add(acc.d, x.d, y.a);
}

inline bool ffZero(const QuatInt& x) { return sgn(x.a) == 0 && sgn(x.b) == 0 && sgn(x.c) == 0 && sgn(x.d) == 0; }

inline Rational overInteger(const mpz_class& x, const mpz_class& d) { return Rational(x, d); }
inline Gaussian overInteger(const GaussInt& x, const mpz_class& d) { return {Rational(x.re, d), Rational(x.im, d)}; }
inline Quaternion overInteger(const QuatInt& x, const mpz_class& d) {
  return {Rational(x.a, d), Rational(x.b, d), Rational(x.c, d), Rational(x.d, d)};
}

template <class T>
struct IntegerImage;
template <>
struct IntegerImage<Rational> {
  using type = mpz_class;
};
template <>
struct IntegerImage<Gaussian> {
  using type = GaussInt;
};
template <>
struct IntegerImage<Quaternion> {
  using type = QuatInt;
};

}  // namespace isoform::detail
