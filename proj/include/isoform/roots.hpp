#pragma once

// Roots of polynomials over Q(i) that lie in Q(i).
//
// Candidate roots are located numerically and then confirmed exactly: after
// the substitution x -> x/d (d clears all denominators) the polynomial is
// monic over Z[i], so every root in Q(i) is a Gaussian integer over d, and
// rounding a good approximation of d*root recovers it.

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "isoform/errors.hpp"
#include "isoform/polynomial.hpp"
#include "isoform/scalars.hpp"

namespace isoform {

using ComplexLD = std::complex<long double>;

namespace detail {

inline ComplexLD toComplex(const Gaussian& z) {
  return {static_cast<long double>(z.re.toDouble()), static_cast<long double>(z.im.toDouble())};
}

inline mpz_class lcmDenominators(const Poly<Gaussian>& f) {
  mpz_class d = 1;
  for (const auto& c : f.lowToHigh()) {
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.re.denominator().get_mpz_t());
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.im.denominator().get_mpz_t());
  }
  return d;
}

inline Rational roundToInteger(long double v) { return Rational(static_cast<long>(std::llround(v))); }

inline bool fitsRounding(long double v) { return std::fabs(v) < 9.0e18L; }

}  // namespace detail

/// Simultaneous (Aberth) approximation of all complex roots of a monic polynomial.
inline std::vector<ComplexLD> approximateRoots(const Poly<Gaussian>& f) {
  const int n = f.degree();
  if (n < 1) return {};
  std::vector<ComplexLD> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[k] = detail::toComplex(f.coeff(k));
  const ComplexLD lead = c[n];
  for (auto& v : c) v /= lead;
  if (n == 1) return {-c[0]};

  long double bound = 0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(c[k]));
  bound += 1;
  std::vector<ComplexLD> z(n);
  for (int k = 0; k < n; ++k) {
    const long double angle = 2.0L * 3.14159265358979323846L * k / n + 0.4L;
    z[k] = std::polar(bound * 0.5L, angle);
  }
  auto evalBoth = [&](const ComplexLD& x) {
    ComplexLD p = c[n], dp = 0;
    for (int k = n - 1; k >= 0; --k) {
      dp = dp * x + p;
      p = p * x + c[k];
    }
    return std::pair{p, dp};
  };
  for (int iter = 0; iter < 500; ++iter) {
    long double maxStep = 0;
    for (int k = 0; k < n; ++k) {
      auto [p, dp] = evalBoth(z[k]);
      if (p == ComplexLD(0)) continue;
      const ComplexLD ratio = p / dp;
      ComplexLD sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      const ComplexLD step = ratio / (1.0L - ratio * sum);
      z[k] -= step;
      maxStep = std::max(maxStep, std::abs(step) / (1 + std::abs(z[k])));
    }
    if (maxStep < 1e-17L) break;
  }
  return z;
}

/// Roots of f lying in Q(i) with their multiplicities; `rest` is the cofactor
/// without roots found in Q(i).
struct GaussianRoots {
  std::vector<std::pair<Gaussian, int>> roots;
  Poly<Gaussian> rest;
};

inline GaussianRoots gaussianRoots(const Poly<Gaussian>& chi) {
  if (chi.isZero()) throw DomainError("roots of the zero polynomial");
  GaussianRoots out;
  Poly<Gaussian> rest = chi.monic();
  bool progress = true;
  while (rest.degree() > 0 && progress) {
    progress = false;
    const Poly<Gaussian> f = squarefreePart(rest);
    const mpz_class d = detail::lcmDenominators(f);
    const long double dd = static_cast<long double>(d.get_d());
    for (const auto& r : approximateRoots(f)) {
      const ComplexLD scaled = r * dd;
      if (!detail::fitsRounding(scaled.real()) || !detail::fitsRounding(scaled.imag())) continue;
      const Rational den{mpq_class(d)};
      const Gaussian cand{detail::roundToInteger(scaled.real()) / den, detail::roundToInteger(scaled.imag()) / den};
      if (!f.eval(cand).isZero()) continue;
      int mult = 0;
      const Poly<Gaussian> lin = Poly<Gaussian>::linear(cand);
      for (;;) {
        auto [q, rem] = rest.divmod(lin);
        if (!rem.isZero()) break;
        rest = std::move(q);
        ++mult;
      }
      if (mult > 0) {
        out.roots.emplace_back(cand, mult);
        progress = true;
      }
    }
  }
  out.rest = rest;
  return out;
}

/// All roots of chi, which must split over Q(i).
inline std::vector<std::pair<Gaussian, int>> gaussianEigenvalues(const Poly<Gaussian>& chi) {
  auto r = gaussianRoots(chi);
  if (r.rest.degree() > 0)
    throw UnresolvedFactor("characteristic polynomial has a factor without roots in Q(i): " + r.rest.str());
  return std::move(r.roots);
}

inline Poly<Gaussian> toGaussianPoly(const Poly<Rational>& f) {
  std::vector<Gaussian> c;
  for (const auto& v : f.lowToHigh()) c.emplace_back(v);
  return Poly<Gaussian>(std::move(c));
}
inline Poly<Gaussian> toGaussianPoly(const Poly<Gaussian>& f) { return f; }

/// Irreducibility over Q (real = true) or Q(i), decided for degree <= 4.
/// Higher degrees throw unless the caller asserts irreducibility.
template <CommutativeScalar T>
bool isIrreducible(const Poly<T>& p, bool assumeIrreducibleAboveFour = false) {
  constexpr bool real = std::is_same_v<T, Rational>;
  const int n = p.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  if (n > 4) {
    if (assumeIrreducibleAboveFour) return true;
    throw DomainError("irreducibility is only decided up to degree 4; assert it for " + p.str());
  }
  const Poly<Gaussian> f = toGaussianPoly(p).monic();
  for (const auto& [root, m] : gaussianRoots(f).roots)
    if (!real || root.isReal()) return false;
  if (n < 4) return true;
  // Monic over Z[i] after x -> x/d, so monic quadratic factors have Z[i] coefficients.
  const mpz_class d = detail::lcmDenominators(f);
  const Rational dr{mpq_class(d)};
  std::vector<Gaussian> h(5);
  Rational scale(1);
  for (int k = 4; k >= 0; --k) {
    h[k] = Gaussian(scale) * f.coeff(k);
    scale *= dr;
  }
  const Poly<Gaussian> hp(std::move(h));
  const auto z = approximateRoots(hp);
  for (std::size_t a = 0; a < z.size(); ++a)
    for (std::size_t b = a + 1; b < z.size(); ++b) {
      const ComplexLD s = z[a] + z[b], pr = z[a] * z[b];
      if (!detail::fitsRounding(s.real()) || !detail::fitsRounding(pr.real())) continue;
      const Gaussian sg{detail::roundToInteger(s.real()), detail::roundToInteger(s.imag())};
      const Gaussian pg{detail::roundToInteger(pr.real()), detail::roundToInteger(pr.imag())};
      if (real && (!sg.isReal() || !pg.isReal())) continue;
      const Poly<Gaussian> quad({pg, -sg, Gaussian(1)});
      if (hp.divmod(quad).second.isZero()) return false;
    }
  return true;
}

}  // namespace isoform
