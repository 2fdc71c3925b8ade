#pragma once

// Indecomposable canonical pairs for the four coefficient settings, their
// existence rules and the normalization of the eigenvalue parameter.

#include <array>
#include <compare>
#include <string>
#include <tuple>
#include <vector>

#include "isoform/errors.hpp"
#include "isoform/matrix.hpp"
#include "isoform/pair.hpp"
#include "isoform/scalars.hpp"

namespace isoform {

enum class Subtype { Hyperbolic, Unimodular };

inline const char* subtypeName(Subtype s) { return s == Subtype::Hyperbolic ? "hyp" : "uni"; }

inline Subtype parseSubtype(std::string_view s) {
  if (s == "hyp" || s == "hyperbolic") return Subtype::Hyperbolic;
  if (s == "uni" || s == "unimodular") return Subtype::Unimodular;
  throw DomainError("unknown block subtype '" + std::string(s) + "'");
}

struct CanonicalBlock {
  DomainCase domainCase = DomainCase::A;
  /// Only meaningful for case D (quaternion conjugation or semiconjugation).
  Involution involution = Involution::Identity;
  Subtype subtype = Subtype::Hyperbolic;
  std::size_t n = 1;
  Gaussian lambda{1};
  int sign = 1;
  int epsilon = 1;
  /// Case C with a non-real eigenvalue: the pair is the realification of a Q(i) pair.
  bool realified = false;

  ScalarDomain domain() const {
    return ScalarDomain::forCase(domainCase, domainCase == DomainCase::D ? involution
                                                                         : Involution::QuaternionConjugation);
  }
};

inline bool operator==(const CanonicalBlock& a, const CanonicalBlock& b) {
  return a.domainCase == b.domainCase && a.involution == b.involution && a.subtype == b.subtype && a.n == b.n &&
         a.lambda == b.lambda && a.sign == b.sign && a.epsilon == b.epsilon && a.realified == b.realified;
}

/// Sort order for block multisets.
inline bool blockLess(const CanonicalBlock& a, const CanonicalBlock& b) {
  auto key = [](const CanonicalBlock& x) {
    return std::make_tuple(static_cast<int>(x.domainCase), static_cast<int>(x.involution), x.epsilon,
                           static_cast<int>(x.subtype), x.n);
  };
  if (key(a) != key(b)) return key(a) < key(b);
  if (a.lambda != b.lambda) return GaussianLess{}(a.lambda, b.lambda);
  return a.sign < b.sign;
}

namespace detail {

inline bool isPlusMinusOne(const Gaussian& z) { return z == Gaussian(1) || z == Gaussian(-1); }

inline int parityEps(std::size_t n) { return n % 2 == 0 ? 1 : -1; }  // (-1)^n

/// Exponent e in i^e F_n of the unimodular blocks that carry a power of i.
inline long iExponent(std::size_t n, int epsilon) { return static_cast<long>(n) - (epsilon + 1) / 2; }

/// lambda = +-1 and eps = (-1)^{n+1}: the only unimodular blocks over a field with identity involution.
inline bool identityUnimodular(std::size_t n, int epsilon, const Gaussian& lambda) {
  return isPlusMinusOne(lambda) && epsilon == -parityEps(n);
}

}  // namespace detail

/// Whether a block of this shape is constructible (sign not considered).
inline bool blockExists(const ScalarDomain& domain, int epsilon, Subtype subtype, std::size_t n,
                        const Gaussian& lambda) {
  if (lambda.isZero()) throw DomainError("block parameter lambda must be nonzero");
  if (n < 1 || (epsilon != 1 && epsilon != -1)) return false;
  const bool unimodular = lambda.normSq() == Rational(1);
  switch (domain.caseTag()) {
    case DomainCase::A: {
      const bool uni = detail::identityUnimodular(n, epsilon, lambda);
      return subtype == Subtype::Unimodular ? uni : !uni;
    }
    case DomainCase::B:
      if (epsilon != 1) return false;
      return subtype == Subtype::Unimodular ? unimodular : !unimodular;
    case DomainCase::C:
      if (lambda.isReal()) {
        const bool uni = detail::identityUnimodular(n, epsilon, lambda);
        return subtype == Subtype::Unimodular ? uni : !uni;
      }
      return subtype == Subtype::Unimodular ? unimodular : !unimodular;
    case DomainCase::D:
      return subtype == Subtype::Unimodular ? unimodular : !unimodular;
  }
  return false;
}

/// Case D, lambda = +-1: the sign is forced to +1 in these rows.
inline bool quaternionSignForced(Involution inv, std::size_t n, int epsilon, const Gaussian& lambda) {
  if (!detail::isPlusMinusOne(lambda)) return false;
  if (inv == Involution::QuaternionConjugation) return epsilon == detail::parityEps(n);
  return epsilon == -detail::parityEps(n);
}

/// Whether the sign of a unimodular block is a genuine invariant.
inline bool signIsFree(const CanonicalBlock& b) {
  if (b.subtype == Subtype::Hyperbolic) return false;
  switch (b.domainCase) {
    case DomainCase::A: return false;
    case DomainCase::B:
    case DomainCase::C: return true;
    case DomainCase::D: return !quaternionSignForced(b.involution, b.n, b.epsilon, b.lambda);
  }
  return false;
}

/// Full check of a block descriptor, including sign and the realified flag.
inline bool blockExists(const CanonicalBlock& b) {
  if (b.lambda.isZero()) throw DomainError("block parameter lambda must be nonzero");
  if (b.domainCase == DomainCase::D && b.involution != Involution::QuaternionConjugation &&
      b.involution != Involution::QuaternionSemiconjugation)
    return false;
  if (b.domainCase != DomainCase::D && b.involution != Involution::Identity) return false;
  if (b.realified != (b.domainCase == DomainCase::C && !b.lambda.isReal())) return false;
  if (!blockExists(b.domain(), b.epsilon, b.subtype, b.n, b.lambda)) return false;
  if (b.sign != 1 && b.sign != -1) return false;
  if (b.sign == -1 && !signIsFree(b)) return false;
  return true;
}

namespace detail {

inline std::vector<Gaussian> lambdaOrbit(const Gaussian& l, DomainCase c, Subtype st) {
  const Gaussian inv = inverse(l);
  switch (c) {
    case DomainCase::A: return {l, inv};
    case DomainCase::B: return {l, inv.conj()};
    case DomainCase::C:
      if (l.isReal()) return {l, inv};
      if (st == Subtype::Unimodular) return {l, l.conj()};
      return {l, inv, l.conj(), inv.conj()};
    case DomainCase::D: return {l, inv, l.conj(), inv.conj()};
  }
  return {l};
}

/// Larger is preferred: |lambda| > 1, then Im >= 0, then Re >= 0, then the value itself.
inline std::strong_ordering preferCompare(const Gaussian& x, const Gaussian& y) {
  auto rank = [](const Gaussian& z) {
    const int a = z.normSq() > Rational(1) ? 2 : (z.normSq() == Rational(1) ? 1 : 0);
    return std::array<int, 3>{a, z.im.sign() >= 0 ? 1 : 0, z.re.sign() >= 0 ? 1 : 0};
  };
  if (auto c = rank(x) <=> rank(y); c != 0) return c;
  if (auto c = x.re <=> y.re; c != 0) return c;
  return x.im <=> y.im;
}

}  // namespace detail

/// Representative of the orbit of lambda under the replacements allowed in this case.
inline Gaussian normalizeLambda(const Gaussian& lambda, DomainCase c, Subtype st) {
  if (lambda.isZero()) throw DomainError("block parameter lambda must be nonzero");
  const auto orbit = detail::lambdaOrbit(lambda, c, st);
  Gaussian best = orbit[0];
  for (const auto& z : orbit)
    if (detail::preferCompare(z, best) > 0) best = z;
  return best;
}

/// Normalizes lambda, hyperbolic sign and the realified flag. Replacing a
/// unimodular lambda by its conjugate changes the sign of B by a fixed factor
/// that depends on the exponent of i in the block.
inline CanonicalBlock normalizeBlock(CanonicalBlock b) {
  const Gaussian l = normalizeLambda(b.lambda, b.domainCase, b.subtype);
  if (b.subtype == Subtype::Hyperbolic) {
    b.sign = 1;
  } else if (b.domainCase == DomainCase::A) {
    b.sign = 1;
  } else if (l != b.lambda) {
    // only reachable for C(iv) and D, where l = conj(lambda)
    const long e = detail::iExponent(b.n, b.epsilon);
    const bool odd = (b.domainCase == DomainCase::D && b.involution == Involution::QuaternionSemiconjugation)
                         ? (e % 2 == 0)
                         : (e % 2 != 0);
    if (odd) b.sign = -b.sign;
  }
  if (b.domainCase == DomainCase::D) {
    if (quaternionSignForced(b.involution, b.n, b.epsilon, l)) b.sign = 1;
  }
  b.lambda = l;
  b.realified = b.domainCase == DomainCase::C && !l.isReal();
  return b;
}

inline bool blocksEqual(const CanonicalBlock& a, const CanonicalBlock& b) {
  return normalizeBlock(a) == normalizeBlock(b);
}

namespace detail {

template <Scalar T>
Pair<T> hyperbolicPair(const ScalarDomain& dom, int epsilon, const Matrix<T>& j) {
  const std::size_t m = j.rows();
  const Matrix<T> jInvStar = inverse(star(j, dom.involution()));
  const Matrix<T> id = Matrix<T>::identity(m);
  return {dom, epsilon, directSum(j, jInvStar), skewSum(id, epsilon == 1 ? id : Matrix<T>(-id))};
}

/// (lambda Lambda_n, sign i^e F_n) over Q(i).
inline std::pair<Matrix<Gaussian>, Matrix<Gaussian>> unimodularComplex(const CanonicalBlock& b, long e) {
  Matrix<Gaussian> a = scaleLeft(b.lambda, lambdaMatrix<Gaussian>(b.n));
  Matrix<Gaussian> f = scaleLeft(Gaussian(b.sign) * iPower(e), fMatrix<Gaussian>(b.n));
  return {std::move(a), std::move(f)};
}

}  // namespace detail

/// The canonical pair of a block; the axioms are re-checked before returning.
inline IsometricPair buildBlock(const CanonicalBlock& b) {
  if (!blockExists(b)) throw DomainError("no canonical block with these parameters");
  const ScalarDomain dom = b.domain();
  const int eps = b.epsilon;
  switch (b.domainCase) {
    case DomainCase::A:
    case DomainCase::B: {
      if (b.subtype == Subtype::Hyperbolic)
        return validatePair(detail::hyperbolicPair(dom, eps, jordanBlock<Gaussian>(b.n, b.lambda)));
      const long e = b.domainCase == DomainCase::A ? 0 : detail::iExponent(b.n, eps);
      auto [a, f] = detail::unimodularComplex(b, e);
      return validatePair(Pair<Gaussian>{dom, eps, std::move(a), std::move(f)});
    }
    case DomainCase::C: {
      if (!b.realified) {
        const Rational l = b.lambda.re;
        if (b.subtype == Subtype::Hyperbolic)
          return validatePair(detail::hyperbolicPair(dom, eps, jordanBlock<Rational>(b.n, l)));
        Matrix<Rational> a = scaleLeft(l, lambdaMatrix<Rational>(b.n));
        Matrix<Rational> f = scaleLeft(Rational(b.sign), fMatrix<Rational>(b.n));
        return validatePair(Pair<Rational>{dom, eps, std::move(a), std::move(f)});
      }
      if (b.subtype == Subtype::Hyperbolic)
        return validatePair(detail::hyperbolicPair(dom, eps, realify(jordanBlock<Gaussian>(b.n, b.lambda))));
      auto [a, f] = detail::unimodularComplex(b, detail::iExponent(b.n, eps));
      return validatePair(Pair<Rational>{dom, eps, realify(a), realify(f)});
    }
    case DomainCase::D: {
      if (b.subtype == Subtype::Hyperbolic)
        return validatePair(
            detail::hyperbolicPair(dom, eps, jordanBlock<Quaternion>(b.n, Quaternion(b.lambda))));
      auto [a, f] = detail::unimodularComplex(b, detail::iExponent(b.n, eps));
      return validatePair(Pair<Quaternion>{dom, eps, convertMatrix<Quaternion>(a), convertMatrix<Quaternion>(f)});
    }
  }
  throw DomainError("bad domain case");
}

/// The (lambda Omega_n, +-c E_n) form of a unimodular block carrying a power of i.
inline IsometricPair buildAlternate(const CanonicalBlock& b) {
  if (!blockExists(b)) throw DomainError("no canonical block with these parameters");
  if (b.subtype != Subtype::Unimodular) throw DomainError("alternate form exists only for unimodular blocks");
  if (b.domainCase == DomainCase::A || (b.domainCase == DomainCase::C && !b.realified))
    throw DomainError("alternate form needs a power of i in B; plain +-F_n blocks have none");
  const ScalarDomain dom = b.domain();
  // S^*(i^e F)S = i^{e-(n-1)} E, and e - (n-1) is 0 for eps = 1, 1 for eps = -1.
  const Gaussian c = Gaussian(b.sign) * (b.epsilon == 1 ? Gaussian(1) : Gaussian::I());
  Matrix<Gaussian> a = scaleLeft(b.lambda, omegaMatrix(b.n));
  Matrix<Gaussian> e = scaleLeft(c, eMatrix<Gaussian>(b.n));
  switch (b.domainCase) {
    case DomainCase::B: return validatePair(Pair<Gaussian>{dom, b.epsilon, std::move(a), std::move(e)});
    case DomainCase::C: return validatePair(Pair<Rational>{dom, b.epsilon, realify(a), realify(e)});
    case DomainCase::D:
      return validatePair(
          Pair<Quaternion>{dom, b.epsilon, convertMatrix<Quaternion>(a), convertMatrix<Quaternion>(e)});
    default: break;
  }
  throw DomainError("bad domain case");
}

/// The change of basis taking buildBlock(b) to buildAlternate(b), in the block's ring.
inline std::variant<Matrix<Rational>, Matrix<Gaussian>, Matrix<Quaternion>> alternateTransform(
    const CanonicalBlock& b) {
  const Matrix<Gaussian> s = sDiagMatrix(b.n);
  switch (b.domainCase) {
    case DomainCase::C: return realify(s);
    case DomainCase::D: return convertMatrix<Quaternion>(s);
    default: return s;
  }
}

/// Dimension of the pair built from a block.
inline std::size_t blockDimension(const CanonicalBlock& b) {
  const std::size_t base = b.subtype == Subtype::Hyperbolic ? 2 * b.n : b.n;
  return b.realified ? 2 * base : base;
}

inline std::string describe(const CanonicalBlock& b) {
  std::string s;
  s += caseName(b.domainCase);
  if (b.domainCase == DomainCase::D) s += std::string("/") + involutionName(b.involution);
  s += std::string(" ") + subtypeName(b.subtype) + " n=" + std::to_string(b.n) + " lambda=" + toString(b.lambda);
  if (b.subtype == Subtype::Unimodular) s += " sign=" + std::to_string(b.sign);
  s += " eps=" + std::to_string(b.epsilon);
  return s;
}

}  // namespace isoform
