#pragma once

// Frobenius blocks Phi, the Toeplitz form Phi_(eps) with
// Phi_(eps) = eps Phi_(eps)^* = Phi^* Phi_(eps) Phi, recurrent sequences, and
// the Laurent polynomials q(x) that twist it.

#include <span>
#include <string>
#include <vector>

#include "isoform/errors.hpp"
#include "isoform/matrix.hpp"
#include "isoform/pair.hpp"
#include "isoform/polynomial.hpp"
#include "isoform/roots.hpp"
#include "isoform/scalars.hpp"

namespace isoform {

/// Companion matrix of chi = p^s with p irreducible.
template <CommutativeScalar T>
struct FrobeniusBlock {
  std::size_t n = 0;
  /// c_1 .. c_n of chi = x^n + c_1 x^{n-1} + ... + c_n.
  std::vector<T> c;
  Poly<T> p;
  int s = 1;

  Poly<T> chi() const {
    std::vector<T> high{T(1)};
    high.insert(high.end(), c.begin(), c.end());
    return Poly<T>::fromHighToLow(std::move(high));
  }
  /// p^{s-1}; chi-recurrent Toeplitz entries must not be recurrent for it when s > 1.
  Poly<T> mu() const { return p.pow(s - 1); }
  Matrix<T> matrix() const { return frobeniusMatrix<T>(std::span<const T>(c)); }
};

/// Factors chi as p^s; p must be irreducible (decided up to degree 4).
template <CommutativeScalar T>
FrobeniusBlock<T> makeFrobeniusBlock(const Poly<T>& chi, bool assumeIrreducible = false) {
  if (chi.degree() < 1) throw DomainError("Frobenius block needs a polynomial of positive degree");
  if (!chi.isMonic()) throw DomainError("characteristic polynomial must be monic: " + chi.str());
  if (isZero(chi.coeff(0))) throw DomainError("Frobenius block is singular (chi(0) = 0)");
  FrobeniusBlock<T> fb;
  fb.n = static_cast<std::size_t>(chi.degree());
  const auto high = chi.highToLow();
  fb.c.assign(high.begin() + 1, high.end());
  fb.p = squarefreePart(chi);
  fb.s = chi.degree() / fb.p.degree();
  if (!(fb.p.pow(fb.s) == chi)) throw DomainError("characteristic polynomial " + chi.str() + " is not a prime power");
  if (!isIrreducible(fb.p, assumeIrreducible)) throw DomainError("polynomial " + fb.p.str() + " is reducible");
  return fb;
}

template <CommutativeScalar T>
bool phiEpsilonExists(const FrobeniusBlock<T>& fb, int epsilon, Involution inv) {
  requireInvolution(ScalarTraits<T>::ring, inv);
  if (!(fb.p == polyReciprocal(fb.p, inv))) return false;
  const int parity = fb.n % 2 == 0 ? 1 : -1;
  return !(inv == Involution::Identity && epsilon == parity && fb.p.degree() == 1);
}

/// Every window of length deg f + 1 satisfies gamma_0 a_l + ... + gamma_m a_{l+m} = 0,
/// where f = gamma_0 x^m + ... + gamma_m.
template <CommutativeScalar T>
bool isRecurrent(std::span<const T> v, const Poly<T>& f) {
  const int m = f.degree();
  if (m < 1) return false;
  if (static_cast<int>(v.size()) <= m) return true;
  const auto g = f.highToLow();
  for (std::size_t l = 0; l + m < v.size(); ++l) {
    T acc(0);
    for (int k = 0; k <= m; ++k) acc += g[k] * v[l + k];
    if (!isZero(acc)) return false;
  }
  return true;
}

/// Extends v to length targetLen, adding terms on both sides (one more on the
/// right when the difference is odd) so the whole vector stays f-recurrent.
template <CommutativeScalar T>
std::vector<T> recurrentExtend(std::vector<T> v, const Poly<T>& f, std::size_t targetLen) {
  const int m = f.degree();
  if (m < 1 || isZero(f.coeff(0))) throw DomainError("recurrence polynomial needs degree >= 1 and f(0) != 0");
  if (targetLen <= v.size()) return v;
  if (static_cast<int>(v.size()) < m)
    throw DomainError("vector of length " + std::to_string(v.size()) + " does not determine a " +
                      std::to_string(m) + "-term recurrence");
  if (!isRecurrent<T>(v, f)) throw DomainError("vector is not recurrent for " + f.str());
  const auto g = f.highToLow();
  const T invFirst = inverse(g[0]);
  const T invLast = inverse(g[m]);
  const std::size_t extra = targetLen - v.size();
  const std::size_t left = extra / 2;
  for (std::size_t k = 0; k < extra - left; ++k) {
    const std::size_t l = v.size() - m;
    T acc(0);
    for (int j = 0; j < m; ++j) acc += g[j] * v[l + j];
    v.push_back(-(acc * invLast));
  }
  for (std::size_t k = 0; k < left; ++k) {
    T acc(0);
    for (int j = 1; j <= m; ++j) acc += g[j] * v[j - 1];
    v.insert(v.begin(), -(acc * invFirst));
  }
  return v;
}

namespace detail {

template <CommutativeScalar T>
T imaginaryUnit() {
  if constexpr (std::is_same_v<T, Rational>)
    throw DomainError("the nonidentity involution needs Q(i)");
  else
    return Gaussian::I();
}

}  // namespace detail

/// Which of the four seed shapes applies.
enum class SeedCase { I = 1, II = 2, III = 3, IV = 4 };

template <CommutativeScalar T>
SeedCase seedCase(const FrobeniusBlock<T>& fb, int epsilon, Involution inv) {
  const std::size_t n = fb.n;
  const T& cn = fb.c[n - 1];
  if (n % 2 == 0) {
    if (!(cn == T(epsilon))) return SeedCase::I;
    return inv == Involution::Identity ? SeedCase::II : SeedCase::III;
  }
  if (fb.p.degree() == 1 && inv != Involution::Identity) {
    const T c = fb.p.coeff(0);
    T power(1);
    for (std::size_t k = 0; k + 1 < n; ++k) power *= c;
    if (power == T(-1)) return SeedCase::III;
  }
  return SeedCase::IV;
}

/// The vector (a_{-m}, ..., a_m) of length n + 1 (n even) or n (n odd).
/// With a nonidentity involution and eps = -1 this is i times the eps = 1 seed.
template <CommutativeScalar T>
std::vector<T> seedVector(const FrobeniusBlock<T>& fb, int epsilon, Involution inv) {
  if (!phiEpsilonExists(fb, epsilon, inv))
    throw ExistenceError("no Phi_(eps) for chi = " + fb.chi().str() + ", eps = " + std::to_string(epsilon));
  if (inv != Involution::Identity && epsilon == -1) {
    auto v = seedVector(fb, 1, inv);
    const T i = detail::imaginaryUnit<T>();
    for (auto& x : v) x = i * x;
    return v;
  }
  const std::size_t n = fb.n;
  const std::size_t len = n % 2 == 0 ? n + 1 : n;
  std::vector<T> v(len, T(0));
  const T eps(epsilon);
  switch (seedCase(fb, epsilon, inv)) {
    case SeedCase::I: {
      const T& cn = fb.c[n - 1];
      v.front() = cn - eps;
      v.back() = eps * conjugate(cn, inv) - T(1);
      break;
    }
    case SeedCase::II:
      if (n == 2) {
        v = {fb.c[0], T(-2), fb.c[0]};
      } else {
        v.front() = fb.c[0];
        v[1] = T(-1);
        v[len - 2] = T(-1);
        v.back() = fb.c[0];
      }
      break;
    case SeedCase::III: {
      const T a = detail::imaginaryUnit<T>();
      v.front() = a - conjugate(a, inv);
      v.back() = conjugate(a, inv) - a;
      break;
    }
    case SeedCase::IV:
      v.front() = T(1);
      v.back() = len == 1 ? T(1) : eps;
      break;
  }
  return v;
}

/// The full chi-recurrent vector (a_{1-n}, ..., a_{n-1}).
template <CommutativeScalar T>
std::vector<T> toeplitzEntries(const FrobeniusBlock<T>& fb, int epsilon, Involution inv) {
  return recurrentExtend(seedVector(fb, epsilon, inv), fb.chi(), 2 * fb.n - 1);
}

/// [a_{i-j}] from (a_{1-n}, ..., a_{n-1}).
template <Scalar T>
Matrix<T> toeplitz(const std::vector<T>& a, std::size_t n) {
  if (a.size() != 2 * n - 1) throw ShapeError("Toeplitz entries must have length 2n-1");
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a[(n - 1) + i - j];
  return m;
}

/// Phi_(eps), checked to be nonsingular with M = eps M^* = Phi^* M Phi.
template <CommutativeScalar T>
Matrix<T> buildToeplitz(const FrobeniusBlock<T>& fb, int epsilon, Involution inv) {
  const Matrix<T> m = toeplitz(toeplitzEntries(fb, epsilon, inv), fb.n);
  const Matrix<T> mStar = star(m, inv);
  const Matrix<T> phi = fb.matrix();
  if (!(m == (epsilon == 1 ? mStar : -mStar))) throw ConstructionBug("Phi_(eps) is not eps-Hermitian");
  if (!(star(phi, inv) * m * phi == m)) throw ConstructionBug("Phi^* Phi_(eps) Phi != Phi_(eps)");
  if (!isInvertible(m)) throw ConstructionBug("Phi_(eps) is singular");
  return m;
}

/// q(x) = a_r x^r + ... + a_1 x + a_0 + conj(a_1) x^{-1} + ... + conj(a_r) x^{-r}.
template <CommutativeScalar T>
struct QFunction {
  /// a_0 .. a_r.
  std::vector<T> a;

  int r() const { return static_cast<int>(a.size()) - 1; }

  LaurentPoly<T> laurent(Involution inv) const {
    LaurentPoly<T> f;
    if (a.empty()) return {0, {T(0)}};
    const int rr = r();
    f.lowExponent = -rr;
    f.coeffs.resize(2 * rr + 1);
    for (int k = 0; k <= rr; ++k) f.coeffs[rr + k] = a[k];
    for (int k = 1; k <= rr; ++k) f.coeffs[rr - k] = conjugate(a[k], inv);
    return f;
  }
};

/// Checks a_0 = conj(a_0) and, when deg p = 2r, the constraint on a_r.
template <CommutativeScalar T>
void validateQFunction(const QFunction<T>& q, const Poly<T>& p, Involution inv) {
  if (q.a.empty()) throw DomainError("q(x) has no coefficients");
  if (!(q.a[0] == conjugate(q.a[0], inv))) throw DomainError("q(x): a_0 must be fixed by the involution");
  if (p.degree() != 2 * q.r() || q.r() == 0) return;
  const T& ar = q.a.back();
  if (inv == Involution::Identity) {
    if (!isZero(ar)) throw DomainError("q(x): a_r must vanish when deg p = 2r");
  } else if (p.coeff(0) == T(1)) {
    if (!(ar == -conjugate(ar, inv))) throw DomainError("q(x): a_r must satisfy a_r = -conj(a_r)");
  } else if (!(ar == conjugate(ar, inv))) {
    throw DomainError("q(x): a_r must satisfy a_r = conj(a_r)");
  }
}

template <CommutativeScalar T>
Matrix<T> qEval(const QFunction<T>& q, const Matrix<T>& m, Involution inv) {
  return polyEval(q.laurent(inv), m);
}

namespace detail {

template <CommutativeScalar T>
ScalarDomain domainForRing(Involution inv) {
  if constexpr (std::is_same_v<T, Rational>) {
    return ScalarDomain::forCase(DomainCase::C);
  } else {
    return ScalarDomain::forCase(inv == Involution::Identity ? DomainCase::A : DomainCase::B);
  }
}

}  // namespace detail

/// (Phi, Phi_(eps) q(Phi)).
template <CommutativeScalar T>
Pair<T> buildSelfDualSummand(const FrobeniusBlock<T>& fb, int epsilon, Involution inv, const QFunction<T>& q) {
  validateQFunction(q, fb.p, inv);
  const Matrix<T> phi = fb.matrix();
  const Matrix<T> qPhi = qEval(q, phi, inv);
  if (!isInvertible(qPhi)) throw DomainError("q(Phi) is singular");
  return validatePair(Pair<T>{detail::domainForRing<T>(inv), epsilon, phi, buildToeplitz(fb, epsilon, inv) * qPhi});
}

/// (Phi + Phi^{-*}, I \ eps I).
template <CommutativeScalar T>
Pair<T> buildHyperbolicSummand(const Matrix<T>& phi, int epsilon, Involution inv) {
  const std::size_t n = phi.rows();
  const Matrix<T> id = Matrix<T>::identity(n);
  return validatePair(Pair<T>{detail::domainForRing<T>(inv), epsilon,
                              directSum(phi, inverse(star(phi, inv))),
                              skewSum(id, epsilon == 1 ? id : Matrix<T>(-id))});
}

}  // namespace isoform
