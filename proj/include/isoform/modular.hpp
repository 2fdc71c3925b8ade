#pragma once

// Characteristic polynomials by reduction modulo word-size primes p = 1 mod 4
// (so that i has an image in F_p), Chinese remaindering and rational
// reconstruction. The result is a candidate only: callers must certify it,
// e.g. by checking that the generalized eigenspaces of its roots fill the space.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "isoform/matrix.hpp"
#include "isoform/polynomial.hpp"
#include "isoform/scalars.hpp"

namespace isoform {

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulMod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

inline u64 powMod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulMod(r, a, p);
    a = mulMod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline bool isPrime64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powMod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulMod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

struct ModPrime {
  u64 p;
  u64 sqrtMinusOne;
};

inline constexpr std::size_t kMaxPrimes = 512;

/// The k-th prime below 2^62 congruent to 1 mod 4 (largest first), with a
/// square root of -1; generated on demand.
inline const ModPrime& modularPrime(std::size_t k) {
  static std::vector<ModPrime> primes;
  static u64 next = (1ULL << 62) - 3;  // = 1 mod 4
  while (primes.size() <= k) {
    const u64 c = next;
    next -= 4;
    if (!isPrime64(c)) continue;
    for (u64 g = 2;; ++g) {
      const u64 r = powMod(g, (c - 1) / 4, c);
      if (mulMod(r, r, c) == c - 1) {
        primes.push_back({c, r});
        break;
      }
    }
  }
  return primes[k];
}

inline u64 invMod(u64 a, u64 p) { return powMod(a, p - 2, p); }

inline std::optional<u64> reduceMod(const Rational& x, u64 p) {
  const mpz_class pp(static_cast<unsigned long>(p));
  const mpz_class den = x.denominator() % pp;
  if (den == 0) return std::nullopt;
  mpz_class num = x.numerator() % pp;
  if (num < 0) num += pp;
  return mulMod(num.get_ui(), invMod(den.get_ui(), p), p);
}

/// det(xI - H) mod p, coefficients low to high.
inline std::vector<u64> charPolyMod(std::vector<u64> h, std::size_t n, u64 p) {
  auto at = [&](std::size_t i, std::size_t j) -> u64& { return h[i * n + j]; };
  auto sub = [p](u64 a, u64 b) { return a >= b ? a - b : a + p - b; };
  for (std::size_t k = 0; k + 2 < n; ++k) {
    std::size_t piv = k + 1;
    while (piv < n && at(piv, k) == 0) ++piv;
    if (piv == n) continue;
    if (piv != k + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(piv, j), at(k + 1, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(at(i, piv), at(i, k + 1));
    }
    const u64 inv = invMod(at(k + 1, k), p);
    for (std::size_t i = k + 2; i < n; ++i) {
      if (at(i, k) == 0) continue;
      const u64 f = mulMod(at(i, k), inv, p);
      for (std::size_t j = 0; j < n; ++j) at(i, j) = sub(at(i, j), mulMod(f, at(k + 1, j), p));
      for (std::size_t r = 0; r < n; ++r) at(r, k + 1) = (at(r, k + 1) + mulMod(f, at(r, i), p)) % p;
    }
  }
  std::vector<std::vector<u64>> q(n + 1);
  q[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    // (x - h_mm) q_{m-1}
    std::vector<u64> cur(m + 1, 0);
    const u64 d = at(m - 1, m - 1);
    for (std::size_t t = 0; t < q[m - 1].size(); ++t) {
      cur[t + 1] = (cur[t + 1] + q[m - 1][t]) % p;
      cur[t] = sub(cur[t], mulMod(d, q[m - 1][t], p));
    }
    u64 prod = 1;
    for (std::size_t i = 1; i < m; ++i) {
      prod = mulMod(prod, at(m - i, m - i - 1), p);
      if (prod == 0) break;
      const u64 coef = mulMod(at(m - i - 1, m - 1), prod, p);
      if (coef == 0) continue;
      for (std::size_t t = 0; t < q[m - i - 1].size(); ++t) cur[t] = sub(cur[t], mulMod(coef, q[m - i - 1][t], p));
    }
    q[m] = std::move(cur);
  }
  return q[n];
}

/// r/s = u mod m with |r|, |s| <= sqrt(m/2), if such a fraction exists.
inline std::optional<Rational> rationalReconstruct(const mpz_class& u, const mpz_class& m) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = u, s0 = 0, s1 = 1;
  while (r1 > bound) {
    const mpz_class q = r0 / r1;
    mpz_class t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
  if (g != 1) return std::nullopt;
  return Rational(r1, s1);
}

inline void crtCombine(mpz_class& acc, const mpz_class& mod, u64 residue, u64 p) {
  // acc' = acc + mod * ((residue - acc) / mod mod p)
  const mpz_class pp(static_cast<unsigned long>(p));
  mpz_class accP = acc % pp;
  mpz_class diff = mpz_class(static_cast<unsigned long>(residue)) - accP;
  diff %= pp;
  if (diff < 0) diff += pp;
  mpz_class modP = mod % pp;
  const u64 t = mulMod(diff.get_ui(), invMod(modP.get_ui(), p), p);
  acc += mod * mpz_class(static_cast<unsigned long>(t));
}

/// L * M over Z[i] for the lcm L of all denominators; scaling by L keeps
/// every kernel of every power.
struct IntegerGaussianMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<mpz_class> re, im;

  explicit IntegerGaussianMatrix(const Matrix<Gaussian>& m) : rows(m.rows()), cols(m.cols()) {
    mpz_class l = 1;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) lcmInto(l, m(i, j));
    re.reserve(rows * cols);
    im.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        re.push_back(scaledInteger(m(i, j).re, l));
        im.push_back(scaledInteger(m(i, j).im, l));
      }
  }
};

/// Images under i -> iota and i -> -iota.
inline void imagesMod(const IntegerGaussianMatrix& m, const ModPrime& mp, std::vector<u64>& plus,
                      std::vector<u64>& minus) {
  const auto [p, iota] = mp;
  plus.resize(m.re.size());
  minus.resize(m.re.size());
  for (std::size_t t = 0; t < m.re.size(); ++t) {
    const u64 a = mpz_fdiv_ui(m.re[t].get_mpz_t(), p);
    const u64 bi = mulMod(mpz_fdiv_ui(m.im[t].get_mpz_t(), p), iota, p);
    plus[t] = (a + bi) % p;
    minus[t] = (a + p - bi) % p;
  }
}

inline std::vector<u64> squareMulMod(const std::vector<u64>& a, const std::vector<u64>& b, std::size_t n, u64 p) {
  std::vector<u64> r(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const u64 x = a[i * n + k];
      if (x == 0) continue;
      for (std::size_t j = 0; j < n; ++j) r[i * n + j] = (r[i * n + j] + mulMod(x, b[k * n + j], p)) % p;
    }
  return r;
}

/// Reduced row echelon form mod p in place; returns pivot columns.
inline std::vector<std::size_t> rrefMod(std::vector<u64>& m, std::size_t rows, std::size_t cols, u64 p) {
  auto at = [&](std::size_t i, std::size_t j) -> u64& { return m[i * cols + j]; };
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t q = row;
    while (q < rows && at(q, col) == 0) ++q;
    if (q == rows) continue;
    if (q != row)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(q, j), at(row, j));
    const u64 inv = invMod(at(row, col), p);
    for (std::size_t j = col; j < cols; ++j) at(row, j) = mulMod(at(row, j), inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || at(i, col) == 0) continue;
      const u64 f = at(i, col);
      for (std::size_t j = col; j < cols; ++j) {
        const u64 t = mulMod(f, at(row, j), p);
        at(i, j) = at(i, j) >= t ? at(i, j) - t : at(i, j) + p - t;
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

/// Basis of ker N^k (columns in the reduced-echelon normalization) for a
/// square Gaussian matrix. The basis is rebuilt from modular images and
/// accepted only after N^k K = 0 is checked exactly; since no modular kernel
/// is smaller than the true one, a verified basis is exact. Falls back to
/// exact elimination if reconstruction does not settle.
inline Matrix<Gaussian> kernelOfPower(const Matrix<Gaussian>& n, std::size_t k) {
  using namespace detail;
  if (!n.isSquare()) throw ShapeError("kernelOfPower needs a square matrix");
  const std::size_t dim = n.rows();
  auto exactFallback = [&] {
    Matrix<Gaussian> pw = n;
    for (std::size_t j = 1; j < k; ++j) pw = pw * n;
    return rankKernel(pw).kernel;
  };
  if (dim == 0 || k == 0) return Matrix<Gaussian>(dim, 0);

  std::vector<std::size_t> pivots;
  bool havePivots = false;
  std::vector<std::size_t> freeCols;
  std::vector<mpz_class> accRe, accIm;
  mpz_class modulus = 1;
  std::size_t used = 0, nextCheck = 1;
  const IntegerGaussianMatrix scaled(n);
  std::vector<u64> plus, minus;
  for (std::size_t pi = 0; pi < kMaxPrimes; ++pi) {
    const ModPrime mp = modularPrime(pi);
    const u64 p = mp.p;
    imagesMod(scaled, mp, plus, minus);
    std::vector<u64> pp = plus, pm = minus;
    for (std::size_t j = 1; j < k; ++j) {
      pp = squareMulMod(pp, plus, dim, p);
      pm = squareMulMod(pm, minus, dim, p);
    }
    const auto pivPlus = rrefMod(pp, dim, dim, p);
    const auto pivMinus = rrefMod(pm, dim, dim, p);
    if (pivPlus != pivMinus) continue;
    // Bad primes lose rank or push pivots to later columns.
    if (havePivots) {
      if (pivPlus.size() < pivots.size()) continue;
      if (pivPlus.size() == pivots.size() && !(pivPlus < pivots) && pivPlus != pivots) continue;
    }
    if (!havePivots || pivPlus != pivots) {
      pivots = pivPlus;
      havePivots = true;
      freeCols.clear();
      std::vector<bool> isPivot(dim, false);
      for (auto c : pivots) isPivot[c] = true;
      for (std::size_t c = 0; c < dim; ++c)
        if (!isPivot[c]) freeCols.push_back(c);
      accRe.assign(pivots.size() * freeCols.size(), 0);
      accIm.assign(pivots.size() * freeCols.size(), 0);
      modulus = 1;
      used = 0;
      nextCheck = 1;
    }
    if (freeCols.empty()) return Matrix<Gaussian>(dim, 0);
    const u64 inv2 = invMod(2, p);
    const u64 inv2iota = invMod(mulMod(2, mp.sqrtMinusOne, p), p);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      for (std::size_t f = 0; f < freeCols.size(); ++f) {
        const u64 vp = pp[r * dim + freeCols[f]], vm = pm[r * dim + freeCols[f]];
        const u64 re = mulMod((vp + vm) % p, inv2, p);
        const u64 im = mulMod((vp + p - vm) % p, inv2iota, p);
        crtCombine(accRe[r * freeCols.size() + f], modulus, re, p);
        crtCombine(accIm[r * freeCols.size() + f], modulus, im, p);
      }
    modulus *= mpz_class(static_cast<unsigned long>(p));
    ++used;
    if (used < nextCheck) continue;
    nextCheck = used + std::max<std::size_t>(1, used / 2);
    Matrix<Gaussian> kern(dim, freeCols.size());
    bool ok = true;
    for (std::size_t f = 0; f < freeCols.size() && ok; ++f) {
      kern(freeCols[f], f) = Gaussian(1);
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        const auto re = rationalReconstruct(accRe[r * freeCols.size() + f], modulus);
        const auto im = re ? rationalReconstruct(accIm[r * freeCols.size() + f], modulus) : std::nullopt;
        if (!re || !im) {
          ok = false;
          break;
        }
        kern(pivots[r], f) = -Gaussian(*re, *im);
      }
    }
    if (!ok) continue;
    Matrix<Gaussian> check = kern;
    for (std::size_t j = 0; j < k; ++j) check = n * check;
    if (check.isZero()) return kern;
  }
  return exactFallback();
}

/// Candidate det(xI - M) from modular images; nullopt when reconstruction
/// does not stabilize within the available primes.
template <CommutativeScalar T>
std::optional<Poly<T>> modularCharPoly(const Matrix<T>& m) {
  using namespace detail;
  if (!m.isSquare()) throw ShapeError("charPoly of non-square matrix");
  const std::size_t n = m.rows();
  constexpr bool gaussian = std::is_same_v<T, Gaussian>;
  std::vector<mpz_class> accRe(n + 1, 0), accIm(n + 1, 0);
  mpz_class modulus = 1;
  std::optional<std::vector<T>> previous;
  const IntegerGaussianMatrix scaled(convertMatrix<Gaussian>(m));
  // det(xI - M) = L^{-n} det(yI - LM) at y = Lx
  mpz_class l = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lcmInto(l, m(i, j));
  std::vector<u64> hPlus, hMinus;
  for (std::size_t pi = 0; pi < 48; ++pi) {
    const auto mp = modularPrime(pi);
    const u64 p = mp.p;
    const u64 iota = mp.sqrtMinusOne;
    const u64 lMod = mpz_fdiv_ui(l.get_mpz_t(), p);
    if (lMod == 0) continue;
    imagesMod(scaled, mp, hPlus, hMinus);
    auto cPlus = charPolyMod(std::move(hPlus), n, p);
    auto cMinus = gaussian ? charPolyMod(std::move(hMinus), n, p) : cPlus;
    // coefficient k of det(yI - LM) carries L^{n-k}
    const u64 lInv = invMod(lMod, p);
    u64 scale = 1;
    for (std::size_t k = n + 1; k-- > 0;) {
      cPlus[k] = mulMod(cPlus[k], scale, p);
      cMinus[k] = mulMod(cMinus[k], scale, p);
      scale = mulMod(scale, lInv, p);
    }
    const u64 inv2 = invMod(2, p);
    const u64 inv2iota = invMod(mulMod(2, iota, p), p);
    for (std::size_t k = 0; k <= n; ++k) {
      const u64 re = mulMod((cPlus[k] + cMinus[k]) % p, inv2, p);
      const u64 im = mulMod((cPlus[k] + p - cMinus[k]) % p, inv2iota, p);
      crtCombine(accRe[k], modulus, re, p);
      if (gaussian) crtCombine(accIm[k], modulus, im, p);
    }
    modulus *= mpz_class(static_cast<unsigned long>(p));
    std::vector<T> coeffs;
    bool reconstructed = true;
    for (std::size_t k = 0; k <= n && reconstructed; ++k) {
      const auto re = rationalReconstruct(accRe[k], modulus);
      if (!re) {
        reconstructed = false;
        break;
      }
      if constexpr (gaussian) {
        const auto im = rationalReconstruct(accIm[k], modulus);
        if (!im) {
          reconstructed = false;
          break;
        }
        coeffs.push_back(Gaussian(*re, *im));
      } else {
        coeffs.push_back(*re);
      }
    }
    if (!reconstructed) {
      previous.reset();
      continue;
    }
    if (previous && *previous == coeffs) return Poly<T>(std::move(coeffs));
    previous = std::move(coeffs);
  }
  return std::nullopt;
}

}  // namespace isoform
