#pragma once

// Seeded generators and a naive reference implementation shared by the test
// suites and the acceptance binary.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "isoform/isoform.hpp"

namespace isoform::testing {

using Rng = std::mt19937_64;

// --- generators ---------------------------------------------------------------

/// p/q with |p| <= bound and 1 <= q <= den.
inline Rational randomRational(Rng& rng, int bound = 3, int den = 3) {
  const long p = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * bound + 1)) - bound;
  const long q = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(den));
  return Rational(p, q);
}

template <Scalar T>
T randomScalar(Rng& rng, int bound = 3, int den = 3) {
  if constexpr (std::is_same_v<T, Rational>) {
    return randomRational(rng, bound, den);
  } else if constexpr (std::is_same_v<T, Gaussian>) {
    Rational re = randomRational(rng, bound, den);
    return {re, randomRational(rng, bound, den)};
  } else {
    Rational a = randomRational(rng, bound, den);
    Rational b = randomRational(rng, bound, den);
    Rational c = randomRational(rng, bound, den);
    return {a, b, c, randomRational(rng, bound, den)};
  }
}

template <Scalar T>
T randomNonzero(Rng& rng, int bound = 3, int den = 3) {
  for (;;) {
    T x = randomScalar<T>(rng, bound, den);
    if (!isZero(x)) return x;
  }
}

template <Scalar T>
Matrix<T> randomMatrix(Rng& rng, std::size_t r, std::size_t c, int bound = 3, int den = 2) {
  Matrix<T> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = randomScalar<T>(rng, bound, den);
  return m;
}

template <Scalar T>
Matrix<T> randomInvertible(Rng& rng, std::size_t n, int bound = 3, int den = 2) {
  for (;;) {
    Matrix<T> m = randomMatrix<T>(rng, n, n, bound, den);
    if (isInvertible(m)) return m;
  }
}

// --- configurations and random canonical multisets ------------------------------

struct Config {
  DomainCase domainCase;
  Involution involution;  // case D only
  int epsilon;

  std::string name() const {
    std::string s(1, caseName(domainCase));
    if (domainCase == DomainCase::D)
      s += involution == Involution::QuaternionConjugation ? "/conj" : "/semi";
    return s + (epsilon == 1 ? " eps=+1" : " eps=-1");
  }
};

/// The (case, involution) settings, each with every admissible epsilon.
inline std::vector<Config> allConfigs() {
  using enum DomainCase;
  const Involution id = Involution::Identity;
  const Involution qc = Involution::QuaternionConjugation;
  const Involution qs = Involution::QuaternionSemiconjugation;
  return {{A, id, 1}, {A, id, -1}, {B, id, 1},  {C, id, 1}, {C, id, -1},
          {D, qc, 1}, {D, qc, -1}, {D, qs, 1}, {D, qs, -1}};
}

/// Eigenvalue parameters drawn by the round-trip generator.
inline std::vector<Gaussian> roundTripLambdas() {
  return {Gaussian(1),
          Gaussian(-1),
          Gaussian(2),
          Gaussian(Rational(1, 2)),
          Gaussian(-3),
          Gaussian::I(),
          -Gaussian::I(),
          Gaussian(Rational(3, 5), Rational(4, 5)),
          Gaussian(Rational(-3, 5), Rational(-4, 5)),
          Gaussian(1, 1),
          Gaussian(0, 2),
          Gaussian(Rational(5, 13), Rational(12, 13))};
}

inline CanonicalBlock makeBlock(const Config& cfg, Subtype st, std::size_t n, const Gaussian& lambda, int sign = 1) {
  CanonicalBlock b;
  b.domainCase = cfg.domainCase;
  b.involution = cfg.domainCase == DomainCase::D ? cfg.involution : Involution::Identity;
  b.subtype = st;
  b.n = n;
  b.lambda = lambda;
  b.sign = sign;
  b.epsilon = cfg.epsilon;
  b.realified = cfg.domainCase == DomainCase::C && !lambda.isReal();
  return b;
}

/// A random list of constructible blocks of total dimension <= maxDim (at least one block).
inline std::vector<CanonicalBlock> randomMultiset(const Config& cfg, Rng& rng, std::size_t maxDim,
                                                  std::size_t maxN = 3) {
  const auto lambdas = roundTripLambdas();
  std::vector<CanonicalBlock> blocks;
  std::size_t dim = 0;
  for (int tries = 0; tries < 40 || blocks.empty(); ++tries) {
    const Gaussian l = lambdas[rng() % lambdas.size()];
    const std::size_t n = 1 + rng() % maxN;
    const ScalarDomain dom = makeBlock(cfg, Subtype::Unimodular, n, l).domain();
    const Subtype st = blockExists(dom, cfg.epsilon, Subtype::Unimodular, n, l) ? Subtype::Unimodular
                                                                                 : Subtype::Hyperbolic;
    CanonicalBlock b = makeBlock(cfg, st, n, l);
    if (signIsFree(b) && rng() % 2 == 1) b.sign = -1;
    if (!blockExists(b) || dim + blockDimension(b) > maxDim) continue;
    blocks.push_back(b);
    dim += blockDimension(b);
  }
  return blocks;
}

inline IsometricPair sumOfBlocks(const std::vector<CanonicalBlock>& blocks) {
  return std::visit(
      [&](const auto& head) -> IsometricPair {
        using P = std::decay_t<decltype(head)>;
        std::vector<P> parts;
        for (const auto& b : blocks) parts.push_back(std::get<P>(buildBlock(b)));
        return directSumPairs(parts);
      },
      buildBlock(blocks.front()));
}

/// (S^{-1} A S, S^* B S) for the seeded random S of entry bound `bound`.
inline IsometricPair scramble(const IsometricPair& p, std::uint64_t seed, int bound = 2, bool revalidate = false) {
  return std::visit(
      [&](const auto& q) -> IsometricPair {
        using T = typename std::decay_t<decltype(q.A)>::value_type;
        return applyTransform(q, randomTransform<T>({seed, bound, q.dim()}), revalidate);
      },
      p);
}

/// The eigenvalue parameters of the block axiom suite.
inline std::vector<Gaussian> blockSuiteLambdas() {
  return {Gaussian(1),     Gaussian(-1), Gaussian(2), Gaussian(Rational(1, 2)), Gaussian::I(), -Gaussian::I(),
          Gaussian(Rational(3, 5), Rational(4, 5)), Gaussian(Rational(3, 5), Rational(-4, 5)), Gaussian(1, 1)};
}

/// Every constructible block over all configurations with n <= maxN and lambda from the list.
inline std::vector<CanonicalBlock> constructibleBlocks(std::size_t maxN, const std::vector<Gaussian>& lambdas) {
  std::vector<CanonicalBlock> out;
  for (const auto& cfg : allConfigs())
    for (auto st : {Subtype::Hyperbolic, Subtype::Unimodular})
      for (std::size_t n = 1; n <= maxN; ++n)
        for (const auto& l : lambdas)
          for (int sign : {1, -1}) {
            const CanonicalBlock b = makeBlock(cfg, st, n, l, sign);
            if (blockExists(b)) out.push_back(b);
          }
  return out;
}

inline std::string describeAll(const std::vector<CanonicalBlock>& blocks) {
  std::string s;
  for (const auto& b : blocks) s += "[" + describe(b) + "] ";
  return s;
}

}  // namespace isoform::testing

// Naive reference arithmetic: textbook formulas only, no elimination tricks,
// used to check library results independently.
namespace isoform::oracle {

/// Product by the 4x4 left-multiplication matrix of x acting on the coordinates of y.
inline Quaternion hamilton(const Quaternion& x, const Quaternion& y) {
  const Rational l[4][4] = {{x.a, -x.b, -x.c, -x.d},
                            {x.b, x.a, -x.d, x.c},
                            {x.c, x.d, x.a, -x.b},
                            {x.d, -x.c, x.b, x.a}};
  const Rational v[4] = {y.a, y.b, y.c, y.d};
  Rational r[4];
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) r[i] += l[i][k] * v[k];
  return {r[0], r[1], r[2], r[3]};
}

inline Rational mul(const Rational& x, const Rational& y) { return x * y; }
inline Gaussian mul(const Gaussian& x, const Gaussian& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
inline Quaternion mul(const Quaternion& x, const Quaternion& y) { return hamilton(x, y); }

inline Rational conj(const Rational& x, Involution) { return x; }
inline Gaussian conj(const Gaussian& x, Involution v) {
  return v == Involution::Identity ? x : Gaussian(x.re, -x.im);
}
inline Quaternion conj(const Quaternion& x, Involution v) {
  if (v == Involution::QuaternionSemiconjugation) return {x.a, -x.b, x.c, x.d};
  return {x.a, -x.b, -x.c, -x.d};
}

template <Scalar T>
Matrix<T> mul(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      T acc(0);
      for (std::size_t k = 0; k < a.cols(); ++k) acc += mul(a(i, k), b(k, j));
      r(i, j) = acc;
    }
  return r;
}

template <Scalar T>
Matrix<T> star(const Matrix<T>& m, Involution v) {
  Matrix<T> r(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = conj(m(i, j), v);
  return r;
}

/// Laplace expansion along the first row.
template <CommutativeScalar T>
T det(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  if (n == 1) return m(0, 0);
  T acc(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (isZero(m(0, j))) continue;
    Matrix<T> minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    const T term = mul(m(0, j), det(minor));
    if (j % 2 == 0) acc += term;
    else acc -= term;
  }
  return acc;
}

/// Characteristic polynomial by Faddeev-LeVerrier, highest degree first.
template <CommutativeScalar T>
std::vector<T> charPoly(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  std::vector<T> c{T(1)};
  Matrix<T> m(n, n);
  const Matrix<T> id = Matrix<T>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<T> next = mul(a, m);
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c.back();
    m = next;
    const Matrix<T> am = mul(a, m);
    T tr(0);
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c.push_back(-(tr / T(static_cast<long>(k))));
  }
  return c;
}

}  // namespace isoform::oracle
