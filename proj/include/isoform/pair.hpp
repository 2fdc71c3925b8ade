#pragma once

// Pairs (A, B) with B = eps B^* = A^* B A, congruence-similarity, direct sums
// and seeded random changes of basis.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "isoform/errors.hpp"
#include "isoform/matrix.hpp"
#include "isoform/scalars.hpp"

namespace isoform {

template <Scalar T>
struct Pair {
  ScalarDomain domain;
  int epsilon = 1;
  Matrix<T> A;
  Matrix<T> B;

  std::size_t dim() const noexcept { return A.rows(); }
  friend bool operator==(const Pair&, const Pair&) = default;
};

/// A pair whose scalar ring is known only at run time.
using IsometricPair = std::variant<Pair<Rational>, Pair<Gaussian>, Pair<Quaternion>>;

/// Scalar type used for the pair entries of each case.
template <DomainCase C>
using CaseScalar = std::conditional_t<C == DomainCase::C, Rational,
                                      std::conditional_t<C == DomainCase::D, Quaternion, Gaussian>>;

inline Ring pairRing(const IsometricPair& p) { return static_cast<Ring>(p.index()); }

inline const ScalarDomain& pairDomain(const IsometricPair& p) {
  return std::visit([](const auto& q) -> const ScalarDomain& { return q.domain; }, p);
}

inline int pairEpsilon(const IsometricPair& p) {
  return std::visit([](const auto& q) { return q.epsilon; }, p);
}

inline std::size_t pairDim(const IsometricPair& p) {
  return std::visit([](const auto& q) { return q.dim(); }, p);
}

inline constexpr const char* kWildnessNote =
    "pairs with a degenerate form are not handled: classifying an isometry of a singular form is a wild problem "
    "(it contains the classification of pairs of matrices under simultaneous similarity)";

/// Checks the axioms in the order shape, symmetry, singularB, isometry, singularA.
template <Scalar T>
Pair<T> validatePair(Pair<T> p) {
  if (p.domain.ring() != ScalarTraits<T>::ring)
    throw AxiomError(Axiom::Shape, std::string("entries do not live in ring ") + ringName(p.domain.ring()));
  if (p.epsilon != 1 && p.epsilon != -1) throw AxiomError(Axiom::Shape, "epsilon must be 1 or -1");
  if (p.domain.caseTag() == DomainCase::B && p.epsilon != 1)
    throw DomainError("case B requires epsilon = 1");
  if (!p.A.isSquare() || !p.B.isSquare() || p.A.rows() != p.B.rows())
    throw AxiomError(Axiom::Shape, "A and B must be square of equal size, got " + p.A.shapeStr() + " and " +
                                       p.B.shapeStr());
  const Involution inv = p.domain.involution();
  const Matrix<T> bStar = star(p.B, inv);
  if (!(p.B == (p.epsilon == 1 ? bStar : -bStar)))
    throw AxiomError(Axiom::Symmetry, "B != eps * B^* (eps = " + std::to_string(p.epsilon) + ")");
  if (!isInvertible(p.B)) throw AxiomError(Axiom::SingularB, std::string("B is singular; ") + kWildnessNote);
  if (!(star(p.A, inv) * p.B * p.A == p.B)) throw AxiomError(Axiom::Isometry, "A^* B A != B");
  if (!isInvertible(p.A)) throw AxiomError(Axiom::SingularA, "A is singular");
  return p;
}

inline IsometricPair validatePair(IsometricPair p) {
  return std::visit([](auto&& q) -> IsometricPair { return validatePair(std::move(q)); }, std::move(p));
}

/// (S^{-1} A S, S^* B S).
template <Scalar T>
Pair<T> applyTransform(const Pair<T>& p, const Matrix<T>& s, bool revalidate = true) {
  if (s.rows() != p.dim() || !s.isSquare())
    throw ShapeError("transform of size " + s.shapeStr() + " for a pair of dimension " + std::to_string(p.dim()));
  Pair<T> r{p.domain, p.epsilon, inverse(s) * p.A * s, star(s, p.domain.involution()) * p.B * s};
  if (revalidate) r = validatePair(std::move(r));
  return r;
}

template <Scalar T>
Pair<T> directSumPairs(std::span<const Pair<T>> ps) {
  if (ps.empty()) throw DomainError("direct sum of no pairs");
  std::vector<Matrix<T>> as, bs;
  for (const auto& p : ps) {
    if (!(p.domain == ps[0].domain)) throw DomainError("direct sum of pairs over different domains");
    if (p.epsilon != ps[0].epsilon) throw DomainError("direct sum of pairs with different epsilon");
    as.push_back(p.A);
    bs.push_back(p.B);
  }
  return {ps[0].domain, ps[0].epsilon, directSum<T>(std::span<const Matrix<T>>(as)),
          directSum<T>(std::span<const Matrix<T>>(bs))};
}

template <Scalar T>
Pair<T> directSumPairs(const std::vector<Pair<T>>& ps) {
  return directSumPairs(std::span<const Pair<T>>(ps));
}

struct TransformSeed {
  std::uint64_t seed = 0;
  int entryBound = 2;
  std::size_t size = 1;
};

namespace detail {

inline Rational drawComponent(std::mt19937_64& rng, int bound) {
  const auto span = static_cast<std::uint64_t>(2 * bound + 1);
  return Rational(static_cast<long>(rng() % span) - bound);
}

template <Scalar T>
T drawScalar(std::mt19937_64& rng, int bound) {
  if constexpr (std::is_same_v<T, Rational>) {
    return drawComponent(rng, bound);
  } else if constexpr (std::is_same_v<T, Gaussian>) {
    Rational re = drawComponent(rng, bound);
    return {re, drawComponent(rng, bound)};
  } else {
    Rational a = drawComponent(rng, bound);
    Rational b = drawComponent(rng, bound);
    Rational c = drawComponent(rng, bound);
    return {a, b, c, drawComponent(rng, bound)};
  }
}

}  // namespace detail

/// Invertible S with integer components in [-bound, bound]; same seed, same S.
/// After a fixed number of singular draws the bound is widened by one.
template <Scalar T>
Matrix<T> randomTransform(const TransformSeed& ts) {
  constexpr int kAttemptsPerBound = 16;
  std::mt19937_64 rng(ts.seed);
  int bound = ts.entryBound < 0 ? 0 : ts.entryBound;
  for (;;) {
    for (int attempt = 0; attempt < kAttemptsPerBound; ++attempt) {
      Matrix<T> s(ts.size, ts.size);
      for (std::size_t i = 0; i < ts.size; ++i)
        for (std::size_t j = 0; j < ts.size; ++j) s(i, j) = detail::drawScalar<T>(rng, bound);
      if (isInvertible(s)) return s;
    }
    ++bound;
  }
}

}  // namespace isoform
