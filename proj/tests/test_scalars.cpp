#include <gtest/gtest.h>

#include "support.hpp"

namespace {

using namespace isoform;
using isoform::testing::Rng;
using isoform::testing::randomScalar;

Quaternion q(const char* s) { return parseScalar<Quaternion>(s); }
Gaussian g(const char* s) { return parseScalar<Gaussian>(s); }

TEST(Rational, NormalizesSignAndGcd) {
  const Rational r(mpz_class(6), mpz_class(-4));
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 2);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(Rational(4, 2).str(), "2");
}

TEST(Rational, DivisionByZeroThrows) {
  EXPECT_THROW(Rational(1) / Rational(0), DomainError);
  EXPECT_THROW(Rational(1, 0), DomainError);
  EXPECT_THROW(Gaussian(1) / Gaussian(0), DomainError);
  EXPECT_THROW(quatInverse(Quaternion(0)), DomainError);
}

TEST(Arith, GaussianNorm) {
  EXPECT_EQ(g("1/2+i") * g("1/2-i"), Gaussian(Rational(5, 4)));
  const ExactScalar r = arith(g("1/2+i"), g("1/2-i"), ArithOp::Mul);
  EXPECT_EQ(toString(r), "5/4");
}

TEST(Arith, QuaternionUnits) {
  EXPECT_EQ(Quaternion::J() * Quaternion::K(), Quaternion::I());
  EXPECT_EQ(Quaternion::K() * Quaternion::J(), -Quaternion::I());
  EXPECT_EQ(Quaternion::I() * Quaternion::J(), Quaternion::K());
  EXPECT_EQ(Quaternion::K() * Quaternion::I(), Quaternion::J());
  EXPECT_NE(Quaternion::I() * Quaternion::J(), Quaternion::J() * Quaternion::I());
}

TEST(Arith, QuaternionProductByHand) {
  EXPECT_EQ(q("1+j") * q("1+k"), q("1+i+j+k"));
  EXPECT_EQ(oracle::hamilton(q("1+j"), q("1+k")), q("1+i+j+k"));
}

TEST(Arith, MixedRingsRejected) {
  EXPECT_THROW(arith(ExactScalar(Rational(1)), ExactScalar(Gaussian(1)), ArithOp::Add), DomainError);
  EXPECT_THROW(arith(ExactScalar(Rational(1)), ExactScalar(Rational(0)), ArithOp::Div), DomainError);
}

TEST(Conjugate, Semiconjugation) {
  EXPECT_EQ(conjugate(q("1+2i+3j+4k"), Involution::QuaternionSemiconjugation), q("1-2i+3j+4k"));
  EXPECT_EQ(conjugate(q("1+2i+3j+4k"), Involution::QuaternionConjugation), q("1-2i-3j-4k"));
}

TEST(Conjugate, IdentityIsTrivial) {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const Gaussian x = randomScalar<Gaussian>(rng);
    EXPECT_EQ(conjugate(x, Involution::Identity), x);
  }
}

TEST(Conjugate, AntiMultiplicativeOnUnits) {
  const auto inv = Involution::QuaternionConjugation;
  const Quaternion lhs = conjugate(Quaternion::I() * Quaternion::J(), inv);
  EXPECT_EQ(lhs, -Quaternion::K());
  EXPECT_EQ(lhs, conjugate(Quaternion::J(), inv) * conjugate(Quaternion::I(), inv));
}

TEST(Conjugate, IncompatibleInvolutionThrows) {
  EXPECT_THROW(conjugate(Gaussian(1), Involution::QuaternionConjugation), DomainError);
  EXPECT_THROW(conjugate(Quaternion(1), Involution::ComplexConjugation), DomainError);
  EXPECT_THROW(conjugate(Rational(1), Involution::ComplexConjugation), DomainError);
}

TEST(AbsSq, Examples) {
  EXPECT_EQ(absSq(g("3/5+4/5*i")), Rational(1));
  EXPECT_EQ(absSq(q("1+i+j+k")), Rational(4));
  EXPECT_EQ(absSq(Rational(0)), Rational(0));
  EXPECT_EQ(absSq(Rational(-3)), Rational(9));
}

TEST(QuatInverse, Examples) {
  EXPECT_EQ(quatInverse(Quaternion::J()), -Quaternion::J());
  EXPECT_EQ(quatInverse(q("1+i")), q("1/2-1/2*i"));
  EXPECT_EQ(quatInverse(q("1+i+j+k")), q("1/4-1/4*i-1/4*j-1/4*k"));
  const Quaternion h = q("1+i+j+k");
  EXPECT_EQ(h * quatInverse(h), Quaternion(1));
  EXPECT_EQ(quatInverse(h) * h, Quaternion(1));
}

TEST(RealifyScalar, Examples) {
  using R = std::array<std::array<Rational, 2>, 2>;
  EXPECT_EQ(realifyScalar(Gaussian::I()), (R{{{0, -1}, {1, 0}}}));
  EXPECT_EQ(realifyScalar(Gaussian(1)), (R{{{1, 0}, {0, 1}}}));
  EXPECT_EQ(realifyScalar(g("1+i") * g("2-i")), (R{{{3, -1}, {1, 3}}}));
}

TEST(Text, RoundTripAndOmittedComponents) {
  EXPECT_EQ(toString(g("3/5+4/5*i")), "3/5+4/5*i");
  EXPECT_EQ(toString(q("1/2+3/4*i+5/6*j+7/8*k")), "1/2+3/4*i+5/6*j+7/8*k");
  EXPECT_EQ(q("k"), Quaternion::K());
  EXPECT_EQ(q("-j"), -Quaternion::J());
  EXPECT_EQ(g("-i"), -Gaussian::I());
  EXPECT_EQ(toString(Gaussian(0)), "0");
  EXPECT_THROW(parseScalar<Rational>("1+i"), DomainError);
  EXPECT_THROW(parseScalar<Gaussian>("j"), DomainError);
  EXPECT_THROW(parseScalar<Rational>("abc"), DomainError);
}

TEST(ScalarDomain, CasesFixRingAndInvolution) {
  EXPECT_EQ(ScalarDomain::forCase(DomainCase::A).ring(), Ring::Qi);
  EXPECT_EQ(ScalarDomain::forCase(DomainCase::A).involution(), Involution::Identity);
  EXPECT_EQ(ScalarDomain::forCase(DomainCase::B).involution(), Involution::ComplexConjugation);
  EXPECT_EQ(ScalarDomain::forCase(DomainCase::C).ring(), Ring::Q);
  EXPECT_TRUE(ScalarDomain::forCase(DomainCase::C).hasClosureView());
  EXPECT_EQ(ScalarDomain::forCase(DomainCase::D, Involution::QuaternionSemiconjugation).involution(),
            Involution::QuaternionSemiconjugation);
  EXPECT_THROW(ScalarDomain::forCase(DomainCase::D, Involution::Identity), DomainError);
}

// --- properties on seeded random triples ------------------------------------------

template <class T>
class RingLaws : public ::testing::Test {};
using ScalarTypes = ::testing::Types<Rational, Gaussian, Quaternion>;
TYPED_TEST_SUITE(RingLaws, ScalarTypes);

TYPED_TEST(RingLaws, AssociativeAndDistributive) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto x = randomScalar<TypeParam>(rng), y = randomScalar<TypeParam>(rng), z = randomScalar<TypeParam>(rng);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ((x + y) * z, x * z + y * z);
    EXPECT_EQ(x * y, oracle::mul(x, y));
  }
}

TYPED_TEST(RingLaws, InverseIsTwoSided) {
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const auto x = isoform::testing::randomNonzero<TypeParam>(rng);
    EXPECT_EQ(x * inverse(x), TypeParam(1));
    EXPECT_EQ(inverse(x) * x, TypeParam(1));
  }
}

TYPED_TEST(RingLaws, InvolutionsAreAntiAutomorphisms) {
  std::vector<Involution> invs;
  for (auto v : {Involution::Identity, Involution::ComplexConjugation, Involution::QuaternionConjugation,
                 Involution::QuaternionSemiconjugation})
    if (involutionValidFor(ScalarTraits<TypeParam>::ring, v)) invs.push_back(v);
  ASSERT_FALSE(invs.empty());
  Rng rng(13);
  for (auto v : invs)
    for (int t = 0; t < 100; ++t) {
      const auto x = randomScalar<TypeParam>(rng), y = randomScalar<TypeParam>(rng);
      EXPECT_EQ(conjugate(x + y, v), conjugate(x, v) + conjugate(y, v));
      EXPECT_EQ(conjugate(x * y, v), conjugate(y, v) * conjugate(x, v));
      EXPECT_EQ(conjugate(conjugate(x, v), v), x);
      EXPECT_EQ(conjugate(x, v), oracle::conj(x, v));
    }
}

TYPED_TEST(RingLaws, AbsSqIsMultiplicative) {
  Rng rng(14);
  for (int t = 0; t < 200; ++t) {
    const auto x = randomScalar<TypeParam>(rng), y = randomScalar<TypeParam>(rng);
    EXPECT_EQ(absSq(x * y), absSq(x) * absSq(y));
  }
}

TYPED_TEST(RingLaws, TextRoundTrip) {
  Rng rng(15);
  for (int t = 0; t < 100; ++t) {
    const auto x = randomScalar<TypeParam>(rng, 50, 30);
    EXPECT_EQ(parseScalar<TypeParam>(toString(x)), x);
  }
}

TEST(RealifyScalar, IsRingHomomorphismAndStarCompatible) {
  Rng rng(16);
  auto asMatrix = [](const Gaussian& z) {
    const auto b = realifyScalar(z);
    return Matrix<Rational>{{b[0][0], b[0][1]}, {b[1][0], b[1][1]}};
  };
  for (int t = 0; t < 200; ++t) {
    const auto z = randomScalar<Gaussian>(rng), w = randomScalar<Gaussian>(rng);
    EXPECT_EQ(asMatrix(z * w), oracle::mul(asMatrix(z), asMatrix(w)));
    EXPECT_EQ(asMatrix(z + w), asMatrix(z) + asMatrix(w));
    EXPECT_EQ(asMatrix(z.conj()), asMatrix(z).transpose());
  }
}

}  // namespace
