#pragma once

// Recovery of the canonical block multiset of a pair (A, B).
//
// Every case is reduced to a complex pair (A_c, H) with H Hermitian under
// complex conjugation and A_c^* H A_c = H:
//   B: (A, B);  C: (A, B) or (A, iB);  D: the complex embedding, after
//   replacing (A, B) by (A, iB) for semiconjugation.
// Hyperbolic blocks are read off the Jordan data. For a unimodular lambda and
// a block size k the form y^* H (A - lambda)^{k-1} x, scaled by (i/lambda)^{k-1},
// is Hermitian on ker N^k / (ker N^{k-1} + N ker N^{k+1}); its signature,
// oriented by running the same computation on the model block, gives the signs.

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "isoform/canonical_blocks.hpp"
#include "isoform/errors.hpp"
#include "isoform/jordan.hpp"
#include "isoform/matrix.hpp"
#include "isoform/pair.hpp"
#include "isoform/scalars.hpp"

namespace isoform {

/// The field (or skew field) with involution in which the sign invariants live.
enum class ResidueField { Rational, GaussianConj, GaussianId, QuatConj, QuatSemi };

inline const char* residueFieldName(ResidueField r) {
  switch (r) {
    case ResidueField::Rational: return "Rational";
    case ResidueField::GaussianConj: return "GaussianConj";
    case ResidueField::GaussianId: return "GaussianId";
    case ResidueField::QuatConj: return "QuatConj";
    case ResidueField::QuatSemi: return "QuatSemi";
  }
  return "?";
}

/// Residue field of the unimodular summands with eigenvalue lambda and size n.
inline ResidueField residueField(const ScalarDomain& dom, int epsilon, std::size_t n, const Gaussian& lambda) {
  const bool pm1 = lambda == Gaussian(1) || lambda == Gaussian(-1);
  switch (dom.caseTag()) {
    case DomainCase::A: return ResidueField::GaussianId;
    case DomainCase::B: return ResidueField::GaussianConj;
    case DomainCase::C: return lambda.isReal() ? ResidueField::Rational : ResidueField::GaussianConj;
    case DomainCase::D: {
      if (!pm1) return ResidueField::GaussianConj;
      const bool conj = dom.involution() == Involution::QuaternionConjugation;
      const bool sameParity = epsilon == (n % 2 == 0 ? -1 : 1);  // eps = (-1)^{n+1}
      return (conj == sameParity) ? ResidueField::QuatConj : ResidueField::QuatSemi;
    }
  }
  return ResidueField::Rational;
}

/// Kinds whose Hermitian forms have no sign invariant.
inline bool residueCollapses(ResidueField r) { return r == ResidueField::GaussianId || r == ResidueField::QuatSemi; }

struct Signature {
  std::size_t plus = 0;
  std::size_t minus = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Signature of a nonsingular Hermitian matrix over Q(i) by LDL^* with
/// symmetric pivoting; a zero diagonal is handled by a 2x2 hyperbolic pivot.
inline Signature hermitianSignature(Matrix<Gaussian> g) {
  if (!g.isSquare()) throw ShapeError("signature of a non-square matrix");
  if (!(g == star(g, Involution::ComplexConjugation))) throw ConstructionBug("residue Gram matrix is not Hermitian");
  Signature sig;
  std::vector<std::size_t> live(g.rows());
  for (std::size_t k = 0; k < live.size(); ++k) live[k] = k;
  auto erase = [&](std::size_t idx) { live.erase(std::find(live.begin(), live.end(), idx)); };
  while (!live.empty()) {
    auto diag = std::find_if(live.begin(), live.end(), [&](std::size_t k) { return !g(k, k).isZero(); });
    if (diag != live.end()) {
      const std::size_t p = *diag;
      const Rational d = g(p, p).re;
      (d.sign() > 0 ? sig.plus : sig.minus) += 1;
      erase(p);
      for (auto i : live)
        for (auto j : live) g(i, j) -= g(i, p) * g(p, j) / Gaussian(d);
      continue;
    }
    std::size_t p = live.size(), q = live.size();
    for (std::size_t a = 0; a < live.size() && p == live.size(); ++a)
      for (std::size_t b = a + 1; b < live.size(); ++b)
        if (!g(live[a], live[b]).isZero()) {
          p = live[a];
          q = live[b];
          break;
        }
    if (p == live.size()) throw ConstructionBug("residue Gram matrix is singular");
    // pivot [[0, a], [conj a, 0]] has inverse [[0, 1/conj a], [1/a, 0]]
    const Gaussian a = g(p, q);
    const Gaussian invA = inverse(a), invAbar = inverse(a.conj());
    sig.plus += 1;
    sig.minus += 1;
    erase(p);
    erase(q);
    for (auto i : live)
      for (auto j : live)
        g(i, j) -= g(i, p) * invAbar * g(q, j) + g(i, q) * invA * g(p, j);
  }
  return sig;
}

/// A complex pair (A_c, H) with H Hermitian, carrying the sign invariants.
struct ComplexView {
  Matrix<Gaussian> a;
  Matrix<Gaussian> h;
};

inline ComplexView complexView(const IsometricPair& p) {
  return std::visit(
      [](const auto& q) -> ComplexView {
        using T = std::decay_t<decltype(q)>;
        const Gaussian i = Gaussian::I();
        if constexpr (std::is_same_v<T, Pair<Rational>>) {
          Matrix<Gaussian> a = convertMatrix<Gaussian>(q.A);
          Matrix<Gaussian> b = convertMatrix<Gaussian>(q.B);
          return {std::move(a), q.epsilon == 1 ? b : scaleLeft(i, b)};
        } else if constexpr (std::is_same_v<T, Pair<Gaussian>>) {
          return {q.A, q.B};
        } else {
          int eps = q.epsilon;
          Matrix<Quaternion> b = q.B;
          if (q.domain.involution() == Involution::QuaternionSemiconjugation) {
            b = scaleLeft(Quaternion::I(), b);
            eps = -eps;
          }
          Matrix<Gaussian> h = complexEmbed(b);
          return {complexEmbed(q.A), eps == 1 ? h : scaleLeft(i, h)};
        }
      },
      p);
}

/// The Hermitian residue matrix of size-k blocks at a unimodular eigenvalue.
inline Matrix<Gaussian> residueGram(const Eigenspace& es, const Matrix<Gaussian>& h, std::size_t k) {
  const Matrix<Gaussian> x = chainTops(es, k);
  Matrix<Gaussian> y = x;
  for (std::size_t j = 1; j < k; ++j) y = es.n * y;
  Gaussian c(1);
  const Gaussian step = Gaussian::I() * inverse(es.lambda);
  for (std::size_t j = 1; j < k; ++j) c *= step;
  return scaleLeft(c, star(x, Involution::ComplexConjugation) * h * y);
}

/// Evidence attached to one group of unimodular summands.
struct ResidueCertificate {
  Gaussian lambda;
  std::size_t n = 0;
  ResidueField field = ResidueField::Rational;
  /// Gram matrix in the complex view (empty when the field collapses signs).
  Matrix<Gaussian> gram;
  Signature signature;
  /// +1 if a model block with sign +1 has positive signature in the same computation.
  int orientation = 1;
};

struct Decomposition {
  std::vector<CanonicalBlock> blocks;
  /// Jordan data of A (quaternion classes in case D).
  JordanData jordan;
  std::vector<ResidueCertificate> residues;

  std::size_t dimension() const {
    std::size_t d = 0;
    for (const auto& b : blocks) d += blockDimension(b);
    return d;
  }
};

struct ParityReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Sizes n at lambda = +-1 where no Phi_(eps) exists (identity involution,
/// eps = (-1)^n) can only come in hyperbolic pairs, so their count is even.
inline ParityReport multiplicityParityCheck(const JordanData& jd, const ScalarDomain& dom, int epsilon) {
  ParityReport rep;
  if (dom.caseTag() != DomainCase::A && dom.caseTag() != DomainCase::C) return rep;
  for (const auto& e : jd.eigenvalues) {
    if (!(e.lambda == Gaussian(1) || e.lambda == Gaussian(-1))) continue;
    std::vector<std::size_t> distinct = e.sizes;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (auto n : distinct) {
      if (epsilon != (n % 2 == 0 ? 1 : -1)) continue;
      if (e.count(n) % 2 != 0)
        rep.violations.push_back("odd number (" + std::to_string(e.count(n)) + ") of Jordan blocks J_" +
                                 std::to_string(n) + "(" + toString(e.lambda) + ") with eps = " +
                                 std::to_string(epsilon));
    }
  }
  return rep;
}

namespace detail {

/// Partner eigenvalues whose Jordan structure must agree with lambda's.
inline std::vector<Gaussian> pairingPartners(DomainCase c, const Gaussian& l) {
  const Gaussian inv = inverse(l);
  switch (c) {
    case DomainCase::A: return {inv};
    case DomainCase::B: return {inv.conj()};
    case DomainCase::C:
    case DomainCase::D: return {inv, l.conj()};
  }
  return {};
}

inline void checkPairing(const JordanData& jd, DomainCase c) {
  for (const auto& e : jd.eigenvalues)
    for (const auto& partner : pairingPartners(c, e.lambda)) {
      const JordanEigen* other = jd.find(partner);
      if (other == nullptr || other->sizes != e.sizes)
        throw PairingViolation("Jordan blocks at " + toString(e.lambda) + " and at " + toString(partner) +
                               " do not match");
    }
}

struct SignEngine {
  ScalarDomain domain;
  int epsilon;
  std::map<std::tuple<std::string, std::size_t>, int> orientationCache;

  int orientation(const Gaussian& lambda, std::size_t k) {
    const auto key = std::make_tuple(toString(lambda), k);
    if (auto it = orientationCache.find(key); it != orientationCache.end()) return it->second;
    CanonicalBlock model;
    model.domainCase = domain.caseTag();
    model.involution = domain.caseTag() == DomainCase::D ? domain.involution() : Involution::Identity;
    model.subtype = Subtype::Unimodular;
    model.n = k;
    model.lambda = lambda;
    model.sign = 1;
    model.epsilon = epsilon;
    model.realified = domain.caseTag() == DomainCase::C && !lambda.isReal();
    const ComplexView view = complexView(buildBlock(model));
    const std::size_t mult = domain.caseTag() == DomainCase::D && lambda.isReal() ? 2 * k : k;
    const Eigenspace es = eigenspace(view.a, lambda, mult);
    const Signature s = hermitianSignature(residueGram(es, view.h, k));
    if (s.plus != 0 && s.minus != 0) throw ConstructionBug("model block has an indefinite residue form");
    const int o = s.plus > 0 ? 1 : -1;
    orientationCache.emplace(key, o);
    return o;
  }
};

}  // namespace detail

namespace detail {

struct Assembler {
  ScalarDomain domain;
  int epsilon;
  ComplexView view;
  SignEngine signs;
  Decomposition out;

  Assembler(const IsometricPair& p)
      : domain(pairDomain(p)), epsilon(pairEpsilon(p)), view(complexView(p)), signs{domain, epsilon, {}} {}

  bool quaternion() const { return domain.caseTag() == DomainCase::D; }

  CanonicalBlock block(Subtype st, std::size_t k, const Gaussian& lambda, int sign) const {
    CanonicalBlock b;
    b.domainCase = domain.caseTag();
    b.involution = quaternion() ? domain.involution() : Involution::Identity;
    b.subtype = st;
    b.n = k;
    b.lambda = lambda;
    b.sign = sign;
    b.epsilon = epsilon;
    b.realified = domain.caseTag() == DomainCase::C && !lambda.isReal();
    return b;
  }

  /// Blocks contributed by one eigenspace of the complex view, or nothing if
  /// lambda is not its orbit representative.
  void addEigenspace(const Eigenspace& es, std::map<std::size_t, Signature>* signOut = nullptr) {
    const Gaussian& l = es.lambda;
    const bool pm1 = l == Gaussian(1) || l == Gaussian(-1);
    std::vector<std::size_t> distinct = es.sizes;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (auto k : distinct) {
      const Subtype st = blockExists(domain, epsilon, Subtype::Unimodular, k, l) ? Subtype::Unimodular
                                                                                  : Subtype::Hyperbolic;
      if (!blockExists(domain, epsilon, st, k, l))
        throw PairingViolation("no canonical block of size " + std::to_string(k) + " at " + toString(l));
      if (!(normalizeLambda(l, domain.caseTag(), st) == l)) continue;
      std::size_t count = static_cast<std::size_t>(std::count(es.sizes.begin(), es.sizes.end(), k));
      const bool doubled = (quaternion() && l.isReal()) || (!quaternion() && st == Subtype::Hyperbolic && pm1);
      if (doubled) {
        if (count % 2 != 0)
          throw PairingViolation("odd number of Jordan blocks J_" + std::to_string(k) + "(" + toString(l) +
                                 ") where they must come in pairs");
        count /= 2;
      }
      if (st == Subtype::Hyperbolic) {
        for (std::size_t c = 0; c < count; ++c) out.blocks.push_back(block(st, k, l, 1));
        continue;
      }
      ResidueCertificate cert;
      cert.lambda = l;
      cert.n = k;
      cert.field = residueField(domain, epsilon, k, l);
      Signature blocksBySign{count, 0};
      if (signIsFree(block(st, k, l, 1))) {
        cert.gram = residueGram(es, view.h, k);
        cert.signature = hermitianSignature(cert.gram);
        Signature s = cert.signature;
        if (doubled) {
          if (s.plus % 2 != 0 || s.minus % 2 != 0)
            throw ConstructionBug("quaternion residue signature is not even");
          s.plus /= 2;
          s.minus /= 2;
        }
        if (s.plus + s.minus != count) throw ConstructionBug("residue form rank differs from the multiplicity");
        cert.orientation = signs.orientation(l, k);
        blocksBySign = cert.orientation == 1 ? s : Signature{s.minus, s.plus};
      } else {
        cert.signature = {count, 0};
      }
      for (std::size_t c = 0; c < blocksBySign.plus; ++c) out.blocks.push_back(block(st, k, l, 1));
      for (std::size_t c = 0; c < blocksBySign.minus; ++c) out.blocks.push_back(block(st, k, l, -1));
      if (signOut) (*signOut)[k] = blocksBySign;
      out.residues.push_back(std::move(cert));
    }
  }
};

}  // namespace detail

/// The canonical block multiset of a valid pair, sorted, with its certificate.
inline Decomposition canonicalDecomposition(const IsometricPair& input) {
  const IsometricPair p = validatePair(input);
  detail::Assembler as(p);
  const auto spaces = eigenspaces(as.view.a);
  const JordanData complexData = jordanData(spaces);
  detail::checkPairing(complexData, as.domain.caseTag());
  as.out.jordan = as.quaternion() ? quaternionJordanData(complexData) : complexData;
  const ParityReport parity = multiplicityParityCheck(as.out.jordan, as.domain, as.epsilon);
  if (!parity.ok()) throw PairingViolation(parity.violations.front());
  for (const auto& es : spaces) as.addEigenspace(es);
  for (auto& b : as.out.blocks) b = normalizeBlock(b);
  std::sort(as.out.blocks.begin(), as.out.blocks.end(), blockLess);
  return std::move(as.out);
}

/// Per size: (blocks with sign +1, blocks with sign -1) at a unimodular eigenvalue.
/// lambda is any member of its orbit; counts are in canonical-block units.
inline std::map<std::size_t, Signature> signCharacteristic(const IsometricPair& input, const Gaussian& lambda) {
  if (lambda.normSq() != Rational(1)) throw DomainError("sign characteristic needs a unimodular eigenvalue");
  const IsometricPair p = validatePair(input);
  detail::Assembler as(p);
  Gaussian rep = lambda;
  if (as.quaternion() || as.domain.caseTag() == DomainCase::C) rep = normalizeLambda(lambda, as.domain.caseTag(), Subtype::Unimodular);
  std::map<std::size_t, Signature> out;
  for (const auto& es : eigenspaces(as.view.a))
    if (es.lambda == rep) as.addEigenspace(es, &out);
  return out;
}

/// Sorted, normalized copy of a block list.
inline std::vector<CanonicalBlock> normalizedMultiset(std::vector<CanonicalBlock> blocks) {
  for (auto& b : blocks) b = normalizeBlock(b);
  std::sort(blocks.begin(), blocks.end(), blockLess);
  return blocks;
}

}  // namespace isoform
