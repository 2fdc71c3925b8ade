// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Tolerances are exact; each criterion has a fixed wall-clock budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "support.hpp"

namespace {

using namespace isoform;
using isoform::testing::Config;
using isoform::testing::Rng;

/// Collects failures for one criterion; stops recording after a few.
struct Report {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ < 5) detail << "    - " << what << "\n";
  }
};

struct Criterion {
  int id;
  const char* name;
  double budgetSeconds;
  std::function<void(Report&)> body;
};

template <Scalar T>
bool axiomsHold(const Pair<T>& p) {
  const Involution v = p.domain.involution();
  const Matrix<T> bs = oracle::star(p.B, v);
  if (p.B != (p.epsilon == 1 ? bs : Matrix<T>(-bs))) return false;
  if (oracle::mul(oracle::mul(oracle::star(p.A, v), p.B), p.A) != p.B) return false;
  return rank(p.A) == p.A.rows() && rank(p.B) == p.B.rows();
}

// 1 ---------------------------------------------------------------------------------

void identitySuite(Report& r) {
  for (const auto& c : verifyIdentities(10)) r.expect(c.pass, c.name + " n=" + std::to_string(c.n));
  // the same identities in inverse-free form with the naive product
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto lam = lambdaMatrix<Gaussian>(n);
    const auto f = fMatrix<Gaussian>(n);
    const auto s = sDiagMatrix(n);
    r.expect(oracle::mul(oracle::mul(lam.transpose(), f), lam) == f, "Lambda^T F Lambda = F n=" + std::to_string(n));
    r.expect(oracle::mul(lam, s) == oracle::mul(s, omegaMatrix(n)), "Lambda S = S Omega n=" + std::to_string(n));
    const auto scaledF = scaleLeft(iPower(static_cast<long>(n) - 1), f);
    r.expect(oracle::mul(oracle::mul(oracle::star(s, Involution::ComplexConjugation), scaledF), s) ==
                 eMatrix<Gaussian>(n),
             "S^* i^(n-1) F S = E n=" + std::to_string(n));
  }
}

// 2 ---------------------------------------------------------------------------------

void blockAxiomSuite(Report& r) {
  const auto blocks = isoform::testing::constructibleBlocks(6, isoform::testing::blockSuiteLambdas());
  std::set<std::string> seen;
  for (const auto& b : blocks) {
    const IsometricPair p = buildBlock(b);
    r.expect(pairDim(p) == blockDimension(b), "dimension of " + describe(b));
    r.expect(std::visit([](const auto& q) { return axiomsHold(q); }, p), "axioms of " + describe(b));
    std::string tag(1, caseName(b.domainCase));
    if (b.domainCase == DomainCase::D) tag += involutionName(b.involution);
    if (b.realified) tag += "-realified";
    seen.insert(tag);
  }
  for (const char* tag : {"A", "B", "C", "C-realified", "Dquaternion-conjugation", "Dquaternion-semiconjugation"})
    r.expect(seen.count(tag) == 1, std::string("no blocks built for ") + tag);

  // sign table: conjugation forces sign +1 at lambda = +-1 when eps = (-1)^n,
  // semiconjugation when eps = -(-1)^n
  for (auto inv : {Involution::QuaternionConjugation, Involution::QuaternionSemiconjugation})
    for (std::size_t n = 1; n <= 6; ++n)
      for (int eps : {1, -1})
        for (const Gaussian& l : {Gaussian(1), Gaussian(-1)}) {
          const int parity = n % 2 == 0 ? 1 : -1;
          const bool forced = inv == Involution::QuaternionConjugation ? eps == parity : eps == -parity;
          const CanonicalBlock minus =
              isoform::testing::makeBlock({DomainCase::D, inv, eps}, Subtype::Unimodular, n, l, -1);
          r.expect(blockExists(minus) == !forced, "sign table at " + describe(minus));
          if (forced) {
            bool threw = false;
            try {
              (void)buildBlock(minus);
            } catch (const DomainError&) {
              threw = true;
            }
            r.expect(threw, "forced sign accepted for " + describe(minus));
          }
        }
}

// 3 ---------------------------------------------------------------------------------

template <CommutativeScalar T>
void phiEntry(Report& r, const char* text, Involution inv, std::set<SeedCase>& cases) {
  const auto fb = makeFrobeniusBlock(parsePoly<T>(text));
  const Matrix<T> phi = fb.matrix();
  for (int eps : {1, -1}) {
    const std::string tag = std::string(text) + " " + involutionName(inv) + " eps=" + std::to_string(eps);
    if (!phiEpsilonExists(fb, eps, inv)) continue;
    cases.insert(seedCase(fb, eps, inv));
    const Matrix<T> m = buildToeplitz(fb, eps, inv);
    const Matrix<T> ms = oracle::star(m, inv);
    r.expect(m == (eps == 1 ? ms : Matrix<T>(-ms)), "M = eps M^* for " + tag);
    r.expect(oracle::mul(oracle::mul(oracle::star(phi, inv), m), phi) == m, "Phi^* M Phi = M for " + tag);
    r.expect(!isZero(oracle::det(m)), "M singular for " + tag);
    const auto full = toeplitzEntries(fb, eps, inv);
    r.expect(isRecurrent<T>(full, fb.chi()), "not chi-recurrent: " + tag);
    if (fb.s > 1) r.expect(!isRecurrent<T>(full, fb.mu()), "mu-recurrent: " + tag);
  }
}

void phiSuite(Report& r) {
  const char* const corpus[] = {"1,-1",   "1,1",    "1,-2,1", "1,2,1",       "1,-3,3,-1", "1,3,3,1",
                                "1,-1,1", "1,1,1",  "1,-3,1", "1,-2,3,-2,1", "1,1,1,1,1"};
  std::set<SeedCase> cases;
  for (const char* chi : corpus) {
    phiEntry<Rational>(r, chi, Involution::Identity, cases);
    phiEntry<Gaussian>(r, chi, Involution::Identity, cases);
    phiEntry<Gaussian>(r, chi, Involution::ComplexConjugation, cases);
  }
  for (const char* chi : {"1,-3/5-4/5*i", "1,-2*i,-1", "1,-3*i,-3,i"})
    phiEntry<Gaussian>(r, chi, Involution::ComplexConjugation, cases);
  r.expect(cases.size() == 4, "seed cases covered: " + std::to_string(cases.size()) + " of 4");
}

// 4 and 6 -----------------------------------------------------------------------------

std::size_t g_parityChecked = 0;
std::size_t g_parityFailed = 0;

void roundTrip(Report& r) {
  Rng rng(20240);
  for (const auto& cfg : isoform::testing::allConfigs()) {
    for (int t = 0; t < 200; ++t) {
      const auto blocks = isoform::testing::randomMultiset(cfg, rng, 12, 4);
      const std::uint64_t seed = rng();
      const IsometricPair p = isoform::testing::scramble(isoform::testing::sumOfBlocks(blocks), seed);
      const auto want = normalizedMultiset(blocks);
      std::string tag = cfg.name() + " seed=" + std::to_string(seed) + " " + isoform::testing::describeAll(want);
      try {
        const Decomposition d = canonicalDecomposition(p);
        r.expect(d.blocks == want, tag + " got " + isoform::testing::describeAll(d.blocks));
        ++g_parityChecked;
        if (!multiplicityParityCheck(d.jordan, pairDomain(p), cfg.epsilon).ok()) ++g_parityFailed;
      } catch (const std::exception& e) {
        r.expect(false, tag + " threw " + e.what());
      }
    }
  }
}

void paritySuite(Report& r) {
  r.expect(g_parityChecked == 9 * 200, "round-trip cases checked: " + std::to_string(g_parityChecked));
  r.expect(g_parityFailed == 0, "parity violations on round-trip cases: " + std::to_string(g_parityFailed));
  const JordanData single{{{Gaussian(1), {2}}}};
  r.expect(!multiplicityParityCheck(single, ScalarDomain::forCase(DomainCase::A), 1).ok(),
           "single J_2(1) in case A with eps = +1 not flagged");
  const JordanData twice{{{Gaussian(1), {2, 2}}}};
  r.expect(multiplicityParityCheck(twice, ScalarDomain::forCase(DomainCase::A), 1).ok(),
           "pair of J_2(1) in case A with eps = +1 flagged");
}

// 5 ---------------------------------------------------------------------------------

void signatureInvariance(Report& r) {
  Rng rng(5150);
  const std::vector<Config> configs{{DomainCase::B, Involution::Identity, 1},
                                    {DomainCase::C, Involution::Identity, 1},
                                    {DomainCase::C, Involution::Identity, -1},
                                    {DomainCase::D, Involution::QuaternionConjugation, 1},
                                    {DomainCase::D, Involution::QuaternionConjugation, -1}};
  int cases = 0;
  while (cases < 50) {
    const Config& cfg = configs[static_cast<std::size_t>(cases) % configs.size()];
    const auto blocks = isoform::testing::randomMultiset(cfg, rng, 10);
    std::set<std::string> keys;
    std::vector<Gaussian> unimodular;
    for (const auto& b : blocks)
      if (b.subtype == Subtype::Unimodular && b.lambda.normSq() == Rational(1) && keys.insert(toString(b.lambda)).second)
        unimodular.push_back(b.lambda);
    if (unimodular.empty()) continue;
    ++cases;
    const IsometricPair base = isoform::testing::scramble(isoform::testing::sumOfBlocks(blocks), rng());
    for (const auto& l : unimodular) {
      const auto ref = signCharacteristic(base, l);
      for (int k = 0; k < 5; ++k) {
        const auto moved = signCharacteristic(isoform::testing::scramble(base, rng()), l);
        r.expect(moved == ref, cfg.name() + " lambda=" + toString(l) + " case " + std::to_string(cases));
      }
    }
  }
}

// 7 ---------------------------------------------------------------------------------

void homomorphisms(Report& r) {
  Rng rng(777);
  using isoform::testing::randomMatrix;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 5;
    const auto a = randomMatrix<Gaussian>(rng, n, n), b = randomMatrix<Gaussian>(rng, n, n);
    const std::string tag = " pair " + std::to_string(t) + " n=" + std::to_string(n);
    r.expect(realify(a + b) == realify(a) + realify(b), "realify additive" + tag);
    r.expect(realify(oracle::mul(a, b)) == oracle::mul(realify(a), realify(b)), "realify multiplicative" + tag);
    r.expect(realify(oracle::star(a, Involution::ComplexConjugation)) == realify(a).transpose(),
             "realify star" + tag);
  }
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 5;
    const auto p = randomMatrix<Quaternion>(rng, n, n), q = randomMatrix<Quaternion>(rng, n, n);
    const std::string tag = " pair " + std::to_string(t) + " n=" + std::to_string(n);
    r.expect(complexEmbed(p + q) == complexEmbed(p) + complexEmbed(q), "complexEmbed additive" + tag);
    r.expect(complexEmbed(oracle::mul(p, q)) == oracle::mul(complexEmbed(p), complexEmbed(q)),
             "complexEmbed multiplicative" + tag);
    r.expect(complexEmbed(oracle::star(p, Involution::QuaternionConjugation)) ==
                 oracle::star(complexEmbed(p), Involution::ComplexConjugation),
             "complexEmbed star" + tag);
  }
}

// 8 ---------------------------------------------------------------------------------

template <Scalar T>
void expectWildRejection(Report& r, const Pair<T>& p, const std::string& tag) {
  for (int stage = 0; stage < 2; ++stage) {
    try {
      if (stage == 0) (void)validatePair(p);
      else (void)canonicalDecomposition(p);
      r.expect(false, tag + " accepted");
    } catch (const AxiomError& e) {
      r.expect(e.which() == Axiom::SingularB, tag + " wrong axiom " + axiomName(e.which()));
      r.expect(std::string(e.what()).find("wild") != std::string::npos, tag + " message: " + e.what());
    }
  }
}

void degenerateRejection(Report& r) {
  Rng rng(88);
  for (const auto& cfg : isoform::testing::allConfigs()) {
    // an eps-Hermitian B of rank n - 1 and an isometry A = I
    const IsometricPair full = isoform::testing::sumOfBlocks(isoform::testing::randomMultiset(cfg, rng, 6));
    std::visit(
        [&](const auto& q) {
          using T = typename std::decay_t<decltype(q.A)>::value_type;
          const std::size_t n = q.dim();
          Matrix<T> proj = Matrix<T>::identity(n);
          proj(n - 1, n - 1) = T(0);
          const Matrix<T> b = star(proj, q.domain.involution()) * q.B * proj;
          expectWildRejection(r, Pair<T>{q.domain, q.epsilon, Matrix<T>::identity(n), b}, cfg.name());
        },
        full);
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "identity suite, n <= 10", 1.0, identitySuite},
      {2, "block axiom suite, n <= 6", 10.0, blockAxiomSuite},
      {3, "Phi_(eps) corpus", 10.0, phiSuite},
      {4, "round trip, 200 cases x 9 configurations, dim <= 12", 300.0, roundTrip},
      {5, "signature invariance, 50 cases x 5 transforms", 120.0, signatureInvariance},
      {6, "pairing and parity", 1.0, paritySuite},
      {7, "realify / complexEmbed homomorphisms, 100 pairs each", 60.0, homomorphisms},
      {8, "singular form rejected as wild", 5.0, degenerateRejection},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Report r;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(r);
    } catch (const std::exception& e) {
      r.expect(false, std::string("uncaught exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool inTime = secs <= c.budgetSeconds;
    const bool pass = r.failures == 0 && r.checks > 0 && inTime;
    all = all && pass;
    std::printf("[%d] %s  %s  (%zu checks, %zu failed, %.2f s / %.0f s budget)\n", c.id, pass ? "PASS" : "FAIL",
                c.name, r.checks, r.failures, secs, c.budgetSeconds);
    if (!inTime) std::printf("    - over the time budget\n");
    std::cout << r.detail.str() << std::flush;
  }
  std::printf("%s\n", all ? "ALL PASS" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
