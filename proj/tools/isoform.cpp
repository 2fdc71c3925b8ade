// Command-line front end: validate, build, transform and decompose pair files,
// construct Phi_(eps), and run the named-matrix identity suite.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "isoform/io.hpp"
#include "isoform/isoform.hpp"

namespace {

using nlohmann::json;
using namespace isoform;

enum ExitCode { kOk = 0, kDomain = 1, kUnresolved = 2, kUsage = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string readInput(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

json readJson(const std::string& path) {
  try {
    return json::parse(readInput(path));
  } catch (const json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
}

void emit(const json& doc, const std::string& out, int indent = 2) {
  const std::string text = doc.dump(indent) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write '" + out + "'");
  f << text;
}

int runValidate(const std::string& in, const std::string& out) {
  try {
    const IsometricPair p = io::pairFromJson(readJson(in));
    const ScalarDomain& dom = pairDomain(p);
    emit({{"valid", true},
          {"case", std::string(1, caseName(dom.caseTag()))},
          {"involution", involutionName(dom.involution())},
          {"epsilon", pairEpsilon(p)},
          {"dimension", pairDim(p)}},
         out);
    return kOk;
  } catch (const AxiomError& e) {
    emit({{"valid", false}, {"axiom", axiomName(e.which())}, {"message", e.what()}}, out);
    std::cerr << "error: " << axiomName(e.which()) << ": " << e.what() << "\n";
    return kDomain;
  }
}

int runBuild(const std::string& in, const std::string& out) {
  emit(io::pairToJson(io::buildFromBlocks(io::blocksFromJson(readJson(in)))), out);
  return kOk;
}

int runTransform(const std::string& in, std::uint64_t seed, int bound, const std::string& out) {
  const IsometricPair p = io::pairFromJson(readJson(in));
  const IsometricPair q = std::visit(
      [&](const auto& pair) -> IsometricPair {
        using T = typename std::decay_t<decltype(pair.A)>::value_type;
        return applyTransform(pair, randomTransform<T>({seed, bound, pair.dim()}));
      },
      p);
  emit(io::pairToJson(q), out);
  return kOk;
}

int runCanonical(const std::string& in, const std::string& out) {
  const IsometricPair p = io::pairFromJson(readJson(in));
  emit(io::decompositionToJson(canonicalDecomposition(p), p), out);
  return kOk;
}

template <CommutativeScalar T>
json phiEps(const std::string& chiText, int epsilon, Involution inv, bool assumeIrreducible) {
  const auto fb = makeFrobeniusBlock(parsePoly<T>(chiText), assumeIrreducible);
  return io::matrixToJson(buildToeplitz(fb, epsilon, inv));
}

int runPhiEps(const std::string& chi, int epsilon, const std::string& involution, bool assumeIrreducible,
              const std::string& out) {
  if (epsilon != 1 && epsilon != -1) throw UsageError("--epsilon must be 1 or -1");
  const Involution inv = parseInvolution(involution);
  if (inv != Involution::Identity && inv != Involution::ComplexConjugation)
    throw DomainError("phi-eps works over Q or Q(i): use identity or conjugation");
  bool rational = inv == Involution::Identity;
  if (rational) {
    try {
      (void)parsePoly<Rational>(chi);
    } catch (const DomainError&) {
      rational = false;
    }
  }
  emit(rational ? phiEps<Rational>(chi, epsilon, inv, assumeIrreducible)
                : phiEps<Gaussian>(chi, epsilon, inv, assumeIrreducible),
       out, -1);
  return kOk;
}

int runVerifyIdentities(int maxN, const std::string& out) {
  if (maxN < 1) throw UsageError("--max-n must be at least 1");
  json checks = json::array();
  bool all = true;
  for (const auto& c : verifyIdentities(static_cast<std::size_t>(maxN))) {
    checks.push_back({{"identity", c.name}, {"n", c.n}, {"result", c.pass ? "PASS" : "FAIL"}});
    all = all && c.pass;
  }
  emit({{"checks", std::move(checks)}, {"result", all ? "PASS" : "FAIL"}}, out);
  return all ? kOk : kDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical forms of isometric operators on exact epsilon-Hermitian spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out;
  app.add_option("-o,--output", out, "Write the result here instead of stdout");

  std::string input;
  auto* validate = app.add_subcommand("validate", "Check the axioms of a pair file");
  validate->add_option("pair", input, "Pair file ('-' for stdin)")->required();
  auto* build = app.add_subcommand("build", "Build the pair of a list of canonical blocks");
  build->add_option("blocks", input, "Block file ('-' for stdin)")->required();

  std::uint64_t seed = 0;
  int bound = 2;
  auto* transform = app.add_subcommand("transform", "Apply a seeded random congruence-similarity");
  transform->add_option("pair", input, "Pair file ('-' for stdin)")->required();
  transform->add_option("--seed", seed, "Random seed")->required();
  transform->add_option("--bound", bound, "Entry bound of the transform")->check(CLI::NonNegativeNumber);

  auto* canonical = app.add_subcommand("canonical", "Canonical block multiset of a pair file");
  canonical->add_option("pair", input, "Pair file ('-' for stdin)")->required();

  std::string chi, involution = "identity";
  int epsilon = 1;
  bool assumeIrreducible = false;
  auto* phi = app.add_subcommand("phi-eps", "Toeplitz Phi_(eps) of the Frobenius block of chi");
  phi->add_option("--chi", chi, "Coefficients of chi = p^s, highest degree first, e.g. \"1,-1,1\"")->required();
  phi->add_option("--epsilon", epsilon, "1 or -1");
  phi->add_option("--involution", involution, "identity or conjugation");
  phi->add_flag("--assume-irreducible", assumeIrreducible, "Skip the irreducibility test above degree 4");

  int maxN = 10;
  auto* identities = app.add_subcommand("verify-identities", "Check the named-matrix identities");
  identities->add_option("--max-n", maxN, "Largest size to check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return runValidate(input, out);
    if (*build) return runBuild(input, out);
    if (*transform) return runTransform(input, seed, bound, out);
    if (*canonical) return runCanonical(input, out);
    if (*phi) return runPhiEps(chi, epsilon, involution, assumeIrreducible, out);
    if (*identities) return runVerifyIdentities(maxN, out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnresolvedFactor& e) {
    std::cerr << "unresolved eigenvalue: " << e.what() << "\n";
    return kUnresolved;
  } catch (const AxiomError& e) {
    std::cerr << "error: " << axiomName(e.which()) << ": " << e.what() << "\n";
    return kDomain;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}
