#pragma once

// Exact identities between the named matrices, checked for n = 1..maxN.

#include <string>
#include <vector>

#include "isoform/matrix.hpp"
#include "isoform/scalars.hpp"

namespace isoform {

struct IdentityCheck {
  std::string name;
  std::size_t n = 0;
  bool pass = false;
};

inline std::vector<IdentityCheck> verifyIdentities(std::size_t maxN) {
  std::vector<IdentityCheck> out;
  for (std::size_t n = 1; n <= maxN; ++n) {
    const auto lam = lambdaMatrix<Gaussian>(n);
    const auto f = fMatrix<Gaussian>(n);
    const auto id = Matrix<Gaussian>::identity(n);
    out.push_back({"F^-1 Lambda^T F Lambda = I", n, inverse(f) * lam.transpose() * f * lam == id});
    const auto s = sDiagMatrix(n);
    out.push_back({"S^-1 Lambda S = Omega", n, inverse(s) * lam * s == omegaMatrix(n)});
    const auto scaledF = scaleLeft(iPower(static_cast<long>(n) - 1), f);
    out.push_back({"S^* (i^(n-1) F) S = E", n,
                   star(s, Involution::ComplexConjugation) * scaledF * s == eMatrix<Gaussian>(n)});
  }
  return out;
}

}  // namespace isoform
