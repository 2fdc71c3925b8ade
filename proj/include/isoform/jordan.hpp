#pragma once

// Exact Jordan structure over Q(i): block sizes from kernel dimensions of
// powers of A - lambda, and Jordan chains built from the top of each chain.

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "isoform/errors.hpp"
#include "isoform/matrix.hpp"
#include "isoform/modular.hpp"
#include "isoform/roots.hpp"
#include "isoform/scalars.hpp"

namespace isoform {

/// One eigenvalue and the sizes of its Jordan blocks (largest first).
struct JordanEigen {
  Gaussian lambda;
  std::vector<std::size_t> sizes;

  std::size_t count(std::size_t k) const { return static_cast<std::size_t>(std::count(sizes.begin(), sizes.end(), k)); }
  std::size_t total() const {
    std::size_t t = 0;
    for (auto s : sizes) t += s;
    return t;
  }
};

struct JordanData {
  std::vector<JordanEigen> eigenvalues;

  const JordanEigen* find(const Gaussian& l) const {
    for (const auto& e : eigenvalues)
      if (e.lambda == l) return &e;
    return nullptr;
  }
  std::size_t dimension() const {
    std::size_t t = 0;
    for (const auto& e : eigenvalues) t += e.total();
    return t;
  }
};

/// Kernels of the powers of N = A - lambda at one eigenvalue.
struct Eigenspace {
  Gaussian lambda;
  std::size_t multiplicity = 0;
  Matrix<Gaussian> n;
  /// kernels[j] has columns spanning ker N^j, j = 0 .. maxSize.
  std::vector<Matrix<Gaussian>> kernels;
  std::vector<std::size_t> sizes;

  std::size_t maxSize() const { return kernels.size() - 1; }
  const Matrix<Gaussian>& kernel(std::size_t j) const { return kernels[std::min(j, maxSize())]; }
};

namespace detail {

inline Matrix<Gaussian> hconcat(const Matrix<Gaussian>& a, const Matrix<Gaussian>& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  Matrix<Gaussian> r(a.rows(), a.cols() + b.cols());
  r.setBlock(0, 0, a);
  r.setBlock(0, a.cols(), b);
  return r;
}

}  // namespace detail

inline Eigenspace eigenspace(const Matrix<Gaussian>& a, const Gaussian& lambda, std::size_t multiplicity) {
  const std::size_t dim = a.rows();
  Eigenspace es;
  es.lambda = lambda;
  es.multiplicity = multiplicity;
  es.n = a - scaleLeft(lambda, Matrix<Gaussian>::identity(dim));
  es.kernels.push_back(Matrix<Gaussian>(dim, 0));
  std::vector<std::size_t> kdim{0};
  while (kdim.back() < multiplicity) {
    Matrix<Gaussian> kern = kernelOfPower(es.n, kdim.size());
    if (kern.cols() <= kdim.back())
      throw ConstructionBug("kernel of (A - lambda)^k stopped growing before the algebraic multiplicity");
    kdim.push_back(kern.cols());
    es.kernels.push_back(std::move(kern));
  }
  if (kdim.back() != multiplicity) throw ConstructionBug("generalized eigenspace has the wrong dimension");
  // blocks of size >= k: kdim[k] - kdim[k-1]
  const std::size_t top = kdim.size() - 1;
  for (std::size_t k = top; k >= 1; --k) {
    const std::size_t atLeast = kdim[k] - kdim[k - 1];
    const std::size_t atLeastNext = k < top ? kdim[k + 1] - kdim[k] : 0;
    for (std::size_t c = atLeastNext; c < atLeast; ++c) es.sizes.push_back(k);
  }
  return es;
}

/// Columns x of ker N^k that are independent modulo ker N^{k-1} + N ker N^{k+1};
/// one per Jordan block of size k.
inline Matrix<Gaussian> chainTops(const Eigenspace& es, std::size_t k) {
  const Matrix<Gaussian> base = detail::hconcat(es.kernel(k - 1), es.n * es.kernel(k + 1));
  const Matrix<Gaussian>& cand = es.kernel(k);
  const auto pivots = pivotColumns(detail::hconcat(base, cand));
  std::vector<std::size_t> chosen;
  for (auto p : pivots)
    if (p >= base.cols()) chosen.push_back(p - base.cols());
  Matrix<Gaussian> tops(cand.rows(), chosen.size());
  for (std::size_t j = 0; j < chosen.size(); ++j) tops.setBlock(0, j, cand.column(chosen[j]));
  return tops;
}

struct JordanResult {
  JordanData data;
  /// T with T^{-1} A T = J.
  Matrix<Gaussian> basis;
  Matrix<Gaussian> jordanForm;
};

namespace detail {

inline std::vector<Eigenspace> eigenspacesFrom(const Matrix<Gaussian>& a, const Poly<Gaussian>& chi) {
  auto roots = gaussianEigenvalues(chi);
  std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) { return GaussianLess{}(x.first, y.first); });
  std::vector<Eigenspace> out;
  for (const auto& [l, m] : roots) out.push_back(eigenspace(a, l, static_cast<std::size_t>(m)));
  return out;
}

}  // namespace detail

/// All eigenspaces of a matrix over Q(i); throws UnresolvedFactor if the
/// characteristic polynomial does not split.
///
/// The modular candidate for the characteristic polynomial is accepted only
/// when the generalized eigenspaces of its roots reach the claimed
/// multiplicities, which sum to the dimension; otherwise the exact
/// polynomial is used.
inline std::vector<Eigenspace> eigenspaces(const Matrix<Gaussian>& a) {
  if (!a.isSquare()) throw ShapeError("eigenspaces of a non-square matrix");
  if (auto chi = modularCharPoly(a)) {
    try {
      return detail::eigenspacesFrom(a, *chi);
    } catch (const UnresolvedFactor&) {
    } catch (const ConstructionBug&) {
    }
  }
  return detail::eigenspacesFrom(a, charPoly(a));
}

inline JordanData jordanData(const std::vector<Eigenspace>& spaces) {
  JordanData jd;
  for (const auto& es : spaces) jd.eigenvalues.push_back({es.lambda, es.sizes});
  return jd;
}

/// Jordan data and an explicit Jordan basis of a matrix over Q(i).
inline JordanResult jordanStructure(const Matrix<Gaussian>& a) {
  if (!a.isSquare()) throw ShapeError("Jordan structure of a non-square matrix");
  const auto spaces = eigenspaces(a);
  JordanResult res;
  res.data = jordanData(spaces);
  const std::size_t dim = a.rows();
  res.basis = Matrix<Gaussian>(dim, dim);
  res.jordanForm = Matrix<Gaussian>(dim, dim);
  std::size_t col = 0;
  for (const auto& es : spaces) {
    for (std::size_t k = es.maxSize(); k >= 1; --k) {
      const Matrix<Gaussian> tops = chainTops(es, k);
      for (std::size_t t = 0; t < tops.cols(); ++t) {
        // chain (N^{k-1} x, ..., N x, x)
        std::vector<Matrix<Gaussian>> chain{tops.column(t)};
        for (std::size_t j = 1; j < k; ++j) chain.push_back(es.n * chain.back());
        for (std::size_t j = 0; j < k; ++j) {
          res.basis.setBlock(0, col + j, chain[k - 1 - j]);
          res.jordanForm(col + j, col + j) = es.lambda;
          if (j > 0) res.jordanForm(col + j - 1, col + j) = Gaussian(1);
        }
        col += k;
      }
    }
  }
  if (col != dim) throw ConstructionBug("Jordan chains do not fill the space");
  return res;
}

/// Quaternion matrices go through complexEmbed; the returned data lists one
/// representative per similarity class (Im lambda >= 0, real sizes halved).
inline JordanData quaternionJordanData(const JordanData& complexData) {
  JordanData out;
  for (const auto& e : complexData.eigenvalues) {
    if (e.lambda.im.sign() < 0) continue;
    JordanEigen q{e.lambda, {}};
    if (e.lambda.isReal()) {
      for (std::size_t k = 0; k < e.sizes.size(); k += 2) {
        if (k + 1 >= e.sizes.size() || e.sizes[k] != e.sizes[k + 1])
          throw PairingViolation("real eigenvalue of a quaternion matrix with odd complex multiplicity");
        q.sizes.push_back(e.sizes[k]);
      }
    } else {
      q.sizes = e.sizes;
    }
    out.eigenvalues.push_back(std::move(q));
  }
  return out;
}

}  // namespace isoform
