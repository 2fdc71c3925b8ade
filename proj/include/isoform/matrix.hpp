#pragma once

// Dense exact matrices. Vectors are columns and scalars act on the right
// (right vector spaces); all elimination is done with row operations, i.e.
// by left multiplication, so it stays valid over the quaternions.

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isoform/errors.hpp"
#include "isoform/integral.hpp"
#include "isoform/polynomial.hpp"
#include "isoform/scalars.hpp"

namespace isoform {

template <Scalar T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw ShapeError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = T(1);
    return m;
  }
  static Matrix zero(std::size_t r, std::size_t c) { return Matrix(r, c); }
  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t k = 0; k < d.size(); ++k) m(k, k) = d[k];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool isSquare() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool isZero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& v) { return isoform::isZero(v); });
  }

  Matrix operator-() const {
    Matrix r = *this;
    for (auto& v : r.data_) v = -v;
    return r;
  }
  Matrix& operator+=(const Matrix& o) {
    requireSameShape(o, "add");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    requireSameShape(o, "subtract");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw ShapeError("multiply: " + a.shapeStr() + " times " + b.shapeStr());
    // Rows of a and columns of b are brought to common denominators first.
    Matrix r(a.rows_, b.cols_);
    if (r.empty() || a.cols_ == 0) return r;
    using Int = typename detail::IntegerImage<T>::type;
    std::vector<mpz_class> da(a.rows_, 1), db(b.cols_, 1);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) detail::lcmInto(da[i], a(i, k));
    for (std::size_t k = 0; k < b.rows_; ++k)
      for (std::size_t j = 0; j < b.cols_; ++j) detail::lcmInto(db[j], b(k, j));
    std::vector<Int> ai(a.data_.size()), bi(b.data_.size());
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) ai[i * a.cols_ + k] = detail::toIntegral(a(i, k), da[i]);
    for (std::size_t k = 0; k < b.rows_; ++k)
      for (std::size_t j = 0; j < b.cols_; ++j) bi[k * b.cols_ + j] = detail::toIntegral(b(k, j), db[j]);
    std::vector<bool> aZero(ai.size()), bZero(bi.size());
    for (std::size_t t = 0; t < ai.size(); ++t) aZero[t] = detail::ffZero(ai[t]);
    for (std::size_t t = 0; t < bi.size(); ++t) bZero[t] = detail::ffZero(bi[t]);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        Int acc{};
        bool any = false;
        for (std::size_t k = 0; k < a.cols_; ++k) {
          if (aZero[i * a.cols_ + k] || bZero[k * b.cols_ + j]) continue;
          detail::mulAdd(acc, ai[i * a.cols_ + k], bi[k * b.cols_ + j]);
          any = true;
        }
        if (any) r(i, j) = detail::overInteger(acc, da[i] * db[j]);
      }
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block out of range");
    Matrix r(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }
  void setBlock(std::size_t r0, std::size_t c0, const Matrix& m) {
    if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw ShapeError("setBlock out of range");
    for (std::size_t i = 0; i < m.rows_; ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) (*this)(r0 + i, c0 + j) = m(i, j);
  }
  Matrix column(std::size_t j) const { return block(0, j, rows_, 1); }

  std::string shapeStr() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void requireSameShape(const Matrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw ShapeError(std::string(what) + ": " + shapeStr() + " vs " + o.shapeStr());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <Scalar T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

/// s * M (entrywise s * m_ij).
template <Scalar T>
Matrix<T> scaleLeft(const T& s, Matrix<T> m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = s * m(i, j);
  return m;
}

/// M * s (entrywise m_ij * s).
template <Scalar T>
Matrix<T> scaleRight(Matrix<T> m, const T& s) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) * s;
  return m;
}

/// Entrywise change of ring (Q -> Q(i) -> H).
template <Scalar U, Scalar T>
Matrix<U> convertMatrix(const Matrix<T>& m) {
  Matrix<U> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<U, T>) {
        r(i, j) = m(i, j);
      } else if constexpr (std::is_same_v<T, Rational>) {
        r(i, j) = U(m(i, j));
      } else if constexpr (std::is_same_v<T, Gaussian>) {
        r(i, j) = fromGaussian<U>(m(i, j));
      } else {
        static_assert(std::is_same_v<U, T>, "quaternion matrices cannot be narrowed");
      }
    }
  return r;
}

/// Conjugate transpose under the given involution.
template <Scalar T>
Matrix<T> star(const Matrix<T>& m, Involution inv) {
  requireInvolution(ScalarTraits<T>::ring, inv);
  Matrix<T> r(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = conjugate(m(i, j), inv);
  return r;
}

template <Scalar T>
Matrix<T> directSum(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> r(a.rows() + b.rows(), a.cols() + b.cols());
  r.setBlock(0, 0, a);
  r.setBlock(a.rows(), a.cols(), b);
  return r;
}

template <Scalar T>
Matrix<T> directSum(std::span<const Matrix<T>> parts) {
  std::size_t nr = 0, nc = 0;
  for (const auto& p : parts) {
    nr += p.rows();
    nc += p.cols();
  }
  Matrix<T> r(nr, nc);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& p : parts) {
    r.setBlock(r0, c0, p);
    r0 += p.rows();
    c0 += p.cols();
  }
  return r;
}

/// M \ N = [[0, N], [M, 0]].
template <Scalar T>
Matrix<T> skewSum(const Matrix<T>& m, const Matrix<T>& n) {
  Matrix<T> r(m.rows() + n.rows(), m.cols() + n.cols());
  r.setBlock(0, m.cols(), n);
  r.setBlock(n.rows(), 0, m);
  return r;
}

enum class MatOp { Add, Mul, DirectSum, SkewSum };

template <Scalar T>
Matrix<T> matArith(const Matrix<T>& m, const Matrix<T>& n, MatOp op) {
  switch (op) {
    case MatOp::Add: return m + n;
    case MatOp::Mul: return m * n;
    case MatOp::DirectSum: return directSum(m, n);
    case MatOp::SkewSum: return skewSum(m, n);
  }
  throw DomainError("bad matrix op");
}

inline Matrix<Gaussian> complexEmbed(const Matrix<Quaternion>& m);

// --- elimination --------------------------------------------------------------

namespace detail {

/// Fraction-free Gauss-Jordan: every row is cleared of denominators, then
/// row_i <- (p_k row_i - a_ik row_k) / p_{k-1}. All divisions are exact and
/// every pivot ends equal to the last one, `det`.
template <CommutativeScalar T>
struct FractionFree {
  using Int = typename IntegralOf<T>::type;
  std::size_t rows = 0, cols = 0;
  std::vector<Int> data;
  std::vector<std::size_t> pivots;
  Int det;

  Int& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Int& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  /// Entry of the reduced row echelon form.
  T reduced(std::size_t r, std::size_t c) const { return fromIntegral(at(r, c), det); }
};

template <CommutativeScalar T>
FractionFree<T> fractionFreeReduce(const Matrix<T>& m) {
  using Int = typename IntegralOf<T>::type;
  using Div = typename IntegralOf<T>::divisor;
  FractionFree<T> f;
  f.rows = m.rows();
  f.cols = m.cols();
  f.data.resize(f.rows * f.cols);
  for (std::size_t i = 0; i < f.rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < f.cols; ++j) lcmInto(l, m(i, j));
    for (std::size_t j = 0; j < f.cols; ++j) f.at(i, j) = toIntegral(m(i, j), l);
  }
  Int prev;
  if constexpr (std::is_same_v<Int, mpz_class>)
    prev = 1;
  else
    prev.re = 1;
  typename IntegralOf<T>::scratch scratch;
  std::vector<bool> isPivot(f.cols, false);
  std::size_t row = 0;
  for (std::size_t col = 0; col < f.cols && row < f.rows; ++col) {
    std::size_t p = row;
    while (p < f.rows && ffZero(f.at(p, col))) ++p;
    if (p == f.rows) continue;
    if (p != row)
      for (std::size_t j = 0; j < f.cols; ++j) std::swap(f.at(p, j), f.at(row, j));
    const Int piv = f.at(row, col);
    const Div div(prev);
    for (std::size_t i = 0; i < f.rows; ++i) {
      if (i == row) continue;
      const Int a = f.at(i, col);
      for (std::size_t j = 0; j < f.cols; ++j) {
        if (isPivot[j]) continue;
        if (j == col) continue;
        ffUpdate(f.at(i, j), piv, a, f.at(row, j), div, scratch);
      }
      f.at(i, col) = Int{};
    }
    for (std::size_t k = 0; k < f.pivots.size(); ++k) f.at(k, f.pivots[k]) = piv;
    isPivot[col] = true;
    f.pivots.push_back(col);
    prev = piv;
    ++row;
  }
  f.det = prev;
  return f;
}

}  // namespace detail

/// Reduced row echelon form by left row operations; returns pivot columns.
template <Scalar T>
std::vector<std::size_t> rrefInPlace(Matrix<T>& m) {
  if constexpr (CommutativeScalar<T>) {
    const auto f = detail::fractionFreeReduce(m);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = i < f.pivots.size() ? f.reduced(i, j) : T(0);
    return f.pivots;
  } else {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
      std::size_t p = row;
      while (p < m.rows() && isZero(m(p, col))) ++p;
      if (p == m.rows()) continue;
      if (p != row)
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
      const T inv = inverse(m(row, col));
      for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = inv * m(row, j);
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i == row || isZero(m(i, col))) continue;
        const T f = m(i, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }
}

/// Pivot columns only; the matrix is not rewritten.
template <Scalar T>
std::vector<std::size_t> pivotColumns(const Matrix<T>& m) {
  if constexpr (CommutativeScalar<T>) {
    return detail::fractionFreeReduce(m).pivots;
  } else {
    Matrix<T> r = m;
    return rrefInPlace(r);
  }
}

template <Scalar T>
struct RankKernel {
  std::size_t rank = 0;
  /// Columns form a basis of {x : M x = 0}.
  Matrix<T> kernel;
};

template <Scalar T>
RankKernel<T> rankKernel(const Matrix<T>& m) {
  RankKernel<T> out;
  if constexpr (CommutativeScalar<T>) {
    const auto f = detail::fractionFreeReduce(m);
    std::vector<bool> isPivot(m.cols(), false);
    for (auto c : f.pivots) isPivot[c] = true;
    out.rank = f.pivots.size();
    out.kernel = Matrix<T>(m.cols(), m.cols() - f.pivots.size());
    std::size_t k = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (isPivot[c]) continue;
      out.kernel(c, k) = T(1);
      for (std::size_t row = 0; row < f.pivots.size(); ++row)
        out.kernel(f.pivots[row], k) = detail::fromIntegral(detail::negated(f.at(row, c)), f.det);
      ++k;
    }
  } else {
    Matrix<T> r = m;
    const auto pivots = rrefInPlace(r);
    std::vector<bool> isPivot(m.cols(), false);
    for (auto c : pivots) isPivot[c] = true;
    out.rank = pivots.size();
    out.kernel = Matrix<T>(m.cols(), m.cols() - pivots.size());
    std::size_t k = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (isPivot[c]) continue;
      out.kernel(c, k) = T(1);
      for (std::size_t row = 0; row < pivots.size(); ++row) out.kernel(pivots[row], k) = -r(row, c);
      ++k;
    }
  }
  return out;
}

template <Scalar T>
std::size_t rank(const Matrix<T>& m) {
  if constexpr (std::is_same_v<T, Quaternion>)
    return pivotColumns(complexEmbed(m)).size() / 2;
  else
    return pivotColumns(m).size();
}

template <Scalar T>
bool isInvertible(const Matrix<T>& m) {
  return m.isSquare() && rank(m) == m.rows();
}

/// Solves M X = R for square invertible M.
template <Scalar T>
Matrix<T> solve(const Matrix<T>& m, const Matrix<T>& rhs) {
  if (!m.isSquare() || m.rows() != rhs.rows()) throw ShapeError("solve: shape mismatch");
  const std::size_t n = m.rows();
  Matrix<T> aug(n, n + rhs.cols());
  aug.setBlock(0, 0, m);
  aug.setBlock(0, n, rhs);
  if constexpr (CommutativeScalar<T>) {
    const auto f = detail::fractionFreeReduce(aug);
    if (f.pivots.size() < n || f.pivots[n - 1] != n - 1) throw SingularError("matrix is singular");
    Matrix<T> x(n, rhs.cols());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < rhs.cols(); ++j) x(i, j) = f.reduced(i, n + j);
    return x;
  } else {
    const auto pivots = rrefInPlace(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw SingularError("matrix is singular");
    return aug.block(0, n, n, rhs.cols());
  }
}

/// Gauss-Jordan on [M | I] with left row operations; E M = I gives E = M^{-1}.
template <Scalar T>
Matrix<T> inverse(const Matrix<T>& m) {
  if (!m.isSquare()) throw ShapeError("inverse of non-square " + m.shapeStr() + " matrix");
  if constexpr (std::is_same_v<T, Quaternion>) {
    // The complex embedding is a ring map, so it carries inverses to inverses.
    const auto x = inverse(complexEmbed(m));
    Matrix<T> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const Gaussian& z = x(2 * i, 2 * j);
        const Gaussian& w = x(2 * i, 2 * j + 1);
        r(i, j) = Quaternion(z.re, z.im, w.re, w.im);
      }
    return r;
  } else {
    return solve(m, Matrix<T>::identity(m.rows()));
  }
}

// --- named matrices -----------------------------------------------------------

namespace detail {
inline void requireSize(std::size_t n) {
  if (n < 1) throw ShapeError("named matrix of size 0");
}
}  // namespace detail

/// J_n(lambda): lambda on the diagonal, 1 on the superdiagonal.
template <Scalar T>
Matrix<T> jordanBlock(std::size_t n, const T& lambda) {
  detail::requireSize(n);
  Matrix<T> m(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    m(k, k) = lambda;
    if (k + 1 < n) m(k, k + 1) = T(1);
  }
  return m;
}

/// Unitriangular, every strictly upper entry equal to 2.
template <Scalar T>
Matrix<T> lambdaMatrix(std::size_t n) {
  detail::requireSize(n);
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = T(1);
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = T(2);
  }
  return m;
}

/// Antidiagonal with entries 1, -1, 1, ... read from bottom-left to top-right.
template <Scalar T>
Matrix<T> fMatrix(std::size_t n) {
  detail::requireSize(n);
  Matrix<T> m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(n - 1 - k, k) = (k % 2 == 0) ? T(1) : T(-1);
  return m;
}

/// Antidiagonal of ones.
template <Scalar T>
Matrix<T> eMatrix(std::size_t n) {
  detail::requireSize(n);
  Matrix<T> m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(n - 1 - k, k) = T(1);
  return m;
}

/// i^k for k >= 0.
inline Gaussian iPower(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return Gaussian(1);
    case 1: return Gaussian::I();
    case 2: return Gaussian(-1);
    default: return -Gaussian::I();
  }
}

/// 1 on the diagonal, 2 i^{k-j} above it.
inline Matrix<Gaussian> omegaMatrix(std::size_t n) {
  detail::requireSize(n);
  Matrix<Gaussian> m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    m(j, j) = Gaussian(1);
    for (std::size_t k = j + 1; k < n; ++k) m(j, k) = Gaussian(2) * iPower(static_cast<long>(k - j));
  }
  return m;
}

/// diag(1, i, i^2, ..., i^{n-1}).
inline Matrix<Gaussian> sDiagMatrix(std::size_t n) {
  detail::requireSize(n);
  Matrix<Gaussian> m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = iPower(static_cast<long>(k));
  return m;
}

/// Companion matrix of x^n + c_1 x^{n-1} + ... + c_n: ones below the
/// diagonal, last column (-c_n, ..., -c_1) from top to bottom.
template <Scalar T>
Matrix<T> frobeniusMatrix(std::span<const T> c) {
  const std::size_t n = c.size();
  detail::requireSize(n);
  Matrix<T> m(n, n);
  for (std::size_t k = 0; k + 1 < n; ++k) m(k + 1, k) = T(1);
  for (std::size_t r = 0; r < n; ++r) m(r, n - 1) = -c[n - 1 - r];
  return m;
}

enum class NamedKind { Jordan, Lambda, F, Omega, E, Sdiag, Frobenius };

/// Dispatching constructor. `lambda` is used by Jordan; `coeffs` (c_1..c_n) by Frobenius.
template <Scalar T>
Matrix<T> namedMatrix(NamedKind kind, std::size_t n, const T& lambda = T(0), std::span<const T> coeffs = {}) {
  switch (kind) {
    case NamedKind::Jordan: return jordanBlock<T>(n, lambda);
    case NamedKind::Lambda: return lambdaMatrix<T>(n);
    case NamedKind::F: return fMatrix<T>(n);
    case NamedKind::E: return eMatrix<T>(n);
    case NamedKind::Omega:
    case NamedKind::Sdiag:
      if constexpr (std::is_same_v<T, Rational>) {
        throw DomainError("Omega and S_n need i; use a Gaussian or quaternion domain");
      } else {
        return convertMatrix<T>(kind == NamedKind::Omega ? omegaMatrix(n) : sDiagMatrix(n));
      }
    case NamedKind::Frobenius:
      if (coeffs.size() != n) throw ShapeError("Frobenius block needs exactly n coefficients");
      return frobeniusMatrix<T>(coeffs);
  }
  throw DomainError("bad named matrix kind");
}

// --- realification and the complex embedding of quaternions --------------------

/// Each entry a+bi becomes [[a, -b], [b, a]].
inline Matrix<Rational> realify(const Matrix<Gaussian>& m) {
  Matrix<Rational> r(2 * m.rows(), 2 * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto b = realifyScalar(m(i, j));
      for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v) r(2 * i + u, 2 * j + v) = b[u][v];
    }
  return r;
}

/// Each entry z + w j becomes [[z, w], [-conj(w), conj(z)]].
inline Matrix<Gaussian> complexEmbed(const Matrix<Quaternion>& m) {
  Matrix<Gaussian> r(2 * m.rows(), 2 * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Gaussian z = m(i, j).z();
      const Gaussian w = m(i, j).w();
      r(2 * i, 2 * j) = z;
      r(2 * i, 2 * j + 1) = w;
      r(2 * i + 1, 2 * j) = -w.conj();
      r(2 * i + 1, 2 * j + 1) = z.conj();
    }
  return r;
}

// --- characteristic polynomial and polynomial evaluation -----------------------

/// Monic characteristic polynomial det(xI - M), via reduction to upper
/// Hessenberg form followed by the standard determinant recurrence.
template <Scalar T>
Poly<T> charPoly(const Matrix<T>& m) requires CommutativeScalar<T> {
  if (!m.isSquare()) throw ShapeError("charPoly of non-square matrix");
  const std::size_t n = m.rows();
  Matrix<T> h = m;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    std::size_t p = k + 1;
    while (p < n && isZero(h(p, k))) ++p;
    if (p == n) continue;
    if (p != k + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(p, j), h(k + 1, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, p), h(i, k + 1));
    }
    const T inv = inverse(h(k + 1, k));
    for (std::size_t i = k + 2; i < n; ++i) {
      if (isZero(h(i, k))) continue;
      const T f = h(i, k) * inv;
      for (std::size_t j = 0; j < n; ++j) h(i, j) -= f * h(k + 1, j);
      for (std::size_t r = 0; r < n; ++r) h(r, k + 1) += f * h(r, i);
    }
  }
  // p_m = (x - h_mm) p_{m-1} - sum_{i=1}^{m-1} h_{m-i,m} (prod_{j=m-i+1}^{m} h_{j,j-1}) p_{m-i-1}
  std::vector<Poly<T>> p(n + 1);
  p[0] = Poly<T>::constant(T(1));
  for (std::size_t mm = 1; mm <= n; ++mm) {
    p[mm] = Poly<T>({-h(mm - 1, mm - 1), T(1)}) * p[mm - 1];
    T prod(1);
    for (std::size_t i = 1; i < mm; ++i) {
      prod *= h(mm - i, mm - i - 1);
      if (isZero(prod)) break;
      const T coef = h(mm - i - 1, mm - 1) * prod;
      if (!isZero(coef)) p[mm] = p[mm] - coef * p[mm - i - 1];
    }
  }
  return p[n];
}

template <Scalar T>
Poly<T> charPoly(const Matrix<T>&) requires(!CommutativeScalar<T>) {
  throw DomainError("characteristic polynomial over the quaternions: apply complexEmbed first");
}

/// sum_k c_k M^{low + k}; negative powers go through M^{-1}.
template <Scalar T>
Matrix<T> polyEval(const LaurentPoly<T>& f, const Matrix<T>& m) {
  if (!m.isSquare()) throw ShapeError("polyEval needs a square matrix");
  const std::size_t n = m.rows();
  Matrix<T> acc(n, n);
  const int lo = f.lowExponent;
  const int hi = lo + static_cast<int>(f.coeffs.size()) - 1;
  auto coeffAt = [&](int e) -> const T& { return f.coeffs[static_cast<std::size_t>(e - lo)]; };
  if (hi >= 0) {
    // Horner over exponents max(lo,0)..hi.
    for (int e = hi; e >= std::max(lo, 0); --e) {
      acc = acc * m;
      for (std::size_t k = 0; k < n; ++k) acc(k, k) += coeffAt(e);
    }
    for (int e = std::max(lo, 0); e > 0; --e) acc = acc * m;
  }
  if (lo < 0) {
    const Matrix<T> minv = inverse(m);
    Matrix<T> part(n, n);
    Matrix<T> power = Matrix<T>::identity(n);
    for (int e = -1; e >= lo; --e) {
      power = power * minv;
      if (e <= hi) part += scaleLeft(coeffAt(e), power);
    }
    acc += part;
  }
  return acc;
}

template <CommutativeScalar T>
Matrix<T> polyEval(const Poly<T>& f, const Matrix<T>& m) {
  return polyEval(toLaurent(f), m);
}

}  // namespace isoform
