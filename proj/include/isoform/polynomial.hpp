#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "isoform/errors.hpp"
#include "isoform/scalars.hpp"

namespace isoform {

/// Dense univariate polynomial over a commutative exact ring.
/// Coefficients are stored lowest degree first and kept trimmed.
template <CommutativeScalar T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> lowToHigh) : c_(std::move(lowToHigh)) { trim(); }
  Poly(std::initializer_list<T> lowToHigh) : c_(lowToHigh) { trim(); }

  /// Coefficients given highest degree first (the text form).
  static Poly fromHighToLow(std::vector<T> high) {
    std::reverse(high.begin(), high.end());
    return Poly(std::move(high));
  }
  static Poly constant(T v) { return Poly(std::vector<T>{std::move(v)}); }
  static Poly monomial(T coef, int degree) {
    std::vector<T> c(static_cast<std::size_t>(degree) + 1, T(0));
    c.back() = std::move(coef);
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(T(1), 1); }
  /// x - root
  static Poly linear(const T& root) { return Poly({-root, T(1)}); }

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool isZero() const noexcept { return c_.empty(); }
  T coeff(int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : T(0); }
  const T& leading() const {
    if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
    return c_.back();
  }
  const std::vector<T>& lowToHigh() const noexcept { return c_; }
  std::vector<T> highToLow() const { return {c_.rbegin(), c_.rend()}; }
  bool isMonic() const { return !c_.empty() && c_.back() == T(1); }

  Poly monic() const {
    if (isZero()) return *this;
    const T inv = inverse(leading());
    Poly r = *this;
    for (auto& v : r.c_) v *= inv;
    return r;
  }

  T eval(const T& at) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = T(static_cast<long>(k)) * c_[k];
    return Poly(std::move(d));
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) r[k] += b.c_[k];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.isZero() || b.isZero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const T& s, const Poly& p) {
    Poly r = p;
    for (auto& v : r.c_) v = s * v;
    r.trim();
    return r;
  }
  friend bool operator==(const Poly&, const Poly&) = default;

  /// Euclidean division: *this = q * d + r, deg r < deg d.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.isZero()) throw DomainError("polynomial division by zero");
    std::vector<T> rem = c_;
    const int dd = d.degree();
    const T invLead = inverse(d.leading());
    if (degree() < dd) return {Poly{}, *this};
    std::vector<T> q(static_cast<std::size_t>(degree() - dd) + 1, T(0));
    for (int k = degree(); k >= dd; --k) {
      const T f = rem[k] * invLead;
      if (isoform::isZero(f)) continue;
      q[k - dd] = f;
      for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= f * d.c_[j];
    }
    return {Poly(std::move(q)), Poly(std::move(rem))};
  }

  Poly pow(int e) const {
    Poly r = constant(T(1));
    for (int k = 0; k < e; ++k) r = r * *this;
    return r;
  }

  std::string str() const {
    if (isZero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      if (!out.empty()) out += ",";
      out += toString(c_[k]);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && isoform::isZero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

/// Monic gcd (zero if both are zero).
template <CommutativeScalar T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
  while (!b.isZero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Product of the distinct irreducible factors (characteristic zero).
template <CommutativeScalar T>
Poly<T> squarefreePart(const Poly<T>& f) {
  if (f.degree() <= 0) return f.monic();
  return f.divmod(gcd(f, f.derivative())).first.monic();
}

/// Coefficient-wise involution.
template <CommutativeScalar T>
Poly<T> conjugateCoefficients(const Poly<T>& f, Involution inv) {
  std::vector<T> c = f.lowToHigh();
  for (auto& v : c) v = conjugate(v, inv);
  return Poly<T>(std::move(c));
}

/// f^v(x) = conj(f(0))^{-1} * x^deg * conj(f)(1/x); monic when f is.
template <CommutativeScalar T>
Poly<T> polyReciprocal(const Poly<T>& f, Involution inv) {
  if (f.isZero() || isZero(f.coeff(0))) throw DomainError("reciprocal of a polynomial with zero constant term");
  std::vector<T> c = f.lowToHigh();
  std::reverse(c.begin(), c.end());
  const T scale = inverse(conjugate(f.coeff(0), inv));
  for (auto& v : c) v = scale * conjugate(v, inv);
  return Poly<T>(std::move(c));
}

/// sum_{k} coeffs[k] x^{lowExponent + k}; negative exponents allowed.
template <Scalar T>
struct LaurentPoly {
  int lowExponent = 0;
  std::vector<T> coeffs;
};

/// Polynomial f with the given coefficients, lowest first, as a Laurent polynomial.
template <CommutativeScalar T>
LaurentPoly<T> toLaurent(const Poly<T>& f) {
  return {0, f.lowToHigh()};
}

/// "1,-1,1" (highest degree first) or a JSON array of scalar strings.
template <CommutativeScalar T>
Poly<T> parsePoly(std::string_view text) {
  std::vector<T> high;
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '[')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == ']')) s.remove_suffix(1);
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    std::string_view part = s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    std::string token(part);
    token.erase(std::remove(token.begin(), token.end(), '"'), token.end());
    high.push_back(parseScalar<T>(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Poly<T>::fromHighToLow(std::move(high));
}

}  // namespace isoform
