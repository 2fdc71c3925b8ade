#pragma once

// Exact scalars: rationals, Gaussian rationals Q(i), rational quaternions,
// together with the involutions used to define eps-Hermitian forms.

#include <gmpxx.h>

#include <array>
#include <cctype>
#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "isoform/errors.hpp"

namespace isoform {

class Rational {
 public:
  Rational() = default;
  template <std::integral I>
  Rational(I v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  const mpq_class& value() const noexcept { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  int sign() const noexcept { return sgn(q_); }
  bool isZero() const noexcept { return sgn(q_) == 0; }
  double toDouble() const { return q_.get_d(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.isZero()) throw DomainError("division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// "p/q", or "p" when q = 1.
  std::string str() const { return q_.get_str(); }

 private:
  mpq_class q_{0};
};

inline Rational inverse(const Rational& x) {
  if (x.isZero()) throw DomainError("inverse of zero");
  return Rational(1) / x;
}

/// a + b i with a, b rational.
struct Gaussian {
  Rational re;
  Rational im;

  Gaussian() = default;
  template <std::integral I>
  Gaussian(I v) : re(v) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Gaussian I() { return {Rational(0), Rational(1)}; }

  bool isZero() const noexcept { return re.isZero() && im.isZero(); }
  bool isReal() const noexcept { return im.isZero(); }
  Gaussian conj() const { return {re, -im}; }
  Rational normSq() const { return re * re + im * im; }

  Gaussian operator-() const { return {-re, -im}; }
  Gaussian& operator+=(const Gaussian& o) { re += o.re; im += o.im; return *this; }
  Gaussian& operator-=(const Gaussian& o) { re -= o.re; im -= o.im; return *this; }
  Gaussian& operator*=(const Gaussian& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Gaussian& operator/=(const Gaussian& o) {
    const Rational n = o.normSq();
    if (n.isZero()) throw DomainError("division by zero");
    *this *= o.conj();
    re /= n;
    im /= n;
    return *this;
  }
  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend bool operator==(const Gaussian&, const Gaussian&) = default;
};

inline Gaussian inverse(const Gaussian& x) {
  if (x.isZero()) throw DomainError("inverse of zero");
  return Gaussian(1) / x;
}

/// Lexicographic (re, im) order; used only to key maps and sort output.
struct GaussianLess {
  bool operator()(const Gaussian& a, const Gaussian& b) const {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }
};

/// a + b i + c j + d k with i^2 = j^2 = k^2 = -1, ij = k = -ji.
struct Quaternion {
  Rational a, b, c, d;

  Quaternion() = default;
  template <std::integral I>
  Quaternion(I v) : a(v) {}  // NOLINT(google-explicit-constructor)
  Quaternion(Rational r) : a(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Quaternion(const Gaussian& z) : a(z.re), b(z.im) {}  // NOLINT(google-explicit-constructor)
  Quaternion(Rational a_, Rational b_, Rational c_, Rational d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

  static Quaternion I() { return {0, 1, 0, 0}; }
  static Quaternion J() { return {0, 0, 1, 0}; }
  static Quaternion K() { return {0, 0, 0, 1}; }

  bool isZero() const noexcept { return a.isZero() && b.isZero() && c.isZero() && d.isZero(); }
  Rational normSq() const { return a * a + b * b + c * c + d * d; }
  /// z + w j decomposition, z = a + b i, w = c + d i.
  Gaussian z() const { return {a, b}; }
  Gaussian w() const { return {c, d}; }

  Quaternion operator-() const { return {-a, -b, -c, -d}; }
  Quaternion& operator+=(const Quaternion& o) {
    a += o.a; b += o.b; c += o.c; d += o.d;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    a -= o.a; b -= o.b; c -= o.c; d -= o.d;
    return *this;
  }
  friend Quaternion operator*(const Quaternion& x, const Quaternion& y) {
    return {x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
            x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
            x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
            x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a};
  }
  Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }
  friend Quaternion operator+(Quaternion x, const Quaternion& y) { return x += y; }
  friend Quaternion operator-(Quaternion x, const Quaternion& y) { return x -= y; }
  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// h^{-1} = |h|^{-2} conj(h).
inline Quaternion inverse(const Quaternion& h) {
  const Rational n = h.normSq();
  if (n.isZero()) throw DomainError("inverse of zero quaternion");
  return {h.a / n, -h.b / n, -h.c / n, -h.d / n};
}
inline Quaternion quatInverse(const Quaternion& h) { return inverse(h); }

// --- rings, involutions, domains -------------------------------------------

enum class Ring { Q, Qi, Quat };

enum class Involution { Identity, ComplexConjugation, QuaternionConjugation, QuaternionSemiconjugation };

/// The four coefficient settings (a)-(d) of the classification.
enum class DomainCase { A, B, C, D };

inline const char* ringName(Ring r) {
  switch (r) {
    case Ring::Q: return "Q";
    case Ring::Qi: return "Qi";
    case Ring::Quat: return "Quat";
  }
  return "?";
}

inline const char* involutionName(Involution v) {
  switch (v) {
    case Involution::Identity: return "identity";
    case Involution::ComplexConjugation: return "conjugation";
    case Involution::QuaternionConjugation: return "quaternion-conjugation";
    case Involution::QuaternionSemiconjugation: return "quaternion-semiconjugation";
  }
  return "?";
}

inline Involution parseInvolution(std::string_view s) {
  if (s == "identity" || s == "id") return Involution::Identity;
  if (s == "conjugation" || s == "complex-conjugation" || s == "conj") return Involution::ComplexConjugation;
  if (s == "quaternion-conjugation" || s == "qconj") return Involution::QuaternionConjugation;
  if (s == "quaternion-semiconjugation" || s == "semiconjugation" || s == "qsemi")
    return Involution::QuaternionSemiconjugation;
  throw DomainError("unknown involution '" + std::string(s) + "'");
}

inline char caseName(DomainCase c) { return static_cast<char>('A' + static_cast<int>(c)); }

inline DomainCase parseCase(std::string_view s) {
  if (s.size() == 1 && s[0] >= 'A' && s[0] <= 'D') return static_cast<DomainCase>(s[0] - 'A');
  throw DomainError("unknown domain case '" + std::string(s) + "'");
}

/// Coefficient ring + involution for one of the cases (a)-(d).
class ScalarDomain {
 public:
  /// Case D needs an explicit quaternion involution; other cases ignore the argument.
  static ScalarDomain forCase(DomainCase c, Involution quatInvolution = Involution::QuaternionConjugation) {
    switch (c) {
      case DomainCase::A: return ScalarDomain(Ring::Qi, Involution::Identity, c);
      case DomainCase::B: return ScalarDomain(Ring::Qi, Involution::ComplexConjugation, c);
      case DomainCase::C: return ScalarDomain(Ring::Q, Involution::Identity, c);
      case DomainCase::D:
        if (quatInvolution != Involution::QuaternionConjugation &&
            quatInvolution != Involution::QuaternionSemiconjugation)
          throw DomainError("case D requires quaternion conjugation or semiconjugation");
        return ScalarDomain(Ring::Quat, quatInvolution, c);
    }
    throw DomainError("bad domain case");
  }

  Ring ring() const noexcept { return ring_; }
  Involution involution() const noexcept { return involution_; }
  DomainCase caseTag() const noexcept { return case_; }
  /// Case C: eigenvalue work happens in Q(i) with complex conjugation.
  bool hasClosureView() const noexcept { return case_ == DomainCase::C; }

  friend bool operator==(const ScalarDomain&, const ScalarDomain&) = default;

 private:
  ScalarDomain(Ring r, Involution v, DomainCase c) : ring_(r), involution_(v), case_(c) {}
  Ring ring_;
  Involution involution_;
  DomainCase case_;
};

// --- per-type traits --------------------------------------------------------

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr Ring ring = Ring::Q;
  static constexpr bool commutative = true;
};
template <>
struct ScalarTraits<Gaussian> {
  static constexpr Ring ring = Ring::Qi;
  static constexpr bool commutative = true;
};
template <>
struct ScalarTraits<Quaternion> {
  static constexpr Ring ring = Ring::Quat;
  static constexpr bool commutative = false;
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::ring; };

template <class T>
concept CommutativeScalar = Scalar<T> && ScalarTraits<T>::commutative;

inline bool isZero(const Rational& x) { return x.isZero(); }
inline bool isZero(const Gaussian& x) { return x.isZero(); }
inline bool isZero(const Quaternion& x) { return x.isZero(); }

inline bool involutionValidFor(Ring r, Involution v) {
  switch (r) {
    case Ring::Q: return v == Involution::Identity;
    case Ring::Qi: return v == Involution::Identity || v == Involution::ComplexConjugation;
    case Ring::Quat:
      return v == Involution::QuaternionConjugation || v == Involution::QuaternionSemiconjugation;
  }
  return false;
}

inline void requireInvolution(Ring r, Involution v) {
  if (!involutionValidFor(r, v))
    throw DomainError(std::string("involution ") + involutionName(v) + " is not defined on ring " + ringName(r));
}

inline Rational conjugate(const Rational& x, Involution v) {
  requireInvolution(Ring::Q, v);
  return x;
}

inline Gaussian conjugate(const Gaussian& x, Involution v) {
  requireInvolution(Ring::Qi, v);
  return v == Involution::Identity ? x : x.conj();
}

inline Quaternion conjugate(const Quaternion& x, Involution v) {
  requireInvolution(Ring::Quat, v);
  if (v == Involution::QuaternionConjugation) return {x.a, -x.b, -x.c, -x.d};
  return {x.a, -x.b, x.c, x.d};
}

inline Rational absSq(const Rational& x) { return x * x; }
inline Rational absSq(const Gaussian& x) { return x.normSq(); }
inline Rational absSq(const Quaternion& x) { return x.normSq(); }

/// a + b i  ->  [[a, -b], [b, a]]
inline std::array<std::array<Rational, 2>, 2> realifyScalar(const Gaussian& z) {
  return {{{z.re, -z.im}, {z.im, z.re}}};
}

// Embeddings Q -> Q(i) -> H and generic construction from smaller rings.
template <Scalar T>
T fromGaussian(const Gaussian& z);
template <>
inline Rational fromGaussian<Rational>(const Gaussian& z) {
  if (!z.im.isZero()) throw DomainError("non-real value in a rational domain");
  return z.re;
}
template <>
inline Gaussian fromGaussian<Gaussian>(const Gaussian& z) { return z; }
template <>
inline Quaternion fromGaussian<Quaternion>(const Gaussian& z) { return Quaternion(z); }

inline Gaussian toGaussian(const Rational& x) { return Gaussian(x); }
inline Gaussian toGaussian(const Gaussian& x) { return x; }

// --- text forms -------------------------------------------------------------

namespace detail {

inline void skipSpaces(std::string_view s, std::size_t& p) {
  while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
}

inline bool readInteger(std::string_view s, std::size_t& p, mpz_class& out) {
  const std::size_t start = p;
  while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
  if (p == start) return false;
  out = mpz_class(std::string(s.substr(start, p - start)));
  return true;
}

/// Parses sums of terms like "3/5", "-4/5*i", "j", "2k" into (a, b, c, d).
inline std::array<Rational, 4> parseComponents(std::string_view s) {
  std::array<Rational, 4> comp{};
  std::size_t p = 0;
  skipSpaces(s, p);
  if (p == s.size()) throw DomainError("empty scalar literal");
  bool first = true;
  while (true) {
    skipSpaces(s, p);
    if (p == s.size()) break;
    int sign = 1;
    if (s[p] == '+' || s[p] == '-') {
      sign = s[p] == '-' ? -1 : 1;
      ++p;
      skipSpaces(s, p);
    } else if (!first) {
      throw DomainError("malformed scalar literal '" + std::string(s) + "'");
    }
    first = false;
    mpz_class num = 1, den = 1;
    bool haveCoef = readInteger(s, p, num);
    if (haveCoef) {
      skipSpaces(s, p);
      if (p < s.size() && s[p] == '/') {
        ++p;
        skipSpaces(s, p);
        if (!readInteger(s, p, den)) throw DomainError("missing denominator in '" + std::string(s) + "'");
        if (den == 0) throw DomainError("zero denominator in '" + std::string(s) + "'");
      }
      skipSpaces(s, p);
      if (p < s.size() && s[p] == '*') {
        ++p;
        skipSpaces(s, p);
        if (p == s.size() || (s[p] != 'i' && s[p] != 'j' && s[p] != 'k'))
          throw DomainError("expected unit after '*' in '" + std::string(s) + "'");
      }
    }
    int slot = 0;
    if (p < s.size() && (s[p] == 'i' || s[p] == 'j' || s[p] == 'k')) {
      slot = s[p] == 'i' ? 1 : (s[p] == 'j' ? 2 : 3);
      ++p;
    } else if (!haveCoef) {
      throw DomainError("malformed scalar literal '" + std::string(s) + "'");
    }
    comp[slot] += Rational(mpz_class(sign * num), den);
  }
  return comp;
}

inline void appendTerm(std::string& out, const Rational& c, const char* unit) {
  if (c.isZero()) return;
  const bool neg = c.sign() < 0;
  if (!out.empty())
    out += neg ? '-' : '+';
  else if (neg)
    out += '-';
  const Rational mag = neg ? -c : c;
  if (unit[0] == '\0') {
    out += mag.str();
  } else if (mag == Rational(1)) {
    out += unit;
  } else {
    out += mag.str();
    out += '*';
    out += unit;
  }
}

inline std::string formatComponents(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  std::string out;
  appendTerm(out, a, "");
  appendTerm(out, b, "i");
  appendTerm(out, c, "j");
  appendTerm(out, d, "k");
  return out.empty() ? "0" : out;
}

}  // namespace detail

template <Scalar T>
T parseScalar(std::string_view s);

template <>
inline Rational parseScalar<Rational>(std::string_view s) {
  auto c = detail::parseComponents(s);
  if (!c[1].isZero() || !c[2].isZero() || !c[3].isZero())
    throw DomainError("'" + std::string(s) + "' is not rational");
  return c[0];
}
template <>
inline Gaussian parseScalar<Gaussian>(std::string_view s) {
  auto c = detail::parseComponents(s);
  if (!c[2].isZero() || !c[3].isZero()) throw DomainError("'" + std::string(s) + "' is not in Q(i)");
  return {c[0], c[1]};
}
template <>
inline Quaternion parseScalar<Quaternion>(std::string_view s) {
  auto c = detail::parseComponents(s);
  return {c[0], c[1], c[2], c[3]};
}

inline std::string toString(const Rational& x) { return x.str(); }
inline std::string toString(const Gaussian& x) { return detail::formatComponents(x.re, x.im, 0, 0); }
inline std::string toString(const Quaternion& x) { return detail::formatComponents(x.a, x.b, x.c, x.d); }

inline std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << toString(x); }
inline std::ostream& operator<<(std::ostream& os, const Gaussian& x) { return os << toString(x); }
inline std::ostream& operator<<(std::ostream& os, const Quaternion& x) { return os << toString(x); }

// --- ring-tagged scalar -----------------------------------------------------

/// A scalar whose ring is known only at run time.
using ExactScalar = std::variant<Rational, Gaussian, Quaternion>;

enum class ArithOp { Add, Sub, Mul, Div };

inline Ring ringOf(const ExactScalar& x) { return static_cast<Ring>(x.index()); }

/// Exact x op y for two scalars of the same ring; Div is x * y^{-1}.
inline ExactScalar arith(const ExactScalar& x, const ExactScalar& y, ArithOp op) {
  if (x.index() != y.index()) throw DomainError("arith: operands live in different rings");
  return std::visit(
      [&](const auto& a) -> ExactScalar {
        using T = std::decay_t<decltype(a)>;
        const T& b = std::get<T>(y);
        switch (op) {
          case ArithOp::Add: return a + b;
          case ArithOp::Sub: return a - b;
          case ArithOp::Mul: return a * b;
          case ArithOp::Div:
            if (isZero(b)) throw DomainError("division by zero");
            return a * inverse(b);
        }
        throw DomainError("bad arithmetic op");
      },
      x);
}

inline ExactScalar conjugate(const ExactScalar& x, Involution v) {
  return std::visit([&](const auto& a) -> ExactScalar { return conjugate(a, v); }, x);
}

inline Rational absSq(const ExactScalar& x) {
  return std::visit([](const auto& a) { return absSq(a); }, x);
}

inline ExactScalar parseExactScalar(std::string_view s, Ring r) {
  switch (r) {
    case Ring::Q: return parseScalar<Rational>(s);
    case Ring::Qi: return parseScalar<Gaussian>(s);
    case Ring::Quat: return parseScalar<Quaternion>(s);
  }
  throw DomainError("bad ring");
}

inline std::string toString(const ExactScalar& x) {
  return std::visit([](const auto& a) { return toString(a); }, x);
}

}  // namespace isoform
