#pragma once

#include <stdexcept>
#include <string>

namespace isoform {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation outside the mathematical domain (division by zero, wrong ring, bad involution).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class SingularError : public Error {
 public:
  using Error::Error;
};

/// Requested canonical object does not exist (e.g. no Toeplitz form for this block).
class ExistenceError : public Error {
 public:
  using Error::Error;
};

/// An internal self-check failed. Never expected on valid input.
class ConstructionBug : public Error {
 public:
  using Error::Error;
};

/// A characteristic polynomial does not split over Q(i).
class UnresolvedFactor : public Error {
 public:
  using Error::Error;
};

/// Jordan data violate the lambda <-> conj(lambda)^{-1} pairing or the parity rule.
class PairingViolation : public Error {
 public:
  using Error::Error;
};

enum class Axiom { Shape, Symmetry, SingularB, Isometry, SingularA };

inline const char* axiomName(Axiom a) {
  switch (a) {
    case Axiom::Shape: return "shape";
    case Axiom::Symmetry: return "symmetry";
    case Axiom::SingularB: return "singularB";
    case Axiom::Isometry: return "isometry";
    case Axiom::SingularA: return "singularA";
  }
  return "unknown";
}

/// A candidate pair (A,B) violates B = eps*B^* = A^*BA or nonsingularity.
class AxiomError : public Error {
 public:
  AxiomError(Axiom which, const std::string& msg) : Error(msg), which_(which) {}
  Axiom which() const noexcept { return which_; }

 private:
  Axiom which_;
};

}  // namespace isoform
