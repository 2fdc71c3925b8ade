#pragma once

// JSON forms used by the command-line tool: matrix literals, pair files,
// block descriptors, decompositions and polynomial text.

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "isoform/canonical_blocks.hpp"
#include "isoform/decompose.hpp"
#include "isoform/errors.hpp"
#include "isoform/matrix.hpp"
#include "isoform/pair.hpp"
#include "isoform/polynomial.hpp"
#include "isoform/scalars.hpp"

namespace isoform::io {

using nlohmann::json;

template <Scalar T>
json matrixToJson(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(toString(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace detail {

inline std::string scalarText(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw DomainError("matrix entries must be scalar strings or integers, got " + v.dump());
}

inline const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw DomainError(std::string("missing field '") + key + "'");
  return obj.at(key);
}

}  // namespace detail

template <Scalar T>
Matrix<T> matrixFromJson(const json& j) {
  if (!j.is_array()) throw DomainError("matrix literal must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j.at(0).size() : 0;
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j.at(i);
    if (!row.is_array() || row.size() != cols) throw ShapeError("ragged matrix literal");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = parseScalar<T>(detail::scalarText(row.at(c)));
  }
  return m;
}

// --- pair files -------------------------------------------------------------------

inline json pairToJson(const IsometricPair& p) {
  return std::visit(
      [](const auto& q) {
        json j;
        j["case"] = std::string(1, caseName(q.domain.caseTag()));
        j["involution"] = involutionName(q.domain.involution());
        j["epsilon"] = q.epsilon;
        j["A"] = matrixToJson(q.A);
        j["B"] = matrixToJson(q.B);
        return j;
      },
      p);
}

/// Reads a pair file; the pair is validated.
inline IsometricPair pairFromJson(const json& j) {
  const DomainCase c = parseCase(detail::require(j, "case").get<std::string>());
  Involution inv = Involution::QuaternionConjugation;
  if (j.contains("involution")) inv = parseInvolution(j.at("involution").get<std::string>());
  else if (c == DomainCase::D) throw DomainError("case D pair files need an involution");
  const ScalarDomain dom = ScalarDomain::forCase(c, inv);
  if (j.contains("involution") && dom.involution() != inv)
    throw DomainError(std::string("case ") + caseName(c) + " uses involution " + involutionName(dom.involution()));
  const int eps = detail::require(j, "epsilon").get<int>();
  auto make = [&]<class T>(std::type_identity<T>) -> IsometricPair {
    return Pair<T>{dom, eps, matrixFromJson<T>(detail::require(j, "A")), matrixFromJson<T>(detail::require(j, "B"))};
  };
  switch (dom.ring()) {
    case Ring::Q: return validatePair(make(std::type_identity<Rational>{}));
    case Ring::Qi: return validatePair(make(std::type_identity<Gaussian>{}));
    case Ring::Quat: break;
  }
  return validatePair(make(std::type_identity<Quaternion>{}));
}

// --- block descriptors ---------------------------------------------------------------

inline json blockToJson(const CanonicalBlock& b) {
  json j;
  j["case"] = std::string(1, caseName(b.domainCase));
  if (b.domainCase == DomainCase::D) j["involution"] = involutionName(b.involution);
  j["subtype"] = subtypeName(b.subtype);
  j["n"] = b.n;
  j["lambda"] = toString(b.lambda);
  j["sign"] = b.sign;
  j["epsilon"] = b.epsilon;
  return j;
}

/// Case C blocks with a non-real lambda are realified automatically.
inline CanonicalBlock blockFromJson(const json& j) {
  CanonicalBlock b;
  b.domainCase = parseCase(detail::require(j, "case").get<std::string>());
  if (b.domainCase == DomainCase::D)
    b.involution = j.contains("involution") ? parseInvolution(j.at("involution").get<std::string>())
                                            : Involution::QuaternionConjugation;
  b.subtype = parseSubtype(detail::require(j, "subtype").get<std::string>());
  const long n = detail::require(j, "n").get<long>();
  if (n < 1) throw DomainError("block size must be at least 1");
  b.n = static_cast<std::size_t>(n);
  b.lambda = parseScalar<Gaussian>(detail::scalarText(detail::require(j, "lambda")));
  b.sign = j.contains("sign") ? j.at("sign").get<int>() : 1;
  b.epsilon = j.contains("epsilon") ? j.at("epsilon").get<int>() : 1;
  b.realified = b.domainCase == DomainCase::C && !b.lambda.isReal();
  if (!blockExists(b)) throw DomainError("no canonical block " + describe(b));
  return b;
}

/// A block file is either a list of descriptors or {"blocks": [...]}.
inline std::vector<CanonicalBlock> blocksFromJson(const json& j) {
  const json& list = j.is_object() ? detail::require(j, "blocks") : j;
  if (!list.is_array()) throw DomainError("block file must hold a list of block descriptors");
  std::vector<CanonicalBlock> out;
  for (const auto& e : list) out.push_back(blockFromJson(e));
  return out;
}

inline IsometricPair buildFromBlocks(const std::vector<CanonicalBlock>& blocks) {
  if (blocks.empty()) throw DomainError("empty block list");
  const IsometricPair first = buildBlock(blocks.front());
  return std::visit(
      [&](const auto& head) -> IsometricPair {
        using P = std::decay_t<decltype(head)>;
        std::vector<P> parts{head};
        for (std::size_t k = 1; k < blocks.size(); ++k) {
          const IsometricPair next = buildBlock(blocks[k]);
          if (!std::holds_alternative<P>(next)) throw DomainError("blocks from different cases");
          parts.push_back(std::get<P>(next));
        }
        return validatePair(IsometricPair(directSumPairs(parts)));
      },
      first);
}

// --- decompositions ---------------------------------------------------------------

inline json signatureToJson(const Signature& s) { return json{{"plus", s.plus}, {"minus", s.minus}}; }

inline json decompositionToJson(const Decomposition& d, const IsometricPair& p) {
  const ScalarDomain& dom = pairDomain(p);
  json j;
  j["case"] = std::string(1, caseName(dom.caseTag()));
  j["involution"] = involutionName(dom.involution());
  j["epsilon"] = pairEpsilon(p);
  j["dimension"] = pairDim(p);
  json blocks = json::array();
  for (const auto& b : d.blocks) blocks.push_back(blockToJson(b));
  j["blocks"] = std::move(blocks);
  json jordan = json::array();
  for (const auto& e : d.jordan.eigenvalues) jordan.push_back({{"lambda", toString(e.lambda)}, {"sizes", e.sizes}});
  json residues = json::array();
  for (const auto& r : d.residues) {
    json c;
    c["lambda"] = toString(r.lambda);
    c["n"] = r.n;
    c["field"] = residueFieldName(r.field);
    c["gram"] = matrixToJson(r.gram);
    c["signature"] = signatureToJson(r.signature);
    c["orientation"] = r.orientation;
    residues.push_back(std::move(c));
  }
  j["certificate"] = {{"jordan", std::move(jordan)}, {"residues", std::move(residues)}};
  return j;
}

// --- polynomials --------------------------------------------------------------------

template <CommutativeScalar T>
json polyToJson(const Poly<T>& p) {
  json j = json::array();
  for (const auto& c : p.highToLow()) j.push_back(toString(c));
  return j;
}

}  // namespace isoform::io
