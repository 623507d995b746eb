#pragma once

// JSON document envelopes. Every document carries "kind" and "dim"; complex
// numbers are [re, im] pairs and matrices are row-major arrays of rows.
//
//   state          {"matrix": M}
//   state_vector   {"vector": V}
//   effect_family  {"effects": [M, ...], "labels": [...]?}
//   frame          {"vectors": [V, ...], "values": [...]?, "labels": [...]?}
//   pvm            {"vectors": [V, ...], "values": [...],  "labels": [...]?}
//
// Reading re-validates every invariant of the target type.

#include "json.hpp"

#include <filesystem>
#include <string>

#include "gqo/gqo.hpp"

namespace gqo::io {

using Json = nlohmann::ordered_json;

Json complex_to_json(Complex<double> z);
Complex<double> complex_from_json(const Json& j, const std::string& what);
Json matrix_to_json(const ComplexMatrixd& m);
ComplexMatrixd matrix_from_json(const Json& j, const std::string& what);
Json vector_to_json(const StateVectord& v);
StateVectord vector_from_json(const Json& j, const std::string& what);

Json to_document(const GeneralizedStated& state);
Json to_document(const StateVectord& psi);
Json to_document(const EffectFamilyd& family);
Json to_document(const ObliqueFramed& frame);
Json to_document(const Pvmd& pvm);

/// Parses JSON text, mapping syntax errors to ErrorCode::ParseError.
Json parse_document(const std::string& text);
Json read_document(const std::filesystem::path& path);

/// Validated "kind" of an envelope.
std::string document_kind(const Json& doc);

/// Accepts kind state or state_vector (as the pure state psi psi*).
GeneralizedStated state_from_document(const Json& doc, double tol = kDefaultTol<double>);
StateVectord state_vector_from_document(const Json& doc);
/// Accepts kind effect_family, frame (as its effects M_j) or pvm.
EffectFamilyd observable_from_document(const Json& doc, double tol = kDefaultTol<double>);
ObliqueFramed frame_from_document(const Json& doc, double tol = kDefaultTol<double>);
Pvmd pvm_from_document(const Json& doc, double tol = kDefaultTol<double>);

Json verdict_to_json(const RepresentabilityVerdict<double>& verdict);
RepresentabilityVerdict<double> verdict_from_json(const Json& j);

}  // namespace gqo::io
