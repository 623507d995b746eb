#include "gqo/serialization.hpp"

#include <fstream>
#include <sstream>

namespace gqo::io {

namespace {

[[noreturn]] void parse_fail(const std::string& detail) { throw Error(ErrorCode::ParseError, detail); }

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) parse_fail(what + " must be a number");
  return j.get<double>();
}

Eigen::Index document_dim(const Json& doc) {
  const Json& d = field(doc, "dim");
  if (!d.is_number_integer() || d.get<long long>() < 1) parse_fail("\"dim\" must be a positive integer");
  return static_cast<Eigen::Index>(d.get<long long>());
}

void require_kind(const Json& doc, std::initializer_list<std::string_view> allowed) {
  const std::string kind = document_kind(doc);
  for (auto k : allowed)
    if (kind == k) return;
  parse_fail("document kind \"" + kind + "\" is not accepted here");
}

void check_matrix_dim(const ComplexMatrixd& m, Eigen::Index dim, const std::string& what) {
  if (m.rows() != dim)
    throw Error(ErrorCode::DimMismatch, what + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                            " but dim is " + std::to_string(dim));
}

void check_vector_dim(const StateVectord& v, Eigen::Index dim, const std::string& what) {
  if (v.size() != dim)
    throw Error(ErrorCode::DimMismatch, what + " has length " + std::to_string(v.size()) + " but dim is " +
                                            std::to_string(dim));
}

Labels optional_labels(const Json& doc) {
  Labels labels;
  if (!doc.contains("labels")) return labels;
  const Json& l = doc.at("labels");
  if (!l.is_array()) parse_fail("\"labels\" must be an array of strings");
  for (const auto& s : l) {
    if (!s.is_string()) parse_fail("\"labels\" must be an array of strings");
    labels.push_back(s.get<std::string>());
  }
  return labels;
}

std::vector<double> optional_values(const Json& doc) {
  std::vector<double> values;
  if (!doc.contains("values")) return values;
  const Json& v = doc.at("values");
  if (!v.is_array()) parse_fail("\"values\" must be an array of numbers");
  for (const auto& x : v) values.push_back(number(x, "value"));
  return values;
}

std::vector<StateVectord> vectors_field(const Json& doc, Eigen::Index dim) {
  const Json& vs = field(doc, "vectors");
  if (!vs.is_array()) parse_fail("\"vectors\" must be an array");
  std::vector<StateVectord> out;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const std::string what = "vector " + std::to_string(k);
    out.push_back(vector_from_json(vs[k], what));
    check_vector_dim(out.back(), dim, what);
  }
  if (static_cast<Eigen::Index>(out.size()) != dim)
    throw Error(ErrorCode::DimMismatch, "a basis in dim " + std::to_string(dim) + " needs exactly " +
                                            std::to_string(dim) + " vectors, got " + std::to_string(out.size()));
  return out;
}

Json values_to_json(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(v);
  return out;
}

Json state_or_null(const std::optional<DensityOperator<double>>& state) {
  return state ? matrix_to_json(state->op()) : Json(nullptr);
}

}  // namespace

// -0.0 is written as 0.0.
Json complex_to_json(Complex<double> z) { return Json::array({z.real() + 0.0, z.imag() + 0.0}); }

Complex<double> complex_from_json(const Json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) parse_fail(what + " must be a complex number [re, im]");
  return {number(j[0], what), number(j[1], what)};
}

Json matrix_to_json(const ComplexMatrixd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrixd matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::NotSquare, what + " must be a non-empty square array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  ComplexMatrixd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw Error(ErrorCode::NotSquare, what + " must be square: row " + std::to_string(i) + " does not have " +
                                            std::to_string(n) + " entries");
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], what);
  }
  return m;
}

Json vector_to_json(const StateVectord& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

StateVectord vector_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) parse_fail(what + " must be a non-empty array of complex numbers");
  StateVectord v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], what);
  return v;
}

Json to_document(const GeneralizedStated& state) {
  return Json{{"kind", "state"}, {"dim", state.dim()}, {"matrix", matrix_to_json(state.op())}};
}

Json to_document(const StateVectord& psi) {
  return Json{{"kind", "state_vector"}, {"dim", psi.size()}, {"vector", vector_to_json(psi)}};
}

Json to_document(const EffectFamilyd& family) {
  Json effects = Json::array();
  for (const auto& e : family.effects()) effects.push_back(matrix_to_json(e));
  return Json{{"kind", "effect_family"}, {"dim", family.dim()}, {"labels", family.labels()}, {"effects", effects}};
}

Json to_document(const ObliqueFramed& frame) {
  Json vectors = Json::array();
  for (const auto& v : frame.vectors()) vectors.push_back(vector_to_json(v));
  return Json{{"kind", "frame"},
              {"dim", frame.dim()},
              {"labels", frame.labels()},
              {"values", values_to_json(frame.values())},
              {"vectors", vectors}};
}

Json to_document(const Pvmd& pvm) {
  Json vectors = Json::array();
  for (const auto& v : pvm.basis()) vectors.push_back(vector_to_json(v));
  return Json{{"kind", "pvm"},
              {"dim", pvm.dim()},
              {"labels", pvm.labels()},
              {"values", values_to_json(pvm.values())},
              {"vectors", vectors}};
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
}

Json read_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::string document_kind(const Json& doc) {
  const Json& k = field(doc, "kind");
  if (!k.is_string()) parse_fail("\"kind\" must be a string");
  const std::string kind = k.get<std::string>();
  for (const char* known : {"state", "state_vector", "effect_family", "frame", "pvm"})
    if (kind == known) return kind;
  parse_fail("unknown document kind \"" + kind + "\"");
}

StateVectord state_vector_from_document(const Json& doc) {
  require_kind(doc, {"state_vector"});
  const Eigen::Index dim = document_dim(doc);
  StateVectord psi = vector_from_json(field(doc, "vector"), "vector");
  check_vector_dim(psi, dim, "vector");
  require_nonzero(psi);
  return psi;
}

GeneralizedStated state_from_document(const Json& doc, double tol) {
  require_kind(doc, {"state", "state_vector"});
  if (document_kind(doc) == "state_vector") return pure_state(state_vector_from_document(doc));
  const Eigen::Index dim = document_dim(doc);
  const ComplexMatrixd m = matrix_from_json(field(doc, "matrix"), "state matrix");
  check_matrix_dim(m, dim, "state matrix");
  return GeneralizedStated(m, tol);
}

ObliqueFramed frame_from_document(const Json& doc, double tol) {
  require_kind(doc, {"frame"});
  const Eigen::Index dim = document_dim(doc);
  return ObliqueFramed(vectors_field(doc, dim), optional_values(doc), optional_labels(doc), tol);
}

Pvmd pvm_from_document(const Json& doc, double tol) {
  require_kind(doc, {"pvm"});
  const Eigen::Index dim = document_dim(doc);
  auto vectors = vectors_field(doc, dim);
  std::vector<double> values = optional_values(doc);
  if (!doc.contains("values")) parse_fail("pvm documents need \"values\"");
  return Pvmd(std::move(vectors), std::move(values), optional_labels(doc), tol);
}

EffectFamilyd observable_from_document(const Json& doc, double tol) {
  require_kind(doc, {"effect_family", "frame", "pvm"});
  const std::string kind = document_kind(doc);
  if (kind == "frame") return frame_effects(frame_from_document(doc, tol));
  if (kind == "pvm") return pvm_from_document(doc, tol).effects();
  const Eigen::Index dim = document_dim(doc);
  const Json& es = field(doc, "effects");
  if (!es.is_array()) parse_fail("\"effects\" must be an array of matrices");
  std::vector<ComplexMatrixd> effects;
  for (std::size_t k = 0; k < es.size(); ++k) {
    const std::string what = "effect " + std::to_string(k);
    effects.push_back(matrix_from_json(es[k], what));
    check_matrix_dim(effects.back(), dim, what);
  }
  return EffectFamilyd(effects, optional_labels(doc), tol);
}

Json verdict_to_json(const RepresentabilityVerdict<double>& verdict) {
  Json out{{"status", std::string(to_string(verdict.status))}};
  if (verdict.povm) out["povm"] = to_document(static_cast<const EffectFamilyd&>(*verdict.povm));
  if (verdict.witness) {
    const auto& w = *verdict.witness;
    out["witness"] = Json{{"outcome", w.outcome},
                          {"p_first", w.p_first},
                          {"p_second", w.p_second},
                          {"p_midpoint", w.p_midpoint},
                          {"gap", w.gap()},
                          {"first", matrix_to_json(w.first.op())},
                          {"second", matrix_to_json(w.second.op())},
                          {"midpoint", matrix_to_json(w.midpoint.op())}};
  }
  if (verdict.certificate) {
    const auto& c = *verdict.certificate;
    out["certificate"] = Json{{"kind", std::string(to_string(c.kind))},
                              {"outcome", c.outcome},
                              {"expected", c.expected},
                              {"actual", c.actual},
                              {"state", state_or_null(c.state)}};
  }
  return out;
}

RepresentabilityVerdict<double> verdict_from_json(const Json& j) {
  RepresentabilityVerdict<double> verdict;
  const Json& status = field(j, "status");
  if (status == "Representable") {
    verdict.status = Representability::Representable;
  } else if (status == "NotRepresentable") {
    verdict.status = Representability::NotRepresentable;
  } else {
    parse_fail("unknown verdict status");
  }
  if (j.contains("povm")) verdict.povm.emplace(observable_from_document(j.at("povm")), 1e-9);
  if (j.contains("witness")) {
    const Json& w = j.at("witness");
    auto outcome = field(w, "outcome");
    if (!outcome.is_number_unsigned()) parse_fail("witness outcome must be a non-negative integer");
    verdict.witness = AffinityWitness<double>{DensityOperatord(matrix_from_json(field(w, "first"), "first")),
                                              DensityOperatord(matrix_from_json(field(w, "second"), "second")),
                                              DensityOperatord(matrix_from_json(field(w, "midpoint"), "midpoint")),
                                              outcome.get<std::size_t>(),
                                              number(field(w, "p_first"), "p_first"),
                                              number(field(w, "p_second"), "p_second"),
                                              number(field(w, "p_midpoint"), "p_midpoint")};
  }
  if (j.contains("certificate")) {
    const Json& c = j.at("certificate");
    Certificate<double> cert;
    const std::string kind = field(c, "kind").get<std::string>();
    bool known = false;
    for (auto k : {CertificateKind::ProbabilityMismatch, CertificateKind::NotPsd, CertificateKind::NotComplete,
                   CertificateKind::PolarizationMismatch}) {
      if (kind == to_string(k)) {
        cert.kind = k;
        known = true;
      }
    }
    if (!known) parse_fail("unknown certificate kind \"" + kind + "\"");
    cert.outcome = field(c, "outcome").get<std::size_t>();
    cert.expected = number(field(c, "expected"), "expected");
    cert.actual = number(field(c, "actual"), "actual");
    if (c.contains("state") && !c.at("state").is_null())
      cert.state.emplace(matrix_from_json(c.at("state"), "certificate state"));
    verdict.certificate = cert;
  }
  if (verdict.status == Representability::Representable && !verdict.povm)
    parse_fail("a Representable verdict needs \"povm\"");
  if (verdict.status == Representability::NotRepresentable && !verdict.witness)
    parse_fail("a NotRepresentable verdict needs \"witness\"");
  return verdict;
}

}  // namespace gqo::io
