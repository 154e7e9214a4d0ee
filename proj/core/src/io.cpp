#include "qdet/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qdet/error.hpp"

namespace qdet::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Index require_index(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer()) parse_fail(std::string("field \"") + key + "\" must be an integer");
  return v.get<Index>();
}

std::string hex64(std::uint64_t x) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::uint64_t parse_hex64(const Json& j) {
  if (!j.is_string()) parse_fail("fingerprint must be a hex string");
  try {
    return std::stoull(j.get<std::string>(), nullptr, 16);
  } catch (const std::exception&) {
    parse_fail("malformed fingerprint");
  }
}

Json complex_list(const std::vector<Complex>& zs) {
  Json arr = Json::array();
  for (const Complex& z : zs) arr.push_back(complex_to_json(z));
  return arr;
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    parse_fail("complex numbers must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json vector_to_json(const ComplexVector& v) {
  Json arr = Json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(complex_to_json(v(i)));
  return arr;
}

ComplexVector vector_from_json(const Json& j) {
  if (!j.is_array()) parse_fail("expected an array of complex numbers");
  ComplexVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_from_json(j[i]);
  return v;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) rows.push_back(vector_to_json(m.row(r).transpose()));
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) parse_fail("expected an array of rows");
  const auto rows = static_cast<Index>(j.size());
  if (rows == 0) return {};
  const auto cols = static_cast<Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const ComplexVector row = vector_from_json(j[static_cast<std::size_t>(r)]);
    if (row.size() != cols) parse_fail("matrix rows have differing lengths");
    m.row(r) = row.transpose();
  }
  return m;
}

Json to_json(const StateSet& s) {
  Json j;
  j["dimension"] = s.dimension();
  Json states = Json::array();
  for (Index k = 0; k < s.size(); ++k) states.push_back(vector_to_json(s.state(k)));
  j["states"] = std::move(states);
  if (!s.labels().empty()) j["labels"] = s.labels();
  return j;
}

StateSet state_set_from_json(const Json& j) {
  const Index d = require_index(j, "dimension");
  const Json& states = require(j, "states");
  if (!states.is_array() || states.empty()) parse_fail("\"states\" must be a non-empty array");
  if (d < 1) parse_fail("\"dimension\" must be positive");
  ComplexMatrix amps(d, static_cast<Index>(states.size()));
  for (std::size_t k = 0; k < states.size(); ++k) {
    const ComplexVector v = vector_from_json(states[k]);
    if (v.size() != d) {
      throw Error(ErrorCode::DimensionMismatch, "state " + std::to_string(k) + " has " +
                                                    std::to_string(v.size()) +
                                                    " amplitudes, expected " + std::to_string(d));
    }
    amps.col(static_cast<Index>(k)) = v;
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    try {
      labels = j.at("labels").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception&) {
      parse_fail("\"labels\" must be an array of strings");
    }
  }
  return StateSet(std::move(amps), std::move(labels));
}

Json to_json(const DensityMatrix& rho) {
  Json j;
  j["dimension"] = rho.dimension();
  j["matrix"] = matrix_to_json(rho.matrix());
  return j;
}

DensityMatrix density_from_json(const Json& j) {
  const Index d = require_index(j, "dimension");
  ComplexMatrix m = matrix_from_json(require(j, "matrix"));
  if (m.rows() != d || m.cols() != d) {
    throw Error(ErrorCode::DimensionMismatch, "density matrix shape does not match \"dimension\"");
  }
  return DensityMatrix::from_matrix(std::move(m));
}

Json to_json(const KrausSet& ks) {
  Json j;
  j["dimension"] = ks.dimension;
  Json ops = Json::array();
  for (const ComplexMatrix& a : ks.operators) ops.push_back(matrix_to_json(a));
  j["operators"] = std::move(ops);
  if (ks.c_factor.size() > 0) j["c_factor"] = matrix_to_json(ks.c_factor);
  if (!ks.dual_overlaps.empty()) j["dual_overlaps"] = complex_list(ks.dual_overlaps);
  j["complement_operator"] = ks.complement_operator;
  if (ks.initial_fingerprint != 0) j["initial_fingerprint"] = hex64(ks.initial_fingerprint);
  if (ks.final_fingerprint != 0) j["final_fingerprint"] = hex64(ks.final_fingerprint);
  return j;
}

KrausSet kraus_from_json(const Json& j) {
  const Index d = require_index(j, "dimension");
  const Json& ops = require(j, "operators");
  if (!ops.is_array() || ops.empty()) parse_fail("\"operators\" must be a non-empty array");
  std::vector<ComplexMatrix> mats;
  for (const Json& op : ops) {
    mats.push_back(matrix_from_json(op));
    if (mats.back().rows() != d || mats.back().cols() != d) {
      throw Error(ErrorCode::DimensionMismatch, "operator shape does not match \"dimension\"");
    }
  }
  KrausSet ks = KrausSet::from_operators(std::move(mats));
  if (j.contains("c_factor")) ks.c_factor = matrix_from_json(j.at("c_factor"));
  if (j.contains("dual_overlaps")) {
    const ComplexVector v = vector_from_json(j.at("dual_overlaps"));
    ks.dual_overlaps.assign(v.data(), v.data() + v.size());
  }
  if (j.contains("complement_operator")) ks.complement_operator = j.at("complement_operator").get<bool>();
  if (j.contains("initial_fingerprint")) ks.initial_fingerprint = parse_hex64(j.at("initial_fingerprint"));
  if (j.contains("final_fingerprint")) ks.final_fingerprint = parse_hex64(j.at("final_fingerprint"));
  return ks;
}

Json to_json(const FeasibilityReport& rep) {
  Json j;
  j["verdict"] = std::string(to_string(rep.verdict));
  j["min_eigenvalue"] = rep.min_eigenvalue;  // NaN serializes as null
  Json pairs = Json::array();
  for (const PairRecord& p : rep.violating_pairs) {
    Json pj;
    pj["j"] = p.j;
    pj["k"] = p.k;
    pj["initial_overlap"] = p.initial_overlap;
    pj["final_overlap"] = p.final_overlap;
    pairs.push_back(std::move(pj));
  }
  j["violating_pairs"] = std::move(pairs);
  j["max_abs_mu"] = rep.max_abs_mu;
  j["initial_independent"] = rep.initial_independent;
  j["final_independent"] = rep.final_independent;
  j["initial_rank"] = rep.initial_rank;
  j["final_rank"] = rep.final_rank;
  j["notes"] = rep.notes;
  return j;
}

Json to_json(const std::vector<StateTransformRecord>& records) {
  Json arr = Json::array();
  for (const StateTransformRecord& r : records) {
    Json rj;
    rj["index"] = r.index;
    rj["fidelity"] = r.fidelity;
    rj["coefficients"] = complex_list(r.coefficients);
    rj["outcome_probabilities"] = r.outcome_probabilities;
    rj["total_probability"] = r.total_probability;
    arr.push_back(std::move(rj));
  }
  return arr;
}

Json to_json(const CoherenceReport& rep) {
  Json j;
  j["verdict"] = std::string(to_string(rep.verdict));
  j["support"] = rep.support;
  if (rep.output_purity) {
    j["purity"] = *rep.output_purity;
    j["is_pure"] = rep.is_pure;
  }
  if (!rep.coefficients.empty()) j["coefficients"] = complex_list(rep.coefficients);
  if (rep.output_state) j["output_state"] = vector_to_json(*rep.output_state);
  if (!rep.final_coefficients.empty()) j["final_coefficients"] = complex_list(rep.final_coefficients);
  if (rep.m_eigenvalues.size() > 0) {
    j["m_eigenvalues"] = std::vector<double>(rep.m_eigenvalues.data(),
                                             rep.m_eigenvalues.data() + rep.m_eigenvalues.size());
  }
  if (rep.unitary) {
    j["phases"] = rep.phases;
    j["unitary"] = matrix_to_json(*rep.unitary);
    j["unitarity_residual"] = rep.unitarity_residual;
    j["projector_residual"] = rep.projector_residual;
  }
  j["notes"] = rep.notes;
  return j;
}

Json to_json(const RoundtripRecord& rec) {
  Json j;
  j["agree"] = rec.agree;
  j["probe"] = to_json(rec.probe);
  j["relation"] = to_json(rec.relation);
  j["orthogonalised_residual"] = rec.orthogonalised_residual;
  if (rec.coefficient_law_residual) j["coefficient_law_residual"] = *rec.coefficient_law_residual;
  j["orthogonaliser"] = matrix_to_json(rec.orthogonaliser);
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(path.string() + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qdet::io
