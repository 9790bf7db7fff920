#pragma once

// JSON payloads. Complex scalars are [re, im] pairs (a bare number is read as
// a real scalar); matrices are arrays of rows.

#include <string>
#include <vector>

#include <json.hpp>

#include "hardy/automorphism.hpp"
#include "hardy/dual.hpp"
#include "hardy/fock.hpp"
#include "hardy/mobius.hpp"
#include "hardy/pick.hpp"
#include "hardy/realization.hpp"

namespace hardy::io {

using nlohmann::json;

cplx complex_from_json(const json& j);
json complex_to_json(cplx z);
CMatrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols);
json matrix_to_json(const CMatrix& m);

// {"vertices":[...], "edges":[{"name","src","dst"}, ...]}
GraphPtr graph_from_json(const json& j);
json graph_to_json(const Graph& g);

// [{"path":["e","f"], "re":..., "im":...} or {"vertex":"v", ...}, ...]
HardyPoly poly_from_json(const GraphPtr& g, const json& j);
json poly_to_json(const HardyPoly& x);

// {"weights":{"e":[re, im], ...}}; edges left out carry weight 0.
DualPoint point_from_json(const GraphPtr& g, const json& j, bool allow_boundary = false);
json point_to_json(const DualPoint& p);

// {"loops":{"g":[re, im]}}
CentralPoint central_from_json(const GraphPtr& g, const json& j);
json central_to_json(const CentralPoint& c);

// {"blocks":[{"src","dst","edges":[...],"matrix":[[...]]}]}
BimoduleUnitary unitary_from_json(const GraphPtr& g, const json& j);
json unitary_to_json(const BimoduleUnitary& u);

// {"multiplicities":{"v":2}, "q1":[...], "q2":[...], "A":{...}, "B":{...}, "C":{...}, "D":{...}}
// Missing blocks are zero.
SystemMatrix system_from_json(const GraphPtr& g, const json& j);
json system_to_json(const SystemMatrix& s);

// Vertex subset by names.
std::vector<bool> vertex_set_from_json(const Graph& g, const json& j);
json vertex_set_to_json(const Graph& g, const std::vector<bool>& set);

// {"points":[...], "values":[...], "B":[...], "C":[...]}; the matrix lists are optional.
struct SampleFile {
  std::vector<DualPoint> points;
  std::vector<VertexMatrix> values;
  std::vector<VertexMatrix> b;
  std::vector<VertexMatrix> c;
};
SampleFile samples_from_json(const GraphPtr& g, const json& j);

json verdict_to_json(const CpVerdict& v);
json system_report_to_json(const SystemReport& r);

json read_json_file(const std::string& path);
// Reads the whole file; used for provenance hashes.
std::string read_text_file(const std::string& path);
// Hex SHA-256 digest.
std::string sha256_hex(const std::string& bytes);

}  // namespace hardy::io
