#include "mubqpd/json_io.hpp"

#include <string>

#include "mubqpd/error.hpp"

namespace mubqpd {

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::BadInput, std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadInput, std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (const Complex& z : m.entries()) entries.push_back({z.real(), z.imag()});
  return {{"dim", m.dim()}, {"entries", entries}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const auto dim = field<std::size_t>(j, "dim");
  const auto raw = field<std::vector<std::vector<double>>>(j, "entries");
  std::vector<Complex> entries;
  entries.reserve(raw.size());
  for (const auto& pair : raw) {
    if (pair.size() != 2) throw Error(ErrorCode::BadInput, "matrix entries must be [re, im] pairs");
    entries.emplace_back(pair[0], pair[1]);
  }
  return ComplexMatrix(dim, std::move(entries));
}

Json to_json(const CscoBasis& b) {
  Json sets = Json::array();
  for (const auto& set : b.sets) {
    Json ops = Json::array();
    for (const auto& op : set) ops.push_back(to_json(op));
    sets.push_back(ops);
  }
  return {{"dim", b.dim}, {"sets", sets}, {"alphabet", b.alphabet}};
}

Json to_json(const BlochState& s) { return {{"dim", s.dim}, {"theta", s.theta}}; }

BlochState bloch_from_json(const Json& j) {
  BlochState s;
  s.dim = field<int>(j, "dim");
  s.theta = field<std::vector<double>>(j, "theta");
  return s;
}

Json to_json(const QpdTable& t) {
  return {{"dim", t.dim}, {"subset", t.subset}, {"order", "k1-major"}, {"values", t.values}};
}

QpdTable table_from_json(const Json& j) {
  QpdTable t;
  t.dim = field<int>(j, "dim");
  t.subset = field<std::vector<int>>(j, "subset");
  t.values = field<std::vector<double>>(j, "values");
  if (field<std::string>(j, "order") != "k1-major") throw Error(ErrorCode::BadInput, "unknown table order");
  return t;
}

Json to_json(const PolytopeReport& r) {
  return {{"dim", r.dim},
          {"vertices", r.vertex_count},
          {"inequalities", r.inequality_count},
          {"facets", r.facet_count},
          {"edges_geometric", r.edge_count_geometric},
          {"edges_crossbasis", r.edge_count_crossbasis},
          {"edges_same_basis", r.same_basis_edges},
          {"paper_vertices", r.paper_vertices},
          {"paper_facets", r.paper_facets},
          {"paper_edges", r.paper_edges},
          {"tight_per_facet", {r.min_tight_per_facet, r.max_tight_per_facet}},
          {"min_vertex_active_rank", r.min_vertex_active_rank},
          {"vertex_norms", r.vertex_norms},
          {"same_basis_cos", r.same_basis_cos},
          {"cross_basis_dot", r.cross_basis_dot},
          {"discrepancies", r.discrepancies}};
}

Json to_json(const MeasurementRecord& r) { return {{"dim", r.dim}, {"shots", r.shots}, {"counts", r.counts}}; }

MeasurementRecord record_from_json(const Json& j) {
  MeasurementRecord r;
  r.dim = field<int>(j, "dim");
  r.shots = field<std::size_t>(j, "shots");
  r.counts = field<std::vector<std::vector<std::size_t>>>(j, "counts");
  return r;
}

}  // namespace mubqpd
