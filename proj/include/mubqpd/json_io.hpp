#pragma once

#include <json.hpp>

#include "mubqpd/csco.hpp"
#include "mubqpd/numerics.hpp"
#include "mubqpd/polytope.hpp"
#include "mubqpd/qpd.hpp"
#include "mubqpd/state.hpp"
#include "mubqpd/tomography.hpp"

namespace mubqpd {

using Json = nlohmann::ordered_json;

// {"dim": n, "entries": [[re, im], ...]} row-major.
Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// {"dim", "sets": [[matrix, ...], ...], "alphabet": [[...], ...]}
Json to_json(const CscoBasis& b);

// {"dim", "theta"}
Json to_json(const BlochState& s);
BlochState bloch_from_json(const Json& j);

// {"dim", "subset", "order": "k1-major", "values"}
Json to_json(const QpdTable& t);
QpdTable table_from_json(const Json& j);

Json to_json(const PolytopeReport& r);

// {"dim", "shots", "counts"}
Json to_json(const MeasurementRecord& r);
MeasurementRecord record_from_json(const Json& j);

}  // namespace mubqpd
