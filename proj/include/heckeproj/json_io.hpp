#pragma once

#include <json.hpp>

#include "heckeproj/braid.hpp"
#include "heckeproj/catalog.hpp"
#include "heckeproj/search.hpp"

namespace heckeproj {

// Key order is preserved so emitted documents read top-down.
using Json = nlohmann::ordered_json;

// Complex numbers are [re, im]; matrices are row-major nested arrays; NaN is
// written as null. Parsing failures throw MalformedInput naming the field.

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& field);

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, const std::string& field);

Json to_json(const Projection& p);
Projection projection_from_json(const Json& j, double tol = kDefaultProjectionTol);

Json to_json(const Frame& f);
Frame frame_from_json(const Json& j, double tol = 1e-10);

/// Accepts either a Projection ("mat") or a Frame ("mats") document.
Projection projection_or_frame_from_json(const Json& j, double tol = kDefaultProjectionTol);

Json to_json(const Tolerances& t);
Tolerances tolerances_from_json(const Json& j);

Json to_json(const BoundsReport& b);
BoundsReport bounds_from_json(const Json& j);

Json to_json(const SolutionReport& r);
SolutionReport report_from_json(const Json& j);

Json to_json(const RMatrix& R);
RMatrix rmatrix_from_json(const Json& j);

Json to_json(const RelationResiduals& r);

/// Unknown keys are rejected.
Json to_json(const SearchConfig& c);
SearchConfig search_config_from_json(const Json& j);

Json to_json(const SearchResult& r);
SearchResult search_result_from_json(const Json& j);

Json to_json(const CatalogEntry& e);

}  // namespace heckeproj
