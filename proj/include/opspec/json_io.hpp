#pragma once

#include "opspec/arrangement.hpp"
#include "opspec/completion.hpp"
#include "opspec/oracle.hpp"

#include <json.hpp>

#include <string>

namespace opspec {

using Json = nlohmann::json;

Json to_json(const Rat& r);          // "p/q"
Json to_json(const GQ& z);           // {"re":"p/q","im":"p/q"}
Json to_json(const ExtNat& n);       // "inf" or decimal string
Json to_json(const PointData& p);
Json to_json(const OperatorExpr& e);
Json to_json(const Predicate& p);
Json to_json(const RegionExpr& r);
Json to_json(const BasisAddress& a);
Json to_json(const CompletionCertificate& c);
Json to_json(const CompletionReport& r);
Json to_json(const NumericPointData& e);
Json to_json(const Verdict& v);
Json to_json(const CellDecomp& cd);  // debugging dump

Rat rat_from_json(const Json& j);
GQ gq_from_json(const Json& j);
ExtNat extnat_from_json(const Json& j);
OperatorExpr operator_from_json(const Json& j);
RegionExpr region_from_json(const Json& j);
BasisAddress address_from_json(const Json& j);
CompletionCertificate certificate_from_json(const Json& j);

/* Binary P5 PGM: 0 = outside, 255 = inside, row 0 on top. */
std::string grid_to_pgm(const std::vector<std::vector<bool>>& grid);

}  // namespace opspec
