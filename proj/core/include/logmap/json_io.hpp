#pragma once

#include "logmap/enumeration.hpp"
#include "logmap/marked_graph.hpp"
#include "logmap/monoid.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <string_view>

namespace logmap::json {

using nlohmann::json;

/// Parses a document; malformed input throws ParseError naming line and column.
json parse_document(std::string_view text);

/// Strict readers: unknown keys and wrong types throw SchemaViolation
/// naming the offending field.
MarkedGraph marked_graph_from_json(const json& j);
DualGraphInput dual_graph_from_json(const json& j);
/// Accepts {"rank", "generators"} or a serialized monoid report.
AffineMonoid monoid_from_json(const json& j);
std::map<std::string, Vector> assignment_from_json(const json& j);

json to_json(const Integer& x);
json to_json(const Vector& v);
json to_json(const std::vector<Vector>& vs);
json to_json(const IntMatrix& m);
json to_json(const MarkedGraph& g);
json to_json(const MonoidMorphism& phi);

/// {"extremal_rays","generator_images","hilbert_basis","rank","sharp","torsion"}
json monoid_report(const AffineMonoid& m, const std::vector<Integer>& torsion = {},
                   const std::map<std::string, Vector>& generator_images = {});
json monoid_report(const AssociatedMonoid& am);

/// Stable text form: two-space indent, sorted keys, trailing newline.
std::string dump(const json& j);

} // namespace logmap::json
