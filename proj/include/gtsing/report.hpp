#pragma once

#include "gtsing/dist_module.hpp"

#include <json.hpp>

namespace gtsing {

using Json = nlohmann::ordered_json;

// Exact JSON encodings; every rational is a "p/q" string.
Json to_json(const Polynomial& p);
Json to_json(const RationalFunction& f);
Json to_json(const Shift& m);
Json to_json(const SkewElement& a);
Json to_json(const DistLabel& label);
Json to_json(const DistVector& d);
Json to_json(const TableauPoint& pt);

}  // namespace gtsing
