#pragma once

#include <string>

#include <json.hpp>

#include "arithdyn/divisors.hpp"
#include "arithdyn/fan.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/ratmat.hpp"

namespace arithdyn {

using Json = nlohmann::ordered_json;

// Wire formats (all big values as decimal strings to stay lossless):
//   rational:  ["num", "den"]
//   matrix:    {"rows": r, "cols": c, "entries": [rational, ...]} row-major
//   fan:       {"dim": d, "rays": [[int, ...], ...], "max_cones": [[idx, ...], ...]}
//   divisor:   {"coeffs": [rational, ...]}
//   system:    {"factors": [{"kind": "p1map", "f": [...], "g": [...]}
//                           | {"kind": "power", "dim": k, "d": d}, ...]}

Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

Json matrix_to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const IntMatrix& m);

Json fan_to_json(const Fan& fan);
Fan fan_from_json(const Json& j);

Json divisor_to_json(const TDivisor& d);
TDivisor divisor_from_json(const Json& j);

Json int_vec_to_json(const IntVec& v);
Json rat_vec_to_json(const RatVec& v);

DynSystem system_from_json(const Json& j);
Json system_to_json(const DynSystem& sys);

Json load_json_file(const std::string& path);

/// Point syntax: factors separated by ';', coordinates by ','
/// (e.g. "2,1;1,1" for ((2:1),(1:1))).
ProjPoint parse_proj_point(const std::string& text);

} // namespace arithdyn
