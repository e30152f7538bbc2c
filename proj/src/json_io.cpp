#include "arithdyn/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "arithdyn/errors.hpp"

namespace arithdyn {

namespace {

std::string scalar_to_string(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    if (j.is_number_unsigned()) return std::to_string(j.get<unsigned long long>());
    throw ValidationError("expected an integer or decimal string in JSON input");
}

Int int_from_json(const Json& j) { return parse_int(scalar_to_string(j)); }

} // namespace

Json rat_to_json(const Rat& r) {
    return Json::array({to_string(Int(r.get_num())), to_string(Int(r.get_den()))});
}

Rat rat_from_json(const Json& j) {
    if (j.is_array()) {
        if (j.size() != 2) throw ValidationError("rational must be a [num, den] pair");
        return parse_rat(scalar_to_string(j[0]), scalar_to_string(j[1]));
    }
    return parse_rat(scalar_to_string(j), "1");
}

Json matrix_to_json(const RatMatrix& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json entries = Json::array();
    for (const auto& e : m.entries()) entries.push_back(rat_to_json(e));
    j["entries"] = entries;
    return j;
}

Json matrix_to_json(const IntMatrix& m) { return matrix_to_json(m.to_rat()); }

RatMatrix matrix_from_json(const Json& j) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw ValidationError("matrix JSON needs rows, cols and entries");
    std::size_t rows = j["rows"].get<std::size_t>();
    std::size_t cols = j["cols"].get<std::size_t>();
    const Json& entries = j["entries"];
    if (!entries.is_array() || entries.size() != rows * cols)
        throw ValidationError("matrix JSON entry count does not match rows*cols");
    RatMatrix m(rows, cols);
    std::size_t k = 0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rat_from_json(entries[k++]);
    return m;
}

Json int_vec_to_json(const IntVec& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(to_string(x));
    return j;
}

Json rat_vec_to_json(const RatVec& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(rat_to_json(x));
    return j;
}

Json fan_to_json(const Fan& fan) {
    Json j;
    j["dim"] = fan.dim;
    Json rays = Json::array();
    for (const auto& ray : fan.rays) rays.push_back(int_vec_to_json(ray));
    j["rays"] = rays;
    j["max_cones"] = fan.max_cones;
    return j;
}

Fan fan_from_json(const Json& j) {
    if (!j.contains("dim") || !j.contains("rays") || !j.contains("max_cones"))
        throw ValidationError("fan JSON needs dim, rays and max_cones");
    Fan fan;
    fan.dim = j["dim"].get<std::size_t>();
    for (const auto& ray : j["rays"]) {
        IntVec v;
        for (const auto& c : ray) v.push_back(int_from_json(c));
        fan.rays.push_back(std::move(v));
    }
    for (const auto& cone : j["max_cones"])
        fan.max_cones.push_back(cone.get<std::vector<std::size_t>>());
    for (auto& cone : fan.max_cones) std::sort(cone.begin(), cone.end());
    return fan;
}

Json divisor_to_json(const TDivisor& d) {
    Json j;
    j["coeffs"] = rat_vec_to_json(d.coeffs);
    return j;
}

TDivisor divisor_from_json(const Json& j) {
    const Json& coeffs = j.is_object() ? j.at("coeffs") : j;
    TDivisor d;
    for (const auto& c : coeffs) d.coeffs.push_back(rat_from_json(c));
    return d;
}

DynSystem system_from_json(const Json& j) {
    if (!j.contains("factors")) throw ValidationError("system JSON needs a factors list");
    DynSystem sys;
    for (const auto& factor : j["factors"]) {
        std::string kind = factor.at("kind").get<std::string>();
        if (kind == "p1map") {
            P1MapFactor p1;
            for (const auto& c : factor.at("f")) p1.f.push_back(int_from_json(c));
            for (const auto& c : factor.at("g")) p1.g.push_back(int_from_json(c));
            sys.factors.emplace_back(std::move(p1));
        } else if (kind == "power") {
            PowerFactor pw;
            pw.dim = factor.at("dim").get<std::size_t>();
            pw.exponent = factor.at("d").get<unsigned>();
            sys.factors.emplace_back(pw);
        } else {
            throw ValidationError("unknown system factor kind: " + kind);
        }
    }
    validate_system(sys);
    return sys;
}

Json system_to_json(const DynSystem& sys) {
    Json factors = Json::array();
    for (const auto& factor : sys.factors) {
        Json f;
        if (const auto* p1 = std::get_if<P1MapFactor>(&factor)) {
            f["kind"] = "p1map";
            f["f"] = int_vec_to_json(p1->f);
            f["g"] = int_vec_to_json(p1->g);
        } else {
            const auto& pw = std::get<PowerFactor>(factor);
            f["kind"] = "power";
            f["dim"] = pw.dim;
            f["d"] = pw.exponent;
        }
        factors.push_back(f);
    }
    return Json{{"factors", factors}};
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ValidationError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

ProjPoint parse_proj_point(const std::string& text) {
    std::vector<IntVec> factors;
    std::stringstream byfactor(text);
    std::string factor;
    while (std::getline(byfactor, factor, ';')) {
        IntVec coords;
        std::stringstream bycoord(factor);
        std::string coord;
        while (std::getline(bycoord, coord, ',')) coords.push_back(parse_int(coord));
        factors.push_back(std::move(coords));
    }
    return make_proj_point(std::move(factors));
}

} // namespace arithdyn
