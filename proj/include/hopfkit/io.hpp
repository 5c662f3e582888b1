#ifndef HOPFKIT_IO_HPP
#define HOPFKIT_IO_HPP

#include <climits>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hopfkit/complex.hpp"
#include "hopfkit/errors.hpp"
#include "hopfkit/estimates.hpp"
#include "hopfkit/filling.hpp"
#include "hopfkit/homology.hpp"
#include "hopfkit/maps.hpp"

namespace hopfkit::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kComplexFormat = "hopfkit-complex-v1";
inline constexpr const char* kMapFormat = "hopfkit-map-v1";

namespace detail {

inline const Json& field(const Json& j, const char* key, const char* what) {
    if (!j.is_object()) fail(ErrorCode::ParseError, std::string(what) + ": expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) fail(ErrorCode::ParseError, std::string(what) + ": missing field \"" + key + "\"");
    return *it;
}

inline int as_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) fail(ErrorCode::ParseError, std::string(what) + ": expected an integer");
    const auto v = j.get<long long>();
    if (v < INT_MIN || v > INT_MAX) fail(ErrorCode::ParseError, std::string(what) + ": integer out of range");
    return static_cast<int>(v);
}

inline std::vector<int> int_list(const Json& j, const char* what) {
    if (!j.is_array()) fail(ErrorCode::ParseError, std::string(what) + ": expected an array");
    std::vector<int> out;
    for (const auto& x : j) out.push_back(as_int(x, what));
    return out;
}

template <std::size_t K>
std::array<int, K> simplex_of(const Json& j, const char* what) {
    const auto v = int_list(j, what);
    if (v.size() != K) fail(ErrorCode::ParseError, std::string(what) + ": wrong number of vertices");
    std::array<int, K> s{};
    std::copy(v.begin(), v.end(), s.begin());
    return s;
}

}  // namespace detail

/// Integers that fit in 64 bits become JSON numbers, others decimal strings.
inline Json integer_json(const Integer& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

inline Json rational_json(const Rational& r) {
    if (is_integral(r)) return integer_json(r.get_num());
    return to_string(r);
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::ParseError, "cannot write " + path);
    out << text;
    if (!out) fail(ErrorCode::ParseError, "write failed for " + path);
}

// Complexes. A pure surface may be given with "triangles" in place of
// "tetrahedra"; it is written back the same way.
inline Complex3 complex_from_json(const Json& j) {
    const Json& fmt = detail::field(j, "format", "complex");
    if (!fmt.is_string() || fmt.get<std::string>() != kComplexFormat)
        fail(ErrorCode::ParseError, "complex: unknown format");
    const int n = detail::as_int(detail::field(j, "vertex_count", "complex"), "vertex_count");
    const bool surface = !j.contains("tetrahedra") && j.contains("triangles");
    const Json& list = detail::field(j, surface ? "triangles" : "tetrahedra", "complex");
    if (!list.is_array()) fail(ErrorCode::ParseError, "complex: simplex list must be an array");
    std::vector<int> signs(list.size(), 1);
    if (j.contains("signs")) {
        signs = detail::int_list(j.at("signs"), "signs");
        if (signs.size() != list.size()) fail(ErrorCode::ParseError, "complex: signs and simplices differ in length");
    }
    if (surface) {
        std::vector<OrientedTriangle> tris;
        for (std::size_t k = 0; k < list.size(); ++k) tris.push_back({detail::simplex_of<3>(list[k], "triangle"), signs[k]});
        return build_surface(n, tris);
    }
    std::vector<OrientedTetrahedron> tets;
    for (std::size_t k = 0; k < list.size(); ++k) tets.push_back({detail::simplex_of<4>(list[k], "tetrahedron"), signs[k]});
    return build_complex(n, tets);
}

inline Json complex_to_json(const Complex3& c) {
    Json j;
    j["format"] = kComplexFormat;
    j["vertex_count"] = c.vertex_count();
    Json list = Json::array();
    if (c.dimension() == 2) {
        for (const auto& t : c.triangles()) list.push_back(t);
        j["triangles"] = list;
    } else {
        for (const auto& t : c.tetrahedra()) list.push_back(t);
        j["tetrahedra"] = list;
    }
    j["signs"] = c.top_signs();
    return j;
}

inline Complex3 load_complex(const std::string& path) { return complex_from_json(read_json_file(path)); }

// Chains: {"dim": k, "coeffs": [[index, "p/q"], ...]}. Plain integer
// coefficients are accepted on input.
inline Chain chain_from_json(const Json& j) {
    const int dim = detail::as_int(detail::field(j, "dim", "chain"), "dim");
    if (dim < 0 || dim > 3) fail(ErrorCode::ParseError, "chain: dim must be 0..3");
    const Json& coeffs = detail::field(j, "coeffs", "chain");
    if (!coeffs.is_array()) fail(ErrorCode::ParseError, "chain: coeffs must be an array");
    Chain c(dim);
    for (const auto& entry : coeffs) {
        if (!entry.is_array() || entry.size() != 2) fail(ErrorCode::ParseError, "chain: each coefficient is [index, value]");
        const int idx = detail::as_int(entry[0], "chain index");
        if (idx < 0) fail(ErrorCode::ParseError, "chain: negative simplex index");
        Rational v;
        if (entry[1].is_string()) {
            try {
                v = parse_rational(entry[1].get<std::string>());
            } catch (const Error& e) {
                fail(ErrorCode::ParseError, "chain: " + e.detail());
            }
        } else {
            v = detail::as_int(entry[1], "chain coefficient");
        }
        c.add(idx, v);
    }
    return c;
}

inline Json chain_to_json(const Chain& c) {
    Json coeffs = Json::array();
    for (const auto& [s, v] : c.coeffs()) coeffs.push_back(Json::array({s, to_string(v)}));
    Json j;
    j["dim"] = c.dim();
    j["coeffs"] = coeffs;
    return j;
}

/// Checks that every index of `z` names a simplex of `c`.
inline void require_chain_fits(const Chain& z, const Complex3& c) {
    const auto n = c.simplex_count(z.dim());
    for (const auto& [s, v] : z.coeffs())
        if (static_cast<std::size_t>(s) >= n) fail(ErrorCode::InvalidSimplex, "chain index out of range");
}

// Dual curves: {"loops": [[[tet, entry, exit, sign], ...], ...]}.
inline DualCurve dual_curve_from_json(const Json& j) {
    const Json& loops = detail::field(j, "loops", "dual curve");
    if (!loops.is_array()) fail(ErrorCode::ParseError, "dual curve: loops must be an array");
    DualCurve y;
    for (const auto& loop : loops) {
        if (!loop.is_array()) fail(ErrorCode::ParseError, "dual curve: each loop is an array of steps");
        std::vector<DualStep> steps;
        for (const auto& s : loop) {
            const auto v = detail::simplex_of<4>(s, "dual step");
            steps.push_back({v[0], v[1], v[2], v[3]});
        }
        y.loops.push_back(std::move(steps));
    }
    return y;
}

inline Json dual_curve_to_json(const DualCurve& y) {
    Json loops = Json::array();
    for (const auto& loop : y.loops) {
        Json l = Json::array();
        for (const auto& s : loop) l.push_back(Json::array({s.tet, s.entry, s.exit, s.sign}));
        loops.push_back(l);
    }
    return Json{{"loops", loops}};
}

// Maps: {"format": "hopfkit-map-v1", "vertex_map": [...]}.
inline SimplicialMap map_from_json(const Json& j, std::shared_ptr<const Complex3> source,
                                   std::shared_ptr<const Complex3> target) {
    const Json& fmt = detail::field(j, "format", "map");
    if (!fmt.is_string() || fmt.get<std::string>() != kMapFormat) fail(ErrorCode::ParseError, "map: unknown format");
    return make_map(std::move(source), std::move(target), detail::int_list(detail::field(j, "vertex_map", "map"), "vertex_map"));
}

inline Json map_to_json(const SimplicialMap& f) { return Json{{"format", kMapFormat}, {"vertex_map", f.vertex_map}}; }

// Reports.
inline Json homology_report_json(const HomologySummary& h, const SpanningGenusReport& g) {
    Json j;
    j["betti"] = h.betti;
    j["h1_torsion_order"] = integer_json(h.h1_torsion_order);
    j["rank_r"] = g.rank_r;
    j["coefficient_bound"] = integer_json(g.coefficient_bound);
    return j;
}

inline Json approx_json(const RationalApprox& a) { return Json{{"p", a.p}, {"q", a.q}, {"error", a.error}}; }

inline Json tube_report_json(const TubeReport& r) {
    Json j;
    j["R_lower"] = r.R_lower;
    j["R_upper"] = r.R_upper;
    j["best_approx"] = approx_json(r.best_approx);
    j["order_p"] = r.order_p;
    j["angle_error"] = r.angle_error;
    j["volume_threshold"] = r.volume_threshold;
    j["order_threshold"] = r.order_threshold;
    j["hopf_threshold"] = r.hopf_threshold;
    j["hopf_size_lower"] = r.hopf_size_lower;
    j["N_w"] = r.N_w;
    j["delta"] = r.delta;
    j["tube_count_bound"] = r.tube_count_bound;
    j["linking_per_pair"] = r.linking_per_pair;
    j["hopf_difference"] = r.hopf_difference;
    j["branch"] = to_string(r.branch);
    return j;
}

inline Json error_json(const Error& e) { return Json{{"error", to_string(e.code())}, {"detail", e.detail()}}; }

/// Deterministic text form: two-space indent, trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace hopfkit::io

#endif
