#ifndef HOPFKIT_MAPS_HPP
#define HOPFKIT_MAPS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hopfkit/complex.hpp"
#include "hopfkit/errors.hpp"
#include "hopfkit/filling.hpp"
#include "hopfkit/homology.hpp"
#include "hopfkit/rational.hpp"

namespace hopfkit {

/// Vertex map between two complexes, extended linearly over simplices.
struct SimplicialMap {
    std::shared_ptr<const Complex3> source;
    std::shared_ptr<const Complex3> target;
    std::vector<int> vertex_map;

    int operator()(int v) const { return vertex_map[static_cast<std::size_t>(v)]; }
};

inline SimplicialMap make_map(Complex3 source, Complex3 target, std::vector<int> vertex_map) {
    return {std::make_shared<const Complex3>(std::move(source)), std::make_shared<const Complex3>(std::move(target)),
            std::move(vertex_map)};
}

inline SimplicialMap make_map(std::shared_ptr<const Complex3> source, std::shared_ptr<const Complex3> target,
                              std::vector<int> vertex_map) {
    return {std::move(source), std::move(target), std::move(vertex_map)};
}

namespace detail {
template <std::size_t K>
std::vector<int> image_set(const SimplicialMap& f, const std::array<int, K>& s) {
    std::vector<int> img;
    for (int v : s) img.push_back(f(v));
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    return img;
}
}  // namespace detail

inline ValidationResult validate_map(const SimplicialMap& f) {
    ValidationResult r;
    std::ostringstream diag;
    const auto& src = *f.source;
    const auto& tgt = *f.target;
    if (static_cast<int>(f.vertex_map.size()) != src.vertex_count()) {
        r.ok = false;
        r.diagnostic = "vertex_map has length " + std::to_string(f.vertex_map.size()) + ", source has " +
                       std::to_string(src.vertex_count()) + " vertices";
        return r;
    }
    for (std::size_t v = 0; v < f.vertex_map.size(); ++v)
        if (f.vertex_map[v] < 0 || f.vertex_map[v] >= tgt.vertex_count()) {
            r.ok = false;
            r.offending.push_back(static_cast<int>(v));
            diag << "vertex " << v << " maps outside the target; ";
        }
    if (!r.ok) {
        r.diagnostic = diag.str();
        return r;
    }
    auto check = [&](const auto& simplices, const char* kind) {
        for (std::size_t i = 0; i < simplices.size(); ++i) {
            const auto img = detail::image_set(f, simplices[i]);
            if (img.size() == 1 || tgt.simplex_index(img)) continue;
            r.ok = false;
            r.offending.push_back(static_cast<int>(i));
            diag << kind << " " << i << " image is not a target simplex; ";
        }
    };
    check(src.edges(), "edge");
    check(src.triangles(), "triangle");
    check(src.tetrahedra(), "tetrahedron");
    r.diagnostic = r.ok ? "valid simplicial map" : diag.str();
    return r;
}

namespace detail {
inline void require_valid(const SimplicialMap& f) {
    const auto v = validate_map(f);
    if (!v.ok) fail(ErrorCode::InvalidMap, v.diagnostic);
}

inline void require_closed(const Complex3& c, int dim, const char* role) {
    if (c.dimension() != dim || !validate_closed_oriented(c).ok)
        fail(ErrorCode::NotClosedOriented, std::string(role) + " must be a closed oriented " + std::to_string(dim) + "-complex");
}

// Orientation sign of f on a top-dimensional source simplex mapping
// bijectively onto target simplex `t` (0 if not bijective onto it).
template <std::size_t K>
int bijective_sign(const SimplicialMap& f, const std::array<int, K>& s, int s_sign, const std::array<int, K>& t, int t_sign) {
    std::array<int, K> img{};
    for (std::size_t i = 0; i < K; ++i) img[i] = f(s[i]);
    if (sorted(img) != t) return 0;
    return s_sign * sorting_parity(img) * t_sign;
}
}  // namespace detail

/// Degree of a map into a closed oriented 3-complex, checked equal over every
/// target tetrahedron. A source that is not a cycle shows up as
/// InconsistentDegree.
inline long degree(const SimplicialMap& f) {
    detail::require_valid(f);
    const auto& src = *f.source;
    const auto& tgt = *f.target;
    if (src.dimension() != 3) fail(ErrorCode::NotClosedOriented, "source must be a 3-complex");
    detail::require_closed(tgt, 3, "target");
    std::vector<long> per_target(tgt.simplex_count(3), 0);
    for (std::size_t i = 0; i < src.tetrahedra().size(); ++i) {
        const auto& s = src.tetrahedra()[i];
        std::array<int, 4> img{};
        for (std::size_t k = 0; k < 4; ++k) img[k] = f(s[k]);
        const auto t = tgt.tet_index(img[0], img[1], img[2], img[3]);
        if (!t || detail::image_set(f, s).size() != 4) continue;
        per_target[static_cast<std::size_t>(*t)] +=
            detail::bijective_sign(f, s, src.top_sign(static_cast<int>(i)), tgt.tetrahedra()[static_cast<std::size_t>(*t)], tgt.top_sign(*t));
    }
    for (std::size_t t = 1; t < per_target.size(); ++t)
        if (per_target[t] != per_target[0])
            fail(ErrorCode::InconsistentDegree, "signed preimage count differs between target tetrahedra 0 and " + std::to_string(t));
    return per_target.empty() ? 0 : per_target[0];
}

struct FiberData {
    int target_triangle = 0;
    DualCurve curve;
};

namespace detail {

struct Segment {
    int tet;
    int entry;
    int exit;
};

// Oriented fiber segments over every target triangle, keyed by triangle.
inline std::map<int, std::vector<Segment>> fiber_segments(const SimplicialMap& f, std::optional<int> only = std::nullopt) {
    const auto& src = *f.source;
    const auto& tgt = *f.target;
    std::map<int, std::vector<Segment>> out;
    for (std::size_t i = 0; i < src.tetrahedra().size(); ++i) {
        const auto& s = src.tetrahedra()[i];
        const auto img = image_set(f, s);
        if (img.size() != 3) continue;
        const auto t = tgt.triangle_index(img[0], img[1], img[2]);
        if (!t || (only && *t != *only)) continue;
        // Collapsed pair a < b.
        std::size_t a = 4, b = 4;
        for (std::size_t p = 0; p < 4 && a == 4; ++p)
            for (std::size_t q = p + 1; q < 4; ++q)
                if (f(s[p]) == f(s[q])) {
                    a = p;
                    b = q;
                    break;
                }
        // Positively oriented target order, rotated to start at f(w_a).
        const auto& tv = tgt.triangles()[static_cast<std::size_t>(*t)];
        std::array<int, 3> pos = tgt.top_sign(*t) > 0 ? std::array<int, 3>{tv[0], tv[1], tv[2]}
                                                      : std::array<int, 3>{tv[0], tv[2], tv[1]};
        while (pos[0] != f(s[a])) std::rotate(pos.begin(), pos.begin() + 1, pos.end());
        std::array<int, 4> order{s[a], s[b], 0, 0};
        for (std::size_t k = 0; k < 4; ++k) {
            if (k == a || k == b) continue;
            order[f(s[k]) == pos[1] ? 2 : 3] = s[k];
        }
        const int sign = sorting_parity(order) * src.top_sign(static_cast<int>(i));
        std::array<int, 3> omit_b = face_omitting(s, b), omit_a = face_omitting(s, a);
        const int fb = *src.triangle_index(omit_b[0], omit_b[1], omit_b[2]);
        const int fa = *src.triangle_index(omit_a[0], omit_a[1], omit_a[2]);
        if (sign > 0)
            out[*t].push_back({static_cast<int>(i), fb, fa});
        else
            out[*t].push_back({static_cast<int>(i), fa, fb});
    }
    return out;
}

inline DualCurve chain_segments(const std::vector<Segment>& segs, int target_triangle) {
    std::map<int, std::size_t> by_entry;
    std::map<int, int> exits;
    for (std::size_t k = 0; k < segs.size(); ++k) {
        if (!by_entry.emplace(segs[k].entry, k).second || ++exits[segs[k].exit] > 1)
            fail(ErrorCode::ChainingFailure,
                 "fiber over target triangle " + std::to_string(target_triangle) + " crosses a triangle twice in one direction");
    }
    DualCurve curve;
    std::vector<char> used(segs.size(), 0);
    for (std::size_t start = 0; start < segs.size(); ++start) {
        if (used[start]) continue;
        std::vector<DualStep> loop;
        std::size_t k = start;
        while (!used[k]) {
            used[k] = 1;
            loop.push_back({segs[k].tet, segs[k].entry, segs[k].exit, 1});
            auto it = by_entry.find(segs[k].exit);
            if (it == by_entry.end())
                fail(ErrorCode::ChainingFailure, "fiber over target triangle " + std::to_string(target_triangle) +
                                                     " ends at triangle " + std::to_string(segs[k].exit));
            k = it->second;
        }
        if (k != start) fail(ErrorCode::ChainingFailure, "fiber segments do not close up");
        curve.loops.push_back(std::move(loop));
    }
    return curve;
}

}  // namespace detail

/// Preimage of the barycenter of target triangle t, as a dual curve whose
/// steps are normalized to sign +1.
inline FiberData fiber(const SimplicialMap& f, int t) {
    detail::require_valid(f);
    if (t < 0 || t >= static_cast<int>(f.target->simplex_count(2)))
        fail(ErrorCode::InvalidSimplex, "target triangle index out of range");
    auto segs = detail::fiber_segments(f, t);
    return {t, detail::chain_segments(segs[t], t)};
}

/// Signed crossing count of a 2-chain z with a dual curve.
inline Rational crossing_pairing(const Chain& z, const DualCurve& y, const Complex3& c) {
    const auto& b3 = c.boundary(3);
    Rational total = 0;
    for (const auto& loop : y.loops)
        for (const auto& s : loop) {
            const Rational zc = z.coeff(s.exit);
            if (zc == 0) continue;
            total += zc * Rational(s.sign * b3.at(s.exit, s.tet) * c.top_sign(s.tet));
        }
    return total;
}

/// Linking number of a null-homologous edge cycle with a dual curve.
inline Rational linking_number(const Chain& y1, const DualCurve& y2, const Complex3& c) {
    validate_dual_curve(y2, c);
    if (y1.is_zero()) return 0;
    const Chain z = fill_cycle_any(y1, c);
    for (const auto& w : h2_basis(c))
        if (crossing_pairing(w, y2, c) != 0)
            fail(ErrorCode::AmbiguousLinking, "dual curve pairs nontrivially with H2; the linking number depends on the filling");
    return crossing_pairing(z, y2, c);
}

namespace detail {
// Signed count of triangles of a 2-chain mapping onto target triangle t.
inline Rational pushforward_on(const SimplicialMap& f, const Chain& z, int t) {
    const auto& src = *f.source;
    const auto& tgt = *f.target;
    const auto& tv = tgt.triangles()[static_cast<std::size_t>(t)];
    Rational total = 0;
    for (const auto& [fi, coef] : z.coeffs()) {
        const int s = bijective_sign(f, src.triangles()[static_cast<std::size_t>(fi)], 1, tv, tgt.top_sign(t));
        if (s != 0) total += coef * s;
    }
    return total;
}
}  // namespace detail

/// Evaluation of the pulled-back target fundamental class on an H2 basis of
/// the source.
inline std::vector<Rational> pullback_pairings(const SimplicialMap& f) {
    detail::require_valid(f);
    std::vector<Rational> out;
    if (f.target->simplex_count(2) == 0) return out;
    for (const auto& w : h2_basis(*f.source)) out.push_back(detail::pushforward_on(f, w, 0));
    return out;
}

struct HopfOptions {
    std::optional<int> t1;
    std::optional<int> t2;
    VertexRule rule = VertexRule::Smallest;
    FillMethod fill = FillMethod::Auto;   // Auto: fill_cycle_any
    bool verify = true;                   // swap, rule change
    bool verify_min_l1 = true;            // compare against a least-norm filling
};

struct HopfResult {
    Rational value;
    int t1 = -1;
    int t2 = -1;
    std::vector<std::string> checks;  // verifications that were performed
};

namespace detail {
inline Rational hopf_once(const SimplicialMap& f, const std::map<int, std::vector<Segment>>& segs, int t1, int t2,
                          VertexRule rule, bool min_l1) {
    const auto& src = *f.source;
    const DualCurve y = chain_segments(segs.at(t1), t1);
    const Chain y1 = deform_to_skeleton(y, src, rule);
    if (y1.is_zero()) return 0;
    const Chain z = min_l1 ? fill_cycle_min_l1(y1, src).z : fill_cycle_any(y1, src);
    return pushforward_on(f, z, t2);
}
}  // namespace detail

/// Hopf invariant of a map from a closed oriented 3-complex to a closed
/// oriented surface complex, by filling one fiber and counting preimages of a
/// second target triangle.
inline HopfResult hopf_invariant_report(const SimplicialMap& f, const HopfOptions& opt = {}) {
    detail::require_valid(f);
    detail::require_closed(*f.source, 3, "source");
    detail::require_closed(*f.target, 2, "target");
    for (const auto& p : pullback_pairings(f))
        if (p != 0) fail(ErrorCode::HopfUndefined, "pullback of the target class pairs nontrivially with H2 of the source");

    const auto segs = detail::fiber_segments(f);
    HopfResult r;
    std::vector<int> nonempty;
    for (const auto& [t, list] : segs)
        if (!list.empty()) nonempty.push_back(t);
    const int nt = static_cast<int>(f.target->simplex_count(2));
    for (auto t : {opt.t1, opt.t2})
        if (t && (*t < 0 || *t >= nt)) fail(ErrorCode::InvalidSimplex, "target triangle index out of range");
    if (opt.t1 && opt.t2 && *opt.t1 == *opt.t2) fail(ErrorCode::InvalidSimplex, "t1 and t2 must differ");
    if (!opt.t1 && !opt.t2 && nonempty.size() < 2) {
        r.value = 0;
        r.checks.push_back("fewer than two nonempty fibers");
        return r;
    }
    r.t1 = opt.t1 ? *opt.t1 : nonempty[0];
    if (opt.t2) {
        r.t2 = *opt.t2;
    } else {
        for (int t : nonempty)
            if (t != r.t1) {
                r.t2 = t;
                break;
            }
    }
    if (r.t2 < 0) {
        r.value = 0;
        return r;
    }
    auto with_empty = segs;
    with_empty[r.t1];
    with_empty[r.t2];
    const bool min_first = opt.fill != FillMethod::Auto;
    r.value = detail::hopf_once(f, with_empty, r.t1, r.t2, opt.rule, min_first);
    if (!is_integral(r.value)) fail(ErrorCode::IntegralityViolation, "Hopf invariant " + to_string(r.value) + " is not an integer");

    auto expect = [&](const Rational& v, const std::string& what) {
        if (v != r.value)
            fail(ErrorCode::InconsistencyDetected, what + " gives " + to_string(v) + " instead of " + to_string(r.value));
        r.checks.push_back(what);
    };
    if (opt.verify) {
        expect(detail::hopf_once(f, with_empty, r.t2, r.t1, opt.rule, min_first), "swapped target triangles");
        for (auto rule : {VertexRule::Smallest, VertexRule::Middle, VertexRule::Largest})
            if (rule != opt.rule) expect(detail::hopf_once(f, with_empty, r.t1, r.t2, rule, min_first), "vertex rule change");
    }
    if (opt.verify_min_l1 && !min_first) {
        try {
            expect(detail::hopf_once(f, with_empty, r.t1, r.t2, opt.rule, true), "least-norm filling");
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TooLarge) throw;
            r.checks.push_back("least-norm filling skipped: " + e.detail());
        }
    }
    return r;
}

inline Rational hopf_invariant(const SimplicialMap& f, const HopfOptions& opt = {}) {
    return hopf_invariant_report(f, opt).value;
}

}  // namespace hopfkit

#endif
