#ifndef HOPFKIT_FAMILY_BUILDERS_HPP
#define HOPFKIT_FAMILY_BUILDERS_HPP

#include <algorithm>
#include <memory>
#include <vector>

#include "hopfkit/complex.hpp"
#include "hopfkit/families.hpp"
#include "hopfkit/filling.hpp"
#include "hopfkit/fixtures.hpp"
#include "hopfkit/homology.hpp"
#include "hopfkit/layered_torus.hpp"
#include "hopfkit/maps.hpp"

// Genuine complexes for the two growth examples: a stack of torus layers
// carrying N mapping cylinders of Psi and N of its inverse, closed up by two
// solid tori (S^3), and a surgered version with two surface-times-circle
// blocks and maps to a genus-2 surface.
namespace hopfkit {

inline constexpr int kMaxFamilyN = 4;
inline constexpr int kFamilyLattice = 5;

/// Layout of the layer stack shared by both examples.
struct StackLayout {
    int N = 0;
    int n = kFamilyLattice;
    std::vector<layered::Vec2> forward_path;   // standard -> Psi(standard)
    std::vector<layered::Vec2> backward_path;  // standard -> Psi^-1(standard)
    int middle = 0;                            // level carrying the middle tube
    int top = 0;                               // last level

    int levels() const { return top + 1; }
    int core_a(int i) const { return levels() * n * n + ((i % n) + n) % n; }
    int core_b(int j) const { return levels() * n * n + n + ((j % n) + n) % n; }
    int vertex_count() const { return levels() * n * n + 2 * n; }
};

struct FamilyInstance {
    int N = 0;
    Complex3 complex;
    Chain tube1;       // class a on the middle level
    DualCurve tube2;   // core of the solid torus in which a bounds
    Integer predicted_linking;
    std::size_t tet_count = 0;
    std::size_t base_tets = 0;      // tetrahedra at N = 0
    std::size_t tets_per_step = 0;  // added per unit of N
};

namespace detail {

inline StackLayout stack_layout(int N, const AnosovSpec& spec, int n) {
    require_anosov(spec);
    if (N < 0) fail(ErrorCode::InvalidParams, "N must be nonnegative");
    if (N > kMaxFamilyN) fail(ErrorCode::TooLarge, "built instances are limited to N <= 4");
    StackLayout s;
    s.N = N;
    s.n = n;
    const auto P = layered::lattice_matrix(spec);
    s.forward_path = layered::flip_path(layered::image_of_standard(P));
    s.backward_path = layered::flip_path(layered::image_of_standard(layered::inverse(P)));
    // Levels: 0 -> 1 lower tube layer, 1 -> 2 spacer, then the forward
    // copies, the middle layer, the backward copies.
    s.middle = 2 + N * static_cast<int>(s.backward_path.size());
    s.top = s.middle + 1 + N * static_cast<int>(s.forward_path.size());
    return s;
}

using SkipFn = std::function<bool(const layered::Vec2&)>;

// Torus layers of the stack; `lower_skip` / `middle_skip` omit tube
// neighbourhoods in the lower and middle plain layers.
inline void build_layers(layered::LayerStack& st, const StackLayout& s, const AnosovSpec& spec,
                         const SkipFn& lower_skip = {}, const SkipFn& middle_skip = {}) {
    using layered::Basis;
    const auto P = layered::lattice_matrix(spec);
    const auto Pinv = layered::inverse(P);
    st.prism_layer(0, Basis{}, std::nullopt, lower_skip);
    st.prism_layer(1, Basis{});
    int level = 2;
    auto copies = [&](const std::vector<layered::Vec2>& path, const layered::Mat2& back) {
        for (int c = 0; c < s.N; ++c) {
            Basis basis;
            for (std::size_t k = 0; k < path.size(); ++k) {
                basis = st.flip_layer(level, basis, path[k]);
                const bool last = k + 1 == path.size();
                if (last && layered::normalized(layered::Triple{back(basis.p), back(basis.q), back(basis.p + basis.q)}) !=
                                layered::standard_triple())
                    fail(ErrorCode::ConstructionFailure, "flip path does not end at the image triangulation");
                st.prism_layer(level, basis, last ? std::optional<layered::Mat2>(back) : std::nullopt);
                ++level;
            }
        }
    };
    // Inverse cylinders below the middle level, forward ones above it.
    copies(s.backward_path, P);
    st.prism_layer(level, Basis{}, std::nullopt, middle_skip);
    ++level;
    copies(s.forward_path, Pinv);
    if (level != s.top) fail(ErrorCode::ConstructionFailure, "layer count mismatch");
}

// Solid torus on level 0 in which the j-circles (class a) bound, and the one
// on the top level in which the i-circles (class b) bound.
inline void build_fillings(layered::LayerStack& st, const StackLayout& s) {
    const int n = s.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            st.add_prism({s.core_a(i), st.vertex(0, {i, j}), st.vertex(0, {i, j + 1})},
                         {s.core_a(i + 1), st.vertex(0, {i + 1, j}), st.vertex(0, {i + 1, j + 1})});
            st.add_prism({s.core_b(j), st.vertex(s.top, {i, j}), st.vertex(s.top, {i + 1, j})},
                         {s.core_b(j + 1), st.vertex(s.top, {i, j + 1}), st.vertex(s.top, {i + 1, j + 1})});
        }
}

inline Complex3 validated(int vertex_count, const std::vector<Tetrahedron>& tets) {
    Complex3 c = fixtures::orient_coherently(vertex_count, tets);
    const auto v = validate_closed_oriented(c);
    if (!v.ok) fail(ErrorCode::ConstructionFailure, "built complex is not closed: " + v.diagnostic);
    return c;
}

}  // namespace detail

/// N forward and N backward mapping cylinders of Psi between two solid tori;
/// a closed simplicial S^3.
inline FamilyInstance example1_build(int N, const AnosovSpec& spec = {}, int n = kFamilyLattice) {
    const auto s = detail::stack_layout(N, spec, n);
    layered::LayerStack st(n, s.levels());
    detail::build_layers(st, s, spec);
    detail::build_fillings(st, s);
    FamilyInstance out;
    out.N = N;
    out.complex = detail::validated(s.vertex_count(), st.tets());
    const auto h = homology_summary(out.complex);
    if (h.betti != std::array<int, 4>{1, 0, 0, 1} || h.h1_torsion_order != 1)
        fail(ErrorCode::ConstructionFailure, "built complex is not a homology sphere");
    const auto& c = out.complex;
    out.tube1 = Chain(1);
    for (int j = 0; j < n; ++j) out.tube1 += oriented_simplex(c, {st.vertex(s.middle, {0, j}), st.vertex(s.middle, {0, j + 1})});
    std::vector<DualStep> loop;
    for (int i = 0; i < n; ++i) {
        auto part = fixtures::prism_dual_path(c, {s.core_a(i), st.vertex(0, {i, 0}), st.vertex(0, {i, 1})},
                                              {s.core_a(i + 1), st.vertex(0, {i + 1, 0}), st.vertex(0, {i + 1, 1})});
        loop.insert(loop.end(), part.begin(), part.end());
    }
    out.tube2.loops.push_back(std::move(loop));
    validate_dual_curve(out.tube2, c);
    out.predicted_linking = anosov_pairing(spec, N);
    out.tet_count = c.simplex_count(3);
    const auto layers_per_step = s.forward_path.size() + s.backward_path.size();
    out.tets_per_step = layers_per_step * 7 * static_cast<std::size_t>(n * n);
    out.base_tets = out.tet_count - static_cast<std::size_t>(N) * out.tets_per_step;
    return out;
}

/// Genus-2 surface: connected sum of two 7-vertex tori along the triangle
/// {0, 1, 3}; 11 vertices.
inline Complex3 genus_two_surface() {
    std::vector<Triangle> tris;
    const std::array<int, 7> second{0, 1, 7, 3, 8, 9, 10};
    for (int copy = 0; copy < 2; ++copy)
        for (int x = 0; x < 7; ++x)
            for (const auto& shape : {std::array<int, 3>{0, 1, 3}, std::array<int, 3>{0, 2, 3}}) {
                Triangle t{};
                for (std::size_t k = 0; k < 3; ++k) {
                    const int v = (x + shape[k]) % 7;
                    t[k] = copy == 0 ? v : second[static_cast<std::size_t>(v)];
                }
                if (sorted(t) == Triangle{0, 1, 3}) continue;
                tris.push_back(t);
            }
    return fixtures::orient_surface(11, tris);
}

/// Genus-2 surface with one boundary square, as triangles on local vertex
/// ids, with the collapse onto genus_two_surface() sending the boundary to
/// the removed vertex. Boundary corners w0, w1, w2, w3 (in cyclic order) are
/// local ids 0, 1, 3, 2.
struct PuncturedSurface {
    int vertex_count = 0;
    std::vector<Triangle> triangles;
    std::vector<int> collapse;  // local id -> target vertex
    int basepoint = 0;
};

inline PuncturedSurface punctured_genus_two() {
    const Complex3 sigma = genus_two_surface();
    const int x0 = 2;
    PuncturedSurface out;
    out.basepoint = x0;
    std::vector<int> local(11, -1);
    out.collapse = {x0, x0, x0, x0};
    for (int v = 0; v < 11; ++v)
        if (v != x0) {
            local[static_cast<std::size_t>(v)] = static_cast<int>(out.collapse.size());
            out.collapse.push_back(v);
        }
    out.vertex_count = static_cast<int>(out.collapse.size());
    // Link of x0 as a cycle.
    std::vector<std::pair<int, int>> link;
    for (const auto& t : sigma.triangles()) {
        if (std::find(t.begin(), t.end(), x0) == t.end()) {
            out.triangles.push_back({local[static_cast<std::size_t>(t[0])], local[static_cast<std::size_t>(t[1])],
                                     local[static_cast<std::size_t>(t[2])]});
            continue;
        }
        std::vector<int> rest;
        for (int v : t)
            if (v != x0) rest.push_back(v);
        link.emplace_back(rest[0], rest[1]);
    }
    std::vector<int> cycle{link[0].first, link[0].second};
    std::vector<bool> used(link.size(), false);
    used[0] = true;
    while (cycle.size() < link.size()) {
        bool grown = false;
        for (std::size_t e = 0; e < link.size() && !grown; ++e) {
            if (used[e]) continue;
            auto [u, v] = link[e];
            if (u == cycle.back() || v == cycle.back()) {
                cycle.push_back(u == cycle.back() ? v : u);
                used[e] = true;
                grown = true;
            }
        }
        if (!grown) fail(ErrorCode::ConstructionFailure, "vertex link is not a cycle");
    }
    // Annulus between the link and the boundary square, swept in step.
    const std::array<int, 4> square{0, 1, 3, 2};
    const std::size_t d = cycle.size();
    std::size_t a = 0, b = 0;
    while (a < d || b < 4) {
        const int la = local[static_cast<std::size_t>(cycle[a % d])];
        const int cb = square[b % 4];
        if (b == 4 || (a < d && (a + 1) * 4 <= (b + 1) * d)) {
            out.triangles.push_back({la, local[static_cast<std::size_t>(cycle[(a + 1) % d])], cb});
            ++a;
        } else {
            out.triangles.push_back({la, cb, square[(b + 1) % 4]});
            ++b;
        }
    }
    return out;
}

namespace detail {

// Surface times circle over `surface`, with the boundary square at circle
// step s given by corner(k, s) (k = local id 0..3) and interior vertices
// numbered from `first`. Returns the global id of every (local, step).
inline std::vector<std::vector<int>> add_block(layered::LayerStack& st, const PuncturedSurface& surface, int steps,
                                               const std::function<int(int, int)>& corner, int first) {
    std::vector<std::vector<int>> id(static_cast<std::size_t>(surface.vertex_count), std::vector<int>(static_cast<std::size_t>(steps)));
    for (int v = 0; v < surface.vertex_count; ++v)
        for (int k = 0; k < steps; ++k)
            id[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)] = v < 4 ? corner(v, k) : first + (v - 4) * steps + k;
    for (const auto& tri : surface.triangles) {
        const Triangle t = sorted(tri);
        for (int k = 0; k < steps; ++k) {
            const int k1 = (k + 1) % steps;
            std::array<int, 3> bot{}, top{};
            for (std::size_t r = 0; r < 3; ++r) {
                bot[r] = id[static_cast<std::size_t>(t[r])][static_cast<std::size_t>(k)];
                top[r] = id[static_cast<std::size_t>(t[r])][static_cast<std::size_t>(k1)];
            }
            st.add_prism(bot, top);
        }
    }
    return id;
}

}  // namespace detail

struct Example2Instance {
    int N = 0;
    std::shared_ptr<const Complex3> manifold;
    std::shared_ptr<const Complex3> target;
    SimplicialMap f1, f2, f3;
    Integer predicted_linking;  // Example 1 linking at the same N
};

/// Example 1 with the middle tube and a parallel of the lower core replaced by
/// genus-2-surface-times-circle blocks; f1, f2 project one block each onto
/// the genus-2 surface, f3 both, everything else going to the basepoint.
inline Example2Instance example2_build(int N, const AnosovSpec& spec = {}, int n = kFamilyLattice) {
    const auto s = detail::stack_layout(N, spec, n);
    layered::LayerStack st(n, s.levels());
    // Lower tube: strip j in [0, 1] of layer 0 -> 1 (a parallel of the core in
    // which a bounds). Middle tube: strip i in [0, 1] of the middle layer.
    detail::build_layers(
        st, s, spec, [](const layered::Vec2& x) { return x.j == 0; }, [](const layered::Vec2& x) { return x.i == 0; });
    detail::build_fillings(st, s);
    const PuncturedSurface sigma = punctured_genus_two();
    const int interior = (sigma.vertex_count - 4) * n;
    const int first1 = s.vertex_count(), first2 = first1 + interior;
    const int mid = s.middle;
    auto middle_corner = [&](int k, int step) {
        const int level = k < 2 ? mid : mid + 1;
        const int i = (k == 0 || k == 2) ? 0 : 1;
        return st.vertex(level, {i, step});
    };
    auto lower_corner = [&](int k, int step) {
        const int level = k < 2 ? 0 : 1;
        const int j = (k == 0 || k == 2) ? 0 : 1;
        return st.vertex(level, {step, j});
    };
    const auto id1 = detail::add_block(st, sigma, n, middle_corner, first1);
    const auto id2 = detail::add_block(st, sigma, n, lower_corner, first2);
    const int total = first2 + interior;

    Example2Instance out;
    out.N = N;
    out.manifold = std::make_shared<const Complex3>(detail::validated(total, st.tets()));
    out.target = std::make_shared<const Complex3>(genus_two_surface());
    auto project = [&](bool one, bool two) {
        std::vector<int> vm(static_cast<std::size_t>(total), sigma.basepoint);
        for (int v = 4; v < sigma.vertex_count; ++v)
            for (int k = 0; k < n; ++k) {
                const int image = sigma.collapse[static_cast<std::size_t>(v)];
                if (one) vm[static_cast<std::size_t>(id1[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)])] = image;
                if (two) vm[static_cast<std::size_t>(id2[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)])] = image;
            }
        SimplicialMap f = make_map(out.manifold, out.target, std::move(vm));
        const auto check = validate_map(f);
        if (!check.ok) fail(ErrorCode::ConstructionFailure, "block projection is not simplicial: " + check.diagnostic);
        return f;
    };
    out.f1 = project(true, false);
    out.f2 = project(false, true);
    out.f3 = project(true, true);
    out.predicted_linking = anosov_pairing(spec, N);
    return out;
}

}  // namespace hopfkit

#endif
