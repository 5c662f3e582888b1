#ifndef HOPFKIT_FIXTURES_HPP
#define HOPFKIT_FIXTURES_HPP

#include <array>
#include <deque>
#include <vector>

#include "hopfkit/complex.hpp"
#include "hopfkit/filling.hpp"
#include "hopfkit/maps.hpp"

// Small standard triangulations used by tests, the CLI and the example
// families.
namespace hopfkit::fixtures {

/// Boundary of the 4-simplex: a 5-vertex S^3.
inline Complex3 boundary_of_4_simplex() {
    std::vector<OrientedTetrahedron> tets;
    for (int omit = 0; omit < 5; ++omit) {
        Tetrahedron t{};
        for (int v = 0, k = 0; v < 5; ++v)
            if (v != omit) t[static_cast<std::size_t>(k++)] = v;
        tets.push_back({t, omit % 2 == 0 ? 1 : -1});
    }
    return build_complex(5, tets);
}

inline Complex3 single_tetrahedron() { return build_complex(4, {{{0, 1, 2, 3}, 1}}); }

/// Join of two triangle boundaries a = {0,1,2}, b = {3,4,5}: a 6-vertex S^3
/// with 9 tetrahedra a_i a_{i+1} b_j b_{j+1}.
inline Complex3 join_of_triangle_boundaries() {
    std::vector<OrientedTetrahedron> tets;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) tets.push_back({{i, (i + 1) % 3, 3 + j, 3 + (j + 1) % 3}, 1});
    return build_complex(6, tets);
}

/// The A-circle 0 -> 1 -> 2 -> 0 of the join sphere.
inline Chain join_a_circle(const Complex3& c) {
    Chain y(1);
    for (int i = 0; i < 3; ++i) y += oriented_simplex(c, {i, (i + 1) % 3});
    return y;
}

/// Dual curve along the B-core, through the tetrahedra {0, 1, b_j, b_j+1}.
inline DualCurve join_b_core(const Complex3& c) {
    std::vector<DualStep> loop;
    for (int j = 0; j < 3; ++j) {
        const int bj = 3 + j, bn = 3 + (j + 1) % 3;
        loop.push_back({*c.tet_index(0, 1, bj, bn), *c.triangle_index(0, 1, bj), *c.triangle_index(0, 1, bn), 1});
    }
    return DualCurve{{loop}};
}

/// Boundary of the 3-simplex as a 2-complex.
inline Complex3 tetrahedron_surface() {
    std::vector<OrientedTriangle> tris;
    for (int omit = 0; omit < 4; ++omit) {
        Triangle t{};
        for (int v = 0, k = 0; v < 4; ++v)
            if (v != omit) t[static_cast<std::size_t>(k++)] = v;
        tris.push_back({t, omit % 2 == 0 ? 1 : -1});
    }
    return build_surface(4, tris);
}

/// Vertex (i, j) of the n x n lattice torus.
inline int torus_vertex(int n, int i, int j) { return ((i % n + n) % n) * n + ((j % n + n) % n); }

/// Oriented triangles of the n x n lattice torus (n >= 3).
inline std::vector<OrientedTriangle> lattice_torus_triangles(int n) {
    std::vector<OrientedTriangle> tris;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int a = torus_vertex(n, i, j);
            tris.push_back({{a, torus_vertex(n, i + 1, j), torus_vertex(n, i + 1, j + 1)}, 1});
            tris.push_back({{a, torus_vertex(n, i, j + 1), torus_vertex(n, i + 1, j + 1)}, -1});
        }
    return tris;
}

inline Complex3 lattice_torus(int n) { return build_surface(n * n, lattice_torus_triangles(n)); }

/// Edge loop of the lattice torus in the i direction at j = 0.
inline Chain lattice_torus_loop(const Complex3& torus, int n) {
    Chain y(1);
    for (int i = 0; i < n; ++i) y += oriented_simplex(torus, {torus_vertex(n, i, 0), torus_vertex(n, i + 1, 0)});
    return y;
}

/// The three tetrahedra of the prism over the triangle (v0 < v1 < v2) with
/// bottom copies b[] and top copies t[]; oriented as sign * (prism).
inline std::vector<OrientedTetrahedron> prism(const std::array<int, 3>& b, const std::array<int, 3>& t, int sign) {
    return {{{b[0], b[1], b[2], t[2]}, sign},
            {{b[0], b[1], t[1], t[2]}, -sign},
            {{b[0], t[0], t[1], t[2]}, sign}};
}

/// Product of a closed oriented surface with a circle of `layers` levels
/// (layers >= 3). Vertex (v, k) has index k * surface_vertices + v.
inline Complex3 surface_times_circle(const Complex3& surface, int layers) {
    const int nv = surface.vertex_count();
    std::vector<OrientedTetrahedron> tets;
    for (int k = 0; k < layers; ++k) {
        const int lo = k * nv;
        const int hi = ((k + 1) % layers) * nv;
        for (std::size_t f = 0; f < surface.triangles().size(); ++f) {
            const auto& tri = surface.triangles()[f];
            auto piece = prism({lo + tri[0], lo + tri[1], lo + tri[2]}, {hi + tri[0], hi + tri[1], hi + tri[2]},
                               surface.top_sign(static_cast<int>(f)));
            tets.insert(tets.end(), piece.begin(), piece.end());
        }
    }
    return build_complex(nv * layers, tets);
}

/// S^2 x S^1 as the boundary of the 3-simplex times a 3-level circle.
inline Complex3 sphere_times_circle() { return surface_times_circle(tetrahedron_surface(), 3); }

/// Small dual loop around the edge {a, b} of a closed 3-complex, passing
/// through every tetrahedron that contains the edge.
inline DualCurve loop_around_edge(const Complex3& c, int a, int b) {
    const auto e = c.edge_index(a, b);
    if (!e) fail(ErrorCode::InvalidSimplex, "edge not in complex");
    // Triangles containing the edge, and the tetrahedra between them.
    std::vector<int> tris;
    for (int f : c.edge_cofacets()[static_cast<std::size_t>(*e)]) tris.push_back(f);
    DualCurve y;
    std::vector<DualStep> loop;
    int entry = tris.front();
    int tet = c.triangle_cofacets()[static_cast<std::size_t>(entry)][0];
    for (std::size_t k = 0; k < tris.size(); ++k) {
        int exit = -1;
        for (int f : tris)
            if (f != entry && triangle_in_tet(c.triangles()[static_cast<std::size_t>(f)], c.tetrahedra()[static_cast<std::size_t>(tet)]))
                exit = f;
        loop.push_back({tet, entry, exit, 1});
        const auto& cof = c.triangle_cofacets()[static_cast<std::size_t>(exit)];
        tet = cof[0] == tet ? cof[1] : cof[0];
        entry = exit;
    }
    y.loops.push_back(std::move(loop));
    return y;
}

/// Dual path up through the staircase prism over (b0<b1<b2) -> (t0,t1,t2).
inline std::vector<DualStep> prism_dual_path(const Complex3& c, const std::array<int, 3>& b, const std::array<int, 3>& t) {
    auto tri = [&](int x, int y, int z) { return *c.triangle_index(x, y, z); };
    auto tet = [&](int w, int x, int y, int z) { return *c.tet_index(w, x, y, z); };
    return {{tet(b[0], b[1], b[2], t[2]), tri(b[0], b[1], b[2]), tri(b[0], b[1], t[2]), 1},
            {tet(b[0], b[1], t[1], t[2]), tri(b[0], b[1], t[2]), tri(b[0], t[1], t[2]), 1},
            {tet(b[0], t[0], t[1], t[2]), tri(b[0], t[1], t[2]), tri(t[0], t[1], t[2]), 1}};
}

/// Loop around the circle factor of surface_times_circle over surface
/// triangle f.
inline DualCurve vertical_dual_loop(const Complex3& product, const Complex3& surface, int layers, int f) {
    const int nv = surface.vertex_count();
    const auto& s = surface.triangles()[static_cast<std::size_t>(f)];
    std::vector<DualStep> loop;
    for (int k = 0; k < layers; ++k) {
        const int lo = k * nv, hi = ((k + 1) % layers) * nv;
        auto part = prism_dual_path(product, {lo + s[0], lo + s[1], lo + s[2]}, {hi + s[0], hi + s[1], hi + s[2]});
        loop.insert(loop.end(), part.begin(), part.end());
    }
    DualCurve y;
    y.loops.push_back(std::move(loop));
    return y;
}

namespace detail {
// Signs making induced orientations cancel across every interior
// codimension-one face, breadth-first from the first top simplex of each
// component.
inline std::vector<int> coherent_signs(const Complex3& c) {
    const int d = c.dimension();
    const auto& bd = c.boundary(d);
    const auto& cofacets = d == 3 ? c.triangle_cofacets() : c.edge_cofacets();
    std::vector<int> sign(c.simplex_count(d), 0);
    for (std::size_t root = 0; root < sign.size(); ++root) {
        if (sign[root] != 0) continue;
        sign[root] = 1;
        std::deque<int> queue{static_cast<int>(root)};
        while (!queue.empty()) {
            const int t = queue.front();
            queue.pop_front();
            for (const auto& [f, coef] : bd.columns[static_cast<std::size_t>(t)]) {
                const auto& cof = cofacets[static_cast<std::size_t>(f)];
                if (cof.size() != 2) continue;
                const int u = cof[0] == t ? cof[1] : cof[0];
                const int want = -sign[static_cast<std::size_t>(t)] * static_cast<int>(coef * bd.at(f, u));
                if (sign[static_cast<std::size_t>(u)] == 0) {
                    sign[static_cast<std::size_t>(u)] = want;
                    queue.push_back(u);
                } else if (sign[static_cast<std::size_t>(u)] != want) {
                    fail(ErrorCode::ConstructionFailure, "complex is not orientable");
                }
            }
        }
    }
    return sign;
}
}  // namespace detail

/// Orients a pure 3-complex so that induced orientations cancel across every
/// interior triangle. Throws ConstructionFailure if it is not orientable.
inline Complex3 orient_coherently(int vertex_count, const std::vector<Tetrahedron>& tets) {
    std::vector<OrientedTetrahedron> plain;
    for (const auto& t : tets) plain.push_back({sorted(t), 1});
    const Complex3 c = build_complex(vertex_count, plain);
    const auto sign = detail::coherent_signs(c);
    std::vector<OrientedTetrahedron> oriented;
    for (std::size_t i = 0; i < sign.size(); ++i) oriented.push_back({c.tetrahedra()[i], sign[i]});
    return build_complex(vertex_count, oriented);
}

/// Surface analogue of orient_coherently.
inline Complex3 orient_surface(int vertex_count, const std::vector<Triangle>& tris) {
    std::vector<OrientedTriangle> plain;
    for (const auto& t : tris) plain.push_back({sorted(t), 1});
    const Complex3 c = build_surface(vertex_count, plain);
    const auto sign = detail::coherent_signs(c);
    std::vector<OrientedTriangle> oriented;
    for (std::size_t i = 0; i < sign.size(); ++i) oriented.push_back({c.triangles()[i], sign[i]});
    return build_surface(vertex_count, oriented);
}

/// Suspension of an n-gon: poles 0 and 1, equator vertices 2 + k.
inline Complex3 suspended_polygon(int n) {
    std::vector<OrientedTriangle> tris;
    for (int k = 0; k < n; ++k) {
        const int c0 = 2 + k, c1 = 2 + (k + 1) % n;
        tris.push_back({{0, c0, c1}, 1});
        tris.push_back({{1, c0, c1}, -1});
    }
    return build_surface(n + 2, tris);
}

/// S^3 as two solid tori glued along the n x n lattice torus. Vertex
/// (i, j) of the torus is i * n + j; the core of the solid torus in which the
/// j-circles bound is a_i = n*n + i, the other core is b_j = n*n + n + j.
inline Complex3 solid_torus_sphere(int n) {
    auto p = [n](int i, int j) { return torus_vertex(n, i, j); };
    const int a0 = n * n, b0 = n * n + n;
    std::vector<Tetrahedron> tets;
    auto add_prism = [&](const std::array<int, 3>& b, const std::array<int, 3>& t) {
        tets.push_back({b[0], b[1], b[2], t[2]});
        tets.push_back({b[0], b[1], t[1], t[2]});
        tets.push_back({b[0], t[0], t[1], t[2]});
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            add_prism({a0 + i, p(i, j), p(i, j + 1)}, {a0 + (i + 1) % n, p(i + 1, j), p(i + 1, j + 1)});
            add_prism({b0 + j, p(i, j), p(i + 1, j)}, {b0 + (j + 1) % n, p(i, j + 1), p(i + 1, j + 1)});
        }
    return orient_coherently(n * n + 2 * n, tets);
}

/// Simplicial Hopf map from solid_torus_sphere(n) onto suspended_polygon(n):
/// cores go to the poles, torus vertex (i, j) to equator vertex (i - j) mod n.
inline SimplicialMap hopf_map(int n = 4) {
    std::vector<int> vm(static_cast<std::size_t>(n * n + 2 * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) vm[static_cast<std::size_t>(torus_vertex(n, i, j))] = 2 + ((i - j) % n + n) % n;
    for (int i = 0; i < n; ++i) {
        vm[static_cast<std::size_t>(n * n + i)] = 0;
        vm[static_cast<std::size_t>(n * n + n + i)] = 1;
    }
    return make_map(solid_torus_sphere(n), suspended_polygon(n), vm);
}

}  // namespace hopfkit::fixtures

#endif
