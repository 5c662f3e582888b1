#ifndef HOPFKIT_LAYERED_TORUS_HPP
#define HOPFKIT_LAYERED_TORUS_HPP

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "hopfkit/complex.hpp"
#include "hopfkit/errors.hpp"
#include "hopfkit/families.hpp"

// Stacks of simplicial T^2 x I layers over the lattice torus (Z/n)^2.
// Lattice coordinates are (i, j); the homology basis is a = (0, 1), b = (1, 0).
namespace hopfkit::layered {

struct Vec2 {
    long i = 0;
    long j = 0;
    Vec2 operator+(const Vec2& o) const { return {i + o.i, j + o.j}; }
    Vec2 operator-(const Vec2& o) const { return {i - o.i, j - o.j}; }
    Vec2 operator-() const { return {-i, -j}; }
    friend auto operator<=>(const Vec2&, const Vec2&) = default;
};

/// Integer 2x2 matrix acting on lattice coordinates, row-major.
struct Mat2 {
    std::array<long, 4> m{1, 0, 0, 1};
    Vec2 operator()(const Vec2& v) const { return {m[0] * v.i + m[1] * v.j, m[2] * v.i + m[3] * v.j}; }
};

/// Lattice matrix of Psi: v = i b + j a goes to i Psi(b) + j Psi(a).
inline Mat2 lattice_matrix(const AnosovSpec& s) { return {{s.m[3], s.m[2], s.m[1], s.m[0]}}; }

inline Mat2 inverse(const Mat2& a) {
    const long d = a.m[0] * a.m[3] - a.m[1] * a.m[2];
    return {{d * a.m[3], -d * a.m[1], -d * a.m[2], d * a.m[0]}};
}

/// Edge directions of a lattice triangulation, up to sign.
using Triple = std::array<Vec2, 3>;

inline Vec2 normalized(Vec2 v) { return (v.i < 0 || (v.i == 0 && v.j < 0)) ? -v : v; }

inline Triple normalized(Triple t) {
    for (auto& v : t) v = normalized(v);
    std::sort(t.begin(), t.end());
    return t;
}

inline Triple standard_triple() { return normalized(Triple{Vec2{1, 0}, Vec2{0, 1}, Vec2{1, 1}}); }

/// The triple after flipping its k-th direction (Farey neighbour).
inline Triple flip_triple(const Triple& t, int k) {
    const Vec2 w = t[static_cast<std::size_t>(k)];
    const Vec2 u = t[static_cast<std::size_t>((k + 1) % 3)], v = t[static_cast<std::size_t>((k + 2) % 3)];
    Triple out = t;
    out[static_cast<std::size_t>(k)] = normalized(w) == normalized(u + v) ? u - v : u + v;
    return normalized(out);
}

/// Directions flipped, in order, to go from the standard triangulation to
/// the one with directions `target` (breadth-first in the Farey graph).
inline std::vector<Vec2> flip_path(const Triple& target, int max_depth = 24) {
    const Triple start = standard_triple(), goal = normalized(target);
    std::map<Triple, std::pair<Triple, Vec2>> parent;
    std::map<Triple, int> depth{{start, 0}};
    std::queue<Triple> queue;
    queue.push(start);
    while (!queue.empty() && !depth.count(goal)) {
        const Triple t = queue.front();
        queue.pop();
        if (depth[t] >= max_depth) continue;
        for (int k = 0; k < 3; ++k) {
            const Triple nt = flip_triple(t, k);
            if (depth.count(nt)) continue;
            depth[nt] = depth[t] + 1;
            parent[nt] = {t, t[static_cast<std::size_t>(k)]};
            queue.push(nt);
        }
    }
    if (!depth.count(goal)) fail(ErrorCode::ConstructionFailure, "no flip path within depth limit");
    std::vector<Vec2> path;
    for (Triple t = goal; t != start; t = parent[t].first) path.push_back(parent[t].second);
    std::reverse(path.begin(), path.end());
    return path;
}

inline Triple image_of_standard(const Mat2& a) {
    return normalized(Triple{a(Vec2{1, 0}), a(Vec2{0, 1}), a(Vec2{1, 1})});
}

/// Ordered basis (p, q): triangles (x, x+p, x+p+q) and (x, x+q, x+p+q), with
/// the listed vertex order fixing every staircase.
struct Basis {
    Vec2 p{1, 0};
    Vec2 q{0, 1};
};

/// Tetrahedra of a stack of torus layers plus whatever is attached to it.
class LayerStack {
public:
    LayerStack(int n, int levels) : n_(n), levels_(levels) {
        if (n < 3) fail(ErrorCode::InvalidParams, "lattice size must be at least 3");
    }

    int n() const { return n_; }
    int levels() const { return levels_; }
    int lattice_vertices() const { return levels_ * n_ * n_; }

    int vertex(int level, const Vec2& x) const {
        const long i = ((x.i % n_) + n_) % n_, j = ((x.j % n_) + n_) % n_;
        return level * n_ * n_ + static_cast<int>(i) * n_ + static_cast<int>(j);
    }

    std::vector<Tetrahedron>& tets() { return tets_; }

    /// Staircase prism between two ordered triangles.
    void add_prism(const std::array<int, 3>& b, const std::array<int, 3>& t) {
        tets_.push_back({b[0], b[1], b[2], t[2]});
        tets_.push_back({b[0], b[1], t[1], t[2]});
        tets_.push_back({b[0], t[0], t[1], t[2]});
    }

    /// Prism layer from `level` to level + 1 with top vertex x over bottom
    /// vertex x, or over `relabel(x)` when given. Triangles at base point x
    /// for which `skip(x)` holds are left out.
    void prism_layer(int level, const Basis& basis, const std::optional<Mat2>& relabel = std::nullopt,
                     const std::function<bool(const Vec2&)>& skip = {}) {
        for (long i = 0; i < n_; ++i)
            for (long j = 0; j < n_; ++j) {
                const Vec2 x{i, j};
                if (skip && skip(x)) continue;
                for (const Vec2& mid : {x + basis.p, x + basis.q}) {
                    const std::array<Vec2, 3> pts{x, mid, x + basis.p + basis.q};
                    std::array<int, 3> b{}, t{};
                    for (std::size_t k = 0; k < 3; ++k) {
                        b[k] = vertex(level, pts[k]);
                        t[k] = vertex(level + 1, relabel ? (*relabel)(pts[k]) : pts[k]);
                    }
                    add_prism(b, t);
                }
            }
    }

    /// Flips every edge of direction w at `level`; returns the new basis.
    Basis flip_layer(int level, const Basis& basis, const Vec2& w) {
        Vec2 u, v;
        const Vec2 nw = normalized(w);
        if (nw == normalized(basis.p + basis.q)) {
            u = basis.p;
            v = basis.q;
        } else if (nw == normalized(basis.p)) {
            u = basis.p + basis.q;
            v = -basis.q;
        } else if (nw == normalized(basis.q)) {
            u = basis.p + basis.q;
            v = -basis.p;
        } else {
            fail(ErrorCode::ConstructionFailure, "flip direction is not an edge direction");
        }
        for (long i = 0; i < n_; ++i)
            for (long j = 0; j < n_; ++j) {
                const Vec2 x{i, j};
                tets_.push_back({vertex(level, x), vertex(level, x + u), vertex(level, x + v), vertex(level, x + u + v)});
            }
        return {u, v - u};
    }

private:
    int n_;
    int levels_;
    std::vector<Tetrahedron> tets_;
};

}  // namespace hopfkit::layered

#endif
