#ifndef HOPFKIT_COMPLEX_HPP
#define HOPFKIT_COMPLEX_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hopfkit/errors.hpp"
#include "hopfkit/rational.hpp"

namespace hopfkit {

using Edge = std::array<int, 2>;
using Triangle = std::array<int, 3>;
using Tetrahedron = std::array<int, 4>;

// Parity of the permutation that sorts `v` (+1 even, -1 odd). Entries must be distinct.
template <std::size_t K>
int sorting_parity(const std::array<int, K>& v) {
    int inversions = 0;
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = i + 1; j < K; ++j)
            if (v[i] > v[j]) ++inversions;
    return (inversions % 2 == 0) ? 1 : -1;
}

template <std::size_t K>
std::array<int, K> sorted(std::array<int, K> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Drop entry `i` of a sorted simplex.
template <std::size_t K>
std::array<int, K - 1> face_omitting(const std::array<int, K>& s, std::size_t i) {
    std::array<int, K - 1> f{};
    for (std::size_t j = 0, k = 0; j < K; ++j)
        if (j != i) f[k++] = s[j];
    return f;
}

/// Column-major sparse integer matrix. Each column holds (row, value) pairs
/// sorted by row with no zero values.
struct SparseIntMatrix {
    using Entry = std::pair<int, long>;

    int rows = 0;
    int cols = 0;
    std::vector<std::vector<Entry>> columns;

    SparseIntMatrix() = default;
    SparseIntMatrix(int r, int c) : rows(r), cols(c), columns(static_cast<std::size_t>(c)) {}

    long at(int r, int c) const {
        for (const auto& [row, value] : columns[static_cast<std::size_t>(c)])
            if (row == r) return value;
        return 0;
    }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& col : columns) n += col.size();
        return n;
    }

    std::vector<std::vector<long>> to_dense() const {
        std::vector<std::vector<long>> d(static_cast<std::size_t>(rows),
                                         std::vector<long>(static_cast<std::size_t>(cols), 0));
        for (int c = 0; c < cols; ++c)
            for (const auto& [r, v] : columns[static_cast<std::size_t>(c)])
                d[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
        return d;
    }

    SparseIntMatrix transposed() const {
        SparseIntMatrix t(cols, rows);
        for (int c = 0; c < cols; ++c)
            for (const auto& [r, v] : columns[static_cast<std::size_t>(c)])
                t.columns[static_cast<std::size_t>(r)].push_back({c, v});
        return t;
    }

    SparseIntMatrix select_columns(const std::vector<int>& which) const {
        SparseIntMatrix s(rows, static_cast<int>(which.size()));
        for (std::size_t k = 0; k < which.size(); ++k)
            s.columns[k] = columns[static_cast<std::size_t>(which[k])];
        return s;
    }
};

/// Sparse formal sum of oriented simplices of one dimension with exact
/// rational coefficients. Zero coefficients are never stored.
class Chain {
public:
    Chain() = default;
    explicit Chain(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    const std::map<int, Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    std::size_t support_size() const { return coeffs_.size(); }

    Rational coeff(int simplex) const {
        auto it = coeffs_.find(simplex);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    void add(int simplex, const Rational& value) {
        if (value == 0) return;
        auto [it, inserted] = coeffs_.try_emplace(simplex, value);
        if (!inserted) {
            it->second += value;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    void set(int simplex, const Rational& value) {
        if (value == 0)
            coeffs_.erase(simplex);
        else
            coeffs_[simplex] = value;
    }

    Rational norm_l1() const {
        Rational total = 0;
        for (const auto& [_, c] : coeffs_) total += abs_value(c);
        return total;
    }

    bool is_integral() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(),
                           [](const auto& kv) { return kv.second.get_den() == 1; });
    }

    Chain operator-() const {
        Chain out(dim_);
        for (const auto& [s, c] : coeffs_) out.coeffs_.emplace(s, -c);
        return out;
    }

    Chain& operator+=(const Chain& other) {
        for (const auto& [s, c] : other.coeffs_) add(s, c);
        return *this;
    }

    Chain& operator-=(const Chain& other) {
        for (const auto& [s, c] : other.coeffs_) add(s, -c);
        return *this;
    }

    Chain& operator*=(const Rational& k) {
        if (k == 0) {
            coeffs_.clear();
            return *this;
        }
        for (auto& [_, c] : coeffs_) c *= k;
        return *this;
    }

    friend Chain operator+(Chain a, const Chain& b) { return a += b; }
    friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
    friend Chain operator*(const Rational& k, Chain a) { return a *= k; }

    friend bool operator==(const Chain& a, const Chain& b) {
        return a.dim_ == b.dim_ && a.coeffs_ == b.coeffs_;
    }

    std::vector<Rational> to_dense(std::size_t size) const {
        std::vector<Rational> v(size);
        for (const auto& [s, c] : coeffs_) v[static_cast<std::size_t>(s)] = c;
        return v;
    }

    static Chain from_dense(int dim, const std::vector<Rational>& v) {
        Chain out(dim);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) out.coeffs_.emplace(static_cast<int>(i), v[i]);
        return out;
    }

private:
    int dim_ = 0;
    std::map<int, Rational> coeffs_;
};

struct OrientedTetrahedron {
    Tetrahedron vertices;
    int sign = 1;  // orientation relative to the listed vertex order
};

struct OrientedTriangle {
    Triangle vertices;
    int sign = 1;
};

struct ValidationResult {
    bool ok = true;
    std::vector<int> offending;  // triangle (3-complex) or edge (2-complex) indices
    std::string diagnostic;
};

/// Oriented simplicial complex of dimension <= 3.
///
/// Simplices of each dimension are indexed lexicographically on their sorted
/// vertex tuples; the sorted order is the canonical orientation. Top-dimensional
/// simplices additionally carry a sign converting canonical to the complex's
/// orientation. Immutable after construction.
class Complex3 {
public:
    Complex3() = default;

    int vertex_count() const { return vertex_count_; }
    /// 3 if there are tetrahedra, 2 for a pure triangle complex, -1 if empty.
    int dimension() const {
        if (!tets_.empty()) return 3;
        if (!triangles_.empty()) return 2;
        if (!edges_.empty()) return 1;
        return vertex_count_ > 0 ? 0 : -1;
    }

    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    const std::vector<Tetrahedron>& tetrahedra() const { return tets_; }

    std::size_t simplex_count(int k) const {
        switch (k) {
            case 0: return static_cast<std::size_t>(vertex_count_);
            case 1: return edges_.size();
            case 2: return triangles_.size();
            case 3: return tets_.size();
            default: return 0;
        }
    }

    /// Total number of simplices of all dimensions.
    std::size_t total_simplices() const {
        return simplex_count(0) + simplex_count(1) + simplex_count(2) + simplex_count(3);
    }

    /// Orientation sign of a top-dimensional simplex.
    int top_sign(int index) const { return top_signs_[static_cast<std::size_t>(index)]; }
    const std::vector<int>& top_signs() const { return top_signs_; }

    std::optional<int> edge_index(int a, int b) const { return find(edges_, sorted(Edge{a, b})); }
    std::optional<int> triangle_index(int a, int b, int c) const {
        return find(triangles_, sorted(Triangle{a, b, c}));
    }
    std::optional<int> tet_index(int a, int b, int c, int d) const {
        return find(tets_, sorted(Tetrahedron{a, b, c, d}));
    }
    std::optional<int> simplex_index(const std::vector<int>& vertices) const {
        std::vector<int> v = vertices;
        std::sort(v.begin(), v.end());
        switch (v.size()) {
            case 1: return (v[0] >= 0 && v[0] < vertex_count_) ? std::optional<int>(v[0]) : std::nullopt;
            case 2: return find(edges_, Edge{v[0], v[1]});
            case 3: return find(triangles_, Triangle{v[0], v[1], v[2]});
            case 4: return find(tets_, Tetrahedron{v[0], v[1], v[2], v[3]});
            default: return std::nullopt;
        }
    }

    /// Tetrahedra containing each triangle.
    const std::vector<std::vector<int>>& triangle_cofacets() const { return tri_cofacets_; }
    /// Triangles containing each edge.
    const std::vector<std::vector<int>>& edge_cofacets() const { return edge_cofacets_; }

    /// B_k maps k-chains to (k-1)-chains; k in {1, 2, 3}.
    const SparseIntMatrix& boundary(int k) const {
        if (k < 1 || k > 3) fail(ErrorCode::BadDimension, "boundary matrix index must be 1, 2 or 3");
        return boundary_[static_cast<std::size_t>(k - 1)];
    }

    /// Signed sum of top simplices.
    Chain fundamental_chain() const {
        const int d = dimension();
        Chain c(std::max(d, 0));
        if (d < 2) return c;
        for (std::size_t i = 0; i < top_signs_.size(); ++i) c.add(static_cast<int>(i), top_signs_[i]);
        return c;
    }

    /// Same complex with every top orientation reversed.
    Complex3 reversed() const {
        Complex3 r = *this;
        for (auto& s : r.top_signs_) s = -s;
        return r;
    }

    friend bool operator==(const Complex3& a, const Complex3& b) {
        return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_ &&
               a.triangles_ == b.triangles_ && a.tets_ == b.tets_ && a.top_signs_ == b.top_signs_;
    }

    friend Complex3 build_complex(int vertex_count, const std::vector<OrientedTetrahedron>& tetrahedra);
    friend Complex3 build_surface(int vertex_count, const std::vector<OrientedTriangle>& triangles);

private:
    template <class T>
    static std::optional<int> find(const std::vector<T>& table, const T& key) {
        auto it = std::lower_bound(table.begin(), table.end(), key);
        if (it == table.end() || *it != key) return std::nullopt;
        return static_cast<int>(it - table.begin());
    }

    void derive_tables() {
        // Edges and triangles from the top simplices.
        std::vector<Triangle> tris = triangles_;
        for (const auto& t : tets_)
            for (std::size_t i = 0; i < 4; ++i) tris.push_back(face_omitting(t, i));
        std::sort(tris.begin(), tris.end());
        tris.erase(std::unique(tris.begin(), tris.end()), tris.end());
        triangles_ = std::move(tris);

        std::vector<Edge> eds;
        for (const auto& t : triangles_)
            for (std::size_t i = 0; i < 3; ++i) eds.push_back(face_omitting(t, i));
        std::sort(eds.begin(), eds.end());
        eds.erase(std::unique(eds.begin(), eds.end()), eds.end());
        edges_ = std::move(eds);

        auto& b1 = boundary_[0];
        b1 = SparseIntMatrix(vertex_count_, static_cast<int>(edges_.size()));
        for (std::size_t e = 0; e < edges_.size(); ++e)
            b1.columns[e] = {{edges_[e][0], -1}, {edges_[e][1], 1}};

        auto& b2 = boundary_[1];
        b2 = SparseIntMatrix(static_cast<int>(edges_.size()), static_cast<int>(triangles_.size()));
        edge_cofacets_.assign(edges_.size(), {});
        for (std::size_t f = 0; f < triangles_.size(); ++f) {
            for (std::size_t i = 0; i < 3; ++i) {
                const int e = *find(edges_, face_omitting(triangles_[f], i));
                b2.columns[f].push_back({e, (i % 2 == 0) ? 1 : -1});
                edge_cofacets_[static_cast<std::size_t>(e)].push_back(static_cast<int>(f));
            }
            std::sort(b2.columns[f].begin(), b2.columns[f].end());
        }

        auto& b3 = boundary_[2];
        b3 = SparseIntMatrix(static_cast<int>(triangles_.size()), static_cast<int>(tets_.size()));
        tri_cofacets_.assign(triangles_.size(), {});
        for (std::size_t t = 0; t < tets_.size(); ++t) {
            for (std::size_t i = 0; i < 4; ++i) {
                const int f = *find(triangles_, face_omitting(tets_[t], i));
                b3.columns[t].push_back({f, (i % 2 == 0) ? 1 : -1});
                tri_cofacets_[static_cast<std::size_t>(f)].push_back(static_cast<int>(t));
            }
            std::sort(b3.columns[t].begin(), b3.columns[t].end());
        }
    }

    int vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<Triangle> triangles_;
    std::vector<Tetrahedron> tets_;
    std::vector<int> top_signs_;
    std::vector<std::vector<int>> tri_cofacets_;
    std::vector<std::vector<int>> edge_cofacets_;
    std::array<SparseIntMatrix, 3> boundary_;
};

namespace detail {
template <std::size_t K>
void check_simplex(const std::array<int, K>& v, int vertex_count) {
    for (std::size_t i = 0; i < K; ++i) {
        if (v[i] < 0 || v[i] >= vertex_count) {
            std::ostringstream os;
            os << "vertex " << v[i] << " out of range [0," << vertex_count << ")";
            fail(ErrorCode::InvalidSimplex, os.str());
        }
        for (std::size_t j = i + 1; j < K; ++j)
            if (v[i] == v[j]) fail(ErrorCode::InvalidSimplex, "repeated vertex " + std::to_string(v[i]));
    }
}
}  // namespace detail

/// Build a 3-complex from oriented tetrahedra. The sign of each input is
/// relative to its listed vertex order.
inline Complex3 build_complex(int vertex_count, const std::vector<OrientedTetrahedron>& tetrahedra) {
    if (vertex_count < 0) fail(ErrorCode::InvalidSimplex, "negative vertex count");
    Complex3 c;
    c.vertex_count_ = vertex_count;
    std::vector<std::pair<Tetrahedron, int>> items;
    items.reserve(tetrahedra.size());
    for (const auto& t : tetrahedra) {
        detail::check_simplex(t.vertices, vertex_count);
        if (t.sign != 1 && t.sign != -1) fail(ErrorCode::InvalidSimplex, "orientation sign must be +1 or -1");
        items.push_back({sorted(t.vertices), t.sign * sorting_parity(t.vertices)});
    }
    std::sort(items.begin(), items.end());
    for (std::size_t i = 1; i < items.size(); ++i)
        if (items[i].first == items[i - 1].first) {
            const auto& v = items[i].first;
            std::ostringstream os;
            os << "tetrahedron {" << v[0] << "," << v[1] << "," << v[2] << "," << v[3] << "} listed twice";
            fail(ErrorCode::DuplicateTetrahedron, os.str());
        }
    for (const auto& [t, s] : items) {
        c.tets_.push_back(t);
        c.top_signs_.push_back(s);
    }
    c.derive_tables();
    return c;
}

/// Build a pure 2-complex (surface) from oriented triangles.
inline Complex3 build_surface(int vertex_count, const std::vector<OrientedTriangle>& triangles) {
    if (vertex_count < 0) fail(ErrorCode::InvalidSimplex, "negative vertex count");
    Complex3 c;
    c.vertex_count_ = vertex_count;
    std::vector<std::pair<Triangle, int>> items;
    for (const auto& t : triangles) {
        detail::check_simplex(t.vertices, vertex_count);
        if (t.sign != 1 && t.sign != -1) fail(ErrorCode::InvalidSimplex, "orientation sign must be +1 or -1");
        items.push_back({sorted(t.vertices), t.sign * sorting_parity(t.vertices)});
    }
    std::sort(items.begin(), items.end());
    for (std::size_t i = 1; i < items.size(); ++i)
        if (items[i].first == items[i - 1].first)
            fail(ErrorCode::InvalidSimplex, "triangle listed twice");
    for (const auto& [t, s] : items) {
        c.triangles_.push_back(t);
        c.top_signs_.push_back(s);
    }
    c.derive_tables();
    return c;
}

/// Pseudo-manifold check: every codimension-1 face has exactly two cofacets
/// whose induced orientations cancel.
inline ValidationResult validate_closed_oriented(const Complex3& c) {
    ValidationResult result;
    const int d = c.dimension();
    if (d != 3 && d != 2) {
        result.ok = false;
        result.diagnostic = "complex has no top simplices of dimension 2 or 3";
        return result;
    }
    const auto& cofacets = (d == 3) ? c.triangle_cofacets() : c.edge_cofacets();
    const auto& bd = c.boundary(d);
    std::ostringstream diag;
    for (std::size_t f = 0; f < cofacets.size(); ++f) {
        const auto& cof = cofacets[f];
        long induced = 0;
        for (int top : cof) induced += c.top_sign(top) * bd.at(static_cast<int>(f), top);
        if (cof.size() != 2 || induced != 0) {
            result.ok = false;
            result.offending.push_back(static_cast<int>(f));
            diag << (d == 3 ? "triangle " : "edge ") << f << ": " << cof.size() << " cofacets";
            if (cof.size() == 2) diag << ", orientations do not cancel";
            diag << "; ";
        }
    }
    result.diagnostic = result.ok ? "closed oriented pseudo-manifold" : diag.str();
    return result;
}

inline const SparseIntMatrix& boundary_matrix(const Complex3& c, int k) { return c.boundary(k); }

inline Chain boundary_of(const Chain& chain, const Complex3& c) {
    if (chain.dim() < 1 || chain.dim() > 3)
        fail(ErrorCode::BadDimension, "boundary_of needs a chain of dimension 1, 2 or 3");
    const auto& bd = c.boundary(chain.dim());
    Chain out(chain.dim() - 1);
    for (const auto& [s, coef] : chain.coeffs()) {
        if (s < 0 || s >= bd.cols) fail(ErrorCode::BadDimension, "simplex index out of range");
        for (const auto& [r, v] : bd.columns[static_cast<std::size_t>(s)]) out.add(r, coef * v);
    }
    return out;
}

/// Signed chain of the oriented simplex given by an ordered vertex list.
inline Chain oriented_simplex(const Complex3& c, const std::vector<int>& vertices) {
    const auto idx = c.simplex_index(vertices);
    if (!idx) fail(ErrorCode::InvalidSimplex, "simplex not in complex");
    int parity = 1;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (vertices[i] > vertices[j]) parity = -parity;
    Chain out(static_cast<int>(vertices.size()) - 1);
    out.add(*idx, parity);
    return out;
}

}  // namespace hopfkit

#endif
