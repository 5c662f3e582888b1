#ifndef HOPFKIT_FILLING_HPP
#define HOPFKIT_FILLING_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "hopfkit/complex.hpp"
#include "hopfkit/errors.hpp"
#include "hopfkit/homology.hpp"
#include "hopfkit/lp.hpp"
#include "hopfkit/rational.hpp"
#include "hopfkit/sparse_solver.hpp"

namespace hopfkit {

/// One crossing of a tetrahedron: the curve enters through `entry`, leaves
/// through `exit`. `sign` orients the whole step; (t, e, x, s) and
/// (t, x, e, -s) describe the same oriented segment.
struct DualStep {
    int tet = 0;
    int entry = 0;
    int exit = 0;
    int sign = 1;
    friend bool operator==(const DualStep&, const DualStep&) = default;
};

/// Closed curve transverse to the 2-skeleton, as cyclic step sequences.
struct DualCurve {
    std::vector<std::vector<DualStep>> loops;

    std::size_t step_count() const {
        std::size_t n = 0;
        for (const auto& l : loops) n += l.size();
        return n;
    }
    bool empty() const { return step_count() == 0; }

    /// Same curve traversed backwards.
    DualCurve reversed() const {
        DualCurve r;
        for (const auto& loop : loops) {
            std::vector<DualStep> back;
            for (auto it = loop.rbegin(); it != loop.rend(); ++it) back.push_back({it->tet, it->exit, it->entry, it->sign});
            r.loops.push_back(std::move(back));
        }
        return r;
    }
};

inline bool triangle_in_tet(const Triangle& f, const Tetrahedron& t) {
    return std::includes(t.begin(), t.end(), f.begin(), f.end());
}

/// Throws InvalidDualCurve when the chaining or incidence invariants fail.
inline void validate_dual_curve(const DualCurve& y, const Complex3& c) {
    const int nt = static_cast<int>(c.simplex_count(3));
    const int nf = static_cast<int>(c.simplex_count(2));
    for (std::size_t l = 0; l < y.loops.size(); ++l) {
        const auto& loop = y.loops[l];
        const std::string where = "loop " + std::to_string(l);
        for (std::size_t k = 0; k < loop.size(); ++k) {
            const auto& s = loop[k];
            const std::string at = where + " step " + std::to_string(k);
            if (s.tet < 0 || s.tet >= nt || s.entry < 0 || s.entry >= nf || s.exit < 0 || s.exit >= nf)
                fail(ErrorCode::InvalidDualCurve, at + ": index out of range");
            if (s.sign != 1 && s.sign != -1) fail(ErrorCode::InvalidDualCurve, at + ": sign must be +1 or -1");
            if (s.entry == s.exit) fail(ErrorCode::InvalidDualCurve, at + ": entry equals exit");
            const auto& tet = c.tetrahedra()[static_cast<std::size_t>(s.tet)];
            if (!triangle_in_tet(c.triangles()[static_cast<std::size_t>(s.entry)], tet) ||
                !triangle_in_tet(c.triangles()[static_cast<std::size_t>(s.exit)], tet))
                fail(ErrorCode::InvalidDualCurve, at + ": triangle is not a face of the tetrahedron");
            const auto& next = loop[(k + 1) % loop.size()];
            if (s.exit != next.entry) fail(ErrorCode::InvalidDualCurve, at + ": exit does not match next entry");
            if (s.sign != next.sign) fail(ErrorCode::InvalidDualCurve, at + ": sign changes along the loop");
        }
    }
}

/// Rule choosing the vertex v(F) of a crossed triangle.
enum class VertexRule { Smallest, Largest, Middle };

inline int choose_vertex(const Triangle& f, VertexRule rule) {
    switch (rule) {
        case VertexRule::Smallest: return f[0];
        case VertexRule::Middle: return f[1];
        case VertexRule::Largest: return f[2];
    }
    return f[0];
}

/// Pushes a dual curve to an integral edge cycle through one chosen vertex
/// per crossed triangle.
inline Chain deform_to_skeleton(const DualCurve& y, const Complex3& c, VertexRule rule = VertexRule::Smallest) {
    validate_dual_curve(y, c);
    Chain out(1);
    for (const auto& loop : y.loops) {
        for (std::size_t k = 0; k < loop.size(); ++k) {
            const auto& s = loop[k];
            const int from = choose_vertex(c.triangles()[static_cast<std::size_t>(s.entry)], rule);
            const int to = choose_vertex(c.triangles()[static_cast<std::size_t>(s.exit)], rule);
            if (from == to) continue;
            Chain e = oriented_simplex(c, {from, to});
            e *= Rational(s.sign);
            out += e;
        }
    }
    return out;
}

namespace detail {
inline void require_cycle(const Chain& y, const Complex3& c) {
    if (y.dim() != 1) fail(ErrorCode::BadDimension, "expected a 1-chain");
    if (!boundary_of(y, c).is_zero()) fail(ErrorCode::NotACycle, "boundary of y is nonzero");
}

inline void verify_filling(const Chain& z, const Chain& y, const Complex3& c) {
    if (!(boundary_of(z, c) == y)) fail(ErrorCode::InconsistencyDetected, "filling does not reproduce the cycle");
}
}  // namespace detail

/// Some exact rational 2-chain z with boundary y.
inline Chain fill_cycle_any(const Chain& y, const Complex3& c) {
    detail::require_cycle(y, c);
    if (y.is_zero()) return Chain(2);
    SparseRationalSolver solver(c.boundary(2));
    auto x = solver.solve(y.to_dense(c.simplex_count(1)));
    if (!x) fail(ErrorCode::NotNullHomologous, "cycle does not bound over the rationals");
    Chain z = Chain::from_dense(2, *x);
    detail::verify_filling(z, y, c);
    return z;
}

enum class FillMethod { Auto, Simplex, Network };

struct MinFilling {
    Chain z;
    Rational norm;
    FillMethod method = FillMethod::Auto;
};

/// Largest dense simplex tableau (rows x columns) attempted.
inline constexpr std::size_t kMaxSimplexEntries = 4'000'000;

namespace detail {

inline MinFilling min_fill_simplex(const Chain& y, const Complex3& c) {
    const auto& b2 = c.boundary(2);
    const std::size_t m = static_cast<std::size_t>(b2.rows);
    const std::size_t f = static_cast<std::size_t>(b2.cols);
    if (m * (2 * f + m) > kMaxSimplexEntries)
        fail(ErrorCode::TooLarge, "complex too large for the dense simplex route");
    QMatrix a(m, std::vector<Rational>(2 * f));
    for (std::size_t j = 0; j < f; ++j)
        for (const auto& [r, v] : b2.columns[j]) {
            a[static_cast<std::size_t>(r)][j] = v;
            a[static_cast<std::size_t>(r)][f + j] = -v;
        }
    const std::vector<Rational> cost(2 * f, Rational(1));
    auto sol = solve_lp(a, y.to_dense(m), cost);
    if (!sol) fail(ErrorCode::NotNullHomologous, "cycle does not bound over the rationals");
    Chain z(2);
    for (std::size_t j = 0; j < f; ++j) z.add(static_cast<int>(j), sol->x[j] - sol->x[f + j]);
    return {z, sol->objective, FillMethod::Simplex};
}

// Closed oriented 3-complexes with b2 = 0: every filling is z0 + B3 w, and
// minimizing |z|_1 over w is the dual of a unit-capacity circulation on the
// tetrahedron adjacency graph.
inline MinFilling min_fill_network(const Chain& y, const Complex3& c) {
    const Chain z0 = fill_cycle_any(y, c);
    const auto& b3 = c.boundary(3);
    const auto& cof = c.triangle_cofacets();
    std::vector<UnitArc> arcs;
    std::vector<int> eps;
    for (std::size_t f = 0; f < cof.size(); ++f) {
        const int t1 = cof[f][0], t2 = cof[f][1];
        const int e = static_cast<int>(b3.at(static_cast<int>(f), t1)) * c.top_sign(t1);
        eps.push_back(e);
        arcs.push_back({t1, t2, Rational(e) * z0.coeff(static_cast<int>(f))});
    }
    const auto circ = max_gain_circulation(static_cast<int>(c.simplex_count(3)), arcs);
    Chain z(2);
    for (std::size_t f = 0; f < arcs.size(); ++f) {
        const Rational v = arcs[f].gain + circ.potential[static_cast<std::size_t>(arcs[f].tail)] -
                           circ.potential[static_cast<std::size_t>(arcs[f].head)];
        z.add(static_cast<int>(f), Rational(eps[f]) * v);
    }
    if (z.norm_l1() != circ.value) fail(ErrorCode::InconsistencyDetected, "network filling norm mismatch");
    return {z, circ.value, FillMethod::Network};
}

}  // namespace detail

inline bool network_route_applies(const Complex3& c) {
    return c.dimension() == 3 && validate_closed_oriented(c).ok && h2_basis(c).empty();
}

/// A 2-chain of least L1 norm with boundary y, with exact optimality
/// certificate (simplex duality or circulation duality).
inline MinFilling fill_cycle_min_l1(const Chain& y, const Complex3& c, FillMethod method = FillMethod::Auto) {
    detail::require_cycle(y, c);
    if (y.is_zero()) return {Chain(2), Rational(0), method};
    if (method == FillMethod::Auto) method = network_route_applies(c) ? FillMethod::Network : FillMethod::Simplex;
    if (method == FillMethod::Network && !network_route_applies(c))
        fail(ErrorCode::NotClosedOriented, "network route needs a closed oriented 3-complex with b2 = 0");
    MinFilling out = method == FillMethod::Network ? detail::min_fill_network(y, c) : detail::min_fill_simplex(y, c);
    detail::verify_filling(out.z, y, c);
    return out;
}

/// Hadamard-type filling constant. E is kept through its exact square.
struct FillingBound {
    int rank_r = 0;
    Integer inverse_entry_bound_E_squared = 0;  // 3^(r-1)
    Integer inverse_entry_bound_E = 0;          // ceil(sqrt(E^2))
    Rational fill_ratio_bound = 0;              // r * E
};

inline FillingBound filling_constant_bound(const Complex3& c) {
    FillingBound fb;
    fb.rank_r = c.simplex_count(2) == 0 ? 0 : boundary_rank(c, 2);
    if (fb.rank_r == 0) return fb;
    mpz_ui_pow_ui(fb.inverse_entry_bound_E_squared.get_mpz_t(), 3, static_cast<unsigned long>(fb.rank_r - 1));
    Integer root;
    mpz_sqrt(root.get_mpz_t(), fb.inverse_entry_bound_E_squared.get_mpz_t());
    if (root * root < fb.inverse_entry_bound_E_squared) root += 1;
    fb.inverse_entry_bound_E = root;
    fb.fill_ratio_bound = Rational(Integer(fb.rank_r) * root);
    return fb;
}

/// Normalized Hopf-size certificate: fill_ratio_bound times tetrahedron count.
inline Rational hopf_size_upper_bound(const Complex3& c) {
    if (c.total_simplices() == 0) return 0;
    if (c.dimension() != 3 || !validate_closed_oriented(c).ok)
        fail(ErrorCode::NotClosedOriented, "Hopf-size bound needs a closed oriented 3-complex");
    return filling_constant_bound(c).fill_ratio_bound * Rational(static_cast<long>(c.simplex_count(3)));
}

}  // namespace hopfkit

#endif
