#ifndef HOPFKIT_HOMOLOGY_HPP
#define HOPFKIT_HOMOLOGY_HPP

#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "hopfkit/complex.hpp"
#include "hopfkit/errors.hpp"
#include "hopfkit/rational.hpp"
#include "hopfkit/smith.hpp"
#include "hopfkit/sparse_solver.hpp"

namespace hopfkit {

struct HomologySummary {
    std::array<int, 4> betti{};
    Integer h1_torsion_order = 1;
};

struct SpanningGenusReport {
    int rank_r = 0;
    Integer lattice_index_D = 1;
    std::vector<int> basis_triangles;
    std::vector<Chain> kernel_generators;
    int max_triangle_count = 0;
    Integer coefficient_bound = 0;
};

inline int boundary_rank(const Complex3& c, int k) {
    const auto& b = c.boundary(k);
    if (b.cols == 0 || b.rows == 0) return 0;
    return rational_rank(b);
}

inline HomologySummary homology_summary(const Complex3& c) {
    HomologySummary h;
    const int r1 = boundary_rank(c, 1);
    const int r2 = boundary_rank(c, 2);
    const int r3 = boundary_rank(c, 3);
    const auto n = [&](int k) { return static_cast<int>(c.simplex_count(k)); };
    h.betti = {n(0) - r1, n(1) - r1 - r2, n(2) - r2 - r3, n(3) - r3};
    h.h1_torsion_order = 1;
    for (const auto& f : invariant_factors(c.boundary(2))) h.h1_torsion_order *= f;
    return h;
}

/// True when the 1-cycle y bounds over the rationals.
inline bool is_null_homologous(const Chain& y, const Complex3& c) {
    if (y.dim() != 1) fail(ErrorCode::BadDimension, "expected a 1-chain");
    if (!boundary_of(y, c).is_zero()) fail(ErrorCode::NotACycle, "boundary of y is nonzero");
    if (y.is_zero()) return true;
    SparseRationalSolver solver(c.boundary(2));
    return solver.in_column_space(y.to_dense(c.simplex_count(1)));
}

namespace detail {

using QColumn = std::vector<std::pair<int, Rational>>;  // sorted by row

inline QColumn axpy(const QColumn& x, const Rational& k, const QColumn& y) {
    // x + k*y
    QColumn out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.push_back({y[j].first, k * y[j].second});
            ++j;
        } else {
            Rational v = x[i].second + k * y[j].second;
            if (v != 0) out.push_back({x[i].first, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

inline QColumn column_of(const SparseIntMatrix& b, int j) {
    QColumn col;
    for (const auto& [r, v] : b.columns[static_cast<std::size_t>(j)]) col.push_back({r, Rational(v)});
    return col;
}

/// Left-to-right column reduction over Q (lowest nonzero row as pivot).
/// Columns in `skip` are known to reduce to zero and are not processed.
/// zero_columns receives, for each processed column that reduced to zero,
/// the combination (column index -> coefficient) giving a kernel vector.
struct ColumnReduction {
    std::vector<int> pivot_columns;                    // columns with nonzero reduced form
    std::set<int> lows;                                // their pivot rows
    std::vector<std::pair<int, QColumn>> kernel;       // (column, combination)
};

inline ColumnReduction reduce_columns(const SparseIntMatrix& b, const std::set<int>& skip, bool track) {
    ColumnReduction out;
    std::map<int, std::pair<QColumn, QColumn>> by_low;  // low -> (reduced column, combination)
    for (int j = 0; j < b.cols; ++j) {
        if (skip.count(j)) continue;
        QColumn col = column_of(b, j);
        QColumn comb;
        if (track) comb.push_back({j, Rational(1)});
        while (!col.empty()) {
            auto it = by_low.find(col.back().first);
            if (it == by_low.end()) break;
            const Rational k = -col.back().second / it->second.first.back().second;
            col = axpy(col, k, it->second.first);
            if (track) comb = axpy(comb, k, it->second.second);
        }
        if (col.empty()) {
            if (track) out.kernel.push_back({j, std::move(comb)});
        } else {
            const int low = col.back().first;
            out.pivot_columns.push_back(j);
            out.lows.insert(low);
            by_low.emplace(low, std::make_pair(std::move(col), std::move(comb)));
        }
    }
    return out;
}

}  // namespace detail

/// Rational 2-cycles representing a basis of H2(c; Q).
inline std::vector<Chain> h2_basis(const Complex3& c) {
    std::set<int> killed;
    if (c.simplex_count(3) > 0) killed = detail::reduce_columns(c.boundary(3), {}, false).lows;
    const auto red = detail::reduce_columns(c.boundary(2), killed, true);
    std::vector<Chain> out;
    for (const auto& [_, comb] : red.kernel) {
        Chain z(2);
        for (const auto& [f, v] : comb) z.add(f, v);
        out.push_back(std::move(z));
    }
    return out;
}

/// Greedy basis of the column space of B2, lattice index D and the integral
/// kernel generators D*Delta_j - sum_i D*a_ij*Delta_i.
inline SpanningGenusReport spanning_genus_report(const Complex3& c) {
    SpanningGenusReport rep;
    const auto& b2 = c.boundary(2);
    const auto red = detail::reduce_columns(b2, {}, true);
    rep.basis_triangles = red.pivot_columns;
    rep.rank_r = static_cast<int>(rep.basis_triangles.size());
    rep.lattice_index_D = 1;
    if (rep.rank_r > 0)
        for (const auto& f : invariant_factors(b2.select_columns(rep.basis_triangles))) rep.lattice_index_D *= f;
    const Integer& d = rep.lattice_index_D;
    for (const auto& [j, comb] : red.kernel) {
        // comb = Delta_j + sum_i c_i Delta_i with c_i = -a_ij over basis columns.
        Chain g(2);
        for (const auto& [f, v] : comb) {
            const Rational dv = Rational(d) * v;
            if (!is_integral(dv))
                fail(ErrorCode::IntegralityViolation, "D*a_ij is not an integer for triangle " + std::to_string(f));
            if (f != j && abs(dv.get_num()) > rep.coefficient_bound) rep.coefficient_bound = abs(dv.get_num());
            g.add(f, dv);
        }
        if (!boundary_of(g, c).is_zero())
            fail(ErrorCode::InconsistencyDetected, "kernel generator is not a cycle");
        rep.max_triangle_count = std::max(rep.max_triangle_count, static_cast<int>(g.support_size()));
        rep.kernel_generators.push_back(std::move(g));
    }
    return rep;
}

/// Modulus m with degree = 0 (mod m), from T | S * degree.
inline Integer torsion_degree_obstruction(const Integer& t, const Integer& s) {
    if (t < 1 || s < 1) fail(ErrorCode::NonPositiveInput, "T and S must be positive");
    Integer g;
    mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), s.get_mpz_t());
    return t / g;
}

}  // namespace hopfkit

#endif
