#include <gtest/gtest.h>

#include "hopfkit/complex.hpp"
#include "hopfkit/fixtures.hpp"
#include "hopfkit/sparse_solver.hpp"
#include "oracles.hpp"

using namespace hopfkit;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::ParseError;
}

std::vector<Complex3> all_fixtures() {
    return {fixtures::boundary_of_4_simplex(), fixtures::single_tetrahedron(),
            fixtures::join_of_triangle_boundaries(), fixtures::tetrahedron_surface(),
            fixtures::lattice_torus(4), fixtures::sphere_times_circle()};
}

}  // namespace

TEST(BuildComplex, SingleTetrahedronCounts) {
    const auto c = fixtures::single_tetrahedron();
    EXPECT_EQ(c.simplex_count(0), 4u);
    EXPECT_EQ(c.simplex_count(1), 6u);
    EXPECT_EQ(c.simplex_count(2), 4u);
    EXPECT_EQ(c.simplex_count(3), 1u);
    EXPECT_EQ(c.dimension(), 3);
}

TEST(BuildComplex, BoundaryOf4SimplexCounts) {
    const auto c = fixtures::boundary_of_4_simplex();
    EXPECT_EQ(c.simplex_count(1), 10u);
    EXPECT_EQ(c.simplex_count(2), 10u);
    EXPECT_EQ(c.simplex_count(3), 5u);
    EXPECT_TRUE(validate_closed_oriented(c).ok);
}

TEST(BuildComplex, RepeatedVertexRejected) {
    EXPECT_EQ(code_of([] { build_complex(4, {{{0, 1, 2, 2}, 1}}); }), ErrorCode::InvalidSimplex);
}

TEST(BuildComplex, OutOfRangeVertexRejected) {
    EXPECT_EQ(code_of([] { build_complex(4, {{{0, 1, 2, 4}, 1}}); }), ErrorCode::InvalidSimplex);
    EXPECT_EQ(code_of([] { build_complex(4, {{{-1, 1, 2, 3}, 1}}); }), ErrorCode::InvalidSimplex);
}

TEST(BuildComplex, BadSignRejected) {
    EXPECT_EQ(code_of([] { build_complex(4, {{{0, 1, 2, 3}, 0}}); }), ErrorCode::InvalidSimplex);
}

TEST(BuildComplex, DuplicateTetrahedronRejectedInAnyOrder) {
    EXPECT_EQ(code_of([] { build_complex(5, {{{0, 1, 2, 3}, 1}, {{3, 2, 1, 0}, 1}}); }),
              ErrorCode::DuplicateTetrahedron);
}

TEST(BuildComplex, InputOrderFoldsIntoSign) {
    const auto a = build_complex(4, {{{1, 0, 2, 3}, 1}});
    EXPECT_EQ(a.top_sign(0), -1);
    const auto b = build_complex(4, {{{1, 0, 3, 2}, -1}});
    EXPECT_EQ(b.top_sign(0), -1);
}

TEST(BuildComplex, IndexingIsLexicographicAndDeterministic) {
    const auto a = fixtures::join_of_triangle_boundaries();
    const auto b = fixtures::join_of_triangle_boundaries();
    EXPECT_TRUE(a == b);
    EXPECT_TRUE(std::is_sorted(a.tetrahedra().begin(), a.tetrahedra().end()));
    EXPECT_TRUE(std::is_sorted(a.triangles().begin(), a.triangles().end()));
    EXPECT_TRUE(std::is_sorted(a.edges().begin(), a.edges().end()));
}

TEST(Validate, SingleTetrahedronListsFourTriangles) {
    const auto r = validate_closed_oriented(fixtures::single_tetrahedron());
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.offending.size(), 4u);
}

TEST(Validate, FlippedSignDetected) {
    std::vector<OrientedTetrahedron> tets;
    const auto good = fixtures::boundary_of_4_simplex();
    for (std::size_t i = 0; i < good.tetrahedra().size(); ++i)
        tets.push_back({good.tetrahedra()[i], good.top_sign(static_cast<int>(i)) * (i == 2 ? -1 : 1)});
    const auto r = validate_closed_oriented(build_complex(5, tets));
    EXPECT_FALSE(r.ok);
    EXPECT_FALSE(r.offending.empty());
}

TEST(Validate, FixturesThatAreClosed) {
    EXPECT_TRUE(validate_closed_oriented(fixtures::join_of_triangle_boundaries()).ok);
    EXPECT_TRUE(validate_closed_oriented(fixtures::tetrahedron_surface()).ok);
    EXPECT_TRUE(validate_closed_oriented(fixtures::lattice_torus(4)).ok);
    EXPECT_TRUE(validate_closed_oriented(fixtures::sphere_times_circle()).ok);
}

TEST(BoundaryMatrix, SingleTetrahedronShapes) {
    const auto c = fixtures::single_tetrahedron();
    const auto& b2 = boundary_matrix(c, 2);
    EXPECT_EQ(b2.rows, 6);
    EXPECT_EQ(b2.cols, 4);
    for (const auto& col : b2.columns) EXPECT_EQ(col.size(), 3u);
    const auto& b3 = boundary_matrix(c, 3);
    EXPECT_EQ(b3.rows, 4);
    EXPECT_EQ(b3.cols, 1);
    for (const auto& [_, v] : b3.columns[0]) EXPECT_EQ(std::abs(v), 1);
}

TEST(BoundaryMatrix, BoundaryOf4SimplexRankSix) {
    const auto c = fixtures::boundary_of_4_simplex();
    const auto& b2 = boundary_matrix(c, 2);
    EXPECT_EQ(b2.rows, 10);
    EXPECT_EQ(b2.cols, 10);
    EXPECT_EQ(oracle::rank(oracle::to_q(b2.to_dense())), 6);
    EXPECT_EQ(rational_rank(b2), 6);
}

TEST(BoundaryMatrix, BadIndexRejected) {
    const auto c = fixtures::single_tetrahedron();
    EXPECT_EQ(code_of([&] { boundary_matrix(c, 0); }), ErrorCode::BadDimension);
    EXPECT_EQ(code_of([&] { boundary_matrix(c, 4); }), ErrorCode::BadDimension);
}

TEST(BoundaryMatrix, MatchesIndependentFaceFormula) {
    for (const auto& c : all_fixtures()) {
        for (int k = 2; k <= 3; ++k) {
            const auto& b = c.boundary(k);
            for (int j = 0; j < b.cols; ++j) {
                std::vector<int> v;
                if (k == 3) {
                    const auto& t = c.tetrahedra()[static_cast<std::size_t>(j)];
                    v.assign(t.begin(), t.end());
                } else {
                    const auto& t = c.triangles()[static_cast<std::size_t>(j)];
                    v.assign(t.begin(), t.end());
                }
                for (const auto& [face, s] : oracle::simplex_boundary(v)) {
                    const auto idx = c.simplex_index(face);
                    ASSERT_TRUE(idx.has_value());
                    EXPECT_EQ(b.at(*idx, j), s);
                }
                EXPECT_EQ(b.columns[static_cast<std::size_t>(j)].size(), static_cast<std::size_t>(k + 1));
            }
        }
    }
}

TEST(BoundaryOf, TriangleBoundary) {
    const auto c = fixtures::single_tetrahedron();
    const Chain d = boundary_of(oriented_simplex(c, {0, 1, 2}), c);
    Chain expected(1);
    expected += oriented_simplex(c, {0, 1});
    expected += oriented_simplex(c, {1, 2});
    expected -= oriented_simplex(c, {0, 2});
    EXPECT_TRUE(d == expected);
}

TEST(BoundaryOf, ZeroChain) {
    const auto c = fixtures::single_tetrahedron();
    EXPECT_TRUE(boundary_of(Chain(2), c).is_zero());
}

TEST(BoundaryOf, FundamentalChainIsCycle) {
    for (const auto& c : all_fixtures()) {
        if (!validate_closed_oriented(c).ok) continue;
        EXPECT_TRUE(boundary_of(c.fundamental_chain(), c).is_zero());
    }
}

TEST(BoundaryOf, BadDimension) {
    const auto c = fixtures::single_tetrahedron();
    EXPECT_EQ(code_of([&] { boundary_of(Chain(0), c); }), ErrorCode::BadDimension);
}

TEST(ComplexProperties, BoundarySquaredIsZeroOnMatrices) {
    for (const auto& c : all_fixtures()) {
        const auto d2 = c.boundary(2).to_dense();
        const auto d3 = c.boundary(3).to_dense();
        for (std::size_t e = 0; e < d2.size(); ++e)
            for (std::size_t t = 0; t < c.simplex_count(3); ++t) {
                long s = 0;
                for (std::size_t f = 0; f < d3.size(); ++f) s += d2[e][f] * d3[f][t];
                EXPECT_EQ(s, 0);
            }
    }
}

TEST(ComplexProperties, BoundarySquaredIsZeroOnRandomChains) {
    oracle::Gen g(7);
    for (const auto& c : all_fixtures()) {
        for (int trial = 0; trial < 20; ++trial) {
            const int k = c.dimension() == 3 ? g.uniform(2, 3) : 2;
            Chain x(k);
            const int n = static_cast<int>(c.simplex_count(k));
            for (int i = 0; i < 4; ++i) x.add(g.uniform(0, n - 1), g.rational());
            EXPECT_TRUE(boundary_of(boundary_of(x, c), c).is_zero());
        }
    }
}

TEST(ComplexProperties, ReversedFlipsEverySign) {
    const auto c = fixtures::boundary_of_4_simplex();
    const auto r = c.reversed();
    for (int i = 0; i < 5; ++i) EXPECT_EQ(r.top_sign(i), -c.top_sign(i));
    EXPECT_TRUE(validate_closed_oriented(r).ok);
}

TEST(ChainType, NormAndZeroStorage) {
    Chain x(1);
    x.add(0, make_rational(1, 2));
    x.add(3, -2);
    x.add(0, make_rational(-1, 2));
    EXPECT_EQ(x.support_size(), 1u);
    EXPECT_EQ(x.norm_l1(), Rational(2));
    EXPECT_TRUE(x.is_integral());
}

TEST(SparseSolver, AgreesWithDenseOracleOnRandomSystems) {
    oracle::Gen g(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = g.uniform(1, 12), n = g.uniform(1, 12);
        const auto a = oracle::random_sparse_matrix(g, m, n, 0.3, 3);
        const auto s = oracle::to_sparse(a);
        SparseRationalSolver solver(s);
        const auto q = oracle::to_q(a);
        EXPECT_EQ(solver.rank(), oracle::rank(q));
        std::vector<Rational> b(static_cast<std::size_t>(m));
        for (auto& v : b) v = g.rational();
        const auto x = solver.solve(b);
        EXPECT_EQ(x.has_value(), oracle::in_column_space(q, b));
        if (x) {
            for (int i = 0; i < m; ++i) {
                Rational acc = 0;
                for (int j = 0; j < n; ++j) acc += q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * (*x)[static_cast<std::size_t>(j)];
                EXPECT_EQ(acc, b[static_cast<std::size_t>(i)]);
            }
        }
        for (const auto& v : solver.null_space(s)) {
            for (int i = 0; i < m; ++i) {
                Rational acc = 0;
                for (int j = 0; j < n; ++j) acc += q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(j)];
                EXPECT_EQ(acc, 0);
            }
        }
    }
}
