#include <gtest/gtest.h>

#include <functional>

#include "hopfkit/fixtures.hpp"
#include "hopfkit/maps.hpp"
#include "oracles.hpp"

using namespace hopfkit;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::ParseError;
}

int permutation_sign(const std::vector<int>& p) {
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

// S^2 x S^1 with its projection onto the tetrahedron surface.
SimplicialMap sphere_circle_projection() {
    std::vector<int> vm;
    for (int k = 0; k < 3; ++k)
        for (int v = 0; v < 4; ++v) vm.push_back(v);
    return make_map(fixtures::sphere_times_circle(), fixtures::tetrahedron_surface(), vm);
}

// A-circle of the join sphere and the dual B-core through the tetrahedra
// over the A-edge {0,1}.
Chain a_circle(const Complex3& c) {
    Chain y(1);
    for (int i = 0; i < 3; ++i) y += oriented_simplex(c, {i, (i + 1) % 3});
    return y;
}

DualCurve b_core(const Complex3& c) {
    DualCurve y;
    std::vector<DualStep> loop;
    for (int j = 0; j < 3; ++j) {
        const int bj = 3 + j, bn = 3 + (j + 1) % 3;
        loop.push_back({*c.tet_index(0, 1, bj, bn), *c.triangle_index(0, 1, bj), *c.triangle_index(0, 1, bn), 1});
    }
    y.loops.push_back(loop);
    return y;
}

}  // namespace

TEST(ValidateMap, IdentityConstantAndBadEdge) {
    const auto s = fixtures::boundary_of_4_simplex();
    EXPECT_TRUE(validate_map(make_map(s, s, {0, 1, 2, 3, 4})).ok);
    EXPECT_TRUE(validate_map(make_map(s, s, {2, 2, 2, 2, 2})).ok);
    const auto r = validate_map(make_map(s, fixtures::suspended_polygon(4), {0, 1, 2, 3, 4}));
    EXPECT_FALSE(r.ok);
    EXPECT_FALSE(r.offending.empty());
}

TEST(ValidateMap, LengthAndRange) {
    const auto s = fixtures::boundary_of_4_simplex();
    EXPECT_FALSE(validate_map(make_map(s, s, {0, 1, 2})).ok);
    EXPECT_FALSE(validate_map(make_map(s, s, {0, 1, 2, 3, 9})).ok);
}

TEST(Degree, IdentityTranspositionConstant) {
    const auto s = fixtures::boundary_of_4_simplex();
    EXPECT_EQ(degree(make_map(s, s, {0, 1, 2, 3, 4})), 1);
    EXPECT_EQ(degree(make_map(s, s, {1, 0, 2, 3, 4})), -1);
    EXPECT_EQ(degree(make_map(s, s, {3, 3, 3, 3, 3})), 0);
}

TEST(Degree, ExhaustiveOnBoundaryOf4Simplex) {
    // Every vertex map is simplicial; bijections are automorphisms of degree
    // sign(pi), anything else misses a vertex and has degree 0.
    const auto s = std::make_shared<const Complex3>(fixtures::boundary_of_4_simplex());
    std::vector<int> vm(5, 0);
    for (int code = 0; code < 3125; ++code) {
        int x = code;
        for (auto& v : vm) {
            v = x % 5;
            x /= 5;
        }
        std::vector<int> sorted_vm = vm;
        std::sort(sorted_vm.begin(), sorted_vm.end());
        const bool bijective = std::unique(sorted_vm.begin(), sorted_vm.end()) == sorted_vm.end();
        EXPECT_EQ(degree(make_map(s, s, vm)), bijective ? permutation_sign(vm) : 0);
    }
}

TEST(Degree, JoinSphereSymmetries) {
    const auto j = fixtures::join_of_triangle_boundaries();
    EXPECT_EQ(degree(make_map(j, j, {1, 2, 0, 3, 4, 5})), 1);
    EXPECT_EQ(degree(make_map(j, j, {0, 2, 1, 3, 4, 5})), -1);
    EXPECT_EQ(degree(make_map(j, j, {3, 4, 5, 0, 1, 2})), 1);
}

TEST(Degree, ReversalNegates) {
    const auto s = fixtures::boundary_of_4_simplex();
    EXPECT_EQ(degree(make_map(s.reversed(), s, {0, 1, 2, 3, 4})), -1);
}

TEST(Degree, NonCycleSourceIsInconsistent) {
    EXPECT_EQ(code_of([] {
                  degree(make_map(fixtures::single_tetrahedron(), fixtures::boundary_of_4_simplex(), {0, 1, 2, 3}));
              }),
              ErrorCode::InconsistentDegree);
}

TEST(Degree, InvalidMapRejected) {
    const auto s = fixtures::boundary_of_4_simplex();
    EXPECT_EQ(code_of([&] { degree(make_map(s, s, {0, 1})); }), ErrorCode::InvalidMap);
}

TEST(Fiber, ConstantMapIsEmpty) {
    const auto f = make_map(fixtures::sphere_times_circle(), fixtures::tetrahedron_surface(), std::vector<int>(12, 0));
    EXPECT_TRUE(fiber(f, 0).curve.empty());
}

TEST(Fiber, ImageInOneSkeletonIsEmpty) {
    const auto f = make_map(fixtures::boundary_of_4_simplex(), fixtures::tetrahedron_surface(), {0, 1, 0, 1, 0});
    for (int t = 0; t < 4; ++t) EXPECT_TRUE(fiber(f, t).curve.empty());
    EXPECT_EQ(hopf_invariant(f), 0);
}

TEST(Fiber, ProjectionFiberIsVerticalCircle) {
    const auto f = sphere_circle_projection();
    const auto surface = fixtures::tetrahedron_surface();
    for (int t = 0; t < 4; ++t) {
        const auto fd = fiber(f, t);
        ASSERT_EQ(fd.curve.loops.size(), 1u);
        EXPECT_EQ(fd.curve.step_count(), 9u);
        // Same crossings as the vertical loop, in some orientation.
        const Chain d = deform_to_skeleton(fd.curve, *f.source, VertexRule::Largest);
        const Chain v = deform_to_skeleton(fixtures::vertical_dual_loop(*f.source, surface, 3, t), *f.source, VertexRule::Largest);
        EXPECT_TRUE(d == v || d == -v);
    }
}

TEST(Fiber, StepCountsBoundedByTetrahedra) {
    const auto f = fixtures::hopf_map(4);
    std::size_t total = 0;
    for (int t = 0; t < static_cast<int>(f.target->simplex_count(2)); ++t) {
        const auto fd = fiber(f, t);
        validate_dual_curve(fd.curve, *f.source);
        total += fd.curve.step_count();
        EXPECT_LE(fd.curve.step_count(), f.source->simplex_count(3));
    }
    EXPECT_LE(total, f.source->simplex_count(3));
}

TEST(Pullback, SourceWithoutH2) {
    const auto f = make_map(fixtures::boundary_of_4_simplex(), fixtures::tetrahedron_surface(), {0, 1, 2, 2, 2});
    EXPECT_TRUE(pullback_pairings(f).empty());
    EXPECT_EQ(hopf_invariant(f), 0);
}

TEST(Pullback, ProjectionDetectsSphereClass) {
    const auto p = pullback_pairings(sphere_circle_projection());
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(abs_value(p[0]), 1);
    EXPECT_EQ(code_of([] { hopf_invariant(sphere_circle_projection()); }), ErrorCode::HopfUndefined);
}

TEST(Pullback, ConstantMapIsZero) {
    const auto f = make_map(fixtures::sphere_times_circle(), fixtures::tetrahedron_surface(), std::vector<int>(12, 3));
    const auto p = pullback_pairings(f);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p[0], 0);
    EXPECT_EQ(hopf_invariant(f), 0);
}

TEST(Linking, HopfLinkInJoinSphere) {
    const auto c = fixtures::join_of_triangle_boundaries();
    const Rational lk = linking_number(a_circle(c), b_core(c), c);
    EXPECT_EQ(abs_value(lk), 1);
    EXPECT_EQ(linking_number(-a_circle(c), b_core(c), c), -lk);
    EXPECT_EQ(linking_number(a_circle(c), b_core(c).reversed(), c), -lk);
}

TEST(Linking, ZeroCycle) {
    const auto c = fixtures::join_of_triangle_boundaries();
    EXPECT_EQ(linking_number(Chain(1), b_core(c), c), 0);
}

TEST(Linking, IndependentOfFilling) {
    // Oracle: the crossing count of the least-norm filling.
    const auto c = fixtures::join_of_triangle_boundaries();
    const auto z = fill_cycle_min_l1(a_circle(c), c).z;
    EXPECT_EQ(crossing_pairing(z, b_core(c), c), linking_number(a_circle(c), b_core(c), c));
}

TEST(Linking, AdditiveInFirstArgument) {
    const auto c = fixtures::join_of_triangle_boundaries();
    const Chain extra = boundary_of(oriented_simplex(c, {0, 1, 4}), c);
    const Rational lk = linking_number(a_circle(c), b_core(c), c);
    EXPECT_EQ(linking_number(a_circle(c) + extra, b_core(c), c), lk + linking_number(extra, b_core(c), c));
}

TEST(Linking, SmallLoopsAroundEdgesLinkTheirEdge) {
    // A dual loop around an edge links the boundary of any triangle
    // containing that edge once, and links cycles away from the edge zero times.
    const auto c = fixtures::boundary_of_4_simplex();
    const auto y2 = fixtures::loop_around_edge(c, 0, 1);
    EXPECT_EQ(abs_value(linking_number(boundary_of(oriented_simplex(c, {0, 1, 2}), c), y2, c)), 1);
    EXPECT_EQ(linking_number(boundary_of(oriented_simplex(c, {2, 3, 4}), c), y2, c), 0);
}

TEST(Linking, ErrorsInSphereTimesCircle) {
    const auto c = fixtures::sphere_times_circle();
    const auto vertical = fixtures::vertical_dual_loop(c, fixtures::tetrahedron_surface(), 3, 0);
    EXPECT_EQ(code_of([&] { linking_number(boundary_of(oriented_simplex(c, {0, 1, 2}), c), vertical, c); }),
              ErrorCode::AmbiguousLinking);
    const Chain core = deform_to_skeleton(vertical, c, VertexRule::Largest);
    EXPECT_EQ(code_of([&] { linking_number(core, fixtures::loop_around_edge(c, 0, 1), c); }),
              ErrorCode::NotNullHomologous);
}

TEST(Hopf, SimplicialHopfMapIsUnit) {
    const auto f = fixtures::hopf_map(4);
    const auto r = hopf_invariant_report(f);
    EXPECT_EQ(abs_value(r.value), 1);
    // Oracle: linking number of the two fibers.
    const Chain y1 = deform_to_skeleton(fiber(f, r.t1).curve, *f.source);
    EXPECT_EQ(linking_number(y1, fiber(f, r.t2).curve, *f.source), r.value);
}

TEST(Hopf, IndependentOfTriangleChoiceRuleAndFilling) {
    const auto f = fixtures::hopf_map(4);
    const Rational h = hopf_invariant(f);
    const int nt = static_cast<int>(f.target->simplex_count(2));
    for (int t1 = 0; t1 < nt; ++t1)
        for (int t2 = 0; t2 < nt; ++t2) {
            if (t1 == t2) continue;
            HopfOptions opt;
            opt.t1 = t1;
            opt.t2 = t2;
            opt.verify = false;
            opt.verify_min_l1 = false;
            EXPECT_EQ(hopf_invariant(f, opt), h);
        }
    for (auto rule : {VertexRule::Smallest, VertexRule::Middle, VertexRule::Largest}) {
        HopfOptions opt;
        opt.rule = rule;
        opt.fill = FillMethod::Network;
        EXPECT_EQ(hopf_invariant(f, opt), h);
    }
}

TEST(Hopf, OrientationReversalNegates) {
    const auto f = fixtures::hopf_map(4);
    const Rational h = hopf_invariant(f);
    EXPECT_EQ(hopf_invariant(make_map(f.source->reversed(), *f.target, f.vertex_map)), -h);
    EXPECT_EQ(hopf_invariant(make_map(*f.source, f.target->reversed(), f.vertex_map)), h);
}

TEST(Hopf, LargerFixtureAgrees) {
    EXPECT_EQ(hopf_invariant(fixtures::hopf_map(5)), hopf_invariant(fixtures::hopf_map(4)));
}

TEST(Hopf, ConstantMap) {
    const auto f = fixtures::hopf_map(4);
    EXPECT_EQ(hopf_invariant(make_map(*f.source, *f.target, std::vector<int>(f.vertex_map.size(), 0))), 0);
}

TEST(Hopf, RejectsBadInputs) {
    const auto f = fixtures::hopf_map(4);
    HopfOptions same;
    same.t1 = 0;
    same.t2 = 0;
    EXPECT_EQ(code_of([&] { hopf_invariant(f, same); }), ErrorCode::InvalidSimplex);
    EXPECT_EQ(code_of([&] { hopf_invariant(make_map(fixtures::single_tetrahedron(), fixtures::tetrahedron_surface(), {0, 1, 2, 2})); }),
              ErrorCode::NotClosedOriented);
}
