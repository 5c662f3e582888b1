#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "hopfkit/estimates.hpp"
#include "oracles.hpp"

using namespace hopfkit;

namespace {

constexpr double kRel = 1e-9;

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::ParseError;
}

void expect_rel(double got, double want) {
    EXPECT_LE(std::abs(got - want), kRel * std::max(1.0, std::abs(want))) << got << " vs " << want;
}

// Exhaustive exact search over every denominator.
RationalApprox exhaustive_approx(double x, long q_max) {
    const Rational t(x);
    Rational best_err = -1;
    RationalApprox best;
    for (long q = 1; q <= q_max; ++q) {
        Integer f;
        const Rational tq = t * q;
        mpz_fdiv_q(f.get_mpz_t(), tq.get_num_mpz_t(), tq.get_den_mpz_t());
        for (Integer p : {f, Integer(f + 1)}) {
            const Rational e = abs_value(t - make_rational(p, Integer(q)));
            if (best_err < 0 || e < best_err) {
                best_err = e;
                const Rational r = make_rational(p, Integer(q));
                best = {r.get_num().get_si(), r.get_den().get_si(), e.get_d()};
            }
        }
    }
    return best;
}

const double kGolden = (std::sqrt(5.0) - 1) / 2;

}  // namespace

TEST(GromovBound, Examples) {
    expect_rel(gromov_hopf_bound(1, 1, 1, 1), 1);
    expect_rel(gromov_hopf_bound(2, 10, 4 * std::numbers::pi, 1), 20 / (16 * std::numbers::pi * std::numbers::pi));
    EXPECT_NEAR(gromov_hopf_bound(2, 10, 4 * std::numbers::pi, 1), 0.12665, 5e-6);
}

TEST(GromovBound, Homogeneity) {
    oracle::Gen g(11);
    for (int i = 0; i < 200; ++i) {
        const double iso = 0.1 + g.uniform(0, 1000) / 100.0, vol = 0.1 + g.uniform(0, 1000) / 10.0;
        const double area = 0.5 + g.uniform(0, 1000) / 100.0, L = 0.1 + g.uniform(0, 1000) / 300.0;
        const double b = gromov_hopf_bound(iso, vol, area, L);
        expect_rel(gromov_hopf_bound(iso, vol, area, 2 * L), 16 * b);
        expect_rel(gromov_hopf_bound(3 * iso, vol, area, L), 3 * b);
        expect_rel(gromov_hopf_bound(iso, 5 * vol, area, L), 5 * b);
        expect_rel(gromov_hopf_bound(iso, vol, 2 * area, L), b / 4);
    }
}

TEST(GromovBound, RejectsNonPositive) {
    EXPECT_EQ(code_of([] { gromov_hopf_bound(0, 1, 1, 1); }), ErrorCode::NonPositiveInput);
    EXPECT_EQ(code_of([] { gromov_hopf_bound(1, -1, 1, 1); }), ErrorCode::NonPositiveInput);
    EXPECT_EQ(code_of([] { gromov_hopf_bound(1, 1, 0, 1); }), ErrorCode::NonPositiveInput);
    EXPECT_EQ(code_of([] { gromov_hopf_bound(1, 1, 1, NAN); }), ErrorCode::NonPositiveInput);
}

TEST(MilnorThurston, Examples) {
    expect_rel(milnor_thurston_degree_bound(0, 5), 0);
    expect_rel(milnor_thurston_degree_bound(100, 4, 1), 25);
    expect_rel(milnor_thurston_degree_bound(10, 10), 1);
    expect_rel(milnor_thurston_degree_bound(10, 10, 3), 3);
}

TEST(MilnorThurston, Errors) {
    EXPECT_EQ(code_of([] { milnor_thurston_degree_bound(5, 0); }), ErrorCode::NonPositiveVolume);
    EXPECT_EQ(code_of([] { milnor_thurston_degree_bound(5, -2); }), ErrorCode::NonPositiveVolume);
    EXPECT_EQ(code_of([] { milnor_thurston_degree_bound(-1, 2); }), ErrorCode::NonPositiveInput);
}

TEST(DegreeFromHopfSizes, Examples) {
    expect_rel(degree_bound_from_hopf_sizes(1, 1, 1), 1);
    expect_rel(degree_bound_from_hopf_sizes(1, 480, 1), 480);
    expect_rel(degree_bound_from_hopf_sizes(2, 3, 6), 8);
    expect_rel(degree_bound_from_hopf_sizes(3, 0, 2), 0);
}

TEST(DegreeFromHopfSizes, Errors) {
    EXPECT_EQ(code_of([] { degree_bound_from_hopf_sizes(1, 1, 0); }), ErrorCode::NonPositiveHopfSize);
    EXPECT_EQ(code_of([] { degree_bound_from_hopf_sizes(1, 1, -3); }), ErrorCode::NonPositiveHopfSize);
    EXPECT_EQ(code_of([] { degree_bound_from_hopf_sizes(-1, 1, 1); }), ErrorCode::NonPositiveInput);
}

TEST(SpanningGenus, Examples) {
    expect_rel(spanning_genus_lower_bound(1), 1);
    expect_rel(spanning_genus_lower_bound(1e-4), 100);
    expect_rel(spanning_genus_lower_bound(1e-2, 2), 20);
    EXPECT_EQ(code_of([] { spanning_genus_lower_bound(0); }), ErrorCode::NonPositiveInput);
}

TEST(DehnCoreLinking, Examples) {
    EXPECT_EQ(dehn_core_linking(3, 1), 3);
    EXPECT_EQ(dehn_core_linking(1, 2), make_rational(1, 2));
    EXPECT_EQ(dehn_core_linking(0, 1), 0);
    EXPECT_EQ(dehn_core_linking(2, -3), make_rational(-2, 3));
}

TEST(DehnCoreLinking, Errors) {
    EXPECT_EQ(code_of([] { dehn_core_linking(1, 0); }), ErrorCode::ZeroDenominator);
    EXPECT_EQ(code_of([] { dehn_core_linking(2, 4); }), ErrorCode::NotCoprime);
    EXPECT_EQ(code_of([] { dehn_core_linking(0, 2); }), ErrorCode::NotCoprime);
}

TEST(BestApprox, Examples) {
    auto a = best_rational_approx(0.5, 10);
    EXPECT_EQ(a.p, 1);
    EXPECT_EQ(a.q, 2);
    EXPECT_EQ(a.error, 0);
    a = best_rational_approx(1.0 / 3.0, 100);
    EXPECT_EQ(a.p, 1);
    EXPECT_EQ(a.q, 3);
    EXPECT_LT(a.error, 1e-15);
    a = best_rational_approx(kGolden, 13);
    EXPECT_EQ(a.p, 8);
    EXPECT_EQ(a.q, 13);
    EXPECT_NEAR(a.error, 0.002649, 5e-7);
}

TEST(BestApprox, EdgeCases) {
    auto a = best_rational_approx(-2.75, 1);
    EXPECT_EQ(a.q, 1);
    EXPECT_EQ(a.p, -3);
    a = best_rational_approx(7.0, 5);
    EXPECT_EQ(a.p, 7);
    EXPECT_EQ(a.q, 1);
    a = best_rational_approx(0.5, 1);  // tie between 0 and 1
    EXPECT_EQ(a.q, 1);
    EXPECT_EQ(code_of([] { best_rational_approx(0.3, 0); }), ErrorCode::InvalidParams);
    EXPECT_EQ(code_of([] { best_rational_approx(INFINITY, 10); }), ErrorCode::InvalidParams);
}

TEST(BestApprox, MatchesExhaustiveSearch) {
    oracle::Gen g(2024);
    for (int i = 0; i < 1000; ++i) {
        const double x = (g.uniform(0, 2'000'000'000) - 1'000'000'000) / 3.7e8;
        const long q_max = g.uniform(1, 1000);
        const auto got = best_rational_approx(x, q_max);
        const auto want = exhaustive_approx(x, q_max);
        ASSERT_EQ(got.p, want.p) << x << " " << q_max;
        ASSERT_EQ(got.q, want.q) << x << " " << q_max;
        EXPECT_EQ(got.error, want.error);
    }
}

TEST(TubeReport, SubstitutionExample) {
    TubeParams p;
    p.epsilon = 1e-4;
    p.theta = 1.0;
    const auto r = tube_report(p);
    expect_rel(r.R_lower, 100);
    expect_rel(r.R_upper, std::pow(1e-4, -7.0 / 12.0));
    expect_rel(r.volume_threshold, 4.641588833612779);
    expect_rel(r.order_threshold, 4.641588833612779);
    expect_rel(r.hopf_threshold, 10);
    EXPECT_EQ(r.branch, TubeBranch::TorsionOrder);  // q absent
}

TEST(TubeReport, GoldenAngleCertifiesHopfSize) {
    TubeParams p;
    p.epsilon = 1e-6;
    p.theta = 2 * std::numbers::pi * kGolden;
    p.q = 1;
    p.q_max = 1000;
    const auto r = tube_report(p);
    EXPECT_EQ(r.best_approx.p, 610);
    EXPECT_EQ(r.best_approx.q, 987);
    // Golden-ratio convergents sit at 1 / (sqrt5 q^2) up to O(q^-4).
    EXPECT_NEAR(r.best_approx.error * std::sqrt(5.0) * 987.0 * 987.0, 1.0, 1e-6);
    expect_rel(r.angle_error, 1 - kGolden);
    expect_rel(r.hopf_size_lower, (1 - kGolden) * 1e6);
    EXPECT_EQ(r.branch, TubeBranch::HopfSize);
    EXPECT_EQ(r.N_w, 987);
}

TEST(TubeReport, ExactRationalAngleFallsToVolume) {
    TubeParams p;
    p.epsilon = 1e-12;
    p.theta = std::numbers::pi / 2;
    p.q = 4;
    const auto r = tube_report(p);
    EXPECT_EQ(r.angle_error, 0);
    EXPECT_EQ(r.hopf_size_lower, 0);
    EXPECT_EQ(r.branch, TubeBranch::Volume);
    EXPECT_EQ(r.linking_per_pair, 0);
}

TEST(TubeReport, LargeOrderCertifiesTorsion) {
    TubeParams p;
    p.epsilon = 1e-6;
    p.theta = 0.3;
    p.q = 10;
    EXPECT_EQ(tube_report(p).branch, TubeBranch::TorsionOrder);
    p.q = 9;
    EXPECT_NE(tube_report(p).branch, TubeBranch::TorsionOrder);
}

TEST(TubeReport, InvalidParams) {
    auto bad = [](auto mutate) {
        TubeParams p;
        p.epsilon = 1e-3;
        mutate(p);
        return code_of([&] { tube_report(p); });
    };
    EXPECT_EQ(bad([](TubeParams& p) { p.epsilon = 0; }), ErrorCode::InvalidParams);
    EXPECT_EQ(bad([](TubeParams& p) { p.q = 0; }), ErrorCode::InvalidParams);
    EXPECT_EQ(bad([](TubeParams& p) { p.q_max = 0; }), ErrorCode::InvalidParams);
    EXPECT_EQ(bad([](TubeParams& p) { p.constants.c = -1; }), ErrorCode::InvalidParams);
    EXPECT_EQ(bad([](TubeParams& p) { p.theta = NAN; }), ErrorCode::InvalidParams);
}

TEST(TubeReport, MonotoneInEpsilon) {
    oracle::Gen g(5);
    for (int i = 0; i < 500; ++i) {
        TubeParams a, b;
        a.epsilon = std::pow(10.0, -g.uniform(0, 12000) / 1000.0);
        b.epsilon = a.epsilon * (0.01 + g.uniform(0, 99) / 100.0);
        a.theta = b.theta = g.uniform(0, 6283) / 1000.0;
        const auto ra = tube_report(a), rb = tube_report(b);
        EXPECT_GE(rb.R_lower, ra.R_lower);
        EXPECT_GE(rb.volume_threshold, ra.volume_threshold);
        EXPECT_GE(rb.order_threshold, ra.order_threshold);
        EXPECT_GE(rb.hopf_threshold, ra.hopf_threshold);
    }
}

TEST(TubeReport, RandomDrawsCertifyTheirBranch) {
    oracle::Gen g(77);
    for (int i = 0; i < 1000; ++i) {
        TubeParams p;
        p.epsilon = std::pow(10.0, -g.uniform(0, 14000) / 1000.0);
        p.theta = (g.uniform(0, 2'000'000) - 1'000'000) / 1e5;
        if (g.coin()) p.q = g.uniform(1, 200);
        p.q_max = g.uniform(1, 1000);
        p.constants.c = 0.5 + g.uniform(0, 100) / 50.0;
        p.constants.C = 0.5 + g.uniform(0, 100) / 50.0;
        const auto r = tube_report(p);
        for (double v : {r.R_lower, r.R_upper, r.volume_threshold, r.order_threshold, r.hopf_threshold,
                         r.hopf_size_lower, r.tube_count_bound, r.linking_per_pair, r.best_approx.error})
            EXPECT_GE(v, 0);
        switch (r.branch) {
            case TubeBranch::TorsionOrder:
                EXPECT_TRUE(!p.q || static_cast<double>(*p.q) >= r.order_threshold);
                break;
            case TubeBranch::HopfSize:
                ASSERT_TRUE(p.q.has_value());
                EXPECT_LT(static_cast<double>(*p.q), r.order_threshold);
                EXPECT_GE(r.hopf_size_lower, r.hopf_threshold);
                break;
            case TubeBranch::Volume:
                ASSERT_TRUE(p.q.has_value());
                EXPECT_LT(static_cast<double>(*p.q), r.order_threshold);
                EXPECT_LT(r.hopf_size_lower, r.hopf_threshold);
                break;
        }
        const long long q = p.q.value_or(1);
        EXPECT_EQ(r.N_w % q, 0);
        EXPECT_EQ(r.N_w % r.best_approx.q, 0);
        expect_rel(r.delta, std::numbers::pi / static_cast<double>(r.N_w));
        expect_rel(r.tube_count_bound, r.R_upper * static_cast<double>(r.N_w) / (std::numbers::pi * std::numbers::pi));
        EXPECT_EQ(r.linking_per_pair, std::floor(r.linking_per_pair));
        const double mn = static_cast<double>(r.best_approx.p) / static_cast<double>(r.best_approx.q);
        const double pq = static_cast<double>(r.order_p) / static_cast<double>(q);
        const double nw = static_cast<double>(r.N_w);
        EXPECT_NEAR(r.linking_per_pair, std::abs(mn - pq) * nw * nw, 1e-6 * std::max(1.0, r.linking_per_pair));
    }
}
