#ifndef HOPFKIT_ESTIMATES_HPP
#define HOPFKIT_ESTIMATES_HPP

#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>

#include "hopfkit/errors.hpp"
#include "hopfkit/rational.hpp"

// Analytic evaluators. Universal constants default to 1 ("normalized units");
// binary64 is used throughout this header only.
namespace hopfkit {

namespace detail {
inline bool positive(double x) { return std::isfinite(x) && x > 0; }
}  // namespace detail

/// iso * vol * area^-2 * L^4.
inline double gromov_hopf_bound(double iso, double vol, double area, double L) {
    if (!detail::positive(iso) || !detail::positive(vol) || !detail::positive(area) || !detail::positive(L))
        fail(ErrorCode::NonPositiveInput, "gromov_hopf_bound needs positive inputs");
    return iso * vol / (area * area) * std::pow(L, 4);
}

/// C * N / V.
inline double milnor_thurston_degree_bound(long long N, double V, double C = 1.0) {
    if (!detail::positive(V)) fail(ErrorCode::NonPositiveVolume, "volume must be positive");
    if (N < 0) fail(ErrorCode::NonPositiveInput, "simplex count must be nonnegative");
    if (!detail::positive(C)) fail(ErrorCode::NonPositiveInput, "constant C must be positive");
    return C * static_cast<double>(N) / V;
}

/// L^4 * hs_domain / hs_target.
inline double degree_bound_from_hopf_sizes(double L, double hs_domain, double hs_target) {
    if (!detail::positive(hs_target)) fail(ErrorCode::NonPositiveHopfSize, "target Hopf size must be positive");
    if (!std::isfinite(L) || L < 0 || !std::isfinite(hs_domain) || hs_domain < 0)
        fail(ErrorCode::NonPositiveInput, "L and domain Hopf size must be nonnegative");
    return std::pow(L, 4) * hs_domain / hs_target;
}

/// c * epsilon^-1/2; also the genus lower bound for a surface spanning the core.
inline double spanning_genus_lower_bound(double epsilon, double c = 1.0) {
    if (!detail::positive(epsilon) || !detail::positive(c)) fail(ErrorCode::NonPositiveInput, "epsilon and c must be positive");
    return c / std::sqrt(epsilon);
}

/// Linking number m/n of the two cores after an (m, n) Dehn filling; the sign
/// is not fixed, the magnitude is exact.
inline Rational dehn_core_linking(long long m, long long n) {
    if (n == 0) fail(ErrorCode::ZeroDenominator, "n must be nonzero");
    if (std::gcd(m, n) != 1) fail(ErrorCode::NotCoprime, "m and n must be coprime");
    return make_rational(static_cast<long>(m), static_cast<long>(n));
}

struct RationalApprox {
    long long p = 0;
    long long q = 1;
    double error = 0;
};

/// Fraction p/q with q <= q_max nearest to x (ties go to the smaller q),
/// found exactly from the continued fraction of the binary64 value of x.
inline RationalApprox best_rational_approx(double x, long long q_max) {
    if (!std::isfinite(x)) fail(ErrorCode::InvalidParams, "x must be finite");
    if (q_max < 1) fail(ErrorCode::InvalidParams, "q_max must be at least 1");
    const Rational target(x);
    auto floor_of = [](const Rational& r) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
        return a;
    };
    // Convergents h/k, stopping before the denominator exceeds q_max.
    Integer a = floor_of(target);
    Integer h_prev = 1, k_prev = 0, h = a, k = 1;
    Rational rest = target - a;
    Rational best = make_rational(h, k);
    while (rest != 0) {
        rest = 1 / rest;
        a = floor_of(rest);
        rest -= a;
        const Integer k_next = a * k + k_prev;
        if (k_next > static_cast<long>(q_max)) {
            // Largest admissible semiconvergent.
            const Integer t = (Integer(static_cast<long>(q_max)) - k_prev) / k;
            if (t > 0) {
                const Rational semi = make_rational(t * h + h_prev, t * k + k_prev);
                const Rational ds = abs_value(semi - target), db = abs_value(best - target);
                if (ds < db || (ds == db && semi.get_den() < best.get_den())) best = semi;
            }
            break;
        }
        const Integer h_next = a * h + h_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        best = make_rational(h, k);
    }
    return {best.get_num().get_si(), best.get_den().get_si(), abs_value(best - target).get_d()};
}

struct TubeConstants {
    double c = 1.0;
    double C = 1.0;
};

struct TubeParams {
    double epsilon = 0;
    double theta = 0;
    std::optional<long long> q;
    TubeConstants constants;
    long long q_max = 1000;
};

enum class TubeBranch { Volume, TorsionOrder, HopfSize };

inline std::string to_string(TubeBranch b) {
    switch (b) {
        case TubeBranch::Volume: return "volume";
        case TubeBranch::TorsionOrder: return "torsion_order";
        case TubeBranch::HopfSize: return "hopf_size";
    }
    return "volume";
}

struct TubeReport {
    double R_lower = 0;
    double R_upper = 0;
    RationalApprox best_approx;       // M / N_w approximating theta / 2pi
    long long order_p = 0;            // p / q nearest theta / 2pi at the core's order
    double angle_error = 0;           // |theta / 2pi - p / q|
    double volume_threshold = 0;
    double order_threshold = 0;
    double hopf_threshold = 0;
    double hopf_size_lower = 0;
    long long N_w = 1;
    double delta = 0;
    double tube_count_bound = 0;
    double linking_per_pair = 0;      // |M / N_w - p / q| * N_w^2
    double hopf_difference = 0;       // 2 * tubes^2 * linking_per_pair
    TubeBranch branch = TubeBranch::Volume;
};

inline TubeReport tube_report(const TubeParams& in) {
    const double eps = in.epsilon;
    const auto& k = in.constants;
    if (!detail::positive(eps)) fail(ErrorCode::InvalidParams, "epsilon must be positive");
    if (!std::isfinite(in.theta)) fail(ErrorCode::InvalidParams, "theta must be finite");
    if (in.q && *in.q < 1) fail(ErrorCode::InvalidParams, "q must be at least 1");
    if (in.q_max < 1) fail(ErrorCode::InvalidParams, "q_max must be at least 1");
    if (!detail::positive(k.c) || !detail::positive(k.C)) fail(ErrorCode::InvalidParams, "constants must be positive");

    TubeReport r;
    const double x = in.theta / (2 * std::numbers::pi);
    r.R_lower = k.c * std::pow(eps, -0.5);
    r.R_upper = k.C * std::pow(eps, -7.0 / 12.0);
    r.volume_threshold = k.c * std::pow(eps, -1.0 / 6.0);
    r.order_threshold = r.volume_threshold;
    r.hopf_threshold = k.c * std::pow(eps, -0.25);

    const long long q = in.q.value_or(1);
    r.best_approx = best_rational_approx(x, in.q_max);
    r.order_p = static_cast<long long>(std::llround(x * static_cast<double>(q)));
    const Rational xq(x);
    r.angle_error = abs_value(xq - make_rational(static_cast<long>(r.order_p), static_cast<long>(q))).get_d();
    r.hopf_size_lower = k.c * r.angle_error * r.R_lower * r.R_lower;

    r.N_w = std::lcm(q, r.best_approx.q);
    r.delta = std::numbers::pi / static_cast<double>(r.N_w);
    r.tube_count_bound = r.R_upper / (r.delta * r.delta) / static_cast<double>(r.N_w);
    // (M/N_w - p/q) N_w^2 = (M q - p N_w) N_w / q, an integer since q | N_w.
    const Integer M = Integer(static_cast<long>(r.best_approx.p)) * static_cast<long>(r.N_w / r.best_approx.q);
    const Integer num = M * static_cast<long>(q) - Integer(static_cast<long>(r.order_p)) * static_cast<long>(r.N_w);
    r.linking_per_pair = abs_value(make_rational(num * static_cast<long>(r.N_w), Integer(static_cast<long>(q)))).get_d();
    r.hopf_difference = 2 * r.tube_count_bound * r.tube_count_bound * r.linking_per_pair;

    if (!in.q || static_cast<double>(*in.q) >= r.order_threshold)
        r.branch = TubeBranch::TorsionOrder;
    else if (r.hopf_size_lower >= r.hopf_threshold)
        r.branch = TubeBranch::HopfSize;
    else
        r.branch = TubeBranch::Volume;
    return r;
}

}  // namespace hopfkit

#endif
