#ifndef HOPFKIT_FAMILIES_HPP
#define HOPFKIT_FAMILIES_HPP

#include <array>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "hopfkit/errors.hpp"
#include "hopfkit/rational.hpp"
#include "hopfkit/smith.hpp"

// Matrix-level oracles for the exponential-growth families.
namespace hopfkit {

/// Action of a torus homeomorphism on H1 in the basis (a, b), row-major;
/// columns are the images of a and b.
struct AnosovSpec {
    std::array<long, 4> m{2, 1, 1, 1};

    long det() const { return m[0] * m[3] - m[1] * m[2]; }
    long trace() const { return m[0] + m[3]; }
    AnosovSpec inverse() const {
        const long d = det();
        return {{d * m[3], -d * m[1], -d * m[2], d * m[0]}};
    }
    friend bool operator==(const AnosovSpec&, const AnosovSpec&) = default;
};

inline void require_anosov(const AnosovSpec& s) {
    if (std::labs(s.det()) != 1) fail(ErrorCode::NotAnosov, "determinant must be +1 or -1");
    if (std::labs(s.trace()) <= 2) fail(ErrorCode::NotAnosov, "|trace| must exceed 2");
}

/// Coordinates (x, y) of Psi^N b = x a + y b, exact.
inline std::pair<Integer, Integer> anosov_power_on_b(const AnosovSpec& s, int N) {
    require_anosov(s);
    if (N < 0) fail(ErrorCode::InvalidParams, "N must be nonnegative");
    Integer x = 0, y = 1;
    for (int k = 0; k < N; ++k) {
        const Integer nx = s.m[0] * x + s.m[1] * y;
        const Integer ny = s.m[2] * x + s.m[3] * y;
        x = nx;
        y = ny;
    }
    return {x, y};
}

/// |<Psi^N b, a>| with <a, b> = 1, i.e. |y| for Psi^N b = x a + y b.
inline Integer anosov_pairing(const AnosovSpec& s, int N) {
    Integer y = anosov_power_on_b(s, N).second;
    return abs(y);
}

struct GrowthCertificate {
    std::vector<std::pair<int, Integer>> table;  // N = 1 .. N_max
    Rational min_ratio;                          // min pairing(N+1) / pairing(N)
    Rational last_ratio;                         // pairing(N_max) / pairing(N_max - 1)
    double c_estimate = 0;                       // min_ratio - 1
};

inline GrowthCertificate growth_certificate(const AnosovSpec& s, int N_max) {
    require_anosov(s);
    if (N_max < 2) fail(ErrorCode::InvalidParams, "N_max must be at least 2");
    GrowthCertificate g;
    for (int N = 1; N <= N_max; ++N) g.table.emplace_back(N, anosov_pairing(s, N));
    bool any = false;
    for (std::size_t k = 1; k < g.table.size(); ++k) {
        const Integer& lo = g.table[k - 1].second;
        if (lo == 0) continue;
        const Rational r = make_rational(g.table[k].second, lo);
        if (!any || r < g.min_ratio) g.min_ratio = r;
        g.last_ratio = r;
        any = true;
    }
    if (!any || g.min_ratio <= 1) fail(ErrorCode::InconsistencyDetected, "pairings do not grow");
    g.c_estimate = Rational(g.min_ratio - 1).get_d();
    return g;
}

struct DehnFillingH1 {
    int free_rank_delta = 0;          // change in rank of H1 from X to X(m, n)
    std::optional<Integer> core_order;  // empty when the core is non-torsion
    Integer h1_torsion_order = 1;
};

/// H1 of the (m, n) filling of a one-cusped X with H1(X) = Z, meridian
/// null-homologous and longitude a generator. The filling kills m mu + n lambda.
inline DehnFillingH1 dehn_filling_h1(long m, long n) {
    if (std::gcd(m, n) != 1) fail(ErrorCode::NotCoprime, "m and n must be coprime");
    // m t + n r = 1: the dual slope is -r mu + t lambda, which is t in H1.
    Integer g, t, r;
    mpz_gcdext(g.get_mpz_t(), t.get_mpz_t(), r.get_mpz_t(), Integer(m).get_mpz_t(), Integer(n).get_mpz_t());
    const auto snf = smith_normal_form(IntMatrix{{Integer(n)}});
    DehnFillingH1 out;
    out.free_rank_delta = snf.rank == 1 ? -1 : 0;
    if (snf.rank == 0) return out;
    const Integer order = abs(snf.invariant_factors[0]);
    out.h1_torsion_order = order;
    Integer gt;
    mpz_gcd(gt.get_mpz_t(), t.get_mpz_t(), order.get_mpz_t());
    out.core_order = order / gt;
    return out;
}

}  // namespace hopfkit

#endif
