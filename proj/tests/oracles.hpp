#ifndef HOPFKIT_TESTS_ORACLES_HPP
#define HOPFKIT_TESTS_ORACLES_HPP

// Independent reference computations for the test suite. Deliberately naive:
// dense matrices, textbook elimination, brute-force enumeration.

#include <algorithm>
#include <cstddef>
#include <map>
#include <random>
#include <vector>

#include "hopfkit/complex.hpp"
#include "hopfkit/rational.hpp"

namespace oracle {

using hopfkit::Integer;
using hopfkit::Rational;
using QMatrix = std::vector<std::vector<Rational>>;

inline QMatrix to_q(const std::vector<std::vector<long>>& a) {
    QMatrix q;
    for (const auto& row : a) {
        std::vector<Rational> r;
        for (long v : row) r.emplace_back(v);
        q.push_back(std::move(r));
    }
    return q;
}

/// Row-echelon rank by plain Gaussian elimination.
inline int rank(QMatrix a) {
    int r = 0;
    const std::size_t m = a.size();
    const std::size_t n = m == 0 ? 0 : a[0].size();
    for (std::size_t c = 0; c < n && r < static_cast<int>(m); ++c) {
        std::size_t p = static_cast<std::size_t>(r);
        while (p < m && a[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(a[p], a[static_cast<std::size_t>(r)]);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == static_cast<std::size_t>(r) || a[i][c] == 0) continue;
            const Rational k = a[i][c] / a[static_cast<std::size_t>(r)][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= k * a[static_cast<std::size_t>(r)][j];
        }
        ++r;
    }
    return r;
}

/// b lies in the column space of a iff appending it does not raise the rank.
inline bool in_column_space(const QMatrix& a, const std::vector<Rational>& b) {
    QMatrix aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    return rank(aug) == rank(a);
}

/// Signed faces of an ordered simplex: sum_i (-1)^i [v without v_i], keyed by
/// sorted vertex tuple with the sign of the sorting permutation folded in.
inline std::map<std::vector<int>, int> simplex_boundary(const std::vector<int>& v) {
    std::map<std::vector<int>, int> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::vector<int> f;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (j != i) f.push_back(v[j]);
        int parity = 1;
        for (std::size_t a = 0; a < f.size(); ++a)
            for (std::size_t b = a + 1; b < f.size(); ++b)
                if (f[a] > f[b]) parity = -parity;
        std::sort(f.begin(), f.end());
        out[f] += (i % 2 == 0 ? 1 : -1) * parity;
    }
    return out;
}

/// Euler characteristic from simplex counts.
inline long euler_characteristic(const hopfkit::Complex3& c) {
    long chi = 0;
    for (int k = 0; k <= 3; ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(c.simplex_count(k));
    return chi;
}

/// Deterministic generator for property tests.
class Gen {
public:
    explicit Gen(unsigned seed) : rng_(seed) {}
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
    Rational rational(int span = 5) {
        int den = uniform(1, span);
        return hopfkit::make_rational(uniform(-span, span), den);
    }
    std::mt19937& engine() { return rng_; }

private:
    std::mt19937 rng_;
};

inline std::vector<std::vector<long>> random_sparse_matrix(Gen& g, int rows, int cols, double density, int span) {
    std::vector<std::vector<long>> a(static_cast<std::size_t>(rows), std::vector<long>(static_cast<std::size_t>(cols), 0));
    for (auto& row : a)
        for (auto& v : row)
            if (g.coin(density)) v = g.uniform(-span, span);
    return a;
}

inline hopfkit::SparseIntMatrix to_sparse(const std::vector<std::vector<long>>& a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    hopfkit::SparseIntMatrix s(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r)
            if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0)
                s.columns[static_cast<std::size_t>(c)].push_back({r, a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]});
    return s;
}

}  // namespace oracle

#endif
