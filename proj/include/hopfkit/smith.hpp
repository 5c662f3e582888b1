#ifndef HOPFKIT_SMITH_HPP
#define HOPFKIT_SMITH_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "hopfkit/complex.hpp"
#include "hopfkit/rational.hpp"

namespace hopfkit {

using IntMatrix = std::vector<std::vector<Integer>>;

inline IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size();
    const std::size_t k = b.size();
    const std::size_t m = k == 0 ? 0 : b[0].size();
    IntMatrix c(n, std::vector<Integer>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
        }
    return c;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

struct SnfResult {
    std::vector<Integer> invariant_factors;  // nonzero diagonal, each divides the next
    int rank = 0;
    IntMatrix U;  // rows x rows, unimodular
    IntMatrix S;  // diagonal form
    IntMatrix V;  // cols x cols, unimodular; A = U * S * V
};

namespace detail {

// Smith reduction of a dense matrix in place. When track is set, U and V are
// maintained so that A_original = U * S * V throughout.
class SmithReducer {
public:
    SmithReducer(IntMatrix a, bool track) : s_(std::move(a)), track_(track) {
        m_ = s_.size();
        n_ = m_ == 0 ? 0 : s_[0].size();
        if (track_) {
            u_ = identity_matrix(m_);
            v_ = identity_matrix(n_);
        }
    }

    void run() {
        const std::size_t lim = std::min(m_, n_);
        for (std::size_t t = 0; t < lim; ++t) {
            if (!move_min_to(t, true)) break;
            for (;;) {
                bool clean = true;
                for (std::size_t i = t + 1; i < m_; ++i) {
                    if (s_[i][t] == 0) continue;
                    Integer q;
                    mpz_fdiv_q(q.get_mpz_t(), s_[i][t].get_mpz_t(), s_[t][t].get_mpz_t());
                    row_add(i, t, -q);
                    if (s_[i][t] != 0) clean = false;
                }
                for (std::size_t j = t + 1; j < n_; ++j) {
                    if (s_[t][j] == 0) continue;
                    Integer q;
                    mpz_fdiv_q(q.get_mpz_t(), s_[t][j].get_mpz_t(), s_[t][t].get_mpz_t());
                    col_add(j, t, -q);
                    if (s_[t][j] != 0) clean = false;
                }
                if (!clean) {
                    move_min_to(t, false);
                    continue;
                }
                bool divisible = true;
                for (std::size_t i = t + 1; i < m_ && divisible; ++i)
                    for (std::size_t j = t + 1; j < n_; ++j)
                        if (s_[i][j] != 0 && !mpz_divisible_p(s_[i][j].get_mpz_t(), s_[t][t].get_mpz_t())) {
                            row_add(t, i, 1);
                            divisible = false;
                            break;
                        }
                if (divisible) break;
            }
            if (s_[t][t] < 0) negate_row(t);
        }
    }

    IntMatrix& S() { return s_; }
    IntMatrix& U() { return u_; }
    IntMatrix& V() { return v_; }

private:
    // Moves the smallest nonzero |entry| to (t,t). With `whole`, searches the
    // trailing submatrix; otherwise only row t and column t.
    bool move_min_to(std::size_t t, bool whole) {
        std::size_t bi = m_, bj = n_;
        Integer best;
        auto consider = [&](std::size_t i, std::size_t j) {
            if (s_[i][j] == 0) return;
            Integer a = abs(s_[i][j]);
            if (bi == m_ || a < best) {
                best = a;
                bi = i;
                bj = j;
            }
        };
        if (whole) {
            for (std::size_t i = t; i < m_; ++i)
                for (std::size_t j = t; j < n_; ++j) consider(i, j);
        } else {
            for (std::size_t i = t; i < m_; ++i) consider(i, t);
            for (std::size_t j = t; j < n_; ++j) consider(t, j);
        }
        if (bi == m_) return false;
        if (bi != t) swap_rows(bi, t);
        if (bj != t) swap_cols(bj, t);
        return true;
    }

    // row_i += k * row_j ; U <- U E^{-1} : col_j(U) -= k col_i(U)
    void row_add(std::size_t i, std::size_t j, const Integer& k) {
        if (k == 0) return;
        for (std::size_t c = 0; c < n_; ++c)
            if (s_[j][c] != 0) s_[i][c] += k * s_[j][c];
        if (track_)
            for (std::size_t r = 0; r < m_; ++r)
                if (u_[r][i] != 0) u_[r][j] -= k * u_[r][i];
    }

    // col_i += k * col_j ; V <- F^{-1} V : row_j(V) -= k row_i(V)
    void col_add(std::size_t i, std::size_t j, const Integer& k) {
        if (k == 0) return;
        for (std::size_t r = 0; r < m_; ++r)
            if (s_[r][j] != 0) s_[r][i] += k * s_[r][j];
        if (track_)
            for (std::size_t c = 0; c < n_; ++c)
                if (v_[i][c] != 0) v_[j][c] -= k * v_[i][c];
    }

    void swap_rows(std::size_t a, std::size_t b) {
        std::swap(s_[a], s_[b]);
        if (track_)
            for (std::size_t r = 0; r < m_; ++r) std::swap(u_[r][a], u_[r][b]);
    }

    void swap_cols(std::size_t a, std::size_t b) {
        for (std::size_t r = 0; r < m_; ++r) std::swap(s_[r][a], s_[r][b]);
        if (track_) std::swap(v_[a], v_[b]);
    }

    void negate_row(std::size_t t) {
        for (auto& x : s_[t]) x = -x;
        if (track_)
            for (std::size_t r = 0; r < m_; ++r) u_[r][t] = -u_[r][t];
    }

    IntMatrix s_, u_, v_;
    std::size_t m_ = 0, n_ = 0;
    bool track_;
};

}  // namespace detail

/// Smith normal form with unimodular transforms, A = U * S * V.
inline SnfResult smith_normal_form(const IntMatrix& a) {
    detail::SmithReducer red(a, true);
    red.run();
    SnfResult out;
    out.S = std::move(red.S());
    out.U = std::move(red.U());
    out.V = std::move(red.V());
    const std::size_t lim = std::min(out.S.size(), out.S.empty() ? std::size_t{0} : out.S[0].size());
    for (std::size_t t = 0; t < lim; ++t)
        if (out.S[t][t] != 0) out.invariant_factors.push_back(out.S[t][t]);
    out.rank = static_cast<int>(out.invariant_factors.size());
    return out;
}

inline IntMatrix to_int_matrix(const SparseIntMatrix& a) {
    IntMatrix d(static_cast<std::size_t>(a.rows), std::vector<Integer>(static_cast<std::size_t>(a.cols), 0));
    for (int c = 0; c < a.cols; ++c)
        for (const auto& [r, v] : a.columns[static_cast<std::size_t>(c)])
            d[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
    return d;
}

/// Nonzero invariant factors of a sparse integer matrix. Unit pivots are
/// eliminated sparsely (each contributes a factor 1); the residual block is
/// reduced densely.
inline std::vector<Integer> invariant_factors(const SparseIntMatrix& a) {
    using SRow = std::map<int, Integer>;
    std::vector<SRow> rows(static_cast<std::size_t>(a.rows));
    std::vector<std::set<int>> col_rows(static_cast<std::size_t>(a.cols));
    for (int c = 0; c < a.cols; ++c)
        for (const auto& [r, v] : a.columns[static_cast<std::size_t>(c)]) {
            rows[static_cast<std::size_t>(r)][c] = v;
            col_rows[static_cast<std::size_t>(c)].insert(r);
        }
    std::vector<char> row_alive(rows.size(), 1);
    std::size_t unit_pivots = 0;

    std::set<std::pair<std::size_t, int>> by_length;
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (!rows[r].empty()) by_length.insert({rows[r].size(), static_cast<int>(r)});

    std::vector<std::pair<std::size_t, int>> deferred;  // rows without unit entries
    while (!by_length.empty()) {
        auto [len, pr] = *by_length.begin();
        by_length.erase(by_length.begin());
        SRow& prow = rows[static_cast<std::size_t>(pr)];
        int pc = -1;
        std::size_t best = 0;
        for (const auto& [c, v] : prow) {
            if (abs(v) != 1) continue;
            const std::size_t cnt = col_rows[static_cast<std::size_t>(c)].size();
            if (pc < 0 || cnt < best) {
                pc = c;
                best = cnt;
            }
        }
        if (pc < 0) {
            deferred.push_back({len, pr});
            continue;
        }
        // Rows changed by elimination may have gained unit entries.
        for (auto& d : deferred) by_length.insert(d);
        deferred.clear();

        const Integer pv = prow[pc];
        row_alive[static_cast<std::size_t>(pr)] = 0;
        for (const auto& [c, _] : prow) col_rows[static_cast<std::size_t>(c)].erase(pr);
        std::vector<int> targets(col_rows[static_cast<std::size_t>(pc)].begin(),
                                 col_rows[static_cast<std::size_t>(pc)].end());
        for (int r : targets) {
            SRow& row = rows[static_cast<std::size_t>(r)];
            by_length.erase({row.size(), r});
            const Integer k = row[pc] * pv;  // pv = +-1 so pv^{-1} = pv
            for (const auto& [c, v] : prow) {
                if (c == pc) continue;
                Integer nv = row.count(c) ? Integer(row[c] - k * v) : Integer(-k * v);
                if (nv == 0) {
                    row.erase(c);
                    col_rows[static_cast<std::size_t>(c)].erase(r);
                } else {
                    row[c] = nv;
                    col_rows[static_cast<std::size_t>(c)].insert(r);
                }
            }
            row.erase(pc);
            if (!row.empty()) by_length.insert({row.size(), r});
        }
        col_rows[static_cast<std::size_t>(pc)].clear();
        prow.clear();
        ++unit_pivots;
    }

    // Residual block.
    std::vector<int> rr;
    std::set<int> cc;
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (row_alive[r] && !rows[r].empty()) {
            rr.push_back(static_cast<int>(r));
            for (const auto& [c, _] : rows[r]) cc.insert(c);
        }
    std::vector<int> cols(cc.begin(), cc.end());
    IntMatrix block(rr.size(), std::vector<Integer>(cols.size(), 0));
    for (std::size_t i = 0; i < rr.size(); ++i)
        for (const auto& [c, v] : rows[static_cast<std::size_t>(rr[i])]) {
            auto it = std::lower_bound(cols.begin(), cols.end(), c);
            block[i][static_cast<std::size_t>(it - cols.begin())] = v;
        }
    std::vector<Integer> factors(unit_pivots, Integer(1));
    if (!rr.empty()) {
        detail::SmithReducer red(std::move(block), false);
        red.run();
        auto& s = red.S();
        for (std::size_t t = 0; t < std::min(s.size(), cols.size()); ++t)
            if (s[t][t] != 0) factors.push_back(s[t][t]);
    }
    return factors;
}

}  // namespace hopfkit

#endif
