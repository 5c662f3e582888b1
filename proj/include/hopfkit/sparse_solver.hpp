#ifndef HOPFKIT_SPARSE_SOLVER_HPP
#define HOPFKIT_SPARSE_SOLVER_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "hopfkit/complex.hpp"
#include "hopfkit/rational.hpp"

namespace hopfkit {

/// Exact rational LU-style factorization of a sparse integer matrix by
/// Gaussian elimination with Markowitz pivoting. Reusable for many right-hand
/// sides: solve() returns one exact solution of A x = b (free variables set to
/// zero) or nullopt when b is not in the column space.
class SparseRationalSolver {
public:
    using Row = std::vector<std::pair<int, Rational>>;  // sorted by column

    explicit SparseRationalSolver(const SparseIntMatrix& a) : rows_(a.rows), cols_(a.cols) {
        std::vector<Row> work(static_cast<std::size_t>(rows_));
        for (int c = 0; c < cols_; ++c)
            for (const auto& [r, v] : a.columns[static_cast<std::size_t>(c)])
                work[static_cast<std::size_t>(r)].push_back({c, Rational(v)});
        for (auto& row : work) std::sort(row.begin(), row.end(), by_col);
        factor(std::move(work));
    }

    int rank() const { return static_cast<int>(pivots_.size()); }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    /// Columns that carry a pivot; they form a basis of the column space.
    std::vector<int> pivot_columns() const {
        std::vector<int> out;
        for (const auto& p : pivots_) out.push_back(p.col);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::optional<std::vector<Rational>> solve(std::vector<Rational> b) const {
        for (const auto& p : pivots_) {
            const Rational& bp = b[static_cast<std::size_t>(p.row)];
            if (bp == 0) continue;
            for (const auto& [r, f] : p.ops) b[static_cast<std::size_t>(r)] -= f * bp;
        }
        for (int r = 0; r < rows_; ++r)
            if (!is_pivot_row_[static_cast<std::size_t>(r)] && b[static_cast<std::size_t>(r)] != 0)
                return std::nullopt;
        std::vector<Rational> x(static_cast<std::size_t>(cols_));
        for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
            Rational acc = b[static_cast<std::size_t>(it->row)];
            Rational diag;
            for (const auto& [c, v] : it->u) {
                if (c == it->col)
                    diag = v;
                else if (x[static_cast<std::size_t>(c)] != 0)
                    acc -= v * x[static_cast<std::size_t>(c)];
            }
            x[static_cast<std::size_t>(it->col)] = acc / diag;
        }
        return x;
    }

    bool in_column_space(const std::vector<Rational>& b) const { return solve(b).has_value(); }

    /// Basis of the right null space, one vector per non-pivot column.
    std::vector<std::vector<Rational>> null_space(const SparseIntMatrix& a) const {
        std::vector<char> is_pivot_col(static_cast<std::size_t>(cols_), 0);
        for (const auto& p : pivots_) is_pivot_col[static_cast<std::size_t>(p.col)] = 1;
        std::vector<std::vector<Rational>> out;
        for (int f = 0; f < cols_; ++f) {
            if (is_pivot_col[static_cast<std::size_t>(f)]) continue;
            std::vector<Rational> b(static_cast<std::size_t>(rows_));
            for (const auto& [r, v] : a.columns[static_cast<std::size_t>(f)]) b[static_cast<std::size_t>(r)] = -v;
            auto x = solve(std::move(b));
            (*x)[static_cast<std::size_t>(f)] = 1;
            out.push_back(std::move(*x));
        }
        return out;
    }

private:
    struct Pivot {
        int row;
        int col;
        Row u;                                        // pivot row at elimination time
        std::vector<std::pair<int, Rational>> ops;    // (target row, multiplier)
    };

    static bool by_col(const std::pair<int, Rational>& a, const std::pair<int, Rational>& b) {
        return a.first < b.first;
    }

    static const Rational* lookup(const Row& row, int col) {
        auto it = std::lower_bound(row.begin(), row.end(), col,
                                   [](const auto& e, int c) { return e.first < c; });
        if (it == row.end() || it->first != col) return nullptr;
        return &it->second;
    }

    void factor(std::vector<Row> work) {
        is_pivot_row_.assign(static_cast<std::size_t>(rows_), 0);
        std::vector<std::vector<int>> col_rows(static_cast<std::size_t>(cols_));
        std::vector<int> col_count(static_cast<std::size_t>(cols_), 0);
        std::set<std::pair<std::size_t, int>> by_length;
        for (int r = 0; r < rows_; ++r) {
            const auto& row = work[static_cast<std::size_t>(r)];
            for (const auto& [c, _] : row) {
                col_rows[static_cast<std::size_t>(c)].push_back(r);
                ++col_count[static_cast<std::size_t>(c)];
            }
            if (!row.empty()) by_length.insert({row.size(), r});
        }
        std::vector<int> stamp(static_cast<std::size_t>(rows_), -1);
        std::vector<char> col_done(static_cast<std::size_t>(cols_), 0);

        while (!by_length.empty()) {
            const int pr = by_length.begin()->second;
            by_length.erase(by_length.begin());
            Row& prow = work[static_cast<std::size_t>(pr)];
            // Markowitz: sparsest column within the sparsest row.
            int pc = -1;
            int best = 0;
            for (const auto& [c, _] : prow) {
                const int cnt = col_count[static_cast<std::size_t>(c)];
                if (pc < 0 || cnt < best) {
                    pc = c;
                    best = cnt;
                }
            }
            Pivot piv{pr, pc, prow, {}};
            is_pivot_row_[static_cast<std::size_t>(pr)] = 1;
            col_done[static_cast<std::size_t>(pc)] = 1;
            for (const auto& [c, _] : prow) --col_count[static_cast<std::size_t>(c)];
            const Rational pval = *lookup(prow, pc);

            const int tag = static_cast<int>(pivots_.size());
            for (int r : col_rows[static_cast<std::size_t>(pc)]) {
                if (is_pivot_row_[static_cast<std::size_t>(r)] || stamp[static_cast<std::size_t>(r)] == tag) continue;
                stamp[static_cast<std::size_t>(r)] = tag;
                Row& row = work[static_cast<std::size_t>(r)];
                const Rational* rv = lookup(row, pc);
                if (rv == nullptr) continue;
                Rational factor = *rv / pval;
                by_length.erase({row.size(), r});
                for (const auto& [c, _] : row) --col_count[static_cast<std::size_t>(c)];
                Row merged;
                merged.reserve(row.size() + prow.size());
                std::size_t i = 0, j = 0;
                while (i < row.size() || j < prow.size()) {
                    if (j == prow.size() || (i < row.size() && row[i].first < prow[j].first)) {
                        merged.push_back(std::move(row[i++]));
                    } else if (i == row.size() || prow[j].first < row[i].first) {
                        merged.push_back({prow[j].first, -factor * prow[j].second});
                        col_rows[static_cast<std::size_t>(prow[j].first)].push_back(r);
                        ++j;
                    } else {
                        Rational v = row[i].second - factor * prow[j].second;
                        if (v != 0) merged.push_back({row[i].first, std::move(v)});
                        ++i;
                        ++j;
                    }
                }
                row = std::move(merged);
                for (const auto& [c, _] : row) ++col_count[static_cast<std::size_t>(c)];
                if (!row.empty()) by_length.insert({row.size(), r});
                piv.ops.push_back({r, std::move(factor)});
            }
            col_rows[static_cast<std::size_t>(pc)].clear();
            pivots_.push_back(std::move(piv));
        }
    }

    int rows_;
    int cols_;
    std::vector<Pivot> pivots_;
    std::vector<char> is_pivot_row_;
};

/// Exact rank over Q.
inline int rational_rank(const SparseIntMatrix& a) { return SparseRationalSolver(a).rank(); }

}  // namespace hopfkit

#endif
