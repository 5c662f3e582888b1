#ifndef HOPFKIT_LP_HPP
#define HOPFKIT_LP_HPP

#include <cstddef>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "hopfkit/errors.hpp"
#include "hopfkit/rational.hpp"

namespace hopfkit {

using QMatrix = std::vector<std::vector<Rational>>;

/// Optimal solution of min c.x subject to A x = b, x >= 0, with a dual
/// vector y such that A^T y <= c and b.y = c.x (checked exactly).
struct LpSolution {
    std::vector<Rational> x;
    std::vector<Rational> dual;
    Rational objective;
};

namespace detail {

class Tableau {
public:
    Tableau(const QMatrix& a, const std::vector<Rational>& b) : m_(a.size()), n_(a.empty() ? 0 : a[0].size()) {
        t_.assign(m_, std::vector<Rational>(n_ + m_ + 1));
        row_sign_.assign(m_, 1);
        for (std::size_t i = 0; i < m_; ++i) {
            row_sign_[i] = b[i] < 0 ? -1 : 1;
            for (std::size_t j = 0; j < n_; ++j) t_[i][j] = row_sign_[i] * a[i][j];
            t_[i][n_ + i] = 1;
            t_[i][n_ + m_] = row_sign_[i] * b[i];
            basis_.push_back(n_ + i);
        }
    }

    // Minimizes cost over the current basis; entering columns restricted to
    // the structural ones. Bland's rule throughout. Returns false if unbounded.
    bool optimize(const std::vector<Rational>& cost) {
        for (;;) {
            std::size_t enter = n_;
            for (std::size_t j = 0; j < n_; ++j) {
                if (reduced_cost(cost, j) < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == n_) return true;
            std::size_t leave = t_.size();
            Rational best;
            for (std::size_t i = 0; i < t_.size(); ++i) {
                if (t_[i][enter] <= 0) continue;
                Rational ratio = t_[i][n_ + m_] / t_[i][enter];
                if (leave == t_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == t_.size()) return false;
            pivot(leave, enter);
        }
    }

    Rational reduced_cost(const std::vector<Rational>& cost, std::size_t j) const {
        Rational r = cost[j];
        for (std::size_t i = 0; i < t_.size(); ++i)
            if (t_[i][j] != 0 && cost[basis_[i]] != 0) r -= cost[basis_[i]] * t_[i][j];
        return r;
    }

    void pivot(std::size_t row, std::size_t col) {
        const Rational p = t_[row][col];
        for (auto& v : t_[row]) v /= p;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i == row || t_[i][col] == 0) continue;
            const Rational k = t_[i][col];
            for (std::size_t j = 0; j < t_[i].size(); ++j)
                if (t_[row][j] != 0) t_[i][j] -= k * t_[row][j];
        }
        basis_[row] = col;
    }

    // After phase one: pivot artificial variables out of the basis or drop
    // their (redundant) rows.
    void expel_artificials() {
        for (std::size_t i = 0; i < t_.size();) {
            if (basis_[i] < n_) {
                ++i;
                continue;
            }
            std::size_t col = n_;
            for (std::size_t j = 0; j < n_; ++j)
                if (t_[i][j] != 0) {
                    col = j;
                    break;
                }
            if (col == n_) {
                t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            pivot(i, col);
            ++i;
        }
    }

    std::vector<Rational> primal() const {
        std::vector<Rational> x(n_);
        for (std::size_t i = 0; i < t_.size(); ++i)
            if (basis_[i] < n_) x[basis_[i]] = t_[i][n_ + m_];
        return x;
    }

    // y_k = sum_i c_{B_i} (B^{-1})_{i,k}, read off the artificial columns.
    std::vector<Rational> dual(const std::vector<Rational>& cost) const {
        std::vector<Rational> y(m_);
        for (std::size_t k = 0; k < m_; ++k) {
            Rational acc = 0;
            for (std::size_t i = 0; i < t_.size(); ++i)
                if (basis_[i] < n_ && t_[i][n_ + k] != 0) acc += cost[basis_[i]] * t_[i][n_ + k];
            y[k] = row_sign_[k] * acc;
        }
        return y;
    }

    Rational phase_one_value() const {
        Rational v = 0;
        for (std::size_t i = 0; i < t_.size(); ++i)
            if (basis_[i] >= n_) v += t_[i][n_ + m_];
        return v;
    }

    std::size_t structural() const { return n_; }
    std::size_t rows() const { return m_; }

private:
    std::size_t m_, n_;
    QMatrix t_;
    std::vector<std::size_t> basis_;
    std::vector<int> row_sign_;
};

}  // namespace detail

/// Exact two-phase simplex. Returns nullopt when infeasible; throws
/// InconsistencyDetected if unbounded or if the certificate fails.
inline std::optional<LpSolution> solve_lp(const QMatrix& a, const std::vector<Rational>& b,
                                          const std::vector<Rational>& c) {
    detail::Tableau tab(a, b);
    const std::size_t n = tab.structural();
    const std::size_t m = tab.rows();
    // Phase one: drive the artificial sum to zero. Artificial columns never
    // re-enter the basis.
    std::vector<Rational> aux(n + m);
    for (std::size_t k = 0; k < m; ++k) aux[n + k] = 1;
    tab.optimize(aux);
    if (tab.phase_one_value() != 0) return std::nullopt;
    tab.expel_artificials();

    std::vector<Rational> cost(n + m);
    for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
    if (!tab.optimize(cost)) fail(ErrorCode::InconsistencyDetected, "linear program is unbounded");

    LpSolution sol;
    sol.x = tab.primal();
    sol.dual = tab.dual(cost);
    sol.objective = 0;
    for (std::size_t j = 0; j < n; ++j) sol.objective += c[j] * sol.x[j];

    // Exact certificate: primal feasibility, dual feasibility, equal objectives.
    Rational dual_obj = 0;
    for (std::size_t i = 0; i < m; ++i) {
        Rational row = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (a[i][j] != 0) row += a[i][j] * sol.x[j];
        if (row != b[i]) fail(ErrorCode::InconsistencyDetected, "simplex solution violates A x = b");
        dual_obj += b[i] * sol.dual[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (sol.x[j] < 0) fail(ErrorCode::InconsistencyDetected, "simplex solution is negative");
        Rational col = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (a[i][j] != 0) col += a[i][j] * sol.dual[i];
        if (col > c[j]) fail(ErrorCode::InconsistencyDetected, "dual certificate infeasible");
    }
    if (dual_obj != sol.objective) fail(ErrorCode::InconsistencyDetected, "duality gap in simplex certificate");
    return sol;
}

/// Arc of an undirected unit-capacity network: flow x in [-1, 1] from tail to
/// head, earning gain * x.
struct UnitArc {
    int tail;
    int head;
    Rational gain;
};

struct CirculationResult {
    std::vector<int> flow;            // per arc, in {-1, 0, 1}
    std::vector<Rational> potential;  // per node
    Rational value;                   // max sum gain * flow
};

/// Maximizes sum gain_e x_e over circulations with |x_e| <= 1 by successive
/// shortest paths with exact rational costs. The returned potentials p solve
/// the dual problem min_p sum_e |gain_e + p_tail - p_head| (value checked).
inline CirculationResult max_gain_circulation(int nodes, const std::vector<UnitArc>& arcs) {
    const std::size_t nn = static_cast<std::size_t>(nodes);
    // Start every arc at its profitable extreme x = sign(gain); the residual
    // flow y = x - sign(gain) must repair node imbalances at cost |gain|/unit.
    struct R {
        int to;
        int cap;
        Rational cost;
        std::size_t arc;
        int dir;  // +1: increases x_arc, -1: decreases it
    };
    std::vector<R> res;
    std::vector<std::vector<std::size_t>> adj(nn);
    auto add_pair = [&](int u, int v, int cap, const Rational& cost, std::size_t e, int dir) {
        adj[static_cast<std::size_t>(u)].push_back(res.size());
        res.push_back({v, cap, cost, e, dir});
        adj[static_cast<std::size_t>(v)].push_back(res.size());
        res.push_back({u, 0, -cost, e, -dir});
    };
    std::vector<int> x(arcs.size());
    std::vector<int> supply(nn, 0);
    for (std::size_t e = 0; e < arcs.size(); ++e) {
        const auto& a = arcs[e];
        if (a.tail < 0 || a.tail >= nodes || a.head < 0 || a.head >= nodes)
            fail(ErrorCode::InconsistencyDetected, "arc endpoint out of range");
        const int s = sgn(a.gain);
        x[e] = s;
        supply[static_cast<std::size_t>(a.head)] += s;
        supply[static_cast<std::size_t>(a.tail)] -= s;
        const Rational mag = abs_value(a.gain);
        if (s > 0) {
            add_pair(a.head, a.tail, 2, mag, e, -1);
        } else if (s < 0) {
            add_pair(a.tail, a.head, 2, mag, e, +1);
        } else {
            add_pair(a.tail, a.head, 1, mag, e, +1);
            add_pair(a.head, a.tail, 1, mag, e, -1);
        }
    }

    std::vector<Rational> pi(nn);
    auto dijkstra = [&](std::vector<Rational>& dist, std::vector<std::size_t>& via, std::vector<char>& seen) {
        dist.assign(nn, Rational(0));
        via.assign(nn, res.size());
        seen.assign(nn, 0);
        std::vector<char> reached(nn, 0);
        using Item = std::pair<Rational, int>;
        auto cmp = [](const Item& l, const Item& r) { return l.first > r.first || (l.first == r.first && l.second > r.second); };
        std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
        for (std::size_t v = 0; v < nn; ++v)
            if (supply[v] > 0) {
                reached[v] = 1;
                pq.push({Rational(0), static_cast<int>(v)});
            }
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            const std::size_t uu = static_cast<std::size_t>(u);
            if (seen[uu] || d != dist[uu]) continue;
            seen[uu] = 1;
            for (std::size_t ri : adj[uu]) {
                const R& r = res[ri];
                if (r.cap == 0) continue;
                const std::size_t w = static_cast<std::size_t>(r.to);
                Rational nd = d + r.cost + pi[uu] - pi[w];
                if (!reached[w] || nd < dist[w]) {
                    reached[w] = 1;
                    dist[w] = nd;
                    via[w] = ri;
                    pq.push({nd, r.to});
                }
            }
        }
    };

    std::vector<Rational> dist;
    std::vector<std::size_t> via;
    std::vector<char> seen;
    for (;;) {
        bool pending = false;
        for (int s : supply)
            if (s > 0) pending = true;
        if (!pending) break;
        dijkstra(dist, via, seen);
        int sink = -1;
        for (std::size_t v = 0; v < nn; ++v)
            if (supply[v] < 0 && seen[v] && (sink < 0 || dist[v] < dist[static_cast<std::size_t>(sink)])) sink = static_cast<int>(v);
        if (sink < 0) fail(ErrorCode::InconsistencyDetected, "circulation repair found no path");
        const Rational cap_d = dist[static_cast<std::size_t>(sink)];
        for (std::size_t v = 0; v < nn; ++v) pi[v] += (seen[v] && dist[v] < cap_d) ? dist[v] : cap_d;
        // Augment one unit along the path.
        int v = sink;
        while (via[static_cast<std::size_t>(v)] != res.size()) {
            const std::size_t ri = via[static_cast<std::size_t>(v)];
            res[ri].cap -= 1;
            res[ri ^ 1].cap += 1;
            x[res[ri].arc] += res[ri].dir;
            v = res[ri ^ 1].to;
        }
        supply[static_cast<std::size_t>(v)] -= 1;
        supply[static_cast<std::size_t>(sink)] += 1;
    }
    CirculationResult out;
    out.flow = x;
    out.value = 0;
    for (std::size_t e = 0; e < arcs.size(); ++e) out.value += arcs[e].gain * x[e];
    out.potential.resize(nn);
    for (std::size_t v = 0; v < nn; ++v) out.potential[v] = -pi[v];
    Rational dual = 0;
    for (const auto& a : arcs)
        dual += abs_value(a.gain + out.potential[static_cast<std::size_t>(a.tail)] - out.potential[static_cast<std::size_t>(a.head)]);
    if (dual != out.value) fail(ErrorCode::InconsistencyDetected, "circulation duality gap");
    return out;
}

}  // namespace hopfkit

#endif
