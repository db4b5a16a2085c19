#include "semshift/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "semshift/error.hpp"

namespace semshift {

CostMatrix::CostMatrix(std::size_t size, std::vector<double> values)
    : size_(size), values_(std::move(values)) {
    if (values_.size() != size_ * size_) {
        throw Error("cost matrix must be square");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw Error("cost matrix entries must be finite");
        if (v < 0.0) throw Error("cost matrix entries must be non-negative");
    }
}

CostMatrix CostMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    std::vector<double> flat;
    flat.reserve(rows.size() * rows.size());
    for (const auto& r : rows) {
        if (r.size() != rows.size()) throw Error("cost matrix must be square");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return CostMatrix(rows.size(), std::move(flat));
}

double matching_cost(const CostMatrix& cost, const std::vector<std::size_t>& perm) {
    double total = 0.0;
    for (std::size_t r = 0; r < perm.size(); ++r) total += cost(r, perm[r]);
    return total;
}

Matching solve(const CostMatrix& cost) {
    const std::size_t n = cost.size();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    // Dual potentials for rows (u) and columns (v); col_owner[j] = row assigned to column j.
    std::vector<double> u(n, 0.0);
    std::vector<double> v(n, 0.0);
    std::vector<std::size_t> col_owner(n, kNone);
    std::vector<std::size_t> row_match(n, kNone);

    std::vector<double> path_cost(n);
    std::vector<std::size_t> predecessor(n);
    std::vector<bool> row_seen(n);
    std::vector<bool> col_done(n);
    std::vector<std::size_t> remaining(n);

    for (std::size_t start = 0; start < n; ++start) {
        std::fill(path_cost.begin(), path_cost.end(), kInf);
        std::fill(row_seen.begin(), row_seen.end(), false);
        std::fill(col_done.begin(), col_done.end(), false);
        std::iota(remaining.begin(), remaining.end(), 0);
        std::size_t num_remaining = n;

        // Dijkstra over reduced costs until an unassigned column is reached.
        double min_val = 0.0;
        std::size_t row = start;
        std::size_t sink = kNone;
        while (sink == kNone) {
            row_seen[row] = true;
            std::size_t best_slot = kNone;
            double lowest = kInf;
            for (std::size_t slot = 0; slot < num_remaining; ++slot) {
                const std::size_t col = remaining[slot];
                const double reduced = min_val + cost(row, col) - u[row] - v[col];
                if (reduced < path_cost[col]) {
                    predecessor[col] = row;
                    path_cost[col] = reduced;
                }
                if (path_cost[col] < lowest ||
                    (path_cost[col] == lowest && col_owner[col] == kNone)) {
                    lowest = path_cost[col];
                    best_slot = slot;
                }
            }
            min_val = lowest;
            const std::size_t col = remaining[best_slot];
            col_done[col] = true;
            remaining[best_slot] = remaining[--num_remaining];
            if (col_owner[col] == kNone) {
                sink = col;
            } else {
                row = col_owner[col];
            }
        }

        // Update the duals along the explored tree.
        u[start] += min_val;
        for (std::size_t r = 0; r < n; ++r) {
            if (row_seen[r] && r != start) {
                u[r] += min_val - path_cost[row_match[r]];
            }
        }
        for (std::size_t c = 0; c < n; ++c) {
            if (col_done[c]) v[c] -= min_val - path_cost[c];
        }

        // Augment along the alternating path.
        std::size_t col = sink;
        for (;;) {
            const std::size_t r = predecessor[col];
            col_owner[col] = r;
            std::swap(row_match[r], col);
            if (r == start) break;
        }
    }

    Matching m;
    m.perm = std::move(row_match);
    m.total_cost = matching_cost(cost, m.perm);
    return m;
}

Matching brute_force(const CostMatrix& cost) {
    const std::size_t n = cost.size();
    if (n > 9) {
        throw Error("brute-force assignment supports at most 9 rows");
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Matching best{perm, matching_cost(cost, perm)};
    while (std::next_permutation(perm.begin(), perm.end())) {
        const double c = matching_cost(cost, perm);
        if (c < best.total_cost) {
            best = {perm, c};
        }
    }
    return best;
}

}  // namespace semshift
