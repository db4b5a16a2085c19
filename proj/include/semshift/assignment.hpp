#pragma once

#include <cstddef>
#include <vector>

namespace semshift {

// Dense square cost matrix with finite, non-negative entries.
class CostMatrix {
public:
    CostMatrix() = default;
    // Throws if values.size() != size * size or any entry is negative or non-finite.
    CostMatrix(std::size_t size, std::vector<double> values);
    static CostMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const { return size_; }
    double operator()(std::size_t row, std::size_t col) const { return values_[row * size_ + col]; }
    const std::vector<double>& values() const { return values_; }

private:
    std::size_t size_ = 0;
    std::vector<double> values_;
};

struct Matching {
    std::vector<std::size_t> perm;  // perm[row] = matched column
    double total_cost = 0.0;        // sum of cost(row, perm[row]) in row order
};

// Minimum-cost perfect matching via Jonker-Volgenant shortest augmenting paths.
Matching solve(const CostMatrix& cost);

// Exhaustive search over all permutations (size <= 9). Ties keep the
// lexicographically smallest permutation.
Matching brute_force(const CostMatrix& cost);

// Sum of cost(row, perm[row]) accumulated in row order.
double matching_cost(const CostMatrix& cost, const std::vector<std::size_t>& perm);

}  // namespace semshift
