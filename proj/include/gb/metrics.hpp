#pragma once

#include <span>
#include <vector>

#include "gb/matrix.hpp"

namespace gb {

// Cross-tabulation of two labelings after dense relabeling.
struct ContingencyTable {
    std::size_t k_pred = 0, k_true = 0;
    std::vector<std::size_t> counts; // k_pred x k_true, row-major
    std::size_t n = 0;

    std::size_t at(std::size_t i, std::size_t j) const { return counts[i * k_true + j]; }
};

ContingencyTable contingency(std::span<const int> pred, std::span<const int> truth);

// Minimum-cost assignment of rows to distinct columns (rectangular inputs are
// padded with zero-cost dummies internally). result[r] = column, or -1 when
// r exceeds the number of real columns.
std::vector<int> hungarian(const Matrix& cost);

// fraction of instances matched under the best injective cluster mapping
double clustering_accuracy(std::span<const int> pred, std::span<const int> truth);

// mutual information normalized by the geometric mean of the entropies;
// when either entropy is zero: 1 if the partitions agree up to relabeling, else 0
double nmi(std::span<const int> pred, std::span<const int> truth);

} // namespace gb
