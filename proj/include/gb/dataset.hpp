#pragma once

#include <string>
#include <vector>

#include "gb/matrix.hpp"

namespace gb {

// An immutable n-by-m feature matrix with optional ground-truth labels.
// Balls reference rows by index and never copy them.
struct Dataset {
    Matrix features;                        // n x m, all entries finite
    std::vector<int> labels;                // empty, or one small non-negative int per row
    std::string name;
    std::vector<std::string> feature_names; // empty, or one per column

    std::size_t n() const { return features.rows(); }
    std::size_t m() const { return features.cols(); }
    bool has_labels() const { return !labels.empty(); }

    // throws Error(invalid_params) on NaN/Inf entries, empty matrix, or label length mismatch
    void validate() const;
};

} // namespace gb
