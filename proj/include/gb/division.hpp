#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gb/dataset.hpp"

namespace gb {

// Outcome of a 2-division. alpha/beta are sorted dataset indices and
// partition the input unless degenerate (beta empty, split impossible).
struct SplitResult {
    std::vector<std::size_t> alpha;
    std::vector<std::size_t> beta;
    std::optional<std::pair<std::size_t, std::size_t>> anchors; // (x_alpha, x_beta)
    bool degenerate = false;
};

// Splits on the farthest pair: the anchor with the smaller dataset index
// becomes x_alpha and members tied between anchors go to the alpha side.
// All points coincident => degenerate.
SplitResult split_farthest_pair(const Dataset& data, std::span<const std::size_t> members);

// Lloyd's algorithm with k=2, initialized from the farthest pair so the
// result is deterministic. `seed` is accepted for interface stability but
// currently unused. An emptied cluster or zero-diameter input => degenerate.
SplitResult split_two_means(const Dataset& data, std::span<const std::size_t> members, std::uint64_t seed);

} // namespace gb
