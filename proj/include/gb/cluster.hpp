#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gb/ball.hpp"
#include "gb/matrix.hpp"

namespace gb {

struct RunMeta {
    std::string method;
    std::size_t k = 0;
    std::optional<double> lambda; // gbdpc truncation scale
    std::optional<double> sigma;  // gbsc kernel width
    std::uint64_t seed = 0;
};

struct ClusterAssignment {
    std::vector<int> ball_labels;     // one per ball, in input ball order
    std::vector<int> instance_labels; // one per dataset row
    std::size_t k = 0;
    RunMeta meta;
};

struct SymEigResult {
    std::vector<double> eigenvalues; // ascending
    Matrix eigenvectors;             // column i pairs with eigenvalues[i]
};

// Cyclic Jacobi for dense symmetric matrices. Input must be symmetric within
// 1e-9; iterates until the off-diagonal Frobenius norm drops below 1e-11,
// failing with EigFailed after 100 sweeps.
SymEigResult sym_eig(const Matrix& a);

// Lloyd's algorithm with farthest-first seeding: the first center of each
// restart is drawn from the seed stream, the rest maximize the distance to
// the centers chosen so far. 10 restarts, 300 iterations each, best inertia
// wins. Emptied clusters are repaired by stealing the point farthest from
// its center, so all k labels are always used.
std::vector<int> kmeans_embed(const Matrix& points, std::size_t k, std::uint64_t seed);

// Density-peaks clustering over balls. Density is a count-weighted Gaussian
// kernel at cutoff lambda*max_center_distance; separation is the distance to
// the nearest denser ball; centers are the top-k by density*separation.
// All ties resolve on smallest-member-index ball identity, so the result is
// independent of ball enumeration order.
ClusterAssignment gbdpc(const GBSet& gbset, const Dataset& data, std::size_t k, double lambda);

// Spectral clustering over balls: Gaussian affinity of ball centers,
// symmetric normalized Laplacian, k bottom eigenvectors, row-normalized
// embedding, then kmeans_embed.
ClusterAssignment gbsc(const GBSet& gbset, const Dataset& data, std::size_t k, double sigma,
                       std::uint64_t seed);

} // namespace gb
