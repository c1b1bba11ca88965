#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gb/matrix.hpp"

namespace gb::kernels {

// The hot data-parallel loops, each in two variants: a serial reference and
// an OpenMP version. Both variants compute bit-identical results: per-element
// work uses one fixed formula, sums stay inside a single output element, and
// max-reductions use a total order, so the schedule cannot change the answer.
// The unsuffixed entry points dispatch on problem size and the global switch.

bool parallel_enabled();
void set_parallel(bool on);
int max_threads();

struct FarthestPair {
    std::size_t a = 0, b = 0; // dataset indices, a < b
    double dist2 = 0.0;       // squared distance; 0 means all points coincide
};

// Exact O(|members|^2) scan for the maximum pairwise squared distance.
// Ties resolved to the lexicographically smallest (a, b) dataset-index pair.
FarthestPair farthest_pair_serial(const Matrix& data, std::span<const std::size_t> members);
FarthestPair farthest_pair_parallel(const Matrix& data, std::span<const std::size_t> members);
FarthestPair farthest_pair(const Matrix& data, std::span<const std::size_t> members);

// flags[i] = 1 iff member i is at least as close to `ca` as to `cb`
void nearest_of_two_serial(const Matrix& data, std::span<const std::size_t> members,
                           std::span<const double> ca, std::span<const double> cb,
                           std::vector<std::uint8_t>& flags);
void nearest_of_two_parallel(const Matrix& data, std::span<const std::size_t> members,
                             std::span<const double> ca, std::span<const double> cb,
                             std::vector<std::uint8_t>& flags);
void nearest_of_two(const Matrix& data, std::span<const std::size_t> members,
                    std::span<const double> ca, std::span<const double> cb,
                    std::vector<std::uint8_t>& flags);

// full symmetric matrix of Euclidean distances between rows
Matrix pairwise_distances_serial(const Matrix& points);
Matrix pairwise_distances_parallel(const Matrix& points);
Matrix pairwise_distances(const Matrix& points);

// rho[i] = sum_{j != i} weights[j] * exp(-(dist(i,j)/cutoff)^2), j ascending
std::vector<double> dpc_density_serial(const Matrix& dist, std::span<const double> weights, double cutoff);
std::vector<double> dpc_density_parallel(const Matrix& dist, std::span<const double> weights, double cutoff);
std::vector<double> dpc_density(const Matrix& dist, std::span<const double> weights, double cutoff);

// W[i][j] = exp(-dist(i,j)^2 / (2 sigma^2)), zero diagonal
Matrix gaussian_affinity_serial(const Matrix& dist, double sigma);
Matrix gaussian_affinity_parallel(const Matrix& dist, double sigma);
Matrix gaussian_affinity(const Matrix& dist, double sigma);

} // namespace gb::kernels
