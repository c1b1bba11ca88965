#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gb/dataset.hpp"

namespace gb {

// A granular ball: an index set over one dataset plus cached geometry.
// Statistics are computed once at construction; any change makes a new ball.
struct GranularBall {
    std::vector<std::size_t> members; // strictly increasing dataset row indices
    std::vector<double> center;       // arithmetic mean of member rows
    double avg_radius = 0.0;          // mean member-to-center distance
    double max_radius = 0.0;          // max member-to-center distance

    std::size_t size() const { return members.size(); }
    std::size_t min_member() const { return members.front(); }

    bool operator==(const GranularBall&) const = default;
};

// The generated collection of balls; must partition {0..dataset_n-1}.
struct GBSet {
    std::vector<GranularBall> balls;
    std::size_t dataset_n = 0;
};

struct PartitionReport {
    bool ok = false;
    std::vector<std::size_t> duplicated;
    std::vector<std::size_t> missing;
};

double euclidean(std::span<const double> a, std::span<const double> b);

// squared Euclidean distance, summed left-to-right over coordinates
double squared_distance(std::span<const double> a, std::span<const double> b);

GranularBall make_ball(const Dataset& data, std::span<const std::size_t> members);

PartitionReport validate_partition(const GBSet& gbset);

// maps each instance to the index of its ball; throws Error(invalid_params) if not a partition
std::vector<std::size_t> instance_to_ball(const GBSet& gbset);

} // namespace gb
