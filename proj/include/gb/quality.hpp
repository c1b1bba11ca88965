#pragma once

#include "gb/ball.hpp"
#include "gb/division.hpp"

namespace gb {

struct QualityParams {
    double gamma = 1.0; // specificity weight, >= 0
    double delta = 0.3; // size-threshold scale, in (0, 1]

    // throws Error(invalid_params) when out of range
    void validate() const;
};

// number of members lying within the average radius of the center
// (boundary counts, with a small absolute slack to absorb rounding)
double coverage(const GranularBall& ball, const Dataset& data);

// exp(-gamma * avg_radius)
double specificity(const GranularBall& ball, const QualityParams& params);

// coverage times specificity
double ball_quality(const GranularBall& ball, const Dataset& data, const QualityParams& params);

// member-count-weighted mean of the two sub-ball average radii
double weighted_distribution_measure(const Dataset& data, const SplitResult& split);

} // namespace gb
