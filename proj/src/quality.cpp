#include "gb/quality.hpp"

#include <cmath>

#include "gb/error.hpp"

namespace gb {

namespace {
// absolute slack so members sitting exactly on the average radius count
// deterministically across float orderings
constexpr double kBoundarySlack = 1e-12;
} // namespace

void QualityParams::validate() const {
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw Error(errc::invalid_params, "gamma must be >= 0");
    if (!(delta > 0.0) || !(delta <= 1.0))
        throw Error(errc::invalid_params, "delta must be in (0, 1]");
}

double coverage(const GranularBall& ball, const Dataset& data) {
    std::size_t inside = 0;
    for (std::size_t idx : ball.members) {
        double dist = euclidean(data.features.row(idx), ball.center);
        if (dist <= ball.avg_radius + kBoundarySlack) ++inside;
    }
    return static_cast<double>(inside);
}

double specificity(const GranularBall& ball, const QualityParams& params) {
    return std::exp(-params.gamma * ball.avg_radius);
}

double ball_quality(const GranularBall& ball, const Dataset& data, const QualityParams& params) {
    return coverage(ball, data) * specificity(ball, params);
}

double weighted_distribution_measure(const Dataset& data, const SplitResult& split) {
    if (split.degenerate || split.beta.empty())
        throw Error(errc::degenerate_split, "weighted distribution measure needs a real 2-division");
    GranularBall a = make_ball(data, split.alpha);
    GranularBall b = make_ball(data, split.beta);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    return (na * a.avg_radius + nb * b.avg_radius) / (na + nb);
}

} // namespace gb
