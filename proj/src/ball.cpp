#include "gb/ball.hpp"

#include <algorithm>
#include <cmath>

#include "gb/error.hpp"

namespace gb {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw Error(errc::dim_mismatch,
                    "vector lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
    return std::sqrt(squared_distance(a, b));
}

GranularBall make_ball(const Dataset& data, std::span<const std::size_t> members) {
    if (members.empty())
        throw Error(errc::empty_ball, "a ball needs at least one member");

    GranularBall ball;
    ball.members.assign(members.begin(), members.end());
    std::sort(ball.members.begin(), ball.members.end());
    for (std::size_t i = 0; i < ball.members.size(); ++i) {
        if (ball.members[i] >= data.n())
            throw Error(errc::bad_index, "member index " + std::to_string(ball.members[i]) +
                                             " out of range for n=" + std::to_string(data.n()));
        if (i > 0 && ball.members[i] == ball.members[i - 1])
            throw Error(errc::bad_index, "duplicate member index " + std::to_string(ball.members[i]));
    }

    const std::size_t m = data.m();
    const double count = static_cast<double>(ball.members.size());

    // sums run left-to-right in sorted member order: determinism over speed
    ball.center.assign(m, 0.0);
    for (std::size_t idx : ball.members) {
        auto row = data.features.row(idx);
        for (std::size_t d = 0; d < m; ++d) ball.center[d] += row[d];
    }
    for (std::size_t d = 0; d < m; ++d) ball.center[d] /= count;

    double sum_dist = 0.0, max_dist = 0.0;
    for (std::size_t idx : ball.members) {
        double dist = std::sqrt(squared_distance(data.features.row(idx), ball.center));
        sum_dist += dist;
        if (dist > max_dist) max_dist = dist;
    }
    ball.avg_radius = ball.members.size() == 1 ? 0.0 : sum_dist / count;
    ball.max_radius = ball.members.size() == 1 ? 0.0 : max_dist;
    return ball;
}

PartitionReport validate_partition(const GBSet& gbset) {
    PartitionReport report;
    std::vector<std::size_t> seen(gbset.dataset_n, 0);
    for (const auto& ball : gbset.balls)
        for (std::size_t idx : ball.members) {
            if (idx >= gbset.dataset_n) {
                report.duplicated.push_back(idx); // out of range counts as a defect
                continue;
            }
            ++seen[idx];
        }
    for (std::size_t i = 0; i < gbset.dataset_n; ++i) {
        if (seen[i] == 0) report.missing.push_back(i);
        if (seen[i] > 1) report.duplicated.push_back(i);
    }
    report.ok = report.duplicated.empty() && report.missing.empty();
    return report;
}

std::vector<std::size_t> instance_to_ball(const GBSet& gbset) {
    auto report = validate_partition(gbset);
    if (!report.ok)
        throw Error(errc::invalid_params, "ball set is not a partition of the dataset");
    std::vector<std::size_t> owner(gbset.dataset_n, 0);
    for (std::size_t b = 0; b < gbset.balls.size(); ++b)
        for (std::size_t idx : gbset.balls[b].members) owner[idx] = b;
    return owner;
}

} // namespace gb
