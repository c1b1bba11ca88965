#include "gb/generation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "gb/division.hpp"
#include "gb/error.hpp"

namespace gb {

namespace {

void sort_by_min_member(std::vector<GranularBall>& balls) {
    std::sort(balls.begin(), balls.end(),
              [](const GranularBall& x, const GranularBall& y) { return x.min_member() < y.min_member(); });
}

GBSet finish(std::vector<GranularBall> balls, std::size_t n) {
    sort_by_min_member(balls);
    return GBSet{std::move(balls), n};
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    return idx;
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t h = values.size() / 2;
    return values.size() % 2 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

} // namespace

std::size_t DivisionTree::leaf_count() const {
    std::size_t count = 0;
    for (const auto& node : nodes) count += node.is_leaf();
    return count;
}

DivisionTree build_division_tree(const Dataset& data, const QualityParams& params) {
    params.validate();
    data.validate();

    DivisionTree tree;
    tree.threshold = params.delta * std::sqrt(static_cast<double>(data.n()));
    tree.nodes.push_back({make_ball(data, all_indices(data.n())), -1, -1, -1});

    // breadth-first: children always sit after their parent
    for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
        const GranularBall& ball = tree.nodes[v].ball;
        if (ball.size() < 2 || static_cast<double>(ball.size()) <= tree.threshold) continue;
        SplitResult split = split_farthest_pair(data, ball.members);
        if (split.degenerate) continue;
        int a = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({make_ball(data, split.alpha), static_cast<int>(v), -1, -1});
        tree.nodes.push_back({make_ball(data, split.beta), static_cast<int>(v), -1, -1});
        tree.nodes[v].child_a = a;
        tree.nodes[v].child_b = a + 1;
    }
    return tree;
}

BestCombination best_combination(std::span<const std::pair<int, int>> children,
                                 std::span<const double> qualities) {
    const std::size_t count = children.size();
    BestCombination result;
    result.best_quality.assign(count, 0.0);
    result.keep_split.assign(count, 0);

    // children carry larger ids, so one reverse pass finalizes them first
    for (std::size_t r = count; r-- > 0;) {
        auto [a, b] = children[r];
        if (a < 0) {
            result.best_quality[r] = qualities[r];
            continue;
        }
        double child_sum = result.best_quality[static_cast<std::size_t>(a)] +
                           result.best_quality[static_cast<std::size_t>(b)];
        if (child_sum >= qualities[r]) { // on equality the split is kept
            result.best_quality[r] = child_sum;
            result.keep_split[r] = 1;
        } else {
            result.best_quality[r] = qualities[r];
        }
    }

    if (count > 0) {
        std::vector<int> stack{0};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (result.keep_split[static_cast<std::size_t>(v)]) {
                stack.push_back(children[static_cast<std::size_t>(v)].second);
                stack.push_back(children[static_cast<std::size_t>(v)].first);
            } else {
                result.chosen.push_back(v);
            }
        }
    }
    return result;
}

std::vector<GranularBall> prune_best_combination(const DivisionTree& tree, const Dataset& data,
                                                 const QualityParams& params) {
    std::vector<std::pair<int, int>> children(tree.nodes.size());
    std::vector<double> qualities(tree.nodes.size());
    for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
        children[v] = {tree.nodes[v].child_a, tree.nodes[v].child_b};
        qualities[v] = ball_quality(tree.nodes[v].ball, data, params);
    }
    auto combo = best_combination(children, qualities);
    std::vector<GranularBall> balls;
    balls.reserve(combo.chosen.size());
    for (int v : combo.chosen) balls.push_back(tree.nodes[static_cast<std::size_t>(v)].ball);
    sort_by_min_member(balls);
    return balls;
}

AnomalyStats compute_anomaly_stats(std::span<const GranularBall> balls) {
    AnomalyStats stats;
    if (balls.empty()) return stats;
    const double count = static_cast<double>(balls.size());
    std::vector<double> max_radii;
    max_radii.reserve(balls.size());
    for (const auto& ball : balls) {
        stats.r_avg += ball.avg_radius;
        stats.n_avg += static_cast<double>(ball.size());
        stats.r_max_avg += ball.max_radius;
        max_radii.push_back(ball.max_radius);
    }
    stats.r_avg /= count;
    stats.n_avg /= count;
    stats.r_max_avg /= count;
    stats.r_max_med = median(std::move(max_radii));
    return stats;
}

bool detect_abnormal_pojg(const GranularBall& ball, const AnomalyStats& stats) {
    return ball.avg_radius > 2.0 * stats.r_avg &&
           static_cast<double>(ball.size()) < 0.5 * stats.n_avg;
}

GBSet generate_pojg(const Dataset& data, const QualityParams& params) {
    DivisionTree tree = build_division_tree(data, params);
    std::vector<GranularBall> candidates = prune_best_combination(tree, data, params);

    // statistics are frozen over the pruned set; children of split abnormal
    // balls are tested against these same values
    const AnomalyStats stats = compute_anomaly_stats(candidates);

    std::deque<GranularBall> queue(std::make_move_iterator(candidates.begin()),
                                   std::make_move_iterator(candidates.end()));
    std::vector<GranularBall> phi;
    while (!queue.empty()) {
        GranularBall ball = std::move(queue.front());
        queue.pop_front();
        if (ball.size() >= 2 && detect_abnormal_pojg(ball, stats)) {
            SplitResult split = split_farthest_pair(data, ball.members);
            if (!split.degenerate) {
                queue.push_back(make_ball(data, split.alpha));
                queue.push_back(make_ball(data, split.beta));
                continue;
            }
        }
        phi.push_back(std::move(ball));
    }
    return finish(std::move(phi), data.n());
}

GBSet generate_cheng(const Dataset& data) {
    data.validate();
    const double threshold = std::sqrt(static_cast<double>(data.n()));
    std::deque<GranularBall> queue;
    queue.push_back(make_ball(data, all_indices(data.n())));
    std::vector<GranularBall> phi;
    while (!queue.empty()) {
        GranularBall ball = std::move(queue.front());
        queue.pop_front();
        if (static_cast<double>(ball.size()) > threshold) {
            SplitResult split = split_two_means(data, ball.members, 0);
            if (!split.degenerate) {
                queue.push_back(make_ball(data, split.alpha));
                queue.push_back(make_ball(data, split.beta));
                continue;
            }
        }
        phi.push_back(std::move(ball));
    }
    return finish(std::move(phi), data.n());
}

GBSet generate_xie(const Dataset& data, const SplitCallback& on_split) {
    data.validate();

    std::deque<GranularBall> queue;
    queue.push_back(make_ball(data, all_indices(data.n())));
    std::vector<GranularBall> phi;
    while (!queue.empty()) {
        GranularBall ball = std::move(queue.front());
        queue.pop_front();
        if (ball.size() >= 2) {
            SplitResult split = split_farthest_pair(data, ball.members);
            if (!split.degenerate) {
                GranularBall a = make_ball(data, split.alpha);
                GranularBall b = make_ball(data, split.beta);
                const double na = static_cast<double>(a.size());
                const double nb = static_cast<double>(b.size());
                double weighted = (na * a.avg_radius + nb * b.avg_radius) / (na + nb);
                if (weighted < ball.avg_radius) {
                    if (on_split) on_split(ball, a, b);
                    queue.push_back(std::move(a));
                    queue.push_back(std::move(b));
                    continue;
                }
            }
        }
        phi.push_back(std::move(ball));
    }

    // anomaly rounds: thresholds recomputed per round, children re-checked next round
    for (;;) {
        std::vector<double> max_radii;
        max_radii.reserve(phi.size());
        double sum = 0.0;
        for (const auto& ball : phi) {
            max_radii.push_back(ball.max_radius);
            sum += ball.max_radius;
        }
        const double mean = sum / static_cast<double>(phi.size());
        const double cut = 2.0 * std::max(mean, median(max_radii));

        std::vector<GranularBall> next;
        next.reserve(phi.size());
        bool any_split = false;
        for (auto& ball : phi) {
            if (ball.max_radius > cut && ball.size() >= 2) {
                SplitResult split = split_farthest_pair(data, ball.members);
                if (!split.degenerate) {
                    GranularBall a = make_ball(data, split.alpha);
                    GranularBall b = make_ball(data, split.beta);
                    if (on_split) on_split(ball, a, b);
                    next.push_back(std::move(a));
                    next.push_back(std::move(b));
                    any_split = true;
                    continue;
                }
            }
            next.push_back(std::move(ball));
        }
        phi = std::move(next);
        if (!any_split) break;
    }
    return finish(std::move(phi), data.n());
}

} // namespace gb
