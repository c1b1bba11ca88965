#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "gb/ball.hpp"
#include "gb/quality.hpp"

namespace gb {

struct TreeNode {
    GranularBall ball;
    int parent = -1;
    int child_a = -1;
    int child_b = -1;

    bool is_leaf() const { return child_a < 0; }
};

// Binary division tree in breadth-first creation order: node 0 is the root
// and children always carry larger indices than their parent.
struct DivisionTree {
    std::vector<TreeNode> nodes;
    double threshold = 0.0; // delta * sqrt(n)

    std::size_t leaf_count() const;
};

// Repeatedly 2-divides every node larger than delta*sqrt(n) with the
// farthest-pair rule; zero-diameter nodes become leaves regardless of size.
DivisionTree build_division_tree(const Dataset& data, const QualityParams& params);

// Bottom-up pruning over an explicit tree shape. children[v] = (a, b) or
// (-1, -1) for leaves; children must carry larger indices than parents.
// A node keeps its split when the children's best-quality sum is >= its own
// quality. `chosen` lists the node ids of the root's best combination.
struct BestCombination {
    std::vector<double> best_quality;
    std::vector<std::uint8_t> keep_split;
    std::vector<int> chosen;
};
BestCombination best_combination(std::span<const std::pair<int, int>> children,
                                 std::span<const double> qualities);

// best combination of the root, as balls sorted by smallest member index
std::vector<GranularBall> prune_best_combination(const DivisionTree& tree, const Dataset& data,
                                                 const QualityParams& params);

// Summary statistics of a generated ball set used by the anomaly rules.
struct AnomalyStats {
    double r_avg = 0.0;     // mean of avg_radius
    double n_avg = 0.0;     // mean member count
    double r_max_avg = 0.0; // mean of max_radius
    double r_max_med = 0.0; // median of max_radius
};
AnomalyStats compute_anomaly_stats(std::span<const GranularBall> balls);

// avg_radius > 2*r_avg and member count < n_avg/2, both strict
bool detect_abnormal_pojg(const GranularBall& ball, const AnomalyStats& stats);

using SplitCallback =
    std::function<void(const GranularBall& parent, const GranularBall& alpha, const GranularBall& beta)>;

// Tree build + pruning + anomaly pass with statistics frozen over the pruned
// set. Output is sorted by smallest member index and partitions the dataset.
GBSet generate_pojg(const Dataset& data, const QualityParams& params);

// 2-means threshold method: split while a ball holds more than sqrt(n) members.
GBSet generate_cheng(const Dataset& data);

// Greedy method: split while the weighted distribution measure improves, then
// split max-radius outliers round by round. `on_split` observes every split.
GBSet generate_xie(const Dataset& data, const SplitCallback& on_split = {});

} // namespace gb
