#include "gb/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gb/error.hpp"
#include "gb/kernels.hpp"
#include "gb/rng.hpp"

namespace gb {

namespace {

double off_diagonal_norm(const Matrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) sum += a(i, j) * a(i, j);
    return std::sqrt(sum);
}

// canonical ball order: by smallest member index, so ties never depend on
// how the caller happened to enumerate the balls
std::vector<std::size_t> canonical_order(const GBSet& gbset) {
    std::vector<std::size_t> order(gbset.balls.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return gbset.balls[x].min_member() < gbset.balls[y].min_member();
    });
    return order;
}

Matrix center_matrix(const GBSet& gbset, const std::vector<std::size_t>& order) {
    const std::size_t m = gbset.balls.front().center.size();
    Matrix centers(order.size(), m);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& c = gbset.balls[order[i]].center;
        std::copy(c.begin(), c.end(), centers.row(i).begin());
    }
    return centers;
}

ClusterAssignment propagate(const GBSet& gbset, const std::vector<std::size_t>& order,
                            const std::vector<int>& canonical_labels, std::size_t k, RunMeta meta) {
    ClusterAssignment out;
    out.k = k;
    out.meta = std::move(meta);
    out.ball_labels.assign(gbset.balls.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) out.ball_labels[order[i]] = canonical_labels[i];
    out.instance_labels.assign(gbset.dataset_n, -1);
    for (std::size_t b = 0; b < gbset.balls.size(); ++b)
        for (std::size_t idx : gbset.balls[b].members) out.instance_labels[idx] = out.ball_labels[b];
    return out;
}

void check_cluster_inputs(const GBSet& gbset, std::size_t k) {
    if (k < 1) throw Error(errc::invalid_params, "k must be >= 1");
    if (gbset.balls.empty() || gbset.balls.size() < k)
        throw Error(errc::too_few_balls,
                    std::to_string(gbset.balls.size()) + " balls cannot form " + std::to_string(k) + " clusters");
}

} // namespace

SymEigResult sym_eig(const Matrix& a) {
    const std::size_t s = a.rows();
    if (s == 0 || a.cols() != s) throw Error(errc::invalid_params, "matrix must be square and non-empty");
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j)
            if (std::fabs(a(i, j) - a(j, i)) > 1e-9)
                throw Error(errc::not_symmetric, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                     ") differs from its transpose");

    Matrix work = a;
    Matrix vec(s, s, 0.0);
    for (std::size_t i = 0; i < s; ++i) vec(i, i) = 1.0;

    constexpr double kOffTolerance = 1e-11;
    constexpr int kMaxSweeps = 100;
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        if (off_diagonal_norm(work) < kOffTolerance) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < s; ++p) {
            for (std::size_t q = p + 1; q < s; ++q) {
                const double apq = work(p, q);
                if (apq == 0.0) continue;
                const double theta = (work(q, q) - work(p, p)) / (2.0 * apq);
                double t;
                if (std::fabs(theta) > 1e10) {
                    t = 1.0 / (2.0 * theta);
                } else {
                    t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                const double tau = sn / (1.0 + c);
                const double h = t * apq;

                work(p, p) -= h;
                work(q, q) += h;
                work(p, q) = 0.0;
                work(q, p) = 0.0;
                for (std::size_t i = 0; i < s; ++i) {
                    if (i == p || i == q) continue;
                    const double g = work(i, p);
                    const double w = work(i, q);
                    work(i, p) = g - sn * (w + tau * g);
                    work(i, q) = w + sn * (g - tau * w);
                    work(p, i) = work(i, p);
                    work(q, i) = work(i, q);
                }
                for (std::size_t i = 0; i < s; ++i) {
                    const double g = vec(i, p);
                    const double w = vec(i, q);
                    vec(i, p) = g - sn * (w + tau * g);
                    vec(i, q) = w + sn * (g - tau * w);
                }
            }
        }
    }
    if (!converged && off_diagonal_norm(work) >= kOffTolerance)
        throw Error(errc::eig_failed, "Jacobi sweep limit reached before convergence");

    std::vector<std::size_t> order(s);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return work(x, x) < work(y, y); });

    SymEigResult result;
    result.eigenvalues.resize(s);
    result.eigenvectors = Matrix(s, s);
    for (std::size_t c = 0; c < s; ++c) {
        result.eigenvalues[c] = work(order[c], order[c]);
        for (std::size_t i = 0; i < s; ++i) result.eigenvectors(i, c) = vec(i, order[c]);
    }
    return result;
}

std::vector<int> kmeans_embed(const Matrix& points, std::size_t k, std::uint64_t seed) {
    const std::size_t s = points.rows();
    const std::size_t m = points.cols();
    if (k < 1) throw Error(errc::invalid_params, "k must be >= 1");
    if (s < k)
        throw Error(errc::too_few_points,
                    std::to_string(s) + " points cannot seed " + std::to_string(k) + " centers");

    constexpr int kRestarts = 10;
    constexpr int kMaxIters = 300;

    SplitMix64 rng(seed);
    std::vector<int> best_labels;
    double best_inertia = std::numeric_limits<double>::infinity();

    std::vector<double> centers(k * m), mind(s);
    std::vector<int> labels(s), prev(s);
    std::vector<std::size_t> sizes(k);

    for (int restart = 0; restart < kRestarts; ++restart) {
        // farthest-first seeding: random first center, then max-min-distance picks
        std::size_t first = static_cast<std::size_t>(rng.next_below(s));
        std::copy(points.row(first).begin(), points.row(first).end(), centers.begin());
        for (std::size_t i = 0; i < s; ++i) mind[i] = squared_distance(points.row(i), {centers.data(), m});
        for (std::size_t c = 1; c < k; ++c) {
            std::size_t pick = 0;
            for (std::size_t i = 1; i < s; ++i)
                if (mind[i] > mind[pick]) pick = i;
            std::copy(points.row(pick).begin(), points.row(pick).end(), centers.begin() + c * m);
            for (std::size_t i = 0; i < s; ++i)
                mind[i] = std::min(mind[i], squared_distance(points.row(i), {centers.data() + c * m, m}));
        }

        std::fill(prev.begin(), prev.end(), -1);
        for (int iter = 0; iter < kMaxIters; ++iter) {
            for (std::size_t i = 0; i < s; ++i) {
                int nearest = 0;
                double nd = squared_distance(points.row(i), {centers.data(), m});
                for (std::size_t c = 1; c < k; ++c) {
                    double d = squared_distance(points.row(i), {centers.data() + c * m, m});
                    if (d < nd) {
                        nd = d;
                        nearest = static_cast<int>(c);
                    }
                }
                labels[i] = nearest;
            }

            std::fill(sizes.begin(), sizes.end(), 0);
            for (std::size_t i = 0; i < s; ++i) ++sizes[static_cast<std::size_t>(labels[i])];
            for (std::size_t c = 0; c < k; ++c) {
                if (sizes[c] > 0) continue;
                // steal the point farthest from its own center
                std::size_t steal = s;
                double worst = -1.0;
                for (std::size_t i = 0; i < s; ++i) {
                    if (sizes[static_cast<std::size_t>(labels[i])] < 2) continue;
                    double d = squared_distance(points.row(i),
                                                {centers.data() + static_cast<std::size_t>(labels[i]) * m, m});
                    if (d > worst) {
                        worst = d;
                        steal = i;
                    }
                }
                if (steal == s) break; // all clusters singletons; nothing to move
                --sizes[static_cast<std::size_t>(labels[steal])];
                labels[steal] = static_cast<int>(c);
                ++sizes[c];
            }

            if (labels == prev) break;
            prev = labels;

            std::fill(centers.begin(), centers.end(), 0.0);
            for (std::size_t i = 0; i < s; ++i) {
                double* c = centers.data() + static_cast<std::size_t>(labels[i]) * m;
                auto row = points.row(i);
                for (std::size_t d = 0; d < m; ++d) c[d] += row[d];
            }
            for (std::size_t c = 0; c < k; ++c) {
                if (sizes[c] == 0) continue;
                double inv = 1.0 / static_cast<double>(sizes[c]);
                for (std::size_t d = 0; d < m; ++d) centers[c * m + d] *= inv;
            }
        }

        double inertia = 0.0;
        for (std::size_t i = 0; i < s; ++i)
            inertia +=
                squared_distance(points.row(i), {centers.data() + static_cast<std::size_t>(labels[i]) * m, m});
        if (inertia < best_inertia) {
            best_inertia = inertia;
            best_labels = labels;
        }
    }
    return best_labels;
}

ClusterAssignment gbdpc(const GBSet& gbset, const Dataset& data, std::size_t k, double lambda) {
    check_cluster_inputs(gbset, k);
    if (!(lambda > 0.0) || !(lambda <= 1.0)) throw Error(errc::invalid_params, "lambda must be in (0, 1]");
    (void)data; // geometry is cached on the balls

    const auto order = canonical_order(gbset);
    const std::size_t s = order.size();
    const Matrix centers = center_matrix(gbset, order);
    const Matrix dist = kernels::pairwise_distances(centers);

    double max_dist = 0.0;
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j) max_dist = std::max(max_dist, dist(i, j));
    if (max_dist <= 0.0) throw Error(errc::degenerate_geometry, "all ball centers coincide");
    const double cutoff = lambda * max_dist;

    std::vector<double> weights(s);
    for (std::size_t i = 0; i < s; ++i) weights[i] = static_cast<double>(gbset.balls[order[i]].size());
    const std::vector<double> rho = kernels::dpc_density(dist, weights, cutoff);

    // density rank: higher rho first, ties to the smaller canonical index
    std::vector<std::size_t> by_density(s);
    std::iota(by_density.begin(), by_density.end(), std::size_t{0});
    std::sort(by_density.begin(), by_density.end(), [&](std::size_t x, std::size_t y) {
        if (rho[x] != rho[y]) return rho[x] > rho[y];
        return x < y;
    });
    std::vector<std::size_t> rank(s);
    for (std::size_t r = 0; r < s; ++r) rank[by_density[r]] = r;

    std::vector<double> separation(s, 0.0);
    std::vector<int> nearest_denser(s, -1);
    for (std::size_t i = 0; i < s; ++i) {
        if (rank[i] == 0) {
            for (std::size_t j = 0; j < s; ++j) separation[i] = std::max(separation[i], dist(i, j));
            continue;
        }
        double best = std::numeric_limits<double>::infinity();
        int arg = -1;
        for (std::size_t j = 0; j < s; ++j) {
            if (rank[j] >= rank[i]) continue;
            if (dist(i, j) < best) {
                best = dist(i, j);
                arg = static_cast<int>(j);
            }
        }
        separation[i] = best;
        nearest_denser[i] = arg;
    }

    std::vector<double> decision(s);
    for (std::size_t i = 0; i < s; ++i) decision[i] = rho[i] * separation[i];
    std::vector<std::size_t> by_decision(s);
    std::iota(by_decision.begin(), by_decision.end(), std::size_t{0});
    std::sort(by_decision.begin(), by_decision.end(), [&](std::size_t x, std::size_t y) {
        if (decision[x] != decision[y]) return decision[x] > decision[y];
        return x < y;
    });

    std::vector<int> labels(s, -1);
    for (std::size_t c = 0; c < k; ++c) labels[by_decision[c]] = static_cast<int>(c);
    for (std::size_t r = 0; r < s; ++r) {
        const std::size_t i = by_density[r];
        if (labels[i] >= 0) continue;
        if (nearest_denser[i] >= 0) {
            labels[i] = labels[static_cast<std::size_t>(nearest_denser[i])];
        } else {
            // densest ball not selected as a center (only possible on exact
            // decision-value ties): give it the nearest center's label
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                std::size_t j = by_decision[c];
                if (dist(i, j) < best) {
                    best = dist(i, j);
                    labels[i] = labels[j];
                }
            }
        }
    }

    RunMeta meta;
    meta.method = "gbdpc";
    meta.k = k;
    meta.lambda = lambda;
    return propagate(gbset, order, labels, k, std::move(meta));
}

ClusterAssignment gbsc(const GBSet& gbset, const Dataset& data, std::size_t k, double sigma,
                       std::uint64_t seed) {
    check_cluster_inputs(gbset, k);
    if (!(sigma > 0.0)) throw Error(errc::invalid_params, "sigma must be > 0");

    const auto order = canonical_order(gbset);
    const std::size_t s = order.size();
    const Matrix centers = center_matrix(gbset, order);
    const Matrix dist = kernels::pairwise_distances(centers);

    double max_dist = 0.0;
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j) max_dist = std::max(max_dist, dist(i, j));
    if (s > 1 && max_dist <= 0.0) throw Error(errc::degenerate_geometry, "all ball centers coincide");

    const Matrix affinity = kernels::gaussian_affinity(dist, sigma);

    std::vector<double> inv_sqrt_degree(s, 0.0);
    for (std::size_t i = 0; i < s; ++i) {
        double degree = 0.0;
        for (std::size_t j = 0; j < s; ++j) degree += affinity(i, j);
        inv_sqrt_degree[i] = degree > 0.0 ? 1.0 / std::sqrt(degree) : 0.0;
    }
    Matrix laplacian(s, s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j)
            laplacian(i, j) = (i == j ? 1.0 : 0.0) - inv_sqrt_degree[i] * inv_sqrt_degree[j] * affinity(i, j);

    const SymEigResult eig = sym_eig(laplacian);

    Matrix embedding(s, k);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t c = 0; c < k; ++c) embedding(i, c) = eig.eigenvectors(i, c);
    for (std::size_t i = 0; i < s; ++i) {
        double sum = 0.0;
        for (std::size_t c = 0; c < k; ++c) sum += embedding(i, c) * embedding(i, c);
        double norm = std::sqrt(sum);
        if (norm > 0.0)
            for (std::size_t c = 0; c < k; ++c) embedding(i, c) /= norm;
    }

    std::vector<int> labels = kmeans_embed(embedding, k, seed);

    RunMeta meta;
    meta.method = "gbsc";
    meta.k = k;
    meta.sigma = sigma;
    meta.seed = seed;
    (void)data;
    return propagate(gbset, order, labels, k, std::move(meta));
}

} // namespace gb
