#include "gb/kernels.hpp"

#include <atomic>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gb/ball.hpp"

namespace gb::kernels {

namespace {

std::atomic<bool> g_parallel{true};

// below this many inner-loop operations the fork/join overhead dominates
constexpr std::size_t kParallelCutoff = 1u << 17;

inline bool use_parallel(std::size_t work) {
#ifdef _OPENMP
    return g_parallel.load(std::memory_order_relaxed) && work >= kParallelCutoff && omp_get_max_threads() > 1;
#else
    (void)work;
    return false;
#endif
}

inline double row_dist2(const double* a, const double* b, std::size_t m) {
    double s = 0.0;
    for (std::size_t d = 0; d < m; ++d) {
        double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

// total order: larger distance first, then lexicographically smaller pair
inline bool better(const FarthestPair& p, const FarthestPair& q) {
    if (p.dist2 != q.dist2) return p.dist2 > q.dist2;
    if (p.a != q.a) return p.a < q.a;
    return p.b < q.b;
}

inline FarthestPair normalize(std::size_t i, std::size_t j, double d2) {
    return i < j ? FarthestPair{i, j, d2} : FarthestPair{j, i, d2};
}

// pack member rows into a contiguous buffer for cache-friendly pair scans
std::vector<double> gather_rows(const Matrix& data, std::span<const std::size_t> members) {
    const std::size_t m = data.cols();
    std::vector<double> buf(members.size() * m);
    for (std::size_t i = 0; i < members.size(); ++i) {
        auto row = data.row(members[i]);
        std::copy(row.begin(), row.end(), buf.begin() + i * m);
    }
    return buf;
}

} // namespace

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }
void set_parallel(bool on) { g_parallel.store(on, std::memory_order_relaxed); }

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

FarthestPair farthest_pair_serial(const Matrix& data, std::span<const std::size_t> members) {
    const std::size_t k = members.size();
    const std::size_t m = data.cols();
    auto buf = gather_rows(data, members);
    FarthestPair best{members[0], members[0], -1.0};
    for (std::size_t i = 0; i + 1 < k; ++i) {
        const double* ri = buf.data() + i * m;
        for (std::size_t j = i + 1; j < k; ++j) {
            double d2 = row_dist2(ri, buf.data() + j * m, m);
            if (d2 >= best.dist2) {
                FarthestPair cand = normalize(members[i], members[j], d2);
                if (better(cand, best)) best = cand;
            }
        }
    }
    if (best.dist2 < 0.0) best = FarthestPair{members[0], members[0], 0.0};
    return best;
}

FarthestPair farthest_pair_parallel(const Matrix& data, std::span<const std::size_t> members) {
#ifndef _OPENMP
    return farthest_pair_serial(data, members);
#else
    const std::size_t k = members.size();
    const std::size_t m = data.cols();
    auto buf = gather_rows(data, members);
    FarthestPair best{members[0], members[0], -1.0};
#pragma omp parallel
    {
        FarthestPair local{members[0], members[0], -1.0};
#pragma omp for schedule(dynamic, 32) nowait
        for (long li = 0; li < static_cast<long>(k) - 1; ++li) {
            const std::size_t i = static_cast<std::size_t>(li);
            const double* ri = buf.data() + i * m;
            for (std::size_t j = i + 1; j < k; ++j) {
                double d2 = row_dist2(ri, buf.data() + j * m, m);
                if (d2 >= local.dist2) {
                    FarthestPair cand = normalize(members[i], members[j], d2);
                    if (better(cand, local)) local = cand;
                }
            }
        }
#pragma omp critical(gb_farthest_merge)
        {
            if (local.dist2 >= 0.0 && (best.dist2 < 0.0 || better(local, best))) best = local;
        }
    }
    if (best.dist2 < 0.0) best = FarthestPair{members[0], members[0], 0.0};
    return best;
#endif
}

FarthestPair farthest_pair(const Matrix& data, std::span<const std::size_t> members) {
    std::size_t work = members.size() * members.size() / 2 * data.cols();
    return use_parallel(work) ? farthest_pair_parallel(data, members) : farthest_pair_serial(data, members);
}

void nearest_of_two_serial(const Matrix& data, std::span<const std::size_t> members,
                           std::span<const double> ca, std::span<const double> cb,
                           std::vector<std::uint8_t>& flags) {
    const std::size_t m = data.cols();
    flags.resize(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        const double* row = data.data() + members[i] * m;
        flags[i] = row_dist2(row, ca.data(), m) <= row_dist2(row, cb.data(), m) ? 1 : 0;
    }
}

void nearest_of_two_parallel(const Matrix& data, std::span<const std::size_t> members,
                             std::span<const double> ca, std::span<const double> cb,
                             std::vector<std::uint8_t>& flags) {
#ifndef _OPENMP
    nearest_of_two_serial(data, members, ca, cb, flags);
#else
    const std::size_t m = data.cols();
    flags.resize(members.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(members.size()); ++i) {
        const double* row = data.data() + members[static_cast<std::size_t>(i)] * m;
        flags[static_cast<std::size_t>(i)] = row_dist2(row, ca.data(), m) <= row_dist2(row, cb.data(), m) ? 1 : 0;
    }
#endif
}

void nearest_of_two(const Matrix& data, std::span<const std::size_t> members,
                    std::span<const double> ca, std::span<const double> cb,
                    std::vector<std::uint8_t>& flags) {
    if (use_parallel(members.size() * data.cols()))
        nearest_of_two_parallel(data, members, ca, cb, flags);
    else
        nearest_of_two_serial(data, members, ca, cb, flags);
}

Matrix pairwise_distances_serial(const Matrix& points) {
    const std::size_t s = points.rows();
    Matrix dist(s, s, 0.0);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j) {
            double d = std::sqrt(row_dist2(points.data() + i * points.cols(),
                                           points.data() + j * points.cols(), points.cols()));
            dist(i, j) = d;
            dist(j, i) = d;
        }
    return dist;
}

Matrix pairwise_distances_parallel(const Matrix& points) {
#ifndef _OPENMP
    return pairwise_distances_serial(points);
#else
    const std::size_t s = points.rows();
    Matrix dist(s, s, 0.0);
#pragma omp parallel for schedule(dynamic, 16)
    for (long li = 0; li < static_cast<long>(s); ++li) {
        const std::size_t i = static_cast<std::size_t>(li);
        for (std::size_t j = i + 1; j < s; ++j) {
            double d = std::sqrt(row_dist2(points.data() + i * points.cols(),
                                           points.data() + j * points.cols(), points.cols()));
            dist(i, j) = d;
            dist(j, i) = d;
        }
    }
    return dist;
#endif
}

Matrix pairwise_distances(const Matrix& points) {
    std::size_t work = points.rows() * points.rows() / 2 * points.cols();
    return use_parallel(work) ? pairwise_distances_parallel(points) : pairwise_distances_serial(points);
}

std::vector<double> dpc_density_serial(const Matrix& dist, std::span<const double> weights, double cutoff) {
    const std::size_t s = dist.rows();
    std::vector<double> rho(s, 0.0);
    for (std::size_t i = 0; i < s; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < s; ++j) {
            if (j == i) continue;
            double r = dist(i, j) / cutoff;
            sum += weights[j] * std::exp(-r * r);
        }
        rho[i] = sum;
    }
    return rho;
}

std::vector<double> dpc_density_parallel(const Matrix& dist, std::span<const double> weights, double cutoff) {
#ifndef _OPENMP
    return dpc_density_serial(dist, weights, cutoff);
#else
    const std::size_t s = dist.rows();
    std::vector<double> rho(s, 0.0);
#pragma omp parallel for schedule(static)
    for (long li = 0; li < static_cast<long>(s); ++li) {
        const std::size_t i = static_cast<std::size_t>(li);
        double sum = 0.0;
        for (std::size_t j = 0; j < s; ++j) {
            if (j == i) continue;
            double r = dist(i, j) / cutoff;
            sum += weights[j] * std::exp(-r * r);
        }
        rho[i] = sum;
    }
    return rho;
#endif
}

std::vector<double> dpc_density(const Matrix& dist, std::span<const double> weights, double cutoff) {
    std::size_t work = dist.rows() * dist.rows() * 8; // exp is pricey
    return use_parallel(work) ? dpc_density_parallel(dist, weights, cutoff)
                              : dpc_density_serial(dist, weights, cutoff);
}

Matrix gaussian_affinity_serial(const Matrix& dist, double sigma) {
    const std::size_t s = dist.rows();
    const double inv = 1.0 / (2.0 * sigma * sigma);
    Matrix w(s, s, 0.0);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            if (j == i) continue;
            double d = dist(i, j);
            w(i, j) = std::exp(-d * d * inv);
        }
    return w;
}

Matrix gaussian_affinity_parallel(const Matrix& dist, double sigma) {
#ifndef _OPENMP
    return gaussian_affinity_serial(dist, sigma);
#else
    const std::size_t s = dist.rows();
    const double inv = 1.0 / (2.0 * sigma * sigma);
    Matrix w(s, s, 0.0);
#pragma omp parallel for schedule(static)
    for (long li = 0; li < static_cast<long>(s); ++li) {
        const std::size_t i = static_cast<std::size_t>(li);
        for (std::size_t j = 0; j < s; ++j) {
            if (j == i) continue;
            double d = dist(i, j);
            w(i, j) = std::exp(-d * d * inv);
        }
    }
    return w;
#endif
}

Matrix gaussian_affinity(const Matrix& dist, double sigma) {
    std::size_t work = dist.rows() * dist.rows() * 8;
    return use_parallel(work) ? gaussian_affinity_parallel(dist, sigma) : gaussian_affinity_serial(dist, sigma);
}

} // namespace gb::kernels
