#include "gb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "gb/error.hpp"

namespace gb {

namespace {

std::vector<std::size_t> dense_relabel(std::span<const int> labels, std::size_t& k_out) {
    std::unordered_map<int, std::size_t> map;
    std::vector<std::size_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, fresh] = map.emplace(labels[i], map.size());
        (void)fresh;
        out[i] = it->second;
    }
    k_out = map.size();
    return out;
}

void check_lengths(std::span<const int> pred, std::span<const int> truth) {
    if (pred.size() != truth.size() || pred.empty())
        throw Error(errc::length_mismatch, "label sequences must be non-empty and equally long");
}

// one nonzero per row and per column means the partitions agree up to relabeling
bool bijective(const ContingencyTable& table) {
    if (table.k_pred != table.k_true) return false;
    for (std::size_t i = 0; i < table.k_pred; ++i) {
        std::size_t nonzero = 0;
        for (std::size_t j = 0; j < table.k_true; ++j) nonzero += table.at(i, j) > 0;
        if (nonzero != 1) return false;
    }
    for (std::size_t j = 0; j < table.k_true; ++j) {
        std::size_t nonzero = 0;
        for (std::size_t i = 0; i < table.k_pred; ++i) nonzero += table.at(i, j) > 0;
        if (nonzero != 1) return false;
    }
    return true;
}

} // namespace

ContingencyTable contingency(std::span<const int> pred, std::span<const int> truth) {
    check_lengths(pred, truth);
    ContingencyTable table;
    auto p = dense_relabel(pred, table.k_pred);
    auto t = dense_relabel(truth, table.k_true);
    table.n = pred.size();
    table.counts.assign(table.k_pred * table.k_true, 0);
    for (std::size_t i = 0; i < p.size(); ++i) ++table.counts[p[i] * table.k_true + t[i]];
    return table;
}

std::vector<int> hungarian(const Matrix& cost) {
    const std::size_t r = cost.rows();
    const std::size_t c = cost.cols();
    const std::size_t size = std::max(r, c);
    constexpr double kInf = std::numeric_limits<double>::infinity();

    // potentials method over a zero-padded square matrix, 1-indexed
    auto at = [&](std::size_t i, std::size_t j) -> double {
        return (i < r && j < c) ? cost(i, j) : 0.0;
    };
    std::vector<double> u(size + 1, 0.0), v(size + 1, 0.0), minv(size + 1);
    std::vector<std::size_t> match(size + 1, 0), way(size + 1, 0);
    std::vector<char> used(size + 1);

    for (std::size_t i = 1; i <= size; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), kInf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            std::size_t i0 = match[j0], j1 = 0;
            double delta = kInf;
            for (std::size_t j = 1; j <= size; ++j) {
                if (used[j]) continue;
                double cur = at(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= size; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> assignment(r, -1);
    for (std::size_t j = 1; j <= size; ++j) {
        if (match[j] == 0) continue;
        std::size_t row = match[j] - 1;
        if (row < r && j - 1 < c) assignment[row] = static_cast<int>(j - 1);
    }
    return assignment;
}

double clustering_accuracy(std::span<const int> pred, std::span<const int> truth) {
    ContingencyTable table = contingency(pred, truth);
    Matrix cost(table.k_pred, table.k_true);
    for (std::size_t i = 0; i < table.k_pred; ++i)
        for (std::size_t j = 0; j < table.k_true; ++j)
            cost(i, j) = -static_cast<double>(table.at(i, j));
    std::vector<int> assignment = hungarian(cost);
    std::size_t matched = 0;
    for (std::size_t i = 0; i < table.k_pred; ++i)
        if (assignment[i] >= 0) matched += table.at(i, static_cast<std::size_t>(assignment[i]));
    return static_cast<double>(matched) / static_cast<double>(table.n);
}

double nmi(std::span<const int> pred, std::span<const int> truth) {
    ContingencyTable table = contingency(pred, truth);
    const double n = static_cast<double>(table.n);

    std::vector<double> row_sum(table.k_pred, 0.0), col_sum(table.k_true, 0.0);
    for (std::size_t i = 0; i < table.k_pred; ++i)
        for (std::size_t j = 0; j < table.k_true; ++j) {
            row_sum[i] += static_cast<double>(table.at(i, j));
            col_sum[j] += static_cast<double>(table.at(i, j));
        }

    if (bijective(table)) return 1.0; // identical partitions up to relabeling

    double h_pred = 0.0, h_true = 0.0;
    for (double x : row_sum)
        if (x > 0.0) h_pred -= (x / n) * std::log(x / n);
    for (double x : col_sum)
        if (x > 0.0) h_true -= (x / n) * std::log(x / n);

    if (h_pred == 0.0 || h_true == 0.0) return 0.0;

    double info = 0.0;
    for (std::size_t i = 0; i < table.k_pred; ++i)
        for (std::size_t j = 0; j < table.k_true; ++j) {
            double nij = static_cast<double>(table.at(i, j));
            if (nij == 0.0) continue;
            info += (nij / n) * std::log(nij * n / (row_sum[i] * col_sum[j]));
        }
    return std::clamp(info / std::sqrt(h_pred * h_true), 0.0, 1.0);
}

} // namespace gb
