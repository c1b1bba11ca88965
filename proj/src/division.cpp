#include "gb/division.hpp"

#include <algorithm>

#include "gb/error.hpp"
#include "gb/kernels.hpp"

namespace gb {

namespace {

std::vector<std::size_t> sorted_members(std::span<const std::size_t> members) {
    std::vector<std::size_t> out(members.begin(), members.end());
    std::sort(out.begin(), out.end());
    return out;
}

SplitResult degenerate_result(std::vector<std::size_t> members) {
    SplitResult res;
    res.alpha = std::move(members);
    res.degenerate = true;
    return res;
}

// splits `members` by the alpha flags, preserving sorted order
void partition_by_flags(const std::vector<std::size_t>& members, const std::vector<std::uint8_t>& flags,
                        SplitResult& res) {
    res.alpha.clear();
    res.beta.clear();
    for (std::size_t i = 0; i < members.size(); ++i)
        (flags[i] ? res.alpha : res.beta).push_back(members[i]);
}

} // namespace

SplitResult split_farthest_pair(const Dataset& data, std::span<const std::size_t> members) {
    if (members.size() < 2)
        throw Error(errc::too_small_to_split, "need at least 2 members, have " + std::to_string(members.size()));

    auto sorted = sorted_members(members);
    auto pair = kernels::farthest_pair(data.features, sorted);
    if (pair.dist2 <= 0.0) return degenerate_result(std::move(sorted));

    SplitResult res;
    res.anchors = {pair.a, pair.b}; // x_alpha is the smaller dataset index
    std::vector<std::uint8_t> flags;
    kernels::nearest_of_two(data.features, sorted, data.features.row(pair.a), data.features.row(pair.b), flags);
    partition_by_flags(sorted, flags, res);
    return res;
}

SplitResult split_two_means(const Dataset& data, std::span<const std::size_t> members,
                            [[maybe_unused]] std::uint64_t seed) {
    if (members.size() < 2)
        throw Error(errc::too_small_to_split, "need at least 2 members, have " + std::to_string(members.size()));

    auto sorted = sorted_members(members);
    auto pair = kernels::farthest_pair(data.features, sorted);
    if (pair.dist2 <= 0.0) return degenerate_result(std::move(sorted));

    const std::size_t m = data.m();
    auto row_a = data.features.row(pair.a);
    auto row_b = data.features.row(pair.b);
    std::vector<double> ca(row_a.begin(), row_a.end());
    std::vector<double> cb(row_b.begin(), row_b.end());

    std::vector<std::uint8_t> flags, prev;
    for (int iter = 0; iter < 100; ++iter) {
        kernels::nearest_of_two(data.features, sorted, ca, cb, flags);
        std::size_t na = 0;
        for (auto f : flags) na += f;
        if (na == 0 || na == sorted.size()) return degenerate_result(std::move(sorted));
        if (flags == prev) break;
        prev = flags;

        std::fill(ca.begin(), ca.end(), 0.0);
        std::fill(cb.begin(), cb.end(), 0.0);
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            auto row = data.features.row(sorted[i]);
            auto& c = flags[i] ? ca : cb;
            for (std::size_t d = 0; d < m; ++d) c[d] += row[d];
        }
        const double inv_a = 1.0 / static_cast<double>(na);
        const double inv_b = 1.0 / static_cast<double>(sorted.size() - na);
        for (std::size_t d = 0; d < m; ++d) {
            ca[d] *= inv_a;
            cb[d] *= inv_b;
        }
    }

    SplitResult res;
    res.anchors = {pair.a, pair.b};
    partition_by_flags(sorted, flags, res);
    return res;
}

} // namespace gb
