// Times each kernel's serial reference against its OpenMP version and checks
// that the results agree bit for bit. Build target: bench_kernels.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "gb/kernels.hpp"
#include "gb/matrix.hpp"
#include "gb/rng.hpp"

using namespace gb;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

Matrix random_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = 20.0 * rng.next_double() - 10.0;
    return m;
}

template <class F>
double best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        double start = now_seconds();
        fn();
        double elapsed = now_seconds() - start;
        if (elapsed < best) best = elapsed;
    }
    return best;
}

void row(const std::string& name, double serial, double parallel, bool identical) {
    std::printf("%-28s %10.4f ms %10.4f ms   x%.2f   %s\n", name.c_str(), serial * 1e3, parallel * 1e3,
                serial / parallel, identical ? "bit-identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    SplitMix64 rng(12345);

    std::printf("kernel benchmark: %d OpenMP thread(s), best of %d\n", kernels::max_threads(), reps);
    std::printf("%-28s %13s %13s\n", "", "serial", "parallel");

    {
        const std::size_t n = 6000, m = 16;
        Matrix data = random_matrix(rng, n, m);
        std::vector<std::size_t> members(n);
        for (std::size_t i = 0; i < n; ++i) members[i] = i;
        kernels::FarthestPair a{}, b{};
        double ts = best_of(reps, [&] { a = kernels::farthest_pair_serial(data, members); });
        double tp = best_of(reps, [&] { b = kernels::farthest_pair_parallel(data, members); });
        row("farthest_pair 6000x16", ts, tp, a.a == b.a && a.b == b.b && a.dist2 == b.dist2);
    }
    {
        const std::size_t n = 2000000, m = 8;
        Matrix data = random_matrix(rng, n, m);
        std::vector<std::size_t> members(n);
        for (std::size_t i = 0; i < n; ++i) members[i] = i;
        std::vector<double> ca(m, 1.0), cb(m, -1.0);
        std::vector<std::uint8_t> fa, fb;
        double ts = best_of(reps, [&] { kernels::nearest_of_two_serial(data, members, ca, cb, fa); });
        double tp = best_of(reps, [&] { kernels::nearest_of_two_parallel(data, members, ca, cb, fb); });
        row("nearest_of_two 2M x8", ts, tp, fa == fb);
    }
    {
        const std::size_t s = 1200, m = 8;
        Matrix centers = random_matrix(rng, s, m);
        Matrix da, db;
        double ts = best_of(reps, [&] { da = kernels::pairwise_distances_serial(centers); });
        double tp = best_of(reps, [&] { db = kernels::pairwise_distances_parallel(centers); });
        row("pairwise_distances 1200", ts, tp, da == db);

        std::vector<double> weights(s, 3.0);
        std::vector<double> ra, rb;
        ts = best_of(reps, [&] { ra = kernels::dpc_density_serial(da, weights, 0.5); });
        tp = best_of(reps, [&] { rb = kernels::dpc_density_parallel(da, weights, 0.5); });
        row("dpc_density 1200", ts, tp, ra == rb);

        Matrix wa, wb;
        ts = best_of(reps, [&] { wa = kernels::gaussian_affinity_serial(da, 1.0); });
        tp = best_of(reps, [&] { wb = kernels::gaussian_affinity_parallel(da, 1.0); });
        row("gaussian_affinity 1200", ts, tp, wa == wb);
    }
    return 0;
}
