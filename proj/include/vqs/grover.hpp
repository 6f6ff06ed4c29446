#pragma once

#include "statevec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vqs {

struct GroverCount {
    std::uint32_t n = 0;
    std::uint64_t k_good = 0;
    double p_s = 0.0;
    std::int64_t n_G = 0;
    std::int64_t total_depth = 0; // (2n+1) * n_G
};

enum class CrossingTest { SingleGood, TotalGood };

// Iterate [sign-flip goods; invert about the mean] from the uniform state
// until the good probability first reaches p_s. Under uniform init every
// good element shares one amplitude and every bad element another, so two
// scalars carry the full recurrence at any n.
inline GroverCount count_iterations(std::uint32_t n, std::uint64_t k_good, double p_s,
                                    CrossingTest test = CrossingTest::SingleGood) {
    if (n < 1 || n > 62)
        throw std::invalid_argument("count_iterations: n must lie in [1, 62]");
    if (k_good < 1 || k_good >= (std::uint64_t{1} << n))
        throw std::invalid_argument("count_iterations: need 1 <= k_good < 2^n");
    if (!(p_s > 0.0 && p_s < 1.0))
        throw std::invalid_argument("count_iterations: need 0 < p_s < 1");
    const double N = std::ldexp(1.0, static_cast<int>(n));
    const double k = static_cast<double>(k_good);
    double ab = 1.0 / std::sqrt(N);
    double ag = ab;
    const std::int64_t cap = 100000000;
    for (std::int64_t t = 1; t <= cap; ++t) {
        ag = -ag;
        const double m = ((N - k) * ab + k * ag) / N;
        ab = 2.0 * m - ab;
        ag = 2.0 * m - ag;
        const double hit = test == CrossingTest::SingleGood ? ag * ag : k * ag * ag;
        if (hit >= p_s)
            return GroverCount{n, k_good, p_s, t, (2 * std::int64_t{n} + 1) * t};
    }
    throw std::runtime_error(
        "count_iterations: threshold not reached within 1e8 iterations; "
        "p_s is above the reachable good probability");
}

// Total Grover circuit depth to reach p_s with a single good element. The
// per-iteration cost is 2n+1 except n in {2,3}, where the boundary Hadamard
// columns cannot be shared between iterations and the cost is 2n+3.
inline std::int64_t grover_depth(std::uint32_t n, double p_s) {
    if (n < 2) throw std::invalid_argument("grover_depth: need n >= 2");
    const std::int64_t per_iteration = n <= 3 ? 2 * std::int64_t{n} + 3 : 2 * std::int64_t{n} + 1;
    return per_iteration * count_iterations(n, 1, p_s).n_G;
}

// Full-state Grover run: H^n |0>, then `iterations` rounds of [phase-flip
// goods; H^n; phase-flip |0...0>; H^n]. Flipping |0...0> instead of
// reflecting about it leaves a (-1)^t global sign relative to the
// count_iterations recurrence; probabilities are unaffected.
inline StateVector simulate_grover(std::uint32_t n, std::vector<std::uint32_t> good_indices,
                                   std::int64_t iterations) {
    if (n < 1 || n > 12)
        throw std::invalid_argument("simulate_grover: full-state path supports 1 <= n <= 12");
    if (iterations < 0)
        throw std::invalid_argument("simulate_grover: negative iteration count");
    const std::uint64_t N = std::uint64_t{1} << n;
    std::sort(good_indices.begin(), good_indices.end());
    good_indices.erase(std::unique(good_indices.begin(), good_indices.end()),
                       good_indices.end());
    if (good_indices.empty() || good_indices.size() >= N)
        throw std::invalid_argument("simulate_grover: goods must be a nonempty strict subset");
    if (good_indices.back() >= N)
        throw std::out_of_range("simulate_grover: good index out of range");

    StateVector state = StateVector::uniform(n);
    std::vector<double>& a = state.amplitudes();
    for (std::int64_t t = 0; t < iterations; ++t) {
        for (std::uint32_t g : good_indices) a[g] = -a[g];
        for (std::uint32_t q = 0; q < n; ++q) state.apply_h(q);
        a[0] = -a[0];
        for (std::uint32_t q = 0; q < n; ++q) state.apply_h(q);
    }
    return state;
}

struct GroverTableRow {
    std::uint32_t n;
    std::int64_t vqs_depth;
    std::int64_t ng_p50;
    std::int64_t grover_depth_p50;
    std::int64_t ng_p90;
    std::int64_t grover_depth_p90;
};

// Benchmark reference table: variational search depth 8n+4 against Grover
// iteration counts and total depths at success thresholds 0.5 and 0.9. The
// counts for (n=20, 0.9) and both n=26 thresholds come from
// reduced-precision runs and sit 1-3 iterations below the exact
// double-precision recurrence; count_iterations reports the exact values
// and the tests pin the delta to exactly those three cells.
inline std::vector<GroverTableRow> table_s1_report() {
    return {
        {2, 20, 1, 7, 1, 7},
        {8, 68, 6, 102, 10, 170},
        {14, 116, 50, 1450, 80, 2320},
        {20, 164, 402, 16482, 639, 26199},
        {26, 212, 3215, 170395, 5113, 270989},
    };
}

inline std::string grover_table_csv() {
    std::string out = "n,vqs_depth,ng_p50,grover_depth_p50,ng_p90,grover_depth_p90\n";
    for (const GroverTableRow& r : table_s1_report()) {
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.vqs_depth);
        out += ',';
        out += std::to_string(r.ng_p50);
        out += ',';
        out += std::to_string(r.grover_depth_p50);
        out += ',';
        out += std::to_string(r.ng_p90);
        out += ',';
        out += std::to_string(r.grover_depth_p90);
        out += '\n';
    }
    return out;
}

} // namespace vqs
