#pragma once

// Test-only oracles, independent of the library code paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace erw::test {

/// Stationary law of a Markov chain on {0..K-1} by power iteration. Mass
/// leaving the truncated range is folded into the last state.
inline std::vector<double> stationary_by_power_iteration(
    std::size_t K, const std::function<double(std::size_t, std::size_t)>& transition, int iterations = 5000) {
    std::vector<std::vector<double>> P(K, std::vector<double>(K, 0.0));
    for (std::size_t j = 0; j < K; ++j) {
        double row = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            P[j][k] = transition(j, k);
            row += P[j][k];
        }
        P[j][K - 1] += std::max(0.0, 1.0 - row);
    }
    std::vector<double> pi(K, 0.0), next(K);
    pi[0] = 1.0;
    for (int it = 0; it < iterations; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t j = 0; j < K; ++j)
            for (std::size_t k = 0; k < K; ++k) next[k] += pi[j] * P[j][k];
        pi.swap(next);
    }
    return pi;
}

/// Brute-force one-cookie EARW transition probability: sum over the outcome
/// of the first (cookie) trial, then a negative binomial count of p0 failures,
/// with binomial coefficients built by multiplication.
inline double brute_transition(std::size_t j, std::size_t k, double p0, double p1) {
    auto nb = [&](std::size_t r, std::size_t f) {
        if (r == 0) return f == 0 ? 1.0 : 0.0;
        double c = 1.0;
        for (std::size_t i = 1; i <= f; ++i) c = c * static_cast<double>(r - 1 + i) / static_cast<double>(i);
        return c * std::pow(p0, static_cast<double>(r)) * std::pow(1 - p0, static_cast<double>(f));
    };
    const std::size_t needed = j + 1;
    double v = p1 * nb(needed - 1, k);
    if (k >= 1) v += (1 - p1) * nb(needed, k - 1);
    return v;
}

}  // namespace erw::test
