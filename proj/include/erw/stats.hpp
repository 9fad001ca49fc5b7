#pragma once

// Empirical distributions on the nonnegative integers, total variation
// distances, and replica-level summary statistics.

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace erw {

struct EmpiricalPmf {
    std::map<std::uint64_t, std::uint64_t> weights;
    std::uint64_t total = 0;

    void add(std::uint64_t value, std::uint64_t count = 1) {
        weights[value] += count;
        total += count;
    }

    void merge(const EmpiricalPmf& other) {
        for (const auto& [k, c] : other.weights) weights[k] += c;
        total += other.total;
    }

    double probability(std::uint64_t value) const {
        if (total == 0) return 0.0;
        auto it = weights.find(value);
        return it == weights.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
    }

    double mean() const {
        if (total == 0) return 0.0;
        long double s = 0;
        for (const auto& [k, c] : weights) s += static_cast<long double>(k) * static_cast<long double>(c);
        return static_cast<double>(s / static_cast<long double>(total));
    }

    std::uint64_t max_value() const { return weights.empty() ? 0 : weights.rbegin()->first; }
};

/// Half the L1 distance between two empirical laws.
inline double tv_distance(const EmpiricalPmf& a, const EmpiricalPmf& b) {
    double sum = 0.0;
    auto ia = a.weights.begin();
    auto ib = b.weights.begin();
    while (ia != a.weights.end() || ib != b.weights.end()) {
        if (ib == b.weights.end() || (ia != a.weights.end() && ia->first < ib->first)) {
            sum += a.probability(ia->first);
            ++ia;
        } else if (ia == a.weights.end() || ib->first < ia->first) {
            sum += b.probability(ib->first);
            ++ib;
        } else {
            sum += std::abs(a.probability(ia->first) - b.probability(ib->first));
            ++ia;
            ++ib;
        }
    }
    return 0.5 * sum;
}

/// TV distance between an empirical law and an exact pmf. Exact mass outside
/// the empirical support is accounted for as 1 - (mass on the support).
inline double tv_distance(const EmpiricalPmf& a, const std::function<double(std::uint64_t)>& exact) {
    double sum = 0.0;
    double covered = 0.0;
    for (const auto& [k, c] : a.weights) {
        const double p = exact(k);
        covered += p;
        sum += std::abs(a.probability(k) - p);
    }
    sum += std::max(0.0, 1.0 - covered);
    return 0.5 * sum;
}

/// Welford accumulator.
class RunningStats {
public:
    void add(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }
    std::uint64_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double stddev() const { return std::sqrt(variance()); }
    double standard_error() const { return n_ > 0 ? stddev() / std::sqrt(static_cast<double>(n_)) : 0.0; }

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

inline nlohmann::json to_json(const EmpiricalPmf& pmf) {
    nlohmann::json weights = nlohmann::json::object();
    for (const auto& [k, c] : pmf.weights) weights[std::to_string(k)] = c;
    return {{"weights", weights}, {"total", pmf.total}};
}

}  // namespace erw
