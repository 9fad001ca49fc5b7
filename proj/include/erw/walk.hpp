#pragma once

// Step-level simulation of simple, excited and excited asymmetric walks,
// hitting times, left-step profiles and Monte Carlo speed estimates.

#include "erw/errors.hpp"
#include "erw/parallel.hpp"
#include "erw/params.hpp"
#include "erw/rng.hpp"
#include "erw/stats.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

namespace erw {

/// Visit counts keyed by signed site. Nearest-neighbour walks visit an
/// interval of sites, so two dense halves (x >= 0 and x < 0) store exactly
/// the distinct visited sites.
class SiteCounts {
public:
    std::uint64_t get(std::int64_t site) const {
        if (site >= 0) {
            const auto i = static_cast<std::size_t>(site);
            return i < right_.size() ? right_[i] : 0;
        }
        const auto i = static_cast<std::size_t>(-(site + 1));
        return i < left_.size() ? left_[i] : 0;
    }

    std::uint64_t& at(std::int64_t site) {
        if (site >= 0) {
            const auto i = static_cast<std::size_t>(site);
            if (i >= right_.size()) right_.resize(i + 1, 0);
            return right_[i];
        }
        const auto i = static_cast<std::size_t>(-(site + 1));
        if (i >= left_.size()) left_.resize(i + 1, 0);
        return left_[i];
    }

    std::uint64_t total() const {
        std::uint64_t s = 0;
        for (auto c : right_) s += c;
        for (auto c : left_) s += c;
        return s;
    }

    std::size_t distinct_sites() const {
        std::size_t n = 0;
        for (auto c : right_) n += c > 0;
        for (auto c : left_) n += c > 0;
        return n;
    }

    std::int64_t min_site() const { return -static_cast<std::int64_t>(left_.size()); }
    std::int64_t max_site() const { return static_cast<std::int64_t>(right_.size()) - 1; }

private:
    std::vector<std::uint64_t> right_;
    std::vector<std::uint64_t> left_;
};

struct WalkState {
    std::int64_t position = 0;
    SiteCounts visits;
    std::uint64_t time = 0;

    static WalkState origin() {
        WalkState s;
        s.visits.at(0) = 1;
        return s;
    }
};

/// Step-right thresholds indexed by visit number, flattened out of a WalkConfig.
class StepRule {
public:
    explicit StepRule(const WalkConfig& config)
        : head_(config.cookies().values().begin(), config.cookies().values().end()),
          tail_(config.bias_value()) {}

    double threshold(std::uint64_t visit) const { return visit <= head_.size() ? head_[visit - 1] : tail_; }

private:
    std::vector<double> head_;
    double tail_;
};

/// One step driven by the uniform `u`: right iff u < threshold.
inline void advance(WalkState& state, const StepRule& rule, double u) {
    const std::uint64_t visit = state.visits.get(state.position);
    state.position += u < rule.threshold(visit) ? 1 : -1;
    ++state.visits.at(state.position);
    ++state.time;
}

inline WalkState step(WalkState state, const WalkConfig& config, Rng& rng) {
    advance(state, StepRule(config), rng.uniform());
    return state;
}

struct Trajectory {
    std::vector<std::int64_t> positions;
    std::uint64_t seed;
    WalkConfig config;
};

inline Trajectory simulate(const WalkConfig& config, std::uint64_t steps, std::uint64_t seed) {
    require(steps >= 1, "simulate needs steps >= 1");
    Rng rng(seed);
    const StepRule rule(config);
    WalkState state = WalkState::origin();
    Trajectory traj{{}, seed, config};
    traj.positions.reserve(steps + 1);
    traj.positions.push_back(0);
    for (std::uint64_t t = 0; t < steps; ++t) {
        advance(state, rule, rng.uniform());
        traj.positions.push_back(state.position);
    }
    return traj;
}

/// X_steps of a fresh walk, without storing the path.
inline std::int64_t endpoint(const StepRule& rule, std::uint64_t steps, Rng& rng) {
    WalkState state = WalkState::origin();
    for (std::uint64_t t = 0; t < steps; ++t) advance(state, rule, rng.uniform());
    return state.position;
}

/// First t with X_t = n.
inline std::optional<std::uint64_t> hitting_time(const Trajectory& traj, std::int64_t n) {
    require(n >= 0, "hitting_time needs n >= 0");
    for (std::size_t t = 0; t < traj.positions.size(); ++t)
        if (traj.positions[t] == n) return t;
    return std::nullopt;
}

/// Left-step counts before T_n, ordered U_n^n, U_{n-1}^n, ..., U_0^n.
struct LeftStepProfile {
    std::int64_t n = 0;
    std::vector<std::uint64_t> counts;

    std::uint64_t at_site(std::int64_t x) const { return counts.at(static_cast<std::size_t>(n - x)); }
};

inline LeftStepProfile left_step_profile(const Trajectory& traj, std::int64_t n) {
    const auto hit = hitting_time(traj, n);
    if (!hit) throw NotReached("trajectory never reaches site " + std::to_string(n));
    LeftStepProfile profile{n, std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0)};
    for (std::uint64_t t = 0; t < *hit; ++t) {
        const std::int64_t x = traj.positions[t];
        if (x >= 0 && x <= n && traj.positions[t + 1] == x - 1) ++profile.counts[static_cast<std::size_t>(n - x)];
    }
    return profile;
}

/// Runs a fresh walk until it hits n, counting left steps from 0..n. Returns
/// nothing if the walk has not hit n after `step_cap` steps.
inline std::optional<LeftStepProfile> sample_left_step_profile(const StepRule& rule, std::int64_t n, Rng& rng,
                                                               std::uint64_t step_cap) {
    require(n >= 0, "left-step profile needs n >= 0");
    LeftStepProfile profile{n, std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0)};
    WalkState state = WalkState::origin();
    while (state.position != n) {
        if (state.time >= step_cap) return std::nullopt;
        const std::int64_t from = state.position;
        advance(state, rule, rng.uniform());
        if (state.position < from && from >= 0) ++profile.counts[static_cast<std::size_t>(n - from)];
    }
    return profile;
}

/// Empirical law of U_0^barrier over independent paths, the finite-barrier
/// surrogate for the total number of 0 -> -1 steps of a right-transient walk.
inline EmpiricalPmf left_steps_at_origin(const WalkConfig& config, std::int64_t barrier, std::uint64_t paths,
                                         std::uint64_t seed, unsigned threads = 0,
                                         std::uint64_t step_cap = 100'000'000) {
    require(transient_right(config), "U_0 surrogate needs a right-transient walk");
    require(barrier >= 1, "barrier must be >= 1");
    const StepRule rule(config);
    std::vector<std::uint64_t> counts(paths);
    const Rng base(seed);
    parallel_for(paths, threads, [&](std::size_t i) {
        Rng rng = base.split(i);
        auto profile = sample_left_step_profile(rule, barrier, rng, step_cap);
        if (!profile) throw NotReached("path " + std::to_string(i) + " exceeded the step cap before the barrier");
        counts[i] = profile->at_site(0);
    });
    EmpiricalPmf pmf;
    for (auto c : counts) pmf.add(c);
    return pmf;
}

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t replicas = 0;
    std::uint64_t steps_per_replica = 0;
    std::uint64_t base_seed = 0;
};

inline constexpr std::uint64_t min_speed_steps = 10'000;

/// Mean of X_steps / steps over replicas seeded derive_seed(base_seed, r).
inline McEstimate estimate_speed(const WalkConfig& config, std::uint64_t steps, std::uint64_t replicas,
                                 std::uint64_t base_seed, unsigned threads = 0) {
    require(steps >= min_speed_steps, "estimate_speed needs steps >= 10^4");
    require(replicas >= 2, "estimate_speed needs at least 2 replicas for a standard error");
    const StepRule rule(config);
    std::vector<double> speeds(replicas);
    const Rng base(base_seed);
    parallel_for(replicas, threads, [&](std::size_t r) {
        Rng rng = base.split(r);
        speeds[r] = static_cast<double>(endpoint(rule, steps, rng)) / static_cast<double>(steps);
    });
    RunningStats stats;
    for (double v : speeds) stats.add(v);
    return {stats.mean(), stats.standard_error(), replicas, steps, base_seed};
}

/// Hitting times T_0..T_n_max of a walk driven by a per-site, per-visit
/// uniform table: the j-th departure from site x uses keyed_uniform(seed, x, j).
/// Under this coupling, raising every strength can only shorten hitting times.
inline std::vector<std::optional<std::uint64_t>> sitewise_hitting_times(const WalkConfig& config,
                                                                        std::int64_t n_max, std::uint64_t seed,
                                                                        std::uint64_t step_cap) {
    const StepRule rule(config);
    std::vector<std::optional<std::uint64_t>> hits(static_cast<std::size_t>(n_max) + 1);
    hits[0] = 0;
    WalkState state = WalkState::origin();
    while (state.position < n_max && state.time < step_cap) {
        const std::uint64_t visit = state.visits.get(state.position);
        advance(state, rule, keyed_uniform(seed, state.position, visit));
        if (state.position > 0 && !hits[static_cast<std::size_t>(state.position)])
            hits[static_cast<std::size_t>(state.position)] = state.time;
    }
    return hits;
}

inline void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,X_t\n";
    for (std::size_t t = 0; t < traj.positions.size(); ++t) out << t << ',' << traj.positions[t] << '\n';
}

inline nlohmann::json to_json(const McEstimate& e) {
    return {{"mean", e.mean}, {"se", e.std_error}, {"replicas", e.replicas}, {"steps", e.steps_per_replica},
            {"seed", e.base_seed}};
}

}  // namespace erw
