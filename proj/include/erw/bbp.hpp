#pragma once

// The backwards branching-like process (BBP) of an excited walk: cookie
// sequence laws, failure counts A_k, the explicit one-cookie transition pmf,
// stationary estimates, the A_k decomposition check, the U <-> Z law check,
// and the monotone coupling of an infinite-bias chain with a finite-cookie one.

#include "erw/errors.hpp"
#include "erw/parallel.hpp"
#include "erw/params.hpp"
#include "erw/rng.hpp"
#include "erw/stats.hpp"
#include "erw/walk.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace erw {

/// Success probabilities of the Bernoulli sequence xi_{i,1}, xi_{i,2}, ...
/// read at every site: `head` for the first trials, then `mid` for
/// `mid_length` trials, then `tail` forever.
class CookieSequenceLaw {
public:
    /// EARW law: cookies, then infinitely many p0 trials.
    static CookieSequenceLaw asymmetric(std::vector<double> head, double p0) {
        return CookieSequenceLaw(std::move(head), 0, 0.0, p0);
    }

    /// Standard excited walk: cookies, then fair trials.
    static CookieSequenceLaw standard(std::vector<double> head) {
        return CookieSequenceLaw(std::move(head), 0, 0.0, 0.5);
    }

    /// Cookies, p0 on trials M < j <= total_cookies, fair afterwards.
    static CookieSequenceLaw truncated(std::vector<double> head, double p0, std::size_t total_cookies) {
        require(total_cookies >= head.size(), "truncated law needs N >= M");
        const std::size_t mid = total_cookies - head.size();
        return CookieSequenceLaw(std::move(head), mid, p0, 0.5);
    }

    static CookieSequenceLaw from_config(const WalkConfig& config) {
        std::vector<double> head(config.cookies().values().begin(), config.cookies().values().end());
        return CookieSequenceLaw(std::move(head), 0, 0.0, config.bias_value());
    }

    /// Probability that trial j (1-based) is a success.
    double success_probability(std::size_t j) const {
        if (j <= head_.size()) return head_[j - 1];
        if (j <= head_.size() + mid_length_) return mid_;
        return tail_;
    }

    /// Trials beyond this index are i.i.d. with the tail probability.
    std::size_t iid_from() const { return head_.size() + mid_length_; }
    double tail() const { return tail_; }
    const std::vector<double>& head() const { return head_; }
    std::size_t mid_length() const { return mid_length_; }
    double mid() const { return mid_; }

    /// Sum of (2p - 1) over the non-tail trials.
    double finite_delta() const {
        double d = 0.0;
        for (double p : head_) d += 2 * p - 1;
        return d + static_cast<double>(mid_length_) * (2 * mid_ - 1);
    }

private:
    CookieSequenceLaw(std::vector<double> head, std::size_t mid_length, double mid, double tail)
        : head_(std::move(head)), mid_length_(mid_length), mid_(mid), tail_(tail) {
        for (double p : head_) require(p > 0.0 && p <= 1.0, "cookie sequence probabilities must lie in (0,1]");
        if (mid_length_ > 0) require(mid_ > 0.0 && mid_ <= 1.0, "mid-segment probability must lie in (0,1]");
        require(tail_ > 0.0 && tail_ <= 1.0, "tail probability must lie in (0,1]");
    }

    std::vector<double> head_;
    std::size_t mid_length_;
    double mid_;
    double tail_;
};

/// Failures before the k-th success in a fresh sequence drawn from `law`.
inline std::uint64_t sample_A(const CookieSequenceLaw& law, std::uint64_t k, Rng& rng) {
    std::uint64_t failures = 0;
    std::uint64_t successes = 0;
    std::size_t j = 0;
    while (successes < k) {
        ++j;
        if (rng.uniform() < law.success_probability(j)) ++successes;
        else ++failures;
    }
    return failures;
}

/// Failures before the first success of i.i.d. Bernoulli(p) trials.
inline std::uint64_t sample_geometric(double p, Rng& rng) {
    std::uint64_t failures = 0;
    while (!(rng.uniform() < p)) ++failures;
    return failures;
}

namespace detail {

inline double binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0.0;
    if (r == 0 || r == n) return 1.0;
    const double ln = std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(r) + 1) -
                      std::lgamma(static_cast<double>(n - r) + 1);
    return std::exp(ln);
}

}  // namespace detail

/// P(NB(r, p) = k): k failures before the r-th success.
inline double negative_binomial_pmf(std::uint64_t r, double p, std::uint64_t k) {
    if (r == 0) return k == 0 ? 1.0 : 0.0;
    return detail::binomial(k + r - 1, k) * std::pow(p, static_cast<double>(r)) *
           std::pow(1 - p, static_cast<double>(k));
}

/// Chernoff bound on P(NB(r, p) >= K).
inline double negative_binomial_tail_bound(std::uint64_t r, std::uint64_t K, double p) {
    if (K == 0) return 1.0;
    if (p >= 1.0 || r == 0) return 0.0;
    const double q = 1 - p;
    const double z = static_cast<double>(K) / (q * static_cast<double>(K + r));
    if (z <= 1.0) return 1.0;
    const double log_bound = -static_cast<double>(K) * std::log(z) +
                             static_cast<double>(r) * (std::log(p) - std::log1p(-q * z));
    return std::min(1.0, std::exp(log_bound));
}

/// Transition pmf p(j, k) of the BBP for the one-cookie EARW.
inline double bbp_transition_pmf(std::uint64_t j, std::uint64_t k, double p0, double p1) {
    const double q0 = 1 - p0;
    const auto kd = static_cast<double>(k);
    const auto jd = static_cast<double>(j);
    if (j == 0) {
        if (k == 0) return p1;
        return (1 - p1) * std::pow(q0, kd - 1) * p0;
    }
    if (j == 1) {
        if (k == 0) return p1 * p0;
        return p1 * std::pow(q0, kd) * p0 + kd * (1 - p1) * std::pow(q0, kd - 1) * p0 * p0;
    }
    double v = detail::binomial(k + j - 1, j - 1) * p1 * std::pow(q0, kd) * std::pow(p0, jd);
    if (k > 0) v += detail::binomial(k + j - 1, j) * (1 - p1) * std::pow(q0, kd - 1) * std::pow(p0, jd + 1);
    return v;
}

struct PmfRow {
    std::vector<double> probabilities;  // k = 0 .. size-1
    double tail_bound = 0.0;            // bound on the mass at k >= size
};

/// p(j, 0), p(j, 1), ... truncated once the analytic tail bound drops below tol.
/// A_{j+1} is at most 1 + NB(j+1, p0), which gives the bound.
inline PmfRow transition_pmf_row(std::uint64_t j, double p0, double p1, double tol) {
    require(tol > 0, "tolerance must be positive");
    PmfRow row;
    std::uint64_t K = 0;
    for (;;) {
        const double bound = negative_binomial_tail_bound(j + 1, K, p0);
        if (bound < tol) {
            row.tail_bound = bound;
            return row;
        }
        row.probabilities.push_back(bbp_transition_pmf(j, K, p0, p1));
        ++K;
    }
}

struct BbpChain {
    CookieSequenceLaw law;
    std::uint64_t current = 0;
    std::uint64_t time = 0;
};

inline BbpChain step_chain(BbpChain chain, Rng& rng) {
    chain.current = sample_A(chain.law, chain.current + 1, rng);
    ++chain.time;
    return chain;
}

struct StationaryEstimate {
    EmpiricalPmf pmf;
    double mean = 0.0;
    double first_half_mean = 0.0;   // drift diagnostic
    double second_half_mean = 0.0;
    std::uint64_t steps = 0;
    std::uint64_t burnin = 0;
    std::uint64_t seed = 0;
};

/// Occupation frequencies of the chain started at 0, over `steps` post-burn-in
/// steps. Burn-in defaults to 10% of steps.
inline StationaryEstimate estimate_stationary(const CookieSequenceLaw& law, std::uint64_t steps,
                                              std::optional<std::uint64_t> burnin, std::uint64_t seed) {
    require(steps >= 2, "estimate_stationary needs at least 2 steps");
    require(law.tail() >= 0.5, "a tail probability below 1/2 gives no stationary distribution");
    if (law.tail() == 0.5)
        require(law.finite_delta() > 1,
                "a fair-tail chain with delta <= 1 has no stationary distribution");
    StationaryEstimate est;
    est.steps = steps;
    est.burnin = burnin.value_or(steps / 10);
    est.seed = seed;
    Rng rng(seed);
    std::uint64_t z = 0;
    for (std::uint64_t t = 0; t < est.burnin; ++t) z = sample_A(law, z + 1, rng);
    std::vector<std::uint64_t> dense;
    long double first = 0, second = 0;
    const std::uint64_t half = steps / 2;
    for (std::uint64_t t = 0; t < steps; ++t) {
        z = sample_A(law, z + 1, rng);
        if (z >= dense.size()) dense.resize(z + 1, 0);
        ++dense[z];
        (t < half ? first : second) += static_cast<long double>(z);
    }
    for (std::size_t k = 0; k < dense.size(); ++k)
        if (dense[k] > 0) est.pmf.add(k, dense[k]);
    est.mean = est.pmf.mean();
    est.first_half_mean = static_cast<double>(first / static_cast<long double>(half));
    est.second_half_mean = static_cast<double>(second / static_cast<long double>(steps - half));
    return est;
}

/// v = 1 / (1 + 2 E[Z_0]); an infinite mean gives speed 0.
inline double speed_from_stationary(double mean_z) {
    require(!std::isnan(mean_z) && mean_z >= 0, "stationary mean must be nonnegative");
    if (std::isinf(mean_z)) return 0.0;
    return 1.0 / (1.0 + 2.0 * mean_z);
}

// ---------------------------------------------------------------------------
// Decomposition of A_k into a cookie part plus i.i.d. geometrics.

enum class DecompositionConvention {
    BaseMPlusKMinusM,            // A_M + (k - M) geometrics
    BaseMPlusKMinusMPlusOne,     // A_M + (k - M + 1) geometrics
    BaseMMinusOnePlusKMinusMPlusOne,  // A_{M-1} + (k - M + 1) geometrics
};

inline std::string_view to_string(DecompositionConvention c) {
    switch (c) {
        case DecompositionConvention::BaseMPlusKMinusM: return "A_M+(k-M)";
        case DecompositionConvention::BaseMPlusKMinusMPlusOne: return "A_M+(k-M+1)";
        case DecompositionConvention::BaseMMinusOnePlusKMinusMPlusOne: return "A_{M-1}+(k-M+1)";
    }
    return "?";
}

struct ConventionResult {
    DecompositionConvention convention;
    double tv = 0.0;
    bool pass = false;
};

struct DecompositionReport {
    std::uint64_t k = 0;
    std::size_t M = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double threshold = 0.0;
    double null_tv = 0.0;  // TV between two independent direct samples of A_k
    std::vector<ConventionResult> conventions;
    std::optional<DecompositionConvention> selected;
};

/// Compares the empirical law of A_k with each candidate decomposition.
/// M is the index after which the trials are i.i.d. with the tail probability.
inline DecompositionReport check_decomposition(const CookieSequenceLaw& law, std::uint64_t k,
                                               std::uint64_t samples, std::uint64_t seed,
                                               double threshold = 0.01) {
    const std::size_t M = law.iid_from();
    require(k >= M, "decomposition needs k >= M");
    require(samples >= 1, "decomposition needs samples >= 1");
    DecompositionReport report{k, M, samples, seed, threshold, 0.0, {}, std::nullopt};
    const Rng base(seed);

    auto direct = [&](std::uint64_t stream) {
        Rng rng = base.split(stream);
        EmpiricalPmf pmf;
        for (std::uint64_t s = 0; s < samples; ++s) pmf.add(sample_A(law, k, rng));
        return pmf;
    };
    auto decomposed = [&](std::uint64_t stream, std::uint64_t base_k, std::uint64_t geometrics) {
        Rng rng = base.split(stream);
        EmpiricalPmf pmf;
        for (std::uint64_t s = 0; s < samples; ++s) {
            std::uint64_t v = sample_A(law, base_k, rng);
            for (std::uint64_t g = 0; g < geometrics; ++g) v += sample_geometric(law.tail(), rng);
            pmf.add(v);
        }
        return pmf;
    };

    const EmpiricalPmf reference = direct(0);
    report.null_tv = tv_distance(reference, direct(1));

    auto record = [&](DecompositionConvention c, const EmpiricalPmf& pmf) {
        const double tv = tv_distance(reference, pmf);
        report.conventions.push_back({c, tv, tv < threshold});
    };
    record(DecompositionConvention::BaseMPlusKMinusM, decomposed(2, M, k - M));
    record(DecompositionConvention::BaseMPlusKMinusMPlusOne, decomposed(3, M, k - M + 1));
    if (M >= 1) record(DecompositionConvention::BaseMMinusOnePlusKMinusMPlusOne, decomposed(4, M - 1, k - M + 1));

    const ConventionResult* best = nullptr;
    for (const auto& c : report.conventions)
        if (c.pass && (!best || c.tv < best->tv)) best = &c;
    if (best) report.selected = best->convention;
    return report;
}

// ---------------------------------------------------------------------------
// Law of (U_n^n, ..., U_0^n) versus (Z_0, ..., Z_n).

struct UzReport {
    std::int64_t n = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t step_cap = 0;
    std::uint64_t resampled = 0;     // walk replicas that hit the step cap and were redrawn
    std::vector<double> marginal_tv;  // index i compares Z_i with U_{n-i}^n
    double terminal_tv = 0.0;         // Z_n versus U_0^n
    double threshold = 0.0;
    bool pass = false;
};

inline UzReport check_u_z_equality(const WalkConfig& config, std::int64_t n, std::uint64_t samples,
                                   std::uint64_t seed, double threshold = 0.02,
                                   std::uint64_t step_cap = 10'000'000, unsigned threads = 0) {
    require(transient_right(config), "U/Z comparison needs a walk transient to the right");
    require(n >= 0 && n <= 8, "U/Z comparison is limited to 0 <= n <= 8");
    require(samples >= 1, "U/Z comparison needs samples >= 1");
    const auto width = static_cast<std::size_t>(n) + 1;
    UzReport report{n, samples, seed, step_cap, 0, {}, 0.0, threshold, false};

    const StepRule rule(config);
    const Rng walk_base(derive_seed(seed, 1));
    std::vector<std::uint64_t> walk_values(samples * width);
    std::atomic<std::uint64_t> resampled{0};
    parallel_for(samples, threads, [&](std::size_t i) {
        const Rng sample_rng = walk_base.split(i);
        for (std::uint64_t attempt = 0;; ++attempt) {
            Rng rng = sample_rng.split(attempt);
            auto profile = sample_left_step_profile(rule, n, rng, step_cap);
            if (profile) {
                std::copy(profile->counts.begin(), profile->counts.end(), walk_values.begin() + i * width);
                return;
            }
            resampled.fetch_add(1, std::memory_order_relaxed);
        }
    });
    report.resampled = resampled.load();

    const CookieSequenceLaw law = CookieSequenceLaw::from_config(config);
    const Rng chain_base(derive_seed(seed, 2));
    std::vector<std::uint64_t> chain_values(samples * width);
    parallel_for(samples, threads, [&](std::size_t i) {
        Rng rng = chain_base.split(i);
        std::uint64_t z = 0;
        chain_values[i * width] = 0;
        for (std::size_t t = 1; t < width; ++t) {
            z = sample_A(law, z + 1, rng);
            chain_values[i * width + t] = z;
        }
    });

    report.pass = true;
    for (std::size_t t = 0; t < width; ++t) {
        EmpiricalPmf u, z;
        for (std::uint64_t i = 0; i < samples; ++i) {
            u.add(walk_values[i * width + t]);
            z.add(chain_values[i * width + t]);
        }
        const double tv = tv_distance(u, z);
        report.marginal_tv.push_back(tv);
        if (!(tv < threshold)) report.pass = false;
    }
    report.terminal_tv = report.marginal_tv.back();
    return report;
}

// ---------------------------------------------------------------------------
// Monotone coupling of the EARW chain with a finite-cookie standard chain.

/// Least N > M with delta(cookies, p0 repeated N - M times) > 2.
inline std::size_t coupling_cookie_count(const CookieVector& cookies, const Rational& p0) {
    require(p0 > Rational(1, 2), "coupling needs p0 > 1/2");
    const Rational d = delta(cookies);
    const Rational step = 2 * p0 - 1;
    // d + (N - M) * step > 2  <=>  N - M > (2 - d) / step
    BigInt extra = floor((2 - d) / step) + 1;
    if (extra < 1) extra = 1;
    return cookies.size() + extra.convert_to<std::size_t>();
}

struct CouplingSetup {
    CookieVector cookies;
    Rational p0;
    std::size_t total_cookies;  // N

    static CouplingSetup make(CookieVector cookies, const Rational& p0, std::optional<std::size_t> N = {}) {
        require(p0 > Rational(1, 2), "coupling needs p0 > 1/2, got " + to_string(p0));
        require(p0 <= 1, "coupling needs p0 <= 1");
        const std::size_t least = coupling_cookie_count(cookies, p0);
        const std::size_t n = N.value_or(least);
        require(n > cookies.size(), "coupling needs N > M");
        require(delta(cookies) + Rational(static_cast<long long>(n - cookies.size())) * (2 * p0 - 1) > 2,
                "coupling needs delta(N, p') > 2; smallest admissible N is " + std::to_string(least));
        return CouplingSetup{std::move(cookies), p0, n};
    }

    CookieSequenceLaw infinite_law() const {
        return CookieSequenceLaw::asymmetric({cookies.values().begin(), cookies.values().end()}, to_double(p0));
    }
    CookieSequenceLaw finite_law() const {
        return CookieSequenceLaw::truncated({cookies.values().begin(), cookies.values().end()}, to_double(p0),
                                            total_cookies);
    }
};

/// Per-trial-index success counts of a Bernoulli stream.
struct FrequencyTable {
    std::vector<std::uint64_t> trials;
    std::vector<std::uint64_t> successes;

    void record(std::size_t j, bool success) {
        if (j >= trials.size()) {
            trials.resize(j + 1, 0);
            successes.resize(j + 1, 0);
        }
        ++trials[j];
        successes[j] += success;
    }
    void merge(const FrequencyTable& o) {
        if (o.trials.size() > trials.size()) {
            trials.resize(o.trials.size(), 0);
            successes.resize(o.trials.size(), 0);
        }
        for (std::size_t j = 0; j < o.trials.size(); ++j) {
            trials[j] += o.trials[j];
            successes[j] += o.successes[j];
        }
    }
};

struct CoupledRun {
    std::vector<std::uint64_t> infinite_path;  // Z_inf,0 .. Z_inf,steps
    std::vector<std::uint64_t> finite_path;    // Z_N,0 .. Z_N,steps
    std::uint64_t violations = 0;              // n with Z_inf,n > Z_N,n
    std::uint64_t zero_violations = 0;         // n with Z_N,n = 0 but Z_inf,n > 0
    std::optional<std::uint64_t> infinite_return;  // first n > 0 with Z_inf,n = 0
    std::optional<std::uint64_t> finite_return;
    bool return_time_violation = false;        // T+_inf > T+_N
};

namespace detail {

/// Failures before `k` successes in the stream success_j = (u_j < threshold(j)),
/// extending the shared uniform buffer as needed.
template <class Threshold>
std::uint64_t coupled_failures(std::uint64_t k, std::vector<double>& buffer, Rng& rng, Threshold threshold,
                               FrequencyTable* freq) {
    std::uint64_t failures = 0, successes = 0;
    std::size_t j = 0;
    while (successes < k) {
        if (j == buffer.size()) buffer.push_back(rng.uniform());
        const bool s = buffer[j] < threshold(j + 1);
        if (freq) freq->record(j + 1, s);
        if (s) ++successes;
        else ++failures;
        ++j;
    }
    return failures;
}

}  // namespace detail

/// Drives both chains from one uniform per (generation, trial): xi_j = u < P(xi_j = 1),
/// zeta_j = u < P(zeta_j = 1). This realizes the three-case joint law with xi >= zeta.
inline CoupledRun run_coupled(const CouplingSetup& setup, std::uint64_t steps, Rng& rng, bool keep_paths = true,
                              FrequencyTable* xi_freq = nullptr, FrequencyTable* zeta_freq = nullptr) {
    const CookieSequenceLaw xi = setup.infinite_law();
    const CookieSequenceLaw zeta = setup.finite_law();
    auto xi_threshold = [&](std::size_t j) { return xi.success_probability(j); };
    auto zeta_threshold = [&](std::size_t j) { return zeta.success_probability(j); };

    CoupledRun run;
    if (keep_paths) {
        run.infinite_path.reserve(steps + 1);
        run.finite_path.reserve(steps + 1);
        run.infinite_path.push_back(0);
        run.finite_path.push_back(0);
    }
    std::vector<double> buffer;
    std::uint64_t z_inf = 0, z_fin = 0;
    for (std::uint64_t n = 1; n <= steps; ++n) {
        buffer.clear();
        const std::uint64_t next_inf = detail::coupled_failures(z_inf + 1, buffer, rng, xi_threshold, xi_freq);
        const std::uint64_t next_fin = detail::coupled_failures(z_fin + 1, buffer, rng, zeta_threshold, zeta_freq);
        z_inf = next_inf;
        z_fin = next_fin;
        if (keep_paths) {
            run.infinite_path.push_back(z_inf);
            run.finite_path.push_back(z_fin);
        }
        if (z_inf > z_fin) ++run.violations;
        if (z_fin == 0 && z_inf != 0) ++run.zero_violations;
        if (z_inf == 0 && !run.infinite_return) run.infinite_return = n;
        if (z_fin == 0 && !run.finite_return) run.finite_return = n;
    }
    if (run.finite_return && (!run.infinite_return || *run.infinite_return > *run.finite_return))
        run.return_time_violation = true;
    return run;
}

inline CoupledRun run_coupled(const CouplingSetup& setup, std::uint64_t steps, std::uint64_t seed) {
    Rng rng(seed);
    return run_coupled(setup, steps, rng);
}

struct CouplingReport {
    std::uint64_t paths = 0;
    std::uint64_t steps = 0;
    std::uint64_t seed = 0;
    std::size_t M = 0;
    std::size_t N = 0;
    std::uint64_t violations = 0;
    std::uint64_t zero_violations = 0;
    std::uint64_t return_time_violations = 0;
    std::uint64_t paths_with_finite_return = 0;
    FrequencyTable xi_frequencies;
    FrequencyTable zeta_frequencies;
};

/// `paths` independent coupled runs, path i seeded derive_seed(seed, i).
inline CouplingReport run_coupled_paths(const CouplingSetup& setup, std::uint64_t paths, std::uint64_t steps,
                                        std::uint64_t seed, unsigned threads = 0) {
    require(paths >= 1 && steps >= 1, "coupling needs paths >= 1 and steps >= 1");
    std::vector<CoupledRun> runs(paths);
    std::vector<FrequencyTable> xi(paths), zeta(paths);
    const Rng base(seed);
    parallel_for(paths, threads, [&](std::size_t i) {
        Rng rng = base.split(i);
        runs[i] = run_coupled(setup, steps, rng, false, &xi[i], &zeta[i]);
    });
    CouplingReport report;
    report.paths = paths;
    report.steps = steps;
    report.seed = seed;
    report.M = setup.cookies.size();
    report.N = setup.total_cookies;
    for (std::size_t i = 0; i < paths; ++i) {
        report.violations += runs[i].violations;
        report.zero_violations += runs[i].zero_violations;
        report.return_time_violations += runs[i].return_time_violation;
        report.paths_with_finite_return += runs[i].finite_return.has_value();
        report.xi_frequencies.merge(xi[i]);
        report.zeta_frequencies.merge(zeta[i]);
    }
    return report;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const StationaryEstimate& e) {
    return {{"pmf", to_json(e.pmf)},
            {"mean", e.mean},
            {"first_half_mean", e.first_half_mean},
            {"second_half_mean", e.second_half_mean},
            {"steps", e.steps},
            {"burnin", e.burnin},
            {"seed", e.seed}};
}

inline nlohmann::json to_json(const DecompositionReport& r) {
    nlohmann::json conventions = nlohmann::json::array();
    for (const auto& c : r.conventions)
        conventions.push_back({{"convention", std::string(to_string(c.convention))}, {"tv", c.tv}, {"pass", c.pass}});
    return {{"k", r.k},
            {"M", r.M},
            {"samples", r.samples},
            {"seed", r.seed},
            {"threshold", r.threshold},
            {"null_tv", r.null_tv},
            {"conventions", conventions},
            {"selected", r.selected ? nlohmann::json(std::string(to_string(*r.selected))) : nlohmann::json(nullptr)}};
}

inline nlohmann::json to_json(const UzReport& r) {
    return {{"n", r.n},
            {"samples", r.samples},
            {"seed", r.seed},
            {"step_cap", r.step_cap},
            {"resampled", r.resampled},
            {"marginal_tv", r.marginal_tv},
            {"terminal_tv", r.terminal_tv},
            {"threshold", r.threshold},
            {"pass", r.pass}};
}

inline nlohmann::json to_json(const CouplingReport& r) {
    return {{"violations", r.violations},
            {"zero_violations", r.zero_violations},
            {"return_time_violations", r.return_time_violations},
            {"paths_with_finite_return", r.paths_with_finite_return},
            {"paths", r.paths},
            {"steps", r.steps},
            {"seed", r.seed},
            {"M", r.M},
            {"N", r.N}};
}

}  // namespace erw
