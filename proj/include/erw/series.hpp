#pragma once

// Gambler's-ruin probabilities and the series for pi(0) and pi(1) of the
// one-cookie EARW backwards process, each with an analytic truncation bound.

#include "erw/errors.hpp"
#include "erw/stats.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace erw {

/// P_z(T_x < T_y) for a simple walk stepping right with probability p.
struct RuinQuery {
    double p;
    std::int64_t x;  // upper barrier
    std::int64_t y;  // lower barrier
    std::int64_t z;  // start
};

namespace detail {

/// The two-case ruin formula evaluated without any ordering checks, as
/// (1 - r^{z-y}) / (1 - r^{x-y}) with r = (1-p)/p, or (z-y)/(x-y) at p = 1/2.
/// Computed through expm1 so it is continuous across p = 1/2.
inline double ruin_formula(double p, std::int64_t x, std::int64_t y, std::int64_t z) {
    const auto a = static_cast<double>(z - y);
    const auto b = static_cast<double>(x - y);
    if (p == 0.5) return a / b;
    const double log_r = std::log1p(-p) - std::log(p);
    return std::expm1(a * log_r) / std::expm1(b * log_r);
}

/// 1 - h(p, k+1, -1, k-1) = r^k (1 - r^2) / (1 - r^{k+2}), formed without cancellation.
inline double escape_below(double p, std::uint64_t k) {
    const double r = (1 - p) / p;
    if (r == 0.0) return k == 0 ? 1.0 : 0.0;
    const auto kd = static_cast<double>(k);
    return std::pow(r, kd) * (-std::expm1(2 * std::log(r))) / (-std::expm1((kd + 2) * std::log(r)));
}

}  // namespace detail

inline double ruin_probability(const RuinQuery& q) {
    require(q.p > 0 && q.p < 1, "ruin probability needs p in (0,1)");
    require(q.y < q.x, "ruin probability needs y < x (degenerate barriers rejected)");
    require(q.y <= q.z && q.z <= q.x, "ruin probability needs y <= z <= x");
    if (q.z == q.x) return 1.0;
    if (q.z == q.y) return 0.0;
    return detail::ruin_formula(q.p, q.x, q.y, q.z);
}

enum class SeriesMethod { ProductA2, SumA6VariantA, SumA6VariantB };

inline std::string_view to_string(SeriesMethod m) {
    switch (m) {
        case SeriesMethod::ProductA2: return "product_A2";
        case SeriesMethod::SumA6VariantA: return "sum_A6_variantA";
        case SeriesMethod::SumA6VariantB: return "sum_A6_variantB";
    }
    return "?";
}

struct SeriesResult {
    double value = 0.0;            // NaN when the series diverges
    std::uint64_t terms_used = 0;
    double tail_bound = 0.0;       // +inf when the series diverges
    SeriesMethod method = SeriesMethod::ProductA2;
    bool converged = true;
};

namespace detail {

inline void check_series_params(double p0, double p1, double tol) {
    require(p0 > 0.5 && p0 <= 1, "series need p0 in (1/2,1]");
    require(p1 > 0 && p1 <= 1, "series need p1 in (0,1]");
    require(tol > 0, "tolerance must be positive");
}

}  // namespace detail

/// pi(0) = prod_{k>=0} { p1 + (1 - p1) h(p0, k+1, -1, k-1) }, in log space.
/// The k-th deficit is at most (1 - p1) r^k with r = (1-p0)/p0, which bounds
/// the neglected log-mass by (1-p1) r^K / ((1-r)(1 - (1-p1) r^K)).
inline SeriesResult pi0_product(double p0, double p1, double tol = 1e-14) {
    detail::check_series_params(p0, p1, tol);
    const double r = (1 - p0) / p0;
    SeriesResult out{0.0, 0, 0.0, SeriesMethod::ProductA2, true};
    double log_value = 0.0;
    for (std::uint64_t k = 0;; ++k) {
        const double x_bound = (1 - p1) * std::pow(r, static_cast<double>(k));
        if (x_bound < 1) {
            const double tail_log = x_bound / ((1 - r) * (1 - x_bound));
            const double bound = -std::expm1(-tail_log);
            if (bound < tol) {
                out.tail_bound = bound;
                break;
            }
        }
        log_value += std::log1p(-(1 - p1) * detail::escape_below(p0, k));
        out.terms_used = k + 1;
    }
    out.value = std::exp(log_value);
    return out;
}

struct Pi1Report {
    SeriesResult variant_a;  // inner h read as the probability of hitting -1 before k+1
    SeriesResult variant_b;  // inner h read as h(p0, k+1, -1, k-1)
    SeriesResult pi0;
};

/// Both readings of the pi(1) series
///   sum_k pi(0) (1 - p1 - (1-p1) H_k) h(p0,k+1,-1,0) / (p1 + (1-p1) h(p0,k+1,-1,k-1)).
/// Variant A takes H_k = 1 - h(p0,k+1,-1,k-1); its terms tend to
/// pi(0)(1-p1)(1-r) > 0, so it diverges whenever p1 < 1 and is reported as such.
/// Variant B takes H_k = h(p0,k+1,-1,k-1); its k-th term is at most
/// (1-p1) r^k / p1, which bounds the tail.
inline Pi1Report pi1_sum(double p0, double p1, double tol = 1e-14, std::uint64_t max_terms = 10'000'000) {
    detail::check_series_params(p0, p1, tol);
    const double r = (1 - p0) / p0;
    Pi1Report rep;
    // The sum is at most pi(0) times this ratio, so pi(0)'s own error is scaled by it.
    const double ratio_max = (1 - p1) / (p1 * (1 - r));
    rep.pi0 = pi0_product(p0, p1, tol / (2 * (1 + ratio_max)));
    const double pi0 = rep.pi0.value;

    auto term = [&](std::uint64_t k) {
        const double esc = detail::escape_below(p0, k);  // 1 - h(p0, k+1, -1, k-1)
        const double h_k = 1 - esc;
        const double numer = (1 - p1) * esc;  // 1 - p1 - (1-p1) h_k
        const double reach = detail::ruin_formula(p0, static_cast<std::int64_t>(k) + 1, -1, 0);
        return pi0 * numer * reach / (p1 + (1 - p1) * h_k);
    };

    // Variant B
    {
        SeriesResult& b = rep.variant_b;
        b.method = SeriesMethod::SumA6VariantB;
        double sum = 0.0;
        for (std::uint64_t k = 0;; ++k) {
            const double tail = (1 - p1) * std::pow(r, static_cast<double>(k)) / (p1 * (1 - r));
            const double bound = tail + rep.pi0.tail_bound * (pi0 > 0 ? sum / pi0 : 0.0);
            if (tail < tol / 2 || p1 == 1.0) {
                b.tail_bound = bound;
                break;
            }
            if (k >= max_terms) {
                b.tail_bound = bound;
                b.converged = false;
                break;
            }
            sum += term(k);
            b.terms_used = k + 1;
        }
        b.value = sum;
    }

    // Variant A
    {
        SeriesResult& a = rep.variant_a;
        a.method = SeriesMethod::SumA6VariantA;
        if (p1 == 1.0) {
            a.value = 0.0;
            a.tail_bound = 0.0;
        } else {
            a.value = std::numeric_limits<double>::quiet_NaN();
            a.tail_bound = std::numeric_limits<double>::infinity();
            a.converged = false;
        }
    }
    return rep;
}

/// Partial sum of the first `terms` variant-A terms.
inline double pi1_variant_a_partial_sum(double p0, double p1, std::uint64_t terms) {
    detail::check_series_params(p0, p1, 1.0);
    const double pi0 = pi0_product(p0, p1).value;
    double sum = 0.0;
    for (std::uint64_t k = 0; k < terms; ++k) {
        const double h_k = 1 - detail::escape_below(p0, k);
        const double reach = detail::ruin_formula(p0, static_cast<std::int64_t>(k) + 1, -1, 0);
        sum += pi0 * (1 - p1) * h_k * reach / (p1 + (1 - p1) * h_k);
    }
    return sum;
}

/// Limit of the variant-A terms, pi(0)(1-p1)(1-r); positive means divergence.
inline double pi1_variant_a_term_limit(double p0, double p1) {
    const double r = (1 - p0) / p0;
    return pi0_product(p0, p1).value * (1 - p1) * (1 - r);
}

struct VariantSelection {
    std::optional<SeriesMethod> selected;
    double mc_estimate = 0.0;
    double mc_se = 0.0;
    double z_variant_a = 0.0;  // NaN if that variant did not converge
    double z_variant_b = 0.0;
};

/// Picks the convergent variant lying within 3 standard errors of the Monte
/// Carlo frequency of U_0 = 1; no selection if neither does.
inline VariantSelection select_pi1_variant(const Pi1Report& rep, const EmpiricalPmf& u0) {
    VariantSelection sel;
    const double p = u0.probability(1);
    sel.mc_estimate = p;
    sel.mc_se = std::sqrt(p * (1 - p) / static_cast<double>(u0.total));
    auto z = [&](const SeriesResult& s) {
        if (!s.converged) return std::numeric_limits<double>::quiet_NaN();
        return sel.mc_se > 0 ? (s.value - p) / sel.mc_se : (s.value == p ? 0.0 : std::numeric_limits<double>::infinity());
    };
    sel.z_variant_a = z(rep.variant_a);
    sel.z_variant_b = z(rep.variant_b);
    const bool a_ok = std::abs(sel.z_variant_a) <= 3;
    const bool b_ok = std::abs(sel.z_variant_b) <= 3;
    if (a_ok && (!b_ok || std::abs(sel.z_variant_a) < std::abs(sel.z_variant_b))) sel.selected = SeriesMethod::SumA6VariantA;
    else if (b_ok) sel.selected = SeriesMethod::SumA6VariantB;
    return sel;
}

inline nlohmann::json to_json(const SeriesResult& s) {
    auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    return {{"value", num(s.value)},
            {"terms_used", s.terms_used},
            {"tail_bound", num(s.tail_bound)},
            {"method", std::string(to_string(s.method))},
            {"converged", s.converged}};
}

}  // namespace erw
