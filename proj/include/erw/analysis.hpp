#pragma once

// Closed-form results: the exact one-cookie EARW speed, the stationary mean
// of its backwards process, the generating function via its functional
// recursion, and the constructions comparing delta with the speed.
//
// Formula evaluators are templates over the scalar type so that worked
// examples can be recomputed in exact rational arithmetic.

#include "erw/errors.hpp"
#include "erw/params.hpp"
#include "erw/rational.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

namespace erw {

template <class T>
inline T half() {
    return T(1) / T(2);
}

// ---------------------------------------------------------------------------
// One-cookie EARW

/// v*(p0, p1) = (2p0 - 1) / (2p0 - 1 + 2(1 - p1)). p1 = 1 is accepted as a closure point.
template <class T>
T exact_speed_earw(const T& p0, const T& p1) {
    require(p0 > half<T>(), "exact speed needs p0 > 1/2");
    require(p0 <= T(1), "exact speed needs p0 <= 1");
    require(p1 > T(0) && p1 <= T(1), "exact speed needs p1 in (0,1]");
    const T drift = 2 * p0 - 1;
    return drift / (drift + 2 * (1 - p1));
}

/// E_pi[Z_0] = (1 - p1) / (2p0 - 1). At p0 = 1/2 the mean diverges: floating
/// callers get +infinity, exact callers get an InvalidParameter.
template <class T>
T expected_Z0(const T& p0, const T& p1) {
    require(p0 >= half<T>(), "stationary mean needs p0 >= 1/2");
    require(p0 <= T(1), "stationary mean needs p0 <= 1");
    require(p1 > T(0) && p1 <= T(1), "stationary mean needs p1 in (0,1]");
    if (p0 == half<T>()) {
        if constexpr (std::is_floating_point_v<T>) return std::numeric_limits<T>::infinity();
        else throw InvalidParameter("stationary mean diverges at p0 = 1/2");
    }
    return (1 - p1) / (2 * p0 - 1);
}

struct PgfEvaluation {
    double s = 0.0;
    double value = 0.0;
    std::uint64_t factors_used = 0;
    double tail_bound = 0.0;
};

namespace detail {

struct LogProduct {
    double log_value = 0.0;
    std::uint64_t factors = 0;
    double tail_bound = 0.0;
};

/// log G(1 - d) as the product of prefactors along the iterates of
/// phi(s) = p0 / (1 - s(1 - p0)), tracked through d = 1 - s for precision
/// near s = 1. Each prefactor is 1 - x with x = (1-p1) d / (p0 + (1-p0) d),
/// and d contracts by at least r = (1-p0)/p0 per iterate, so the remaining
/// log-mass is bounded by (c d / (1 - c d)) / (1 - r) with c = (1-p1)/p0.
inline LogProduct pgf_log_product(double p0, double p1, double d, double tol) {
    const double q0 = 1 - p0;
    const double r = q0 / p0;
    const double c = (1 - p1) / p0;
    LogProduct out;
    for (;;) {
        const double cd = c * d;
        if (cd < 1) {
            const double tail_log = (cd / (1 - cd)) / (1 - r);
            const double bound = -std::expm1(-tail_log);
            if (bound < tol || d == 0.0) {
                out.tail_bound = bound;
                return out;
            }
        }
        const double denom = p0 + q0 * d;
        out.log_value += std::log1p(-(1 - p1) * d / denom);
        d = q0 * d / denom;
        ++out.factors;
    }
}

}  // namespace detail

/// G(s) = E_pi[s^{Z_0}] for the one-cookie EARW backwards process.
inline PgfEvaluation pgf_eval(double p0, double p1, double s, double tol = 1e-14) {
    require(p0 > 0.5 && p0 <= 1, "generating function needs p0 in (1/2,1]");
    require(p1 > 0 && p1 <= 1, "generating function needs p1 in (0,1]");
    require(s >= 0 && s <= 1, "generating function argument must lie in [0,1]");
    require(tol > 0, "tolerance must be positive");
    const auto lp = detail::pgf_log_product(p0, p1, 1 - s, tol);
    return {s, std::exp(lp.log_value), lp.factors, lp.tail_bound};
}

/// Left derivative of G at 1 from one-sided differences at h and h/2 with
/// one Richardson step. 1 - G(1 - h) is formed directly from the log-product.
inline double pgf_left_derivative_at_one(double p0, double p1, double h = 1e-5, double tol = 1e-15) {
    require(h > 0 && h < 1, "difference step must lie in (0,1)");
    auto one_sided = [&](double step) {
        const auto lp = detail::pgf_log_product(p0, p1, step, tol);
        return -std::expm1(lp.log_value) / step;
    };
    return 2 * one_sided(h / 2) - one_sided(h);
}

// ---------------------------------------------------------------------------
// Equal-delta constructions

/// p^(i) = 1/2 + M(2p - 1) / (2(M + i)).
template <class T>
T p_i_strength(std::uint64_t M, const T& p, std::uint64_t i) {
    require(M >= 3, "equal-delta construction needs M >= 3");
    require(p > half<T>() && p < T(1), "equal-delta construction needs p in (1/2,1)");
    const T m(static_cast<long long>(M));
    const T mi(static_cast<long long>(M + i));
    return half<T>() + m * (2 * p - 1) / (2 * mi);
}

struct MonotonicityWitness {
    std::uint64_t M = 0;
    Rational p;
    std::uint64_t i = 0;
    Rational derived_strength;
    CookieVector derived;
};

inline MonotonicityWitness equal_delta_witness(std::uint64_t M, const Rational& p, std::uint64_t i) {
    const Rational pi = p_i_strength(M, p, i);
    return {M, p, i, pi, CookieVector::repeated(M + i, pi)};
}

/// Numerator and denominator polynomials of the three-cookie speed bound.
template <class T>
T bound_numerator(const T& q) {
    return (6 * q - 5) * (q * q - 2 * q - 1);
}
template <class T>
T bound_denominator(const T& q) {
    return 24 * q * q * q * q - 42 * q * q * q - 3 * q * q + 28 * q - 9;
}

/// f(q), a lower bound on the speed of the walk with three q-cookies.
/// Closure points q = 5/6 and q = 1 are accepted.
template <class T>
T speed_lower_bound_3cookie(const T& q) {
    require(q >= T(5) / T(6) && q <= T(1), "three-cookie speed bound needs q in [5/6, 1]");
    return bound_numerator(q) / bound_denominator(q);
}

struct CorollaryThreshold {
    BigInt N;                   // smallest integer >= threshold
    Rational threshold;         // exact value of the printed expression
    double threshold_expanded;  // printed expression in floating point
    double threshold_horner;    // 3(2p-1)/f(q) - 3 with Horner-evaluated polynomials
    bool next_index_below_bound;  // 3(2p-1)/(3 + N + 1) < f(q)
};

namespace detail {

inline double horner(std::initializer_list<double> coeffs_high_first, double x) {
    double acc = 0.0;
    for (double c : coeffs_high_first) acc = acc * x + c;
    return acc;
}

}  // namespace detail

/// Smallest N such that for every i > N the simple-walk bound 3(2p-1)/(3+i)
/// lies below f(q).
inline CorollaryThreshold corollary_threshold_N(const Rational& p, const Rational& q) {
    require(Rational(5, 6) < q && q < p && p < 1, "threshold needs 5/6 < q < p < 1");
    const Rational D = bound_denominator(q);
    const Rational E = -6 * q * q * q * q + 9 * q * q * q + 5 * q * q - 8 * q + 1;
    const Rational threshold = 6 * (p * D + 2 * E) / bound_numerator(q);
    const BigInt N = ceil(threshold);

    const double pd = to_double(p), qd = to_double(q);
    const double Dd = 24 * std::pow(qd, 4) - 42 * std::pow(qd, 3) - 3 * qd * qd + 28 * qd - 9;
    const double Ed = -6 * std::pow(qd, 4) + 9 * std::pow(qd, 3) + 5 * qd * qd - 8 * qd + 1;
    const double expanded = 6 * (pd * Dd + 2 * Ed) / ((6 * qd - 5) * (qd * qd - 2 * qd - 1));
    const double f_horner = detail::horner({6, -17, 4, 5}, qd) / detail::horner({24, -42, -3, 28, -9}, qd);
    const double horner = 3 * (2 * pd - 1) / f_horner - 3;

    const Rational next = Rational(N) + 1;
    const bool ok = 3 * (2 * p - 1) / (3 + next) < speed_lower_bound_3cookie(q);
    return {N, threshold, expanded, horner, ok};
}

struct PropositionBounds {
    Rational f_q;
    Rational epsilon_max;         // (1 - p) f(q) / (1 - f(q))
    Rational epsilon;
    bool epsilon_admissible;      // 0 < epsilon < epsilon_max
    Rational v_star;              // v*(1/2 + epsilon, p) = epsilon / (epsilon + 1 - p)
    bool v_star_below_bound;      // v_star < f(q)
    std::uint64_t minimal_M;      // least M with delta(p, 1/2+eps, ..., 1/2+eps) > 2
    Rational delta_at_minimal_M;
    Rational printed_N_threshold; // (4 - 2p) / (1 + 2 epsilon), reported for comparison only
};

inline PropositionBounds proposition_bounds(const Rational& p, const Rational& q, const Rational& epsilon) {
    require(Rational(5, 6) < q && q < p && p < 1, "bounds need 5/6 < q < p < 1");
    require(epsilon > 0, "epsilon must be positive");
    PropositionBounds b;
    b.f_q = speed_lower_bound_3cookie(q);
    b.epsilon_max = (1 - p) * b.f_q / (1 - b.f_q);
    b.epsilon = epsilon;
    b.epsilon_admissible = epsilon < b.epsilon_max;
    b.v_star = exact_speed_earw(half<Rational>() + epsilon, p);
    b.v_star_below_bound = b.v_star < b.f_q;
    // (2p - 1) + (M - 1) 2 eps > 2  <=>  M - 1 > (3 - 2p) / (2 eps)
    const BigInt m_minus_one = floor((3 - 2 * p) / (2 * epsilon)) + 1;
    b.minimal_M = m_minus_one.convert_to<std::uint64_t>() + 1;
    b.delta_at_minimal_M = (2 * p - 1) + Rational(m_minus_one) * 2 * epsilon;
    b.printed_N_threshold = (4 - 2 * p) / (1 + 2 * epsilon);
    return b;
}

struct CounterexampleGap {
    double direct = 0.0;    // ((3p+1)/5)^5 - ((6p+1)/8)^4 / 2
    double factored = 0.0;  // 9 (2p-1)^2 (55296p^3 + 34956p^2 + 7572p + 563) / 25600000
    bool agree = false;     // |direct - factored| <= 1e-12
};

/// Gap between (p^(2))^5 and (p^(1))^4 / 2 for M = 3, in direct and factored form.
inline CounterexampleGap order_counterexample_gap(double p) {
    require(p >= 0.5 && p < 1, "counterexample gap needs p in [1/2, 1)");
    const double p2 = (3 * p + 1) / 5;
    const double p1 = (6 * p + 1) / 8;
    CounterexampleGap g;
    g.direct = std::pow(p2, 5) - std::pow(p1, 4) / 2;
    const double t = 2 * p - 1;
    g.factored = 9 * t * t * detail::horner({55296, 34956, 7572, 563}, p) / 25600000;
    g.agree = std::abs(g.direct - g.factored) <= 1e-12;
    return g;
}

inline Rational order_counterexample_gap_exact(const Rational& p) {
    const Rational p2 = (3 * p + 1) / 5;
    const Rational p1 = (6 * p + 1) / 8;
    return p2 * p2 * p2 * p2 * p2 - p1 * p1 * p1 * p1 / 2;
}

struct SmallSpeedConstruction {
    std::uint64_t M = 0;        // base cookie count
    Rational p;                 // base strength
    std::uint64_t i = 0;        // extra cookies
    Rational delta;             // delta(M + i, p_i) = M(2p - 1)
    Rational strength;          // p^(i)
    Rational speed_bound;       // 2 p^(i) - 1
};

/// For any eta, eps > 0: a cookie vector (M + i copies of p^(i)) with
/// delta > eta and simple-walk speed bound 2p^(i) - 1 < eps.
inline SmallSpeedConstruction small_speed_construction(const Rational& eta, const Rational& eps) {
    require(eta > 0 && eps > 0, "eta and eps must be positive");
    const Rational p(3, 4);
    // delta = M / 2 > eta
    const BigInt m_big = floor(2 * eta) + 1;
    const std::uint64_t M = std::max<std::uint64_t>(3, m_big.convert_to<std::uint64_t>());
    const Rational d = Rational(static_cast<long long>(M)) * (2 * p - 1);
    // d / (M + i) < eps  <=>  i > d / eps - M
    BigInt i_big = floor(d / eps - Rational(static_cast<long long>(M))) + 1;
    if (i_big < 0) i_big = 0;
    const std::uint64_t i = i_big.convert_to<std::uint64_t>();
    const Rational s = p_i_strength(M, p, i);
    return {M, p, i, d, s, 2 * s - 1};
}

// ---------------------------------------------------------------------------
// Speed curves over p0

struct SpeedCurvePoint {
    double p0;
    double p1;
    double v_star;
};

/// v*(p0, p1) on p0 = 1/2 + k / (2(grid + 1)), k = 1..grid, for each p1.
inline std::vector<SpeedCurvePoint> figure3_points(std::uint64_t grid, const std::vector<double>& p1_list) {
    require(grid >= 1, "grid must have at least one point");
    std::vector<SpeedCurvePoint> out;
    out.reserve(grid * p1_list.size());
    for (double p1 : p1_list) {
        for (std::uint64_t k = 1; k <= grid; ++k) {
            const double p0 = 0.5 + 0.5 * static_cast<double>(k) / static_cast<double>(grid + 1);
            out.push_back({p0, p1, exact_speed_earw(p0, p1)});
        }
    }
    return out;
}

inline nlohmann::json to_json(const PgfEvaluation& e) {
    return {{"s", e.s}, {"value", e.value}, {"factors_used", e.factors_used}, {"tail_bound", e.tail_bound}};
}

}  // namespace erw
