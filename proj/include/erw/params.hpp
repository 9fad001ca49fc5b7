#pragma once

// Walk configurations, the drift parameter delta, and the recurrence /
// transience / speed classification of the standard excited walk.

#include "erw/errors.hpp"
#include "erw/rational.hpp"

#include <json.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace erw {

/// Admissible range for a strength. Model constructors use `open`; the
/// degenerate closure value 1 is allowed only where asked for explicitly.
enum class StrengthDomain { open, closed_above };

inline bool in_domain(const Rational& p, StrengthDomain d) {
    return p > 0 && (d == StrengthDomain::open ? p < 1 : p <= 1);
}

class CookieVector {
public:
    CookieVector() = default;

    explicit CookieVector(std::vector<Rational> strengths,
                          StrengthDomain domain = StrengthDomain::open)
        : exact_(std::move(strengths)) {
        values_.reserve(exact_.size());
        for (std::size_t i = 0; i < exact_.size(); ++i) {
            require(in_domain(exact_[i], domain),
                    "cookie strength p_" + std::to_string(i + 1) + " = " + to_string(exact_[i]) +
                        (domain == StrengthDomain::open ? " must lie in (0,1)" : " must lie in (0,1]"));
            values_.push_back(to_double(exact_[i]));
        }
    }

    static CookieVector repeated(std::size_t m, const Rational& p,
                                 StrengthDomain domain = StrengthDomain::open) {
        return CookieVector(std::vector<Rational>(m, p), domain);
    }

    static CookieVector from_doubles(std::span<const double> strengths,
                                     StrengthDomain domain = StrengthDomain::open) {
        std::vector<Rational> exact;
        exact.reserve(strengths.size());
        for (double p : strengths) exact.push_back(rational_from_double(p));
        return CookieVector(std::move(exact), domain);
    }

    std::size_t size() const { return exact_.size(); }
    bool empty() const { return exact_.empty(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const Rational& exact(std::size_t i) const { return exact_[i]; }
    std::span<const double> values() const { return values_; }
    const std::vector<Rational>& exact_values() const { return exact_; }

    CookieVector concat(const CookieVector& other) const {
        CookieVector out = *this;
        out.exact_.insert(out.exact_.end(), other.exact_.begin(), other.exact_.end());
        out.values_.insert(out.values_.end(), other.values_.begin(), other.values_.end());
        return out;
    }

    friend bool operator==(const CookieVector& a, const CookieVector& b) { return a.exact_ == b.exact_; }

private:
    std::vector<Rational> exact_;
    std::vector<double> values_;
};

/// Sum of (2 p_i - 1), exact.
inline Rational delta(const CookieVector& cookies) {
    Rational d = 0;
    for (const auto& p : cookies.exact_values()) d += 2 * p - 1;
    return d;
}

enum class WalkKind { Simple, ExcitedSymmetric, ExcitedAsymmetric };

enum class WalkClass {
    RecurrentZeroSpeed,
    TransientRightZeroSpeed,
    TransientRightPositiveSpeed,
    TransientLeft,
};

inline std::string_view to_string(WalkKind k) {
    switch (k) {
        case WalkKind::Simple: return "simple";
        case WalkKind::ExcitedSymmetric: return "erw";
        case WalkKind::ExcitedAsymmetric: return "earw";
    }
    return "?";
}

inline std::string_view to_string(WalkClass c) {
    switch (c) {
        case WalkClass::RecurrentZeroSpeed: return "recurrent_zero_speed";
        case WalkClass::TransientRightZeroSpeed: return "transient_right_zero_speed";
        case WalkClass::TransientRightPositiveSpeed: return "transient_right_positive_speed";
        case WalkClass::TransientLeft: return "transient_left";
    }
    return "?";
}

inline WalkKind parse_walk_kind(std::string_view s) {
    if (s == "simple" || s == "Simple") return WalkKind::Simple;
    if (s == "erw" || s == "ERW" || s == "ExcitedSymmetric" || s == "excited") return WalkKind::ExcitedSymmetric;
    if (s == "earw" || s == "EARW" || s == "ExcitedAsymmetric" || s == "excited_asymmetric")
        return WalkKind::ExcitedAsymmetric;
    throw InvalidParameter("unknown walk kind '" + std::string(s) + "' (expected simple, erw or earw)");
}

/// Classification of the standard (bias 1/2) excited walk by delta.
/// Boundaries follow the closed inequalities: delta = 1 is recurrent,
/// delta = 2 has zero speed. delta < -1 mirrors the right-transient case.
inline WalkClass classify_delta(const Rational& d) {
    if (d > 2) return WalkClass::TransientRightPositiveSpeed;
    if (d > 1) return WalkClass::TransientRightZeroSpeed;
    if (d >= -1) return WalkClass::RecurrentZeroSpeed;
    return WalkClass::TransientLeft;
}

inline WalkClass classify(const CookieVector& cookies) { return classify_delta(delta(cookies)); }

class WalkConfig {
public:
    /// Markov walk stepping right with probability p.
    static WalkConfig simple(const Rational& p, StrengthDomain domain = StrengthDomain::open) {
        require(in_domain(p, domain), "simple walk step probability p = " + to_string(p) + " must lie in (0,1)");
        return WalkConfig(WalkKind::Simple, CookieVector{}, p);
    }

    /// Standard excited walk: cookies, then 1/2.
    static WalkConfig excited(CookieVector cookies) {
        return WalkConfig(WalkKind::ExcitedSymmetric, std::move(cookies), Rational(1, 2));
    }

    /// Excited asymmetric walk: cookies, then bias p0 > 1/2.
    static WalkConfig excited_asymmetric(CookieVector cookies, const Rational& bias,
                                         StrengthDomain domain = StrengthDomain::open) {
        require(bias > Rational(1, 2), "EARW bias p0 = " + to_string(bias) + " must exceed 1/2");
        require(in_domain(bias, domain), "EARW bias p0 = " + to_string(bias) + " must lie in (1/2,1)");
        return WalkConfig(WalkKind::ExcitedAsymmetric, std::move(cookies), bias);
    }

    WalkKind kind() const { return kind_; }
    const CookieVector& cookies() const { return cookies_; }
    const Rational& bias() const { return bias_; }
    double bias_value() const { return bias_value_; }

    /// Step-right probability on the `visit`-th visit (1-based) to a site.
    double step_right_probability(std::size_t visit) const {
        return visit >= 1 && visit <= cookies_.size() ? cookies_[visit - 1] : bias_value_;
    }

    friend bool operator==(const WalkConfig& a, const WalkConfig& b) {
        return a.kind_ == b.kind_ && a.cookies_ == b.cookies_ && a.bias_ == b.bias_;
    }

private:
    WalkConfig(WalkKind kind, CookieVector cookies, Rational bias)
        : kind_(kind), cookies_(std::move(cookies)), bias_(std::move(bias)), bias_value_(to_double(bias_)) {}

    WalkKind kind_;
    CookieVector cookies_;
    Rational bias_;
    double bias_value_;
};

/// Classification applies to the standard model only.
inline WalkClass classify(const WalkConfig& config) {
    require(config.kind() != WalkKind::ExcitedAsymmetric,
            "classification by delta applies to the standard excited walk, not to EARW");
    if (config.kind() == WalkKind::Simple) {
        require(config.bias() == Rational(1, 2), "classification by delta requires a symmetric walk (p = 1/2)");
    }
    return classify(config.cookies());
}

/// True when the walk is transient to the right (or recurrent with the
/// backwards process still well defined): EARW, or delta > 1, or a simple walk with p > 1/2.
inline bool transient_right(const WalkConfig& config) {
    switch (config.kind()) {
        case WalkKind::ExcitedAsymmetric: return true;
        case WalkKind::Simple: return config.bias() > Rational(1, 2);
        case WalkKind::ExcitedSymmetric: return delta(config.cookies()) > 1;
    }
    return false;
}

// JSON: {"kind": "earw", "cookies": [0.9, "697/1100"], "bias": 0.8}

inline Rational rational_from_json(const nlohmann::json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number()) return rational_from_double(j.get<double>());
    throw InvalidParameter("expected a number or a \"num/den\" string, got " + j.dump());
}

inline WalkConfig config_from_json(const nlohmann::json& j,
                                   StrengthDomain domain = StrengthDomain::open) {
    require(j.is_object(), "walk config must be a JSON object");
    require(j.contains("kind"), "walk config needs a \"kind\" field");
    const WalkKind kind = parse_walk_kind(j.at("kind").get<std::string>());
    std::vector<Rational> strengths;
    if (j.contains("cookies")) {
        require(j.at("cookies").is_array(), "\"cookies\" must be an array");
        for (const auto& c : j.at("cookies")) strengths.push_back(rational_from_json(c));
    }
    switch (kind) {
        case WalkKind::Simple: {
            require(strengths.empty(), "a simple walk has no cookies (M = 0)");
            require(j.contains("bias"), "a simple walk needs \"bias\" (its step-right probability)");
            return WalkConfig::simple(rational_from_json(j.at("bias")), domain);
        }
        case WalkKind::ExcitedSymmetric: {
            if (j.contains("bias"))
                require(rational_from_json(j.at("bias")) == Rational(1, 2), "a standard excited walk has bias 1/2");
            return WalkConfig::excited(CookieVector(std::move(strengths), domain));
        }
        case WalkKind::ExcitedAsymmetric: {
            require(j.contains("bias"), "an EARW config needs \"bias\"");
            return WalkConfig::excited_asymmetric(CookieVector(std::move(strengths), domain),
                                                  rational_from_json(j.at("bias")), domain);
        }
    }
    throw InvalidParameter("unreachable walk kind");
}

inline nlohmann::json to_json(const WalkConfig& c) {
    nlohmann::json cookies = nlohmann::json::array();
    for (const auto& p : c.cookies().exact_values()) cookies.push_back(to_string(p));
    return {{"kind", std::string(to_string(c.kind()))}, {"cookies", cookies}, {"bias", to_string(c.bias())}};
}

}  // namespace erw
