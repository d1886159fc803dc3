#pragma once

/**
 * @file score.hpp
 * @brief Scalars of the max-plus and max-times semirings.
 *
 *   max-plus : R u {-inf}, "sum" is max, "product" is +, zero -inf, one 0
 *   max-times: [0,1],      "sum" is max, "product" is *, zero 0,    one 1
 *
 * exp_bridge / log_bridge move between [-inf,0] and [0,1]; both are
 * semiring isomorphisms, which is what the whole library leans on.
 */

#include <cmath>
#include <concepts>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include "idemkit/error.hpp"

namespace idemkit {

/// Library-wide comparison tolerance; every check takes an override.
inline constexpr double kDefaultTolerance = 1e-9;

/// An element of R u {-inf}. Bottom is a tag, never a sentinel float.
class ExtendedScore {
public:
    /// Bottom (-inf).
    constexpr ExtendedScore() noexcept = default;

    /// Finite value; -infinity maps to bottom, NaN and +infinity are rejected.
    ExtendedScore(double v) {  // NOLINT(google-explicit-constructor)
        if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
            throw ValidationError("ExtendedScore: value must be finite or -inf");
        if (v == -std::numeric_limits<double>::infinity()) return;
        value_ = v;
        finite_ = true;
    }

    static constexpr ExtendedScore bottom() noexcept { return ExtendedScore{}; }

    constexpr bool is_bottom() const noexcept { return !finite_; }
    constexpr bool is_finite() const noexcept { return finite_; }

    /// Finite payload. Calling on bottom is a logic error.
    double value() const {
        if (!finite_) throw std::logic_error("ExtendedScore::value() on bottom");
        return value_;
    }

    /// -infinity for bottom; only for interop with plain doubles.
    constexpr double to_double() const noexcept {
        return finite_ ? value_ : -std::numeric_limits<double>::infinity();
    }

    /// Exact equality: both bottom, or identical finite values.
    friend constexpr bool operator==(ExtendedScore a, ExtendedScore b) noexcept {
        return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
    }

    /// Total order with bottom below every finite value.
    friend constexpr bool operator<(ExtendedScore a, ExtendedScore b) noexcept {
        if (!a.finite_) return b.finite_;
        return b.finite_ && a.value_ < b.value_;
    }
    friend constexpr bool operator<=(ExtendedScore a, ExtendedScore b) noexcept { return !(b < a); }
    friend constexpr bool operator>(ExtendedScore a, ExtendedScore b) noexcept { return b < a; }
    friend constexpr bool operator>=(ExtendedScore a, ExtendedScore b) noexcept { return !(a < b); }

private:
    double value_ = 0.0;
    bool finite_ = false;
};

inline constexpr ExtendedScore bottom = ExtendedScore::bottom();

/// Tolerant equality; bottom never equals a finite value.
inline bool approx_equal(ExtendedScore a, ExtendedScore b, double tol = kDefaultTolerance) {
    if (a.is_bottom() || b.is_bottom()) return a.is_bottom() && b.is_bottom();
    return std::abs(a.value() - b.value()) <= tol;
}

/// A real in [0,1].
class UnitScore {
public:
    constexpr UnitScore() noexcept = default;

    UnitScore(double v) : value_(v) {  // NOLINT(google-explicit-constructor)
        if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("UnitScore: value outside [0,1]");
    }

    constexpr double value() const noexcept { return value_; }
    constexpr operator double() const noexcept { return value_; }  // NOLINT

private:
    double value_ = 0.0;
};

inline bool approx_equal(UnitScore a, UnitScore b, double tol = kDefaultTolerance) {
    return std::abs(a.value() - b.value()) <= tol;
}

/// max; bottom is neutral.
constexpr ExtendedScore oplus(ExtendedScore a, ExtendedScore b) noexcept { return a < b ? b : a; }

/// +; bottom is absorbing, 0 is neutral.
inline ExtendedScore otimes(ExtendedScore a, ExtendedScore b) noexcept {
    if (a.is_bottom() || b.is_bottom()) return bottom;
    return ExtendedScore(a.to_double() + b.to_double());
}

/// e^a on [-inf,0], with exp(-inf) = 0.
inline UnitScore exp_bridge(ExtendedScore a) {
    if (a.is_bottom()) return UnitScore(0.0);
    detail::require(a.value() <= 0.0, "exp_bridge: argument must be <= 0");
    return UnitScore(std::exp(a.value()));
}

/// ln u on [0,1], with ln 0 = -inf.
inline ExtendedScore log_bridge(UnitScore u) {
    if (u.value() == 0.0) return bottom;
    return ExtendedScore(std::log(u.value()));
}

/// Semiring traits used by the generic density / mixture templates.
struct MaxPlus {
    using value_type = ExtendedScore;
    static constexpr const char* name = "maxplus";
    static ExtendedScore zero() noexcept { return bottom; }
    static ExtendedScore one() noexcept { return ExtendedScore(0.0); }
    static ExtendedScore plus(ExtendedScore a, ExtendedScore b) noexcept { return oplus(a, b); }
    static ExtendedScore times(ExtendedScore a, ExtendedScore b) noexcept { return otimes(a, b); }
    static bool is_zero(ExtendedScore a) noexcept { return a.is_bottom(); }
    static bool is_one(ExtendedScore a) noexcept { return a == ExtendedScore(0.0); }
    static bool in_range(ExtendedScore a) noexcept { return a.is_bottom() || a.value() <= 0.0; }
    static bool equal(ExtendedScore a, ExtendedScore b, double tol) { return approx_equal(a, b, tol); }
};

struct MaxTimes {
    using value_type = UnitScore;
    static constexpr const char* name = "maxtimes";
    static UnitScore zero() noexcept { return UnitScore(); }
    static UnitScore one() { return UnitScore(1.0); }
    static UnitScore plus(UnitScore a, UnitScore b) noexcept { return a.value() < b.value() ? b : a; }
    static UnitScore times(UnitScore a, UnitScore b) { return UnitScore(a.value() * b.value()); }
    static bool is_zero(UnitScore a) noexcept { return a.value() == 0.0; }
    static bool is_one(UnitScore a) noexcept { return a.value() >= 1.0 - 1e-12; }
    static bool in_range(UnitScore) noexcept { return true; }
    static bool equal(UnitScore a, UnitScore b, double tol) { return approx_equal(a, b, tol); }
};

template <class S>
concept Semiring = requires(typename S::value_type a, double tol) {
    { S::zero() } -> std::convertible_to<typename S::value_type>;
    { S::one() } -> std::convertible_to<typename S::value_type>;
    { S::plus(a, a) } -> std::convertible_to<typename S::value_type>;
    { S::times(a, a) } -> std::convertible_to<typename S::value_type>;
    { S::is_zero(a) } -> std::convertible_to<bool>;
    { S::is_one(a) } -> std::convertible_to<bool>;
    { S::equal(a, a, tol) } -> std::convertible_to<bool>;
};

/// 9 significant digits; `-inf` for bottom.
inline std::string format_score(ExtendedScore a) {
    if (a.is_bottom()) return "-inf";
    char buf[32];
    double v = a.value();
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

/// Inverse of format_score; accepts any finite decimal literal or `-inf`.
inline ExtendedScore parse_score(std::string_view text) {
    if (text == "-inf") return bottom;
    std::string s(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    detail::require(!s.empty() && end == s.c_str() + s.size() && std::isfinite(v),
                    "invalid score literal '" + s + "'");
    return ExtendedScore(v);
}

}  // namespace idemkit
