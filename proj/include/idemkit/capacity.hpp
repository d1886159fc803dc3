#pragma once

/**
 * @file capacity.hpp
 * @brief Capacities, possibility capacities and the max-plus fuzzy integral.
 *
 * The max-plus integral of phi w.r.t. a capacity c is
 *
 *     max_t  ln c({phi >= t}) + t
 *
 * Level sets only change at values of phi, and between two consecutive
 * values the objective grows with t, so the max over t in R is attained on
 * the value set of phi and the integral is computed exactly.
 * exp of the integral is the Shilkret integral of exp(phi).
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "idemkit/density.hpp"
#include "idemkit/error.hpp"
#include "idemkit/random.hpp"
#include "idemkit/score.hpp"
#include "idemkit/space.hpp"

namespace idemkit {

/// A monotone normalized set function, stored as a full table indexed by
/// subset bitmask (bit i = point i of the space).
class Capacity {
public:
    static constexpr std::size_t kMaxPoints = 20;

    Capacity(FiniteSpace space, std::vector<double> table) : space_(std::move(space)), table_(std::move(table)) {
        const std::size_t n = space_.size();
        detail::require(n <= kMaxPoints, "capacity: spaces are limited to 20 points");
        detail::require(table_.size() == (std::size_t{1} << n), "capacity: table must list all 2^|X| subsets");
        detail::require(table_.front() == 0.0, "capacity: value of the empty set must be 0");
        detail::require(table_.back() == 1.0, "capacity: value of the whole space must be 1");
        for (std::size_t mask = 0; mask < table_.size(); ++mask) {
            detail::require(table_[mask] >= 0.0 && table_[mask] <= 1.0, "capacity: value outside [0,1]");
            for (std::size_t i = 0; i < n; ++i)
                if ((mask >> i) & 1U)
                    detail::require(table_[mask ^ (std::size_t{1} << i)] <= table_[mask],
                                    "capacity: not monotone");
        }
    }

    /// 1 on sets containing x, 0 elsewhere.
    static Capacity dirac(const FiniteSpace& space, std::size_t x) {
        std::vector<double> t(std::size_t{1} << space.size(), 0.0);
        for (std::size_t m = 0; m < t.size(); ++m)
            if ((m >> x) & 1U) t[m] = 1.0;
        return Capacity(space, std::move(t));
    }

    const FiniteSpace& space() const noexcept { return space_; }
    const std::vector<double>& table() const noexcept { return table_; }
    double operator()(std::uint64_t mask) const { return table_.at(mask); }
    double operator()(const SubsetMask& s) const {
        detail::require_same_space(space_, s.space(), "capacity");
        return table_.at(SubsetMask(space_, s.members()).bits());
    }

private:
    FiniteSpace space_;
    std::vector<double> table_;
};

inline bool approx_equal(const Capacity& a, const Capacity& b, double tol = kDefaultTolerance) {
    if (!a.space().identical(b.space())) return false;
    for (std::size_t m = 0; m < a.table().size(); ++m)
        if (std::abs(a(m) - b(m)) > tol) return false;
    return true;
}

/// A possibility capacity by its singleton values (peak 1). Carries the same
/// data as a max-times density.
class PossibilityProfile {
public:
    PossibilityProfile(FiniteSpace space, std::vector<UnitScore> singletons)
        : data_(std::move(space), std::move(singletons)) {}
    explicit PossibilityProfile(MaxTimesDensity d) : data_(std::move(d)) {}

    const FiniteSpace& space() const noexcept { return data_.space(); }
    const std::vector<UnitScore>& singletons() const noexcept { return data_.weights(); }
    std::size_t size() const noexcept { return data_.size(); }
    UnitScore operator[](std::size_t i) const { return data_[i]; }
    const MaxTimesDensity& as_density() const noexcept { return data_; }

    PossibilityProfile on(const FiniteSpace& space) const { return PossibilityProfile(data_.on(space)); }

    /// max over members; 0 on the empty set.
    double measure(std::uint64_t mask) const {
        double best = 0.0;
        for (std::size_t i = 0; i < size(); ++i)
            if ((mask >> i) & 1U) best = std::max(best, singletons()[i].value());
        return best;
    }

private:
    MaxTimesDensity data_;
};

inline bool approx_equal(const PossibilityProfile& a, const PossibilityProfile& b, double tol = kDefaultTolerance) {
    return approx_equal(a.as_density(), b.as_density(), tol);
}

using MetaPossibility = Mixture<PossibilityProfile, MaxTimes>;

inline Capacity capacity_from_profile(const PossibilityProfile& pi) {
    detail::require(pi.size() <= Capacity::kMaxPoints, "capacity: spaces are limited to 20 points");
    std::vector<double> t(std::size_t{1} << pi.size());
    for (std::size_t m = 0; m < t.size(); ++m) t[m] = pi.measure(m);
    return Capacity(pi.space(), std::move(t));
}

inline PossibilityProfile singleton_profile(const Capacity& c) {
    std::vector<UnitScore> s;
    for (std::size_t i = 0; i < c.space().size(); ++i) s.emplace_back(c(std::uint64_t{1} << i));
    return PossibilityProfile(c.space(), std::move(s));
}

/// c(A u B) = max(c(A), c(B)) for every pair of subsets.
inline bool is_possibility(const Capacity& c) {
    // Binary maxitivity over all pairs is equivalent to agreement with the
    // singleton extension, which is O(2^n * n) instead of O(4^n).
    for (std::size_t m = 0; m < c.table().size(); ++m) {
        double best = 0.0;
        for (std::size_t i = 0; i < c.space().size(); ++i)
            if ((m >> i) & 1U) best = std::max(best, c(std::uint64_t{1} << i));
        if (best != c(m)) return false;
    }
    return true;
}

/// max_t ln c(phi_t) + t, over t in the value set of phi.
inline ExtendedScore maxplus_integral(const Capacity& c, const RealFunction& phi) {
    detail::require_same_space(c.space(), phi.space(), "maxplus_integral");
    const auto f = phi.on(c.space());
    ExtendedScore best = bottom;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double t = f[i];
        best = oplus(best, otimes(log_bridge(UnitScore(c(level_set(f, t).bits()))), t));
    }
    return best;
}

/// iX(c)(phi) = max_x phi(x) + ln c({x})
inline ExtendedScore possibility_integral(const PossibilityProfile& pi, const RealFunction& phi) {
    detail::require_same_space(pi.space(), phi.space(), "possibility_integral");
    const auto f = phi.on(pi.space());
    ExtendedScore best = bottom;
    for (std::size_t i = 0; i < f.size(); ++i) best = oplus(best, otimes(f[i], log_bridge(pi[i])));
    return best;
}

/// Shilkret integral of a non-negative g: max over t in the value set of g of t * c({g >= t}).
inline double shilkret_integral(const Capacity& c, const RealFunction& g) {
    detail::require_same_space(c.space(), g.space(), "shilkret_integral");
    const auto f = g.on(c.space());
    double best = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        detail::require(f[i] >= 0.0, "shilkret_integral: function must be non-negative");
        best = std::max(best, f[i] * c(level_set(f, f[i]).bits()));
    }
    return best;
}

/// Both representations of the integral agree for a possibility capacity.
inline bool check_repr(const PossibilityProfile& pi, const RealFunction& phi, double tol = kDefaultTolerance) {
    return approx_equal(possibility_integral(pi, phi), maxplus_integral(capacity_from_profile(pi), phi), tol);
}

/// phi |-> maxplus_integral(c, phi). The closure owns a copy of c.
inline auto integral_functional(Capacity c) {
    return [c = std::move(c)](const RealFunction& phi) { return maxplus_integral(c, phi); };
}

namespace detail {

template <class Oracle>
double call_oracle(Oracle& oracle, const RealFunction& phi) {
    using R = std::invoke_result_t<Oracle&, const RealFunction&>;
    if constexpr (std::is_same_v<std::decay_t<R>, ExtendedScore>)
        return oracle(phi).to_double();
    else
        return static_cast<double>(oracle(phi));
}

}  // namespace detail

/// Reads a capacity back from an integral-like functional:
/// c(A) = exp(min(0, I(phi_{A,M}))) with phi_{A,M} = 0 on A, -M off A.
/// Exact on entries >= e^{-M}; smaller entries come back as at most e^{-M}.
/// Throws ValidationError when the result is not a capacity.
template <class Oracle>
Capacity recover_capacity(Oracle&& oracle, const FiniteSpace& space, double bound = 40.0) {
    detail::require(bound > 0.0, "recover_capacity: bound must be positive");
    detail::require(space.size() <= Capacity::kMaxPoints, "capacity: spaces are limited to 20 points");
    const std::size_t n = space.size();
    std::vector<double> table(std::size_t{1} << n, 0.0);
    for (std::size_t m = 1; m < table.size(); ++m) {
        std::vector<bool> on(n);
        for (std::size_t i = 0; i < n; ++i) on[i] = (m >> i) & 1U;
        const double v = detail::call_oracle(oracle, probe(space, on, bound));
        detail::require(!std::isnan(v), "recover_capacity: oracle returned NaN");
        table[m] = std::exp(std::min(0.0, v));
    }
    detail::require(std::abs(table.back() - 1.0) <= kDefaultTolerance,
                    "recover_capacity: oracle is not normalized (I(0_X) != 0)");
    table.back() = 1.0;
    try {
        return Capacity(space, std::move(table));
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("recover_capacity: non-conforming oracle: ") + e.what());
    }
}

struct ConditionResult {
    std::string name;
    std::size_t checked = 0;
    bool passed = true;
    std::string witness;  ///< first failing input, empty when passed
};

struct CharacterizationReport {
    std::vector<ConditionResult> conditions;
    bool passed() const {
        return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.passed; });
    }
};

namespace detail {

inline std::string describe(const RealFunction& f) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < f.size(); ++i)
        os << (i ? ", " : "") << f.space().label(i) << ": " << format_score(f[i]);
    os << '}';
    return os.str();
}

}  // namespace detail

/// Randomized test of the three conditions characterizing max-plus integrals:
/// normalization I(1_X) = 1, max-preservation on comonotone pairs, and
/// translation I(lambda_X + phi) = lambda + I(phi).
template <class Oracle>
CharacterizationReport check_characterization(Oracle&& oracle, const FiniteSpace& space, std::size_t trials,
                                              std::uint64_t seed, double tol = kDefaultTolerance) {
    detail::require(trials > 0, "check_characterization: trials must be positive");
    ConditionResult normalized{"normalization", 0, true, {}};
    ConditionResult comonotone_max{"comonotone-max", 0, true, {}};
    ConditionResult translation{"translation", 0, true, {}};

    auto eval = [&](const RealFunction& phi) { return detail::call_oracle(oracle, phi); };
    auto close = [tol](double a, double b) {
        if (std::isinf(a) || std::isinf(b)) return a == b;
        return std::abs(a - b) <= tol;
    };
    auto fail = [](ConditionResult& r, std::string w) {
        if (r.passed) r.witness = std::move(w);
        r.passed = false;
    };

    const auto one = RealFunction::constant(space, 1.0);
    normalized.checked = 1;
    if (const double v = eval(one); !close(v, 1.0))
        fail(normalized, "I(1_X) = " + format_score(v));

    for (std::size_t k = 0; k < trials; ++k) {
        Rng rng(derive_seed(seed, stream_id("charac"), k));
        const auto [phi, psi] = random_comonotone_pair(rng, space);
        const double joint = eval(pointwise_max(phi, psi));
        const double split = std::max(eval(phi), eval(psi));
        ++comonotone_max.checked;
        if (!close(joint, split))
            fail(comonotone_max, "phi=" + detail::describe(phi) + " psi=" + detail::describe(psi) +
                                     " I(phi v psi)=" + format_score(joint) + " I(phi) v I(psi)=" + format_score(split));

        const auto f = random_function(rng, space);
        const double lambda = rng.uniform(-10.0, 10.0);
        const double lhs = eval(shifted(f, lambda));
        const double rhs = lambda + eval(f);
        ++translation.checked;
        if (!close(lhs, rhs))
            fail(translation, "phi=" + detail::describe(f) + " lambda=" + format_score(lambda) +
                                  " I(lambda+phi)=" + format_score(lhs) + " lambda+I(phi)=" + format_score(rhs));
    }
    return {{normalized, comonotone_max, translation}};
}

/// mu(C)(F) = max_t C(F_t) * t collapses to the profile rho(x) = max_i w_i * pi_i(x).
inline PossibilityProfile possibility_mult(const MetaPossibility& C) {
    const auto& space = C.space();
    std::vector<UnitScore> rho(space.size(), UnitScore(0.0));
    for (const auto& [pi, w] : C.support()) {
        const auto p = pi.on(space);
        for (std::size_t x = 0; x < rho.size(); ++x) rho[x] = MaxTimes::plus(rho[x], MaxTimes::times(p[x], w));
    }
    return PossibilityProfile(space, std::move(rho));
}

/// Random capacity: independent uniform values swept upward to enforce
/// monotonicity, then c(empty) = 0 and c(X) = 1. `zero_rate` seeds exact zeros.
inline Capacity random_capacity(Rng& rng, const FiniteSpace& space, double zero_rate = 0.0) {
    const std::size_t n = space.size();
    std::vector<double> t(std::size_t{1} << n);
    for (auto& v : t) v = rng.chance(zero_rate) ? 0.0 : rng.unit();
    t.front() = 0.0;
    for (std::size_t m = 1; m < t.size(); ++m)
        for (std::size_t i = 0; i < n; ++i)
            if ((m >> i) & 1U) t[m] = std::max(t[m], t[m ^ (std::size_t{1} << i)]);
    t.back() = 1.0;
    return Capacity(space, std::move(t));
}

/// Random possibility profile; `quantum` > 0 rounds values down to its multiples.
inline PossibilityProfile random_profile(Rng& rng, const FiniteSpace& space, double zero_rate = 0.2,
                                         double quantum = 0.0) {
    std::vector<UnitScore> s(space.size());
    for (auto& v : s) {
        double u = rng.chance(zero_rate) ? 0.0 : rng.unit();
        if (quantum > 0.0) u = std::floor(u / quantum) * quantum;
        v = UnitScore(u);
    }
    s[rng.index(space.size())] = UnitScore(1.0);
    return PossibilityProfile(space, std::move(s));
}

}  // namespace idemkit
