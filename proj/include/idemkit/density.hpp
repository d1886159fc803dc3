#pragma once

/**
 * @file density.hpp
 * @brief Densities of idempotent measures and the density monads.
 *
 * Density<MaxPlus> is a map X -> [-inf,0] peaking at 0; Density<MaxTimes> is
 * a map X -> [0,1] peaking at 1.  The same object doubles as a finitely
 * supported measure:  phi |-> max_x f(x) (x) phi(x).
 *
 * Mixture<E,S> is a finitely supported density over E (E a density, or a
 * mixture itself), i.e. an element of D^2 X, D^3 X, ...  The monad
 * multiplication `multiply` flattens one level:
 *
 *     multiply(F)(x) = max_{(f,w) in F} f(x) (x) w
 *
 * and the unit is the Dirac density.  Everything here is templated on the
 * semiring so both monads share one implementation.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "idemkit/error.hpp"
#include "idemkit/score.hpp"
#include "idemkit/space.hpp"

namespace idemkit {

template <Semiring S>
class Density {
public:
    using semiring = S;
    using value_type = typename S::value_type;

    /// Rejects inputs whose maximum is not exactly the semiring one.
    Density(FiniteSpace space, std::vector<value_type> weights)
        : space_(std::move(space)), weights_(std::move(weights)) {
        detail::require(weights_.size() == space_.size(), "density: weight count does not match the space");
        bool peak = false;
        for (const auto& w : weights_) {
            detail::require(S::in_range(w), std::string(S::name) + " density: weight above the semiring one");
            peak = peak || S::is_one(w);
        }
        detail::require(peak, std::string(S::name) + " density: max weight must equal " +
                                  (std::is_same_v<S, MaxPlus> ? "0" : "1"));
    }

    /// Shift (max-plus) or scale (max-times) raw weights so the peak is the one.
    static Density normalize(FiniteSpace space, const std::vector<double>& raw) {
        detail::require(!raw.empty(), "normalize: empty weights");
        const double peak = *std::max_element(raw.begin(), raw.end());
        std::vector<value_type> w;
        w.reserve(raw.size());
        if constexpr (std::is_same_v<S, MaxPlus>) {
            detail::require(std::isfinite(peak), "normalize: all weights are -inf");
            for (double v : raw) w.emplace_back(v == peak ? 0.0 : v - peak);
        } else {
            detail::require(peak > 0.0 && std::isfinite(peak), "normalize: need a positive weight");
            for (double v : raw) {
                detail::require(v >= 0.0, "normalize: negative max-times weight");
                w.emplace_back(v == peak ? 1.0 : v / peak);
            }
        }
        return Density(std::move(space), std::move(w));
    }

    const FiniteSpace& space() const noexcept { return space_; }
    const std::vector<value_type>& weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return weights_.size(); }
    value_type operator[](std::size_t i) const { return weights_[i]; }
    value_type at(const std::string& label) const { return weights_[space_.at(label)]; }

    /// Same density expressed in another ordering of an equal space.
    Density on(const FiniteSpace& space) const {
        return Density(space, detail::align(space_, weights_, space));
    }

private:
    FiniteSpace space_;
    std::vector<value_type> weights_;
};

using MaxPlusDensity = Density<MaxPlus>;
using MaxTimesDensity = Density<MaxTimes>;

/// Identical zero pattern; other weights within `tol` pointwise.
template <Semiring S>
bool approx_equal(const Density<S>& a, const Density<S>& b, double tol = kDefaultTolerance) {
    if (!(a.space() == b.space())) return false;
    const auto bw = detail::align(b.space(), b.weights(), a.space());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (S::is_zero(a[i]) != S::is_zero(bw[i])) return false;
        if (!S::equal(a[i], bw[i], tol)) return false;
    }
    return true;
}

/// A finitely supported density over elements E (densities or mixtures).
/// Zero-weight entries are dropped; the rest must be pairwise distinct,
/// share one space and peak at the semiring one.
template <class E, Semiring S>
class Mixture {
public:
    using element_type = E;
    using semiring = S;
    using value_type = typename S::value_type;
    using Entry = std::pair<E, value_type>;

    explicit Mixture(std::vector<Entry> entries) {
        for (auto& e : entries)
            if (!S::is_zero(e.second)) entries_.push_back(std::move(e));
        detail::require(!entries_.empty(), "mixture: empty support");
        bool peak = false;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            detail::require(S::in_range(entries_[i].second), "mixture: weight above the semiring one");
            detail::require(entries_[i].first.space() == entries_[0].first.space(),
                            "mixture: support elements live on different spaces");
            peak = peak || S::is_one(entries_[i].second);
            for (std::size_t j = 0; j < i; ++j)
                detail::require(!approx_equal(entries_[i].first, entries_[j].first, kDefaultTolerance),
                                "mixture: duplicate support element");
        }
        detail::require(peak, "mixture: max weight must equal the semiring one");
    }

    /// Builds a mixture, merging duplicate elements by the max of their weights.
    static Mixture merged(std::vector<Entry> entries, double tol = kDefaultTolerance) {
        std::vector<Entry> out;
        for (auto& e : entries) {
            if (S::is_zero(e.second)) continue;
            auto it = std::find_if(out.begin(), out.end(),
                                   [&](const Entry& o) { return approx_equal(o.first, e.first, tol); });
            if (it == out.end())
                out.push_back(std::move(e));
            else
                it->second = S::plus(it->second, e.second);
        }
        return Mixture(std::move(out));
    }

    /// The point mass at a single element.
    static Mixture point_mass(E element) {
        std::vector<Entry> e;
        e.emplace_back(std::move(element), S::one());
        return Mixture(std::move(e));
    }

    const std::vector<Entry>& support() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const FiniteSpace& space() const noexcept { return entries_.front().first.space(); }

    /// Same mixture with every element expressed in another ordering of an equal space.
    Mixture on(const FiniteSpace& space) const {
        std::vector<Entry> out;
        out.reserve(entries_.size());
        for (const auto& [e, w] : entries_) out.emplace_back(e.on(space), w);
        return Mixture(std::move(out));
    }

private:
    std::vector<Entry> entries_;
};

/// Order-independent comparison of supports.
template <class E, Semiring S>
bool approx_equal(const Mixture<E, S>& a, const Mixture<E, S>& b, double tol = kDefaultTolerance) {
    if (a.size() != b.size()) return false;
    for (const auto& [elem, w] : a.support()) {
        const bool found = std::any_of(b.support().begin(), b.support().end(), [&](const auto& other) {
            return approx_equal(elem, other.first, tol) && S::equal(w, other.second, tol);
        });
        if (!found) return false;
    }
    return true;
}

using MetaDensity = Mixture<MaxPlusDensity, MaxPlus>;
using ThirdLevel = Mixture<MetaDensity, MaxPlus>;
using MetaTimesDensity = Mixture<MaxTimesDensity, MaxTimes>;
using ThirdTimesLevel = Mixture<MetaTimesDensity, MaxTimes>;

// ---------------------------------------------------------------------------
// Measures given by densities

/// nX(f)(phi) = max_x f(x) + phi(x)
inline double eval_measure(const MaxPlusDensity& f, const RealFunction& phi) {
    detail::require_same_space(f.space(), phi.space(), "eval_measure");
    const auto values = detail::align(phi.space(), phi.values(), f.space());
    ExtendedScore best = bottom;
    for (std::size_t i = 0; i < f.size(); ++i) best = oplus(best, otimes(f[i], values[i]));
    return best.value();
}

/// n1X(g)(phi) = max_x g(x) * phi(x)
inline UnitScore eval_measure_times(const MaxTimesDensity& g, const UnitFunction& phi) {
    detail::require_same_space(g.space(), phi.space(), "eval_measure_times");
    const auto values = detail::align(phi.space(), phi.values(), g.space());
    UnitScore best;
    for (std::size_t i = 0; i < g.size(); ++i) best = MaxTimes::plus(best, MaxTimes::times(g[i], values[i]));
    return best;
}

/// Default bound for the probe functions phi_{x,M}.
inline constexpr double kDefaultProbeBound = 64.0;

/// Probe function: 0 on the masked points, -bound elsewhere.
inline RealFunction probe(const FiniteSpace& space, const std::vector<bool>& on, double bound) {
    std::vector<double> v(space.size(), -bound);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (on[i]) v[i] = 0.0;
    return RealFunction(space, std::move(v));
}

/// Recovers the density of an idempotent measure given as a functional.
/// Evaluates the oracle on phi_{x,M} (0 at x, -M elsewhere); values at or
/// below -M (+1e-9) are recorded as bottom.  Exact whenever the oracle is
/// eval_measure(f, .) and every finite weight of f exceeds -M.
template <class Oracle>
    requires std::is_invocable_r_v<double, Oracle, const RealFunction&>
MaxPlusDensity density_from_functional(Oracle&& oracle, const FiniteSpace& space,
                                       double bound = kDefaultProbeBound) {
    detail::require(bound > 0.0, "density_from_functional: bound must be positive");
    std::vector<ExtendedScore> w;
    w.reserve(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) {
        std::vector<bool> on(space.size(), false);
        on[x] = true;
        const double v = static_cast<double>(oracle(probe(space, on, bound)));
        detail::require(v <= 1e-12, "density_from_functional: oracle value above 0 on a probe");
        if (v <= -bound + 1e-9)
            w.push_back(bottom);
        else
            w.emplace_back(std::min(v, 0.0));
    }
    return MaxPlusDensity(space, std::move(w));
}

/// Max-times analogue: the infimum over phi with phi(x) = 1 is attained by
/// the indicator of x, so one probe per point recovers the density exactly.
template <class Oracle>
    requires std::is_invocable_r_v<double, Oracle, const UnitFunction&>
MaxTimesDensity density_from_functional_times(Oracle&& oracle, const FiniteSpace& space) {
    std::vector<UnitScore> w;
    w.reserve(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) {
        std::vector<UnitScore> v(space.size(), UnitScore(0.0));
        v[x] = UnitScore(1.0);
        w.emplace_back(static_cast<double>(oracle(UnitFunction(space, std::move(v)))));
    }
    return MaxTimesDensity(space, std::move(w));
}

// ---------------------------------------------------------------------------
// Units (Dirac densities)

template <Semiring S>
Density<S> unit(const FiniteSpace& space, std::size_t x) {
    detail::require(x < space.size(), "dirac: point outside the space");
    std::vector<typename S::value_type> w(space.size(), S::zero());
    w[x] = S::one();
    return Density<S>(space, std::move(w));
}

inline MaxPlusDensity dirac(const std::string& x, const FiniteSpace& space) { return unit<MaxPlus>(space, space.at(x)); }
inline MaxPlusDensity dirac(std::size_t x, const FiniteSpace& space) { return unit<MaxPlus>(space, x); }
inline MaxTimesDensity dirac_times(const std::string& x, const FiniteSpace& space) {
    return unit<MaxTimes>(space, space.at(x));
}
inline MaxTimesDensity dirac_times(std::size_t x, const FiniteSpace& space) { return unit<MaxTimes>(space, x); }

// ---------------------------------------------------------------------------
// Functor action

/// Dg(f)(y) = max f(g^{-1}(y)), with the max over an empty fiber the semiring zero.
template <Semiring S>
Density<S> pushforward(const PointMap& g, const Density<S>& f) {
    detail::require(validate_map(g), "pushforward: invalid map");
    detail::require_same_space(g.source(), f.space(), "pushforward");
    const auto image = g.image_indices();
    const auto weights = detail::align(f.space(), f.weights(), g.source());
    std::vector<typename S::value_type> out(g.target().size(), S::zero());
    for (std::size_t i = 0; i < image.size(); ++i) out[image[i]] = S::plus(out[image[i]], weights[i]);
    return Density<S>(g.target(), std::move(out));
}

inline MaxTimesDensity pushforward_times(const PointMap& g, const MaxTimesDensity& f) { return pushforward(g, f); }

/// Functor action on a mixture: map every support element, merging collisions by max.
template <class E, Semiring S, class Fn>
auto map_support(const Mixture<E, S>& m, Fn&& fn) {
    using Out = std::decay_t<std::invoke_result_t<Fn&, const E&>>;
    std::vector<std::pair<Out, typename S::value_type>> entries;
    entries.reserve(m.size());
    for (const auto& [e, w] : m.support()) entries.emplace_back(fn(e), w);
    return Mixture<Out, S>::merged(std::move(entries));
}

/// Pushes the points of a density along x |-> element(x): D(e)(f) as a mixture.
template <Semiring S, class Fn>
auto image_mixture(const Density<S>& f, Fn&& element) {
    using Out = std::decay_t<std::invoke_result_t<Fn&, std::size_t>>;
    std::vector<std::pair<Out, typename S::value_type>> entries;
    for (std::size_t x = 0; x < f.size(); ++x)
        if (!S::is_zero(f[x])) entries.emplace_back(element(x), f[x]);
    return Mixture<Out, S>::merged(std::move(entries));
}

// ---------------------------------------------------------------------------
// Multiplication

namespace detail {

inline constexpr std::size_t kKeepAll = ~std::size_t{0};

/// Flattens one level; the entry at `ignored` (if any) is taken with weight one.
template <Semiring S>
Density<S> flatten(const Mixture<Density<S>, S>& F, std::size_t ignored = kKeepAll) {
    const auto& space = F.space();
    std::vector<typename S::value_type> out(space.size(), S::zero());
    for (std::size_t i = 0; i < F.size(); ++i) {
        const auto& [f, w] = F.support()[i];
        const auto fw = align(f.space(), f.weights(), space);
        const auto scale = i == ignored ? S::one() : w;
        for (std::size_t x = 0; x < out.size(); ++x) out[x] = S::plus(out[x], S::times(fw[x], scale));
    }
    return Density<S>(space, std::move(out));
}

template <class E, Semiring S>
Mixture<E, S> flatten(const Mixture<Mixture<E, S>, S>& G, std::size_t ignored = kKeepAll) {
    std::vector<std::pair<E, typename S::value_type>> entries;
    for (std::size_t i = 0; i < G.size(); ++i) {
        const auto& [meta, outer] = G.support()[i];
        for (const auto& [e, inner] : meta.support())
            entries.emplace_back(e, S::times(inner, i == ignored ? S::one() : outer));
    }
    return Mixture<E, S>::merged(std::move(entries));
}

}  // namespace detail

/// kappa X(F)(x) = max_{(f,w) in F} f(x) (x) w
template <Semiring S>
Density<S> multiply(const Mixture<Density<S>, S>& F) {
    return detail::flatten(F);
}

/// kappa one level up: D^3 X -> D^2 X; an element's weight is the max over
/// enclosing mixtures of inner (x) outer.
template <class E, Semiring S>
Mixture<E, S> multiply(const Mixture<Mixture<E, S>, S>& G) {
    return detail::flatten(G);
}

inline MaxTimesDensity multiply_times(const MetaTimesDensity& F) { return multiply(F); }

/// The monad multiplication, as a policy object so law checks can be run
/// against deliberately broken variants.
struct StandardMultiply {
    template <class M>
    auto operator()(const M& m) const {
        return multiply(m);
    }
};

/// Mutation hook: drops the weight of the lightest support entry (first on
/// ties), flattening it as if it carried weight one.
struct DropWeightMultiply {
    template <class M>
    auto operator()(const M& m) const {
        std::size_t lightest = 0;
        for (std::size_t i = 1; i < m.size(); ++i)
            if (m.support()[i].second < m.support()[lightest].second) lightest = i;
        return detail::flatten(m, lightest);
    }
};

/// Realises the measure multiplication muX(N) through functional probes:
/// phi |-> max_i lambda_i + eval_measure(mu_i, phi), then density recovery.
/// Deliberately independent of `multiply`.
inline MaxPlusDensity measure_multiplication(const MetaDensity& N, double bound = kDefaultProbeBound) {
    detail::require(bound > 0.0, "measure_multiplication: bound must be positive");
    const auto oracle = [&N](const RealFunction& phi) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& [mu, lambda] : N.support()) best = std::max(best, lambda.value() + eval_measure(mu, phi));
        return best;
    };
    return density_from_functional(oracle, N.space(), bound);
}

// ---------------------------------------------------------------------------
// Monad laws

/// kappa . D(eps) = id  and  kappa . eps_D = id, evaluated at f.
template <Semiring S, class Multiply = StandardMultiply>
bool check_unit_laws(const Density<S>& f, double tol = kDefaultTolerance, Multiply kappa = {}) {
    const auto lifted = image_mixture(f, [&](std::size_t x) { return unit<S>(f.space(), x); });
    const auto wrapped = Mixture<Density<S>, S>::point_mass(f);
    return approx_equal(kappa(lifted), f, tol) && approx_equal(kappa(wrapped), f, tol);
}

/// kappa . kappa_D = kappa . D(kappa), evaluated at G.  The two composites
/// are computed independently: A flattens the outer level first, B maps
/// kappa over the support first.
template <class E, Semiring S, class Multiply = StandardMultiply>
bool check_associativity(const Mixture<Mixture<E, S>, S>& G, double tol = kDefaultTolerance,
                         Multiply kappa = {}) {
    const auto path_a = kappa(kappa(G));
    const auto path_b = kappa(map_support(G, [&](const Mixture<E, S>& m) { return kappa(m); }));
    return approx_equal(path_a, path_b, tol);
}

// ---------------------------------------------------------------------------
// Restriction to a subspace (used when shrinking counterexamples)

template <Semiring S>
std::optional<Density<S>> restricted(const Density<S>& f, std::span<const std::size_t> keep) {
    std::vector<typename S::value_type> w;
    bool peak = false;
    for (auto i : keep) {
        w.push_back(f[i]);
        peak = peak || S::is_one(f[i]);
    }
    if (!peak) return std::nullopt;
    return Density<S>(f.space().restricted(keep), std::move(w));
}

/// Restricts every element; elements that lose their peak are dropped.
template <class E, Semiring S>
std::optional<Mixture<E, S>> restricted(const Mixture<E, S>& m, std::span<const std::size_t> keep) {
    std::vector<std::pair<E, typename S::value_type>> entries;
    bool peak = false;
    for (const auto& [e, w] : m.support()) {
        const auto aligned = e.space().identical(m.space()) ? e : e.on(m.space());
        if (auto r = restricted(aligned, keep)) {
            entries.emplace_back(std::move(*r), w);
            peak = peak || S::is_one(w);
        }
    }
    if (!peak) return std::nullopt;
    try {
        return Mixture<E, S>::merged(std::move(entries));
    } catch (const ValidationError&) {
        return std::nullopt;
    }
}

}  // namespace idemkit
