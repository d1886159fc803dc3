#pragma once

// Deterministic random instances for the law batteries.
//
// All randomness flows from one 64-bit seed. Each trial gets its own stream
// derived by hashing (seed, stream id, trial index) through splitmix64, so a
// trial's instance does not depend on how many trials ran before it or on
// which worker ran it. Uniform reals are built from raw bits rather than
// std::uniform_real_distribution so reports are identical across standard
// libraries.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "idemkit/density.hpp"
#include "idemkit/score.hpp"
#include "idemkit/space.hpp"

namespace idemkit {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// FNV-1a; names a stream so suites never share instances.
constexpr std::uint64_t stream_id(std::string_view name) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(seed ^ splitmix64(stream)) + index);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0,1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Uniform in [0, n).
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

    /// Uniform in [lo, hi].
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + index(hi - lo + 1); }

    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

struct DensityShape {
    double lowest = -8.0;     ///< finite weights drawn from [lowest, 0]
    double bottom_rate = 0.25;
};

/// A max-plus density with one exact 0 and the rest drawn per `shape`.
inline MaxPlusDensity random_density(Rng& rng, const FiniteSpace& space, DensityShape shape = {}) {
    std::vector<ExtendedScore> w(space.size());
    for (auto& v : w) v = rng.chance(shape.bottom_rate) ? bottom : ExtendedScore(rng.uniform(shape.lowest, 0.0));
    w[rng.index(space.size())] = ExtendedScore(0.0);
    return MaxPlusDensity(space, std::move(w));
}

/// A max-times density with one exact 1; zeros at `zero_rate`.
inline MaxTimesDensity random_density_times(Rng& rng, const FiniteSpace& space, double zero_rate = 0.25) {
    std::vector<UnitScore> w(space.size());
    for (auto& v : w) v = rng.chance(zero_rate) ? UnitScore(0.0) : UnitScore(rng.unit());
    w[rng.index(space.size())] = UnitScore(1.0);
    return MaxTimesDensity(space, std::move(w));
}

namespace detail {

template <class E, Semiring S, class Gen>
Mixture<E, S> random_mixture(Rng& rng, std::size_t max_support, Gen&& element, double lowest) {
    const std::size_t k = rng.between(1, max_support);
    std::vector<std::pair<E, typename S::value_type>> entries;
    const std::size_t peak = rng.index(k);
    for (std::size_t i = 0; i < k; ++i) {
        typename S::value_type w = S::one();
        if (i != peak) {
            if constexpr (std::is_same_v<S, MaxPlus>)
                w = ExtendedScore(rng.uniform(lowest, 0.0));
            else
                w = UnitScore(rng.unit());
        }
        entries.emplace_back(element(), w);
    }
    return Mixture<E, S>::merged(std::move(entries));
}

}  // namespace detail

inline MetaDensity random_meta(Rng& rng, const FiniteSpace& space, std::size_t max_support,
                               DensityShape shape = {}) {
    return detail::random_mixture<MaxPlusDensity, MaxPlus>(
        rng, max_support, [&] { return random_density(rng, space, shape); }, shape.lowest);
}

inline ThirdLevel random_third(Rng& rng, const FiniteSpace& space, std::size_t max_support,
                               DensityShape shape = {}) {
    return detail::random_mixture<MetaDensity, MaxPlus>(
        rng, max_support, [&] { return random_meta(rng, space, max_support, shape); }, shape.lowest);
}

inline MetaTimesDensity random_meta_times(Rng& rng, const FiniteSpace& space, std::size_t max_support) {
    return detail::random_mixture<MaxTimesDensity, MaxTimes>(
        rng, max_support, [&] { return random_density_times(rng, space); }, 0.0);
}

inline ThirdTimesLevel random_third_times(Rng& rng, const FiniteSpace& space, std::size_t max_support) {
    return detail::random_mixture<MetaTimesDensity, MaxTimes>(
        rng, max_support, [&] { return random_meta_times(rng, space, max_support); }, 0.0);
}

inline RealFunction random_function(Rng& rng, const FiniteSpace& space, double lo = -5.0, double hi = 5.0) {
    std::vector<double> v(space.size());
    for (auto& x : v) x = rng.uniform(lo, hi);
    return RealFunction(space, std::move(v));
}

/// Two comonotone functions: independent non-decreasing reshapings of one
/// random ranking. Zero increments produce ties.
inline std::pair<RealFunction, RealFunction> random_comonotone_pair(Rng& rng, const FiniteSpace& space,
                                                                    double spread = 5.0) {
    const std::size_t n = space.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);

    auto reshape = [&] {
        std::vector<double> v(n);
        double level = rng.uniform(-spread, spread);
        for (std::size_t r = 0; r < n; ++r) {
            if (r > 0 && !rng.chance(0.2)) level += rng.uniform(0.0, spread / 2.0);
            v[order[r]] = level;
        }
        return RealFunction(space, std::move(v));
    };
    auto phi = reshape();
    auto psi = reshape();
    return {std::move(phi), std::move(psi)};
}

/// Space of n points labelled x0.., n drawn from [lo, hi].
inline FiniteSpace random_space(Rng& rng, std::size_t lo, std::size_t hi) {
    return FiniteSpace::numbered(rng.between(lo, hi));
}

}  // namespace idemkit
