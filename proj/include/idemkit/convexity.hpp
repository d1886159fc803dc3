#pragma once

/**
 * @file convexity.hpp
 * @brief Max-plus convex hulls of finite generator sets and the idempotent barycenter.
 *
 * A max-plus combination of generators x_1..x_n is  v_i (lambda_i + x_i)
 * with lambda_i in [-inf,0] and v_i lambda_i = 0.  Combinations are monotone
 * in every lambda_i, so membership of p is decided by the greatest admissible
 * weights (the residuation of p by the generators)
 *
 *     lambda*_i = min(0, min_t p_t - x_{i,t})
 *
 * p is in the hull iff max_i lambda*_i = 0 and the combination with
 * lambda* reproduces p.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "idemkit/density.hpp"
#include "idemkit/error.hpp"
#include "idemkit/score.hpp"
#include "idemkit/space.hpp"

namespace idemkit {

class TropicalPoint {
public:
    explicit TropicalPoint(std::vector<double> coordinates) : coords_(std::move(coordinates)) {
        detail::require(!coords_.empty(), "point: dimension must be at least 1");
        for (double c : coords_) detail::require(std::isfinite(c), "point: coordinates must be finite");
    }

    std::size_t dimension() const noexcept { return coords_.size(); }
    double operator[](std::size_t t) const { return coords_[t]; }
    const std::vector<double>& coordinates() const noexcept { return coords_; }

    friend bool operator==(const TropicalPoint&, const TropicalPoint&) = default;

private:
    std::vector<double> coords_;
};

inline bool approx_equal(const TropicalPoint& a, const TropicalPoint& b, double tol = kDefaultTolerance) {
    if (a.dimension() != b.dimension()) return false;
    for (std::size_t t = 0; t < a.dimension(); ++t)
        if (std::abs(a[t] - b[t]) > tol) return false;
    return true;
}

/// Non-empty, shared dimension, pairwise distinct within tolerance.
class GeneratorSet {
public:
    explicit GeneratorSet(std::vector<TropicalPoint> points, double tol = kDefaultTolerance)
        : points_(std::move(points)) {
        detail::require(!points_.empty(), "generators: need at least one point");
        dim_ = points_.front().dimension();
        for (std::size_t i = 0; i < points_.size(); ++i) {
            detail::require(points_[i].dimension() == dim_, "generators: dimension mismatch");
            for (std::size_t j = 0; j < i; ++j)
                detail::require(!approx_equal(points_[i], points_[j], tol), "generators: duplicate point");
        }
        index_space_ = FiniteSpace::numbered(points_.size(), "");
    }

    std::size_t dimension() const noexcept { return dim_; }
    std::size_t size() const noexcept { return points_.size(); }
    const TropicalPoint& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<TropicalPoint>& points() const noexcept { return points_; }

    /// Generator indices "0".."n-1" as a finite space; weights live here.
    const FiniteSpace& index_space() const noexcept { return index_space_; }

    /// Coordinate functional f_t restricted to the generators.
    RealFunction coordinate(std::size_t t) const {
        std::vector<double> v;
        v.reserve(points_.size());
        for (const auto& p : points_) v.push_back(p[t]);
        return RealFunction(index_space_, std::move(v));
    }

private:
    std::vector<TropicalPoint> points_;
    std::size_t dim_ = 0;
    FiniteSpace index_space_{std::vector<std::string>{"0"}};
};

/// One weight in [-inf,0] per generator, peaking at 0.
class WeightVector {
public:
    explicit WeightVector(std::vector<ExtendedScore> weights) : weights_(std::move(weights)) {
        detail::require(!weights_.empty(), "weights: empty");
        bool peak = false;
        for (auto w : weights_) {
            detail::require(MaxPlus::in_range(w), "weights: weight above 0");
            peak = peak || MaxPlus::is_one(w);
        }
        detail::require(peak, "weights: max weight must equal 0");
    }

    explicit WeightVector(const MaxPlusDensity& f) : weights_(f.weights()) {}

    std::size_t size() const noexcept { return weights_.size(); }
    ExtendedScore operator[](std::size_t i) const { return weights_[i]; }
    const std::vector<ExtendedScore>& weights() const noexcept { return weights_; }

    MaxPlusDensity as_density(const GeneratorSet& gens) const {
        detail::require(size() == gens.size(), "weights: one weight per generator required");
        return MaxPlusDensity(gens.index_space(), weights_);
    }

private:
    std::vector<ExtendedScore> weights_;
};

/// v_i (lambda_i + x_i), coordinatewise.
inline TropicalPoint combine(const GeneratorSet& gens, const WeightVector& lam) {
    detail::require(lam.size() == gens.size(), "combine: one weight per generator required");
    std::vector<double> out(gens.dimension());
    for (std::size_t t = 0; t < out.size(); ++t) {
        ExtendedScore best = bottom;
        for (std::size_t i = 0; i < gens.size(); ++i) best = oplus(best, otimes(lam[i], gens[i][t]));
        out[t] = best.value();
    }
    return TropicalPoint(std::move(out));
}

/// Idempotent barycenter: coordinate t is the measure of the coordinate
/// functional f_t, evaluated as a measure over the generator index space.
inline TropicalPoint barycenter(const GeneratorSet& gens, const MaxPlusDensity& f) {
    detail::require_same_space(f.space(), gens.index_space(), "barycenter");
    std::vector<double> out(gens.dimension());
    for (std::size_t t = 0; t < out.size(); ++t) out[t] = eval_measure(f, gens.coordinate(t));
    return TropicalPoint(std::move(out));
}

inline TropicalPoint barycenter(const GeneratorSet& gens, const WeightVector& f) {
    return barycenter(gens, f.as_density(gens));
}

/// Greatest weights whose combination stays below p (not normalized).
inline std::vector<double> residual_weights(const TropicalPoint& p, const GeneratorSet& gens) {
    detail::require(p.dimension() == gens.dimension(), "hull: dimension mismatch");
    std::vector<double> lam(gens.size(), 0.0);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t t = 0; t < p.dimension(); ++t) lam[i] = std::min(lam[i], p[t] - gens[i][t]);
    return lam;
}

namespace detail {

/// lambda* shifted to peak at 0, or nothing when its max is below -tol.
inline std::optional<WeightVector> normalized_residual(const TropicalPoint& p, const GeneratorSet& gens,
                                                       double tol) {
    const auto lam = residual_weights(p, gens);
    const double peak = *std::max_element(lam.begin(), lam.end());
    if (peak < -tol) return std::nullopt;
    std::vector<ExtendedScore> w;
    w.reserve(lam.size());
    for (double l : lam) w.emplace_back(l == peak ? 0.0 : l - peak);
    return WeightVector(std::move(w));
}

}  // namespace detail

/// Membership of p in the max-plus hull of the generators.
inline bool hull_member(const TropicalPoint& p, const GeneratorSet& gens, double tol = kDefaultTolerance) {
    const auto lam = detail::normalized_residual(p, gens, tol);
    return lam && approx_equal(combine(gens, *lam), p, tol);
}

/// A weight density whose barycenter is p, if one exists.
inline std::optional<WeightVector> barycenter_preimage(const TropicalPoint& p, const GeneratorSet& gens,
                                                       double tol = kDefaultTolerance) {
    auto lam = detail::normalized_residual(p, gens, tol);
    if (lam && approx_equal(barycenter(gens, *lam), p, tol)) return lam;
    return std::nullopt;
}

/// Barycenter-algebra laws on the generator set: beta(dirac_i) = x_i exactly,
/// and beta(kappa N) = beta(I beta (N)), the right side computed by pushing N's
/// weights onto the barycenters of its support densities and combining.
template <class Multiply = StandardMultiply>
bool check_algebra(const GeneratorSet& gens, const MetaDensity& N, double tol = kDefaultTolerance,
                   Multiply kappa = {}) {
    detail::require_same_space(N.space(), gens.index_space(), "check_algebra");
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (!(barycenter(gens, dirac(i, gens.index_space())) == gens[i])) return false;

    const auto left = barycenter(gens, kappa(N));

    std::vector<TropicalPoint> images;
    std::vector<ExtendedScore> weights;
    for (const auto& [mu, w] : N.support()) {
        auto b = barycenter(gens, mu);
        auto it = std::find_if(images.begin(), images.end(), [&](const auto& q) { return approx_equal(q, b, tol); });
        if (it == images.end()) {
            images.push_back(std::move(b));
            weights.push_back(w);
        } else {
            auto& slot = weights[static_cast<std::size_t>(it - images.begin())];
            slot = oplus(slot, w);
        }
    }
    const auto right = combine(GeneratorSet(std::move(images), tol), WeightVector(std::move(weights)));
    return approx_equal(left, right, tol);
}

struct ConvexityVerdict {
    TropicalPoint point;
    bool hull = false;
    bool barycentric = false;
};

/// Per grid point: max-plus hull membership against reachability as a
/// barycenter of a weight density. Returns the disagreeing points.
inline std::vector<ConvexityVerdict> convexity_disagreements(const GeneratorSet& gens,
                                                             const std::vector<TropicalPoint>& grid,
                                                             double tol = kDefaultTolerance) {
    std::vector<ConvexityVerdict> out;
    for (const auto& p : grid) {
        detail::require(p.dimension() == gens.dimension(), "convexity: dimension mismatch");
        const bool a = hull_member(p, gens, tol);
        const bool b = barycenter_preimage(p, gens, tol).has_value();
        if (a != b) out.push_back({p, a, b});
    }
    return out;
}

inline bool check_convexity_equivalence(const GeneratorSet& gens, const std::vector<TropicalPoint>& grid,
                                        double tol = kDefaultTolerance) {
    return convexity_disagreements(gens, grid, tol).empty();
}

/// Regular grid with `per_axis` points per axis spanning the generators' bounding box.
inline std::vector<TropicalPoint> bounding_grid(const GeneratorSet& gens, std::size_t per_axis) {
    detail::require(per_axis >= 2, "grid: need at least two points per axis");
    const std::size_t d = gens.dimension();
    std::vector<double> lo(d, INFINITY), hi(d, -INFINITY);
    for (const auto& p : gens.points())
        for (std::size_t t = 0; t < d; ++t) {
            lo[t] = std::min(lo[t], p[t]);
            hi[t] = std::max(hi[t], p[t]);
        }
    std::size_t total = 1;
    for (std::size_t t = 0; t < d; ++t) total *= per_axis;
    std::vector<TropicalPoint> grid;
    grid.reserve(total);
    for (std::size_t k = 0; k < total; ++k) {
        std::vector<double> c(d);
        std::size_t rest = k;
        for (std::size_t t = 0; t < d; ++t) {
            const std::size_t step = rest % per_axis;
            rest /= per_axis;
            c[t] = step + 1 == per_axis ? hi[t]
                                        : lo[t] + (hi[t] - lo[t]) * static_cast<double>(step) /
                                                      static_cast<double>(per_axis - 1);
        }
        grid.emplace_back(std::move(c));
    }
    return grid;
}

}  // namespace idemkit
