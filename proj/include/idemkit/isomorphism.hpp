#pragma once

// The exp/log transformation between max-plus and max-times densities, and
// executable checks that it (and the density recovery s) respects the monad
// structure.

#include <cstddef>
#include <utility>
#include <vector>

#include "idemkit/density.hpp"
#include "idemkit/score.hpp"

namespace idemkit {

/// lX(f)(x) = exp(f(x)), exp(-inf) = 0.
inline MaxTimesDensity density_exp(const MaxPlusDensity& f) {
    std::vector<UnitScore> w;
    w.reserve(f.size());
    for (auto v : f.weights()) w.push_back(exp_bridge(v));
    return MaxTimesDensity(f.space(), std::move(w));
}

/// pX(g)(x) = ln(g(x)), ln 0 = -inf.
inline MaxPlusDensity density_log(const MaxTimesDensity& g) {
    std::vector<ExtendedScore> w;
    w.reserve(g.size());
    for (auto v : g.weights()) w.push_back(log_bridge(v));
    return MaxPlusDensity(g.space(), std::move(w));
}

/// lD1X . D1(lX) on a finitely supported F: (f, w) |-> (exp f, exp w).
inline MetaTimesDensity meta_exp(const MetaDensity& F) {
    return MetaTimesDensity::merged([&] {
        std::vector<MetaTimesDensity::Entry> entries;
        entries.reserve(F.size());
        for (const auto& [f, w] : F.support()) entries.emplace_back(density_exp(f), exp_bridge(w));
        return entries;
    }());
}

/// Inverse of meta_exp.
inline MetaDensity meta_log(const MetaTimesDensity& F) {
    std::vector<MetaDensity::Entry> entries;
    entries.reserve(F.size());
    for (const auto& [g, w] : F.support()) entries.emplace_back(density_log(g), log_bridge(w));
    return MetaDensity::merged(std::move(entries));
}

/// lX . kappaX = kappa1X . lD1X . D1(lX) at F, plus lX . epsX = eps1X on F's space.
template <class Multiply = StandardMultiply>
bool check_l_morphism(const MetaDensity& F, double tol = kDefaultTolerance, Multiply kappa = {}) {
    const auto& space = F.space();
    for (std::size_t x = 0; x < space.size(); ++x)
        if (!approx_equal(density_exp(dirac(x, space)), dirac_times(x, space), tol)) return false;
    return approx_equal(density_exp(kappa(F)), kappa(meta_exp(F)), tol);
}

/// sX . muX = kappaX . sDX . I(sX) at N: the probe-functional route
/// (measure_multiplication) against the density route (multiply), plus
/// sX . etaX = epsX on N's space.
template <class Multiply = StandardMultiply>
bool check_s_morphism(const MetaDensity& N, double bound = kDefaultProbeBound, double tol = kDefaultTolerance,
                      Multiply kappa = {}) {
    detail::require(bound > 0.0, "check_s_morphism: bound must be positive");
    const auto& space = N.space();
    for (std::size_t x = 0; x < space.size(); ++x) {
        const auto recovered = density_from_functional([x](const RealFunction& phi) { return phi[x]; }, space, bound);
        if (!approx_equal(recovered, dirac(x, space), tol)) return false;
    }
    return approx_equal(measure_multiplication(N, bound), kappa(N), tol);
}

}  // namespace idemkit
