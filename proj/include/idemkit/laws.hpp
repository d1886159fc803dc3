#pragma once

/**
 * @file laws.hpp
 * @brief Randomized law batteries over every identity the library implements.
 *
 * Each suite draws `trials` random instances from a seeded stream, checks one
 * family of identities on each, and reports failures with a shrunk witness.
 * Trial k of suite s always sees the same instance for a given seed,
 * independently of the other trials.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "idemkit/capacity.hpp"
#include "idemkit/convexity.hpp"
#include "idemkit/density.hpp"
#include "idemkit/io.hpp"
#include "idemkit/isomorphism.hpp"
#include "idemkit/random.hpp"
#include "idemkit/score.hpp"
#include "idemkit/space.hpp"

namespace idemkit::laws {

/// Tolerance for pure arithmetic identities (exp/log round trips, functoriality).
inline constexpr double kArithmeticTolerance = 1e-12;
/// Grid resolution and tolerance of the brute-force sweep in the poss-mult suite.
inline constexpr std::size_t kSweepSteps = 10000;
inline constexpr double kSweepTolerance = 1e-6;

enum class Mutation { none, drop_weight };

struct Options {
    std::size_t trials = 500;
    std::uint64_t seed = 0;
    std::size_t max_space = 5;
    std::size_t max_support = 4;
    std::size_t inner_trials = 200;  ///< comonotone pairs / translations per capacity
    double tolerance = kDefaultTolerance;
    double probe_bound = kDefaultProbeBound;
    Mutation mutation = Mutation::none;
};

struct Failure {
    std::size_t trial = 0;
    std::string description;
    io::Json witness;
};

struct RunReport {
    std::string suite;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<Failure> failures;
    double elapsed_seconds = 0.0;

    bool passed() const noexcept { return failures.empty(); }
};

/// Elapsed time is left out so identical runs serialize byte-identically.
inline io::Json to_json(const RunReport& r) {
    io::Json failures = io::Json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"trial", f.trial}, {"description", f.description}, {"witness", f.witness}});
    return {{"suite", r.suite}, {"trials", r.trials}, {"seed", r.seed}, {"passed", r.passed()}, {"failures", failures}};
}

inline std::string summary(const RunReport& r, std::size_t max_listed = 3) {
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof line, "%-10s %6zu trials  seed %llu  %s  (%.3f s)", r.suite.c_str(), r.trials,
                  static_cast<unsigned long long>(r.seed),
                  r.passed() ? "ok" : (std::to_string(r.failures.size()) + " FAILED").c_str(), r.elapsed_seconds);
    os << line << '\n';
    for (std::size_t i = 0; i < std::min(max_listed, r.failures.size()); ++i) {
        const auto& f = r.failures[i];
        os << "  trial " << f.trial << ": " << f.description << "\n    witness: " << f.witness.dump() << '\n';
    }
    if (r.failures.size() > max_listed) os << "  ... " << r.failures.size() - max_listed << " more\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Shrinking

/// Greedy minimization: take the first candidate that still fails, repeat.
template <class T, class Fails, class Candidates>
T minimize(T value, Fails&& fails, Candidates&& candidates) {
    for (bool progress = true; progress;) {
        progress = false;
        for (auto& c : candidates(value)) {
            bool still = false;
            try {
                still = fails(c);
            } catch (const std::exception&) {
                still = false;
            }
            if (still) {
                value = std::move(c);
                progress = true;
                break;
            }
        }
    }
    return value;
}

namespace detail {

inline std::vector<std::size_t> all_but(std::size_t n, std::size_t skip) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i)
        if (i != skip) keep.push_back(i);
    return keep;
}

}  // namespace detail

/// Drop a point, or zero out a non-peak weight.
template <Semiring S>
std::vector<Density<S>> shrink_candidates(const Density<S>& f) {
    std::vector<Density<S>> out;
    if (f.size() > 1)
        for (std::size_t k = 0; k < f.size(); ++k)
            if (auto r = restricted(f, detail::all_but(f.size(), k))) out.push_back(std::move(*r));
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (S::is_zero(f[i]) || S::is_one(f[i])) continue;
        auto w = f.weights();
        w[i] = S::zero();
        out.emplace_back(f.space(), std::move(w));
    }
    return out;
}

namespace detail {

/// Rescales weights so the heaviest is exactly one.
template <Semiring S, class Entry>
void renormalize(std::vector<Entry>& entries) {
    auto peak = S::zero();
    for (const auto& e : entries) peak = S::plus(peak, e.second);
    for (auto& e : entries) {
        if constexpr (std::is_same_v<S, MaxPlus>)
            e.second = e.second.is_bottom() ? bottom : ExtendedScore(e.second.value() - peak.value());
        else
            e.second = UnitScore(e.second.value() / peak.value());
    }
}

}  // namespace detail

/// Drop a support entry (renormalizing), shrink one entry in place, or drop a
/// point of the underlying space.
template <class E, Semiring S>
std::vector<Mixture<E, S>> shrink_candidates(const Mixture<E, S>& m) {
    using Entry = typename Mixture<E, S>::Entry;
    std::vector<Mixture<E, S>> out;
    auto attempt = [&out](std::vector<Entry> entries) {
        try {
            detail::renormalize<S>(entries);
            out.push_back(Mixture<E, S>::merged(std::move(entries)));
        } catch (const ValidationError&) {
        }
    };
    if (m.size() > 1)
        for (std::size_t k = 0; k < m.size(); ++k) {
            std::vector<Entry> entries;
            for (std::size_t j = 0; j < m.size(); ++j)
                if (j != k) entries.push_back(m.support()[j]);
            attempt(std::move(entries));
        }
    for (std::size_t k = 0; k < m.size(); ++k)
        for (auto& c : shrink_candidates(m.support()[k].first)) {
            if (c.space().size() != m.space().size()) continue;
            auto entries = m.support();
            entries[k].first = std::move(c);
            attempt(std::move(entries));
        }
    if (m.space().size() > 1)
        for (std::size_t k = 0; k < m.space().size(); ++k)
            if (auto r = restricted(m, detail::all_but(m.space().size(), k))) out.push_back(std::move(*r));
    return out;
}

inline std::vector<std::pair<PossibilityProfile, RealFunction>> shrink_candidates(
    const std::pair<PossibilityProfile, RealFunction>& in) {
    std::vector<std::pair<PossibilityProfile, RealFunction>> out;
    const auto& [pi, phi] = in;
    if (pi.size() < 2) return out;
    for (std::size_t k = 0; k < pi.size(); ++k) {
        const auto keep = detail::all_but(pi.size(), k);
        auto r = restricted(pi.as_density(), keep);
        if (!r) continue;
        std::vector<double> v;
        for (auto i : keep) v.push_back(phi.on(pi.space())[i]);
        out.emplace_back(PossibilityProfile(*r), RealFunction(r->space(), std::move(v)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Runner

namespace detail {

template <class Fn>
auto with_multiply(Mutation m, Fn&& fn) {
    if (m == Mutation::drop_weight) return fn(DropWeightMultiply{});
    return fn(StandardMultiply{});
}

template <class Trial>
RunReport run_trials(const std::string& suite, const Options& o, Trial&& trial) {
    RunReport report{suite, o.trials, o.seed, {}, 0.0};
    const auto start = std::chrono::steady_clock::now();
    const auto stream = stream_id(suite);
    for (std::size_t k = 0; k < o.trials; ++k) {
        Rng rng(derive_seed(o.seed, stream, k));
        std::optional<Failure> failure;
        try {
            failure = trial(rng);
        } catch (const std::exception& e) {
            failure = Failure{0, std::string("exception: ") + e.what(), io::Json::object()};
        }
        if (failure) {
            failure->trial = k;
            report.failures.push_back(std::move(*failure));
        }
    }
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

inline FiniteSpace space_for(Rng& rng, const Options& o, std::size_t lo = 1) {
    return random_space(rng, lo, std::max(lo, o.max_space));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suites

/// kappa . D(eps) = kappa . eps_D = id, for D and D1.
inline RunReport run_unit(const Options& o) {
    return detail::run_trials("unit", o, [&](Rng& rng) -> std::optional<Failure> {
        const auto space = detail::space_for(rng, o);
        const auto f = random_density(rng, space);
        const auto g = random_density_times(rng, space);
        return detail::with_multiply(o.mutation, [&](auto kappa) -> std::optional<Failure> {
            auto fails_plus = [&](const MaxPlusDensity& d) { return !check_unit_laws(d, o.tolerance, kappa); };
            if (fails_plus(f)) {
                auto w = minimize(f, fails_plus, [](const auto& d) { return shrink_candidates(d); });
                return Failure{0, "max-plus unit law", {{"density", io::to_json(w)}}};
            }
            auto fails_times = [&](const MaxTimesDensity& d) { return !check_unit_laws(d, o.tolerance, kappa); };
            if (fails_times(g)) {
                auto w = minimize(g, fails_times, [](const auto& d) { return shrink_candidates(d); });
                return Failure{0, "max-times unit law", {{"density", io::to_json(w)}}};
            }
            return std::nullopt;
        });
    });
}

/// kappa . kappa_D = kappa . D(kappa), for D and D1.
inline RunReport run_assoc(const Options& o) {
    return detail::run_trials("assoc", o, [&](Rng& rng) -> std::optional<Failure> {
        const auto space = detail::space_for(rng, o);
        const auto G = random_third(rng, space, o.max_support);
        const auto H = random_third_times(rng, space, o.max_support);
        return detail::with_multiply(o.mutation, [&](auto kappa) -> std::optional<Failure> {
            auto fails_plus = [&](const ThirdLevel& t) { return !check_associativity(t, o.tolerance, kappa); };
            if (fails_plus(G)) {
                auto w = minimize(G, fails_plus, [](const auto& t) { return shrink_candidates(t); });
                return Failure{0, "max-plus associativity", {{"third", io::to_json(w)}}};
            }
            auto fails_times = [&](const ThirdTimesLevel& t) { return !check_associativity(t, o.tolerance, kappa); };
            if (fails_times(H)) {
                auto w = minimize(H, fails_times, [](const auto& t) { return shrink_candidates(t); });
                return Failure{0, "max-times associativity", {{"third", io::to_json(w)}}};
            }
            return std::nullopt;
        });
    });
}

/// s . n = id on densities and n . s = id on measures (probe values), for both pairs.
inline RunReport run_roundtrip(const Options& o) {
    return detail::run_trials("roundtrip", o, [&](Rng& rng) -> std::optional<Failure> {
        const auto space = detail::space_for(rng, o);
        const auto f = random_density(rng, space, {.lowest = -o.probe_bound / 2.0, .bottom_rate = 0.25});
        const auto measure = [&f](const RealFunction& phi) { return eval_measure(f, phi); };
        const auto back = density_from_functional(measure, space, o.probe_bound);
        if (!approx_equal(back, f, o.tolerance))
            return Failure{0, "s(n(f)) != f", {{"density", io::to_json(f)}, {"recovered", io::to_json(back)}}};

        const auto g = random_density_times(rng, space);
        const auto back_times =
            density_from_functional_times([&g](const UnitFunction& phi) { return eval_measure_times(g, phi); }, space);
        if (!approx_equal(back_times, g, o.tolerance))
            return Failure{0, "s1(n1(g)) != g", {{"density", io::to_json(g)}, {"recovered", io::to_json(back_times)}}};

        for (int k = 0; k < 20; ++k) {
            const auto phi = random_function(rng, space, -o.probe_bound, o.probe_bound);
            if (std::abs(eval_measure(back, phi) - eval_measure(f, phi)) > o.tolerance)
                return Failure{0, "n(s(mu)) != mu on a probe", {{"density", io::to_json(f)}, {"probe", io::to_json(phi)}}};
            std::vector<UnitScore> u;
            for (std::size_t i = 0; i < space.size(); ++i) u.emplace_back(rng.unit());
            const UnitFunction psi(space, std::move(u));
            if (std::abs(eval_measure_times(back_times, psi) - eval_measure_times(g, psi)) > o.tolerance)
                return Failure{0, "n1(s1(mu)) != mu on a probe", {{"density", io::to_json(g)}}};
        }
        return std::nullopt;
    });
}

namespace detail {

inline PointMap random_map(Rng& rng, const FiniteSpace& from, const FiniteSpace& to) {
    std::vector<std::size_t> image(from.size());
    for (auto& i : image) i = rng.index(to.size());
    return PointMap::from_indices(from, to, image);
}

}  // namespace detail

/// D(id) = id, D(g.h) = Dg.Dh for D and D1; naturality of eps, kappa and l.
inline RunReport run_functor(const Options& o) {
    return detail::run_trials("functor", o, [&](Rng& rng) -> std::optional<Failure> {
        const auto X = detail::space_for(rng, o);
        const auto Y = FiniteSpace::numbered(rng.between(1, std::max<std::size_t>(1, o.max_space)), "y");
        const auto Z = FiniteSpace::numbered(rng.between(1, std::max<std::size_t>(1, o.max_space)), "z");
        const auto h = detail::random_map(rng, X, Y);
        const auto g = detail::random_map(rng, Y, Z);
        const auto f = random_density(rng, X);
        const auto ft = random_density_times(rng, X);
        const double tol = kArithmeticTolerance;
        auto fail = [&](const char* what) {
            return Failure{0, what, {{"density", io::to_json(f)}}};
        };

        if (!approx_equal(pushforward(PointMap::identity(X), f), f, 0.0)) return fail("D(id) != id");
        if (!approx_equal(pushforward(compose(g, h), f), pushforward(g, pushforward(h, f)), tol))
            return fail("D(g.h) != Dg.Dh");
        if (!approx_equal(pushforward(PointMap::identity(X), ft), ft, 0.0)) return fail("D1(id) != id");
        if (!approx_equal(pushforward_times(compose(g, h), ft), pushforward_times(g, pushforward_times(h, ft)), tol))
            return fail("D1(g.h) != D1g.D1h");

        const auto image = h.image_indices();
        for (std::size_t x = 0; x < X.size(); ++x)
            if (!approx_equal(pushforward(h, dirac(x, X)), dirac(image[x], Y), 0.0)) return fail("eps not natural");

        if (!approx_equal(density_exp(pushforward(h, f)), pushforward_times(h, density_exp(f)), tol))
            return fail("l not natural");

        const auto F = random_meta(rng, X, o.max_support);
        return detail::with_multiply(o.mutation, [&](auto kappa) -> std::optional<Failure> {
            const auto lhs = pushforward(h, kappa(F));
            const auto rhs = kappa(map_support(F, [&](const MaxPlusDensity& d) { return pushforward(h, d); }));
            if (!approx_equal(lhs, rhs, o.tolerance))
                return Failure{0, "kappa not natural", {{"meta", io::to_json(F)}}};
            return std::nullopt;
        });
    });
}

/// s . eta = eps and s . mu = kappa . sD . I(s): probe route against density route.
inline RunReport run_s_iso(const Options& o) {
    return detail::run_trials("s-iso", o, [&](Rng& rng) -> std::optional<Failure> {
        const auto space = detail::space_for(rng, o);
        const auto N = random_meta(rng, space, o.max_support);
        return detail::with_multiply(o.mutation, [&](auto kappa) -> std::optional<Failure> {
            auto fails = [&](const MetaDensity& m) { return !check_s_morphism(m, o.probe_bound, o.tolerance, kappa); };
            if (!fails(N)) return std::nullopt;
            auto w = minimize(N, fails, [](const auto& m) { return shrink_candidates(m); });
            return Failure{0, "s . mu != kappa . sD . I(s)", {{"meta", io::to_json(w)}}};
        });
    });
}

/// l . eps = eps1, l . kappa = kappa1 . lD1 . D1(l); l and its inverse p; order isomorphism.
inline RunReport run_l_iso(const Options& o) {
    return detail::run_trials("l-iso", o, [&](Rng& rng) -> std::optional<Failure> {
        const auto space = detail::space_for(rng, o);
        const auto F = random_meta(rng, space, o.max_support);
        const auto f = random_density(rng, space);
        const auto g = random_density_times(rng, space);

        if (!approx_equal(density_log(density_exp(f)), f, kArithmeticTolerance))
            return Failure{0, "p(l(f)) != f", {{"density", io::to_json(f)}}};
        if (!approx_equal(density_exp(density_log(g)), g, kArithmeticTolerance))
            return Failure{0, "l(p(g)) != g", {{"density", io::to_json(g)}}};

        const auto f2 = random_density(rng, space);
        const auto e1 = density_exp(f), e2 = density_exp(f2);
        for (std::size_t x = 0; x < space.size(); ++x)
            if ((f[x] <= f2[x]) != (e1[x].value() <= e2[x].value()))
                return Failure{0, "l is not an order isomorphism", {{"f", io::to_json(f)}, {"g", io::to_json(f2)}}};

        return detail::with_multiply(o.mutation, [&](auto kappa) -> std::optional<Failure> {
            auto fails = [&](const MetaDensity& m) { return !check_l_morphism(m, o.tolerance, kappa); };
            if (!fails(F)) return std::nullopt;
            auto w = minimize(F, fails, [](const auto& m) { return shrink_candidates(m); });
            return Failure{0, "l . kappa != kappa1 . lD1 . D1(l)", {{"meta", io::to_json(w)}}};
        });
    });
}

/// max_x phi(x) + ln c({x}) = max_t ln c(phi_t) + t for possibility capacities.
inline RunReport run_repr(const Options& o) {
    return detail::run_trials("repr", o, [&](Rng& rng) -> std::optional<Failure> {
        const auto space = detail::space_for(rng, o);
        auto input = std::make_pair(random_profile(rng, space, 0.3), random_function(rng, space));
        auto fails = [&](const std::pair<PossibilityProfile, RealFunction>& in) {
            return !check_repr(in.first, in.second, o.tolerance);
        };
        if (!fails(input)) return std::nullopt;
        input = minimize(input, fails, [](const auto& in) { return shrink_candidates(in); });
        return Failure{0, "possibility integral != max-plus integral",
                       {{"possibility", io::to_json(input.first)}, {"function", io::to_json(input.second)}}};
    });
}

/// exp of the max-plus integral of phi = Shilkret integral of exp(phi).
inline RunReport run_shilkret(const Options& o) {
    return detail::run_trials("shilkret", o, [&](Rng& rng) -> std::optional<Failure> {
        const auto space = detail::space_for(rng, o);
        const auto c = random_capacity(rng, space, 0.2);
        const auto phi = random_function(rng, space);
        std::vector<double> e;
        for (double v : phi.values()) e.push_back(std::exp(v));
        const double direct = shilkret_integral(c, RealFunction(space, std::move(e)));
        const double via_log = std::exp(maxplus_integral(c, phi).value());
        if (std::abs(direct - via_log) <= o.tolerance) return std::nullopt;
        return Failure{0, "exp(max-plus integral) != Shilkret integral",
                       {{"capacity", io::to_json(c)}, {"function", io::to_json(phi)}}};
    });
}

/// Integral functionals satisfy the three characterizing conditions, the
/// capacity is recovered from its functional, and a summing functional is rejected.
inline RunReport run_charac(const Options& o) {
    return detail::run_trials("charac", o, [&](Rng& rng) -> std::optional<Failure> {
        const auto space = detail::space_for(rng, o);
        const auto c = random_capacity(rng, space, 0.2);
        const auto report = check_characterization(integral_functional(c), space, o.inner_trials, rng.next(),
                                                   o.tolerance);
        for (const auto& cond : report.conditions)
            if (!cond.passed)
                return Failure{0, "integral violates " + cond.name + ": " + cond.witness, {{"capacity", io::to_json(c)}}};

        const double bound = 40.0;
        const auto back = recover_capacity(integral_functional(c), space, bound);
        if (!approx_equal(back, c, std::max(o.tolerance, std::exp(-bound))))
            return Failure{0, "recovered capacity differs", {{"capacity", io::to_json(c)}, {"recovered", io::to_json(back)}}};

        if (space.size() >= 2) {
            const auto sum = [](const RealFunction& phi) {
                double s = 0.0;
                for (double v : phi.values()) s += v;
                return s;
            };
            if (check_characterization(sum, space, o.inner_trials, rng.next(), o.tolerance).passed())
                return Failure{0, "summing functional was not rejected", {{"space", io::to_json(space)}}};
        }
        return std::nullopt;
    });
}

/// Brute force: max over t = k/steps of C(F_t) * t, where F_t collects the
/// support profiles with nu_i(F) >= t and C is the possibility capacity of the weights.
inline double possibility_mult_sweep(const MetaPossibility& C, std::uint64_t mask, std::size_t steps = kSweepSteps) {
    std::vector<std::pair<double, double>> levels;  // (nu_i(F), w_i)
    for (const auto& [pi, w] : C.support()) levels.emplace_back(pi.on(C.space()).measure(mask), w.value());
    const double quantum = 1.0 / static_cast<double>(steps);
    double best = 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t = static_cast<double>(k) * quantum;
        double cap = 0.0;
        for (const auto& [nu, w] : levels)
            if (nu >= t) cap = std::max(cap, w);
        best = std::max(best, cap * t);
    }
    return best;
}

/// mu(C)(F) = max_t C(F_t) * t against the closed-form profile, for every subset F.
inline RunReport run_poss_mult(const Options& o) {
    return detail::run_trials("poss-mult", o, [&](Rng& rng) -> std::optional<Failure> {
        const auto space = detail::space_for(rng, o);
        const double quantum = 1.0 / static_cast<double>(kSweepSteps);
        const std::size_t k = rng.between(1, o.max_support);
        std::vector<MetaPossibility::Entry> entries;
        const std::size_t peak = rng.index(k);
        for (std::size_t i = 0; i < k; ++i)
            entries.emplace_back(random_profile(rng, space, 0.2, quantum), i == peak ? 1.0 : rng.unit());
        const auto C = MetaPossibility::merged(std::move(entries));
        const auto rho = possibility_mult(C);
        for (std::uint64_t F = 0; F < (std::uint64_t{1} << space.size()); ++F) {
            const double swept = possibility_mult_sweep(C, F);
            if (std::abs(swept - rho.measure(F)) > kSweepTolerance) {
                io::Json support = io::Json::array();
                for (const auto& [pi, w] : C.support()) support.push_back({{"profile", io::to_json(pi)}, {"weight", w.value()}});
                return Failure{0, "closed form differs from the sweep on " + io::subset_key(space, F),
                               {{"support", support}}};
            }
        }
        return std::nullopt;
    });
}

namespace detail {

inline GeneratorSet random_generators(Rng& rng, std::size_t dim, std::size_t count) {
    std::vector<TropicalPoint> pts;
    for (std::size_t tries = 0; pts.size() < count && tries < 100; ++tries) {
        std::vector<double> c(dim);
        for (auto& v : c) v = static_cast<double>(rng.index(11));
        TropicalPoint p(std::move(c));
        if (std::none_of(pts.begin(), pts.end(), [&](const auto& q) { return q == p; })) pts.push_back(std::move(p));
    }
    return GeneratorSet(std::move(pts));
}

inline WeightVector random_weights(Rng& rng, std::size_t n) {
    std::vector<ExtendedScore> w(n);
    for (auto& v : w) v = rng.chance(0.2) ? bottom : ExtendedScore(-static_cast<double>(rng.index(9)));
    w[rng.index(n)] = ExtendedScore(0.0);
    return WeightVector(std::move(w));
}

}  // namespace detail

/// beta . eta = id, beta . kappa = beta . I(beta); hull membership agrees with
/// barycentric reachability; hulls are closed under max-plus combinations.
inline RunReport run_convexity(const Options& o) {
    return detail::run_trials("convexity", o, [&](Rng& rng) -> std::optional<Failure> {
        const std::size_t dim = rng.between(2, 3);
        const auto gens = detail::random_generators(rng, dim, rng.between(1, 5));
        const double tol = o.tolerance;

        auto grid = bounding_grid(gens, 11);
        std::vector<TropicalPoint> members;
        for (int k = 0; k < 4; ++k) members.push_back(combine(gens, detail::random_weights(rng, gens.size())));
        grid.insert(grid.end(), gens.points().begin(), gens.points().end());
        grid.insert(grid.end(), members.begin(), members.end());
        if (auto bad = convexity_disagreements(gens, grid, tol); !bad.empty())
            return Failure{0, "hull membership and barycentric reachability disagree",
                           {{"generators", io::to_json(gens)}, {"point", io::to_json(bad.front().point)}}};

        for (const auto& m : members)
            if (!hull_member(m, gens, tol))
                return Failure{0, "a combination of generators is outside the hull",
                               {{"generators", io::to_json(gens)}, {"point", io::to_json(m)}}};

        // closure: (alpha + a) v b and combinations of members stay in the hull
        for (const auto& a : members)
            for (const auto& b : members)
                for (int alpha = -10; alpha <= 0; ++alpha) {
                    std::vector<double> c(dim);
                    for (std::size_t t = 0; t < dim; ++t) c[t] = std::max(a[t] + alpha, b[t]);
                    if (!hull_member(TropicalPoint(std::move(c)), gens, tol))
                        return Failure{0, "hull not closed under (alpha + a) v b",
                                       {{"generators", io::to_json(gens)}, {"a", io::to_json(a)}, {"b", io::to_json(b)},
                                        {"alpha", alpha}}};
                }

        // translation equivariance and permutation invariance of membership
        const double shift = static_cast<double>(rng.index(11)) - 5.0;
        std::vector<TropicalPoint> moved, reversed(gens.points().rbegin(), gens.points().rend());
        for (const auto& p : gens.points()) {
            std::vector<double> c(p.coordinates());
            for (auto& v : c) v += shift;
            moved.emplace_back(std::move(c));
        }
        const GeneratorSet moved_gens(std::move(moved)), reversed_gens(std::move(reversed));
        for (const auto& p : grid) {
            std::vector<double> c(p.coordinates());
            for (auto& v : c) v += shift;
            const bool base = hull_member(p, gens, tol);
            if (base != hull_member(TropicalPoint(std::move(c)), moved_gens, tol) ||
                base != hull_member(p, reversed_gens, tol))
                return Failure{0, "membership not invariant under translation or reordering",
                               {{"generators", io::to_json(gens)}, {"point", io::to_json(p)}, {"shift", shift}}};
        }

        const auto N = random_meta(rng, gens.index_space(), o.max_support);
        return detail::with_multiply(o.mutation, [&](auto kappa) -> std::optional<Failure> {
            auto fails = [&](const MetaDensity& m) { return !check_algebra(gens, m, tol, kappa); };
            if (!fails(N)) return std::nullopt;
            auto shrink = [](const MetaDensity& m) {
                // keep the index space: only supports shrink here
                std::vector<MetaDensity> out;
                for (auto& c : shrink_candidates(m))
                    if (c.space().size() == m.space().size()) out.push_back(std::move(c));
                return out;
            };
            auto w = minimize(N, fails, shrink);
            return Failure{0, "barycenter algebra law", {{"generators", io::to_json(gens)}, {"meta", io::to_json(w)}}};
        });
    });
}

// ---------------------------------------------------------------------------
// Registry

struct Suite {
    std::string_view name;
    std::string_view law;
    RunReport (*run)(const Options&);
};

inline const std::vector<Suite>& suites() {
    static const std::vector<Suite> all = {
        {"unit", "kappa . D(eps) = kappa . eps_D = id  (D and D1)", run_unit},
        {"assoc", "kappa . kappa_D = kappa . D(kappa)  (D and D1)", run_assoc},
        {"roundtrip", "n . s = id, s . n = id  (and n1, s1)", run_roundtrip},
        {"functor", "D(id) = id, D(g.h) = Dg . Dh; eps, kappa, l natural", run_functor},
        {"s-iso", "s . eta = eps, s . mu = kappa . sD . I(s)", run_s_iso},
        {"l-iso", "l . eps = eps1, l . kappa = kappa1 . lD1 . D1(l), p = l^-1", run_l_iso},
        {"repr", "max_x phi(x) + ln c({x}) = max_t ln c(phi_t) + t  (c possibility)", run_repr},
        {"shilkret", "exp(max-plus integral of phi) = Shilkret integral of exp(phi)", run_shilkret},
        {"charac", "I(1)=1, I(phi v psi)=I(phi) v I(psi) comonotone, I(lambda+phi)=lambda+I(phi); c recovered",
         run_charac},
        {"poss-mult", "mu(C)(F) = max_t C(F_t) * t", run_poss_mult},
        {"convexity", "beta . eta = id, beta . mu = beta . I(beta); I-convex = max-plus convex", run_convexity},
    };
    return all;
}

inline const Suite* find_suite(std::string_view name) {
    for (const auto& s : suites())
        if (s.name == name) return &s;
    return nullptr;
}

/// Runs one suite by name, or every suite for "all".
inline std::vector<RunReport> run(std::string_view name, const Options& o) {
    std::vector<RunReport> out;
    if (name == "all") {
        for (const auto& s : suites()) out.push_back(s.run(o));
        return out;
    }
    const auto* s = find_suite(name);
    idemkit::detail::require(s != nullptr, "unknown suite '" + std::string(name) + "'");
    out.push_back(s->run(o));
    return out;
}

}  // namespace idemkit::laws
