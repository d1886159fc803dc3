#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "idemkit/convexity.hpp"
#include "idemkit/random.hpp"
#include "oracles.hpp"

using namespace idemkit;

namespace {

TropicalPoint pt(std::vector<double> c) { return TropicalPoint(std::move(c)); }

GeneratorSet gens(std::vector<std::vector<double>> pts) {
    std::vector<TropicalPoint> out;
    for (auto& p : pts) out.emplace_back(std::move(p));
    return GeneratorSet(std::move(out));
}

WeightVector weights(std::vector<ExtendedScore> w) { return WeightVector(std::move(w)); }

const GeneratorSet g0320 = gens({{0, 3}, {2, 0}});
const GeneratorSet g0021 = gens({{0, 0}, {2, 1}});

}  // namespace

TEST(Generators, Validation) {
    EXPECT_THROW(GeneratorSet(std::vector<TropicalPoint>{}), ValidationError);
    EXPECT_THROW(gens({{0, 1}, {0, 1, 2}}), ValidationError);
    EXPECT_THROW(gens({{0, 1}, {0, 1}}), ValidationError);
    EXPECT_THROW(pt({}), ValidationError);
    EXPECT_THROW(pt({0, INFINITY}), ValidationError);
}

TEST(Weights, Validation) {
    EXPECT_THROW(weights({-1.0, -2.0}), ValidationError);
    EXPECT_THROW(weights({0.0, 0.5}), ValidationError);
    EXPECT_NO_THROW(weights({0.0, bottom}));
    EXPECT_THROW(combine(g0320, weights({0.0})), ValidationError);
}

TEST(Combine, Examples) {
    EXPECT_EQ(combine(g0320, weights({0.0, -2.0})), pt({0, 3}));
    EXPECT_EQ(combine(g0320, weights({0.0, 0.0})), pt({2, 3}));
    EXPECT_EQ(combine(gens({{4, -1}}), weights({0.0})), pt({4, -1}));
    EXPECT_EQ(combine(g0320, weights({bottom, 0.0})), pt({2, 0}));
}

TEST(HullMember, Examples) {
    EXPECT_TRUE(hull_member(pt({1, 3}), g0320));
    EXPECT_FALSE(hull_member(pt({3, 0}), g0320));
    EXPECT_TRUE(hull_member(pt({0, 3}), g0320));
    EXPECT_TRUE(hull_member(pt({2, 0}), g0320));
    EXPECT_THROW(hull_member(pt({1, 2, 3}), g0320), ValidationError);
}

TEST(HullMember, ResidualWeights) {
    const auto lam = residual_weights(pt({1, 3}), g0320);
    EXPECT_EQ(lam, (std::vector<double>{0.0, -1.0}));
    const auto mu = residual_weights(pt({3, 0}), g0320);
    EXPECT_EQ(mu, (std::vector<double>{-3.0, 0.0}));
}

TEST(HullMember, AgreesWithIntegerWeightEnumeration) {
    Rng rng(51);
    for (int k = 0; k < 60; ++k) {
        const std::size_t d = rng.between(2, 3), n = rng.between(1, 3);
        std::vector<std::vector<double>> raw;
        while (raw.size() < n) {
            std::vector<double> p(d);
            for (auto& v : p) v = static_cast<double>(rng.index(6));
            if (std::find(raw.begin(), raw.end(), p) == raw.end()) raw.push_back(p);
        }
        const auto G = gens(raw);
        const auto reachable = oracle::integer_hull(raw, 6);
        std::vector<double> p(d);
        const std::size_t total = d == 2 ? 64 : 512;
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t rest = idx;
            for (auto& v : p) {
                v = static_cast<double>(rest % 8) - 1.0;
                rest /= 8;
            }
            EXPECT_EQ(hull_member(pt(p), G), reachable.count(p) > 0);
        }
    }
}

TEST(Barycenter, Examples) {
    EXPECT_EQ(barycenter(g0021, weights({0.0, -1.0})), pt({1, 0}));
    EXPECT_EQ(barycenter(g0021, weights({0.0, 0.0})), pt({2, 1}));
    EXPECT_EQ(barycenter(g0021, dirac(0, g0021.index_space())), pt({0, 0}));
    EXPECT_THROW(barycenter(g0021, MaxPlusDensity(FiniteSpace::numbered(2), {0.0, 0.0})), ValidationError);
}

TEST(Barycenter, EqualsCombine) {
    Rng rng(52);
    for (int k = 0; k < 300; ++k) {
        const std::size_t d = rng.between(1, 4), n = rng.between(1, 5);
        std::vector<std::vector<double>> raw;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> p(d);
            for (auto& v : p) v = rng.uniform(-10, 10);
            raw.push_back(p);
        }
        const auto G = gens(raw);
        const auto f = random_density(rng, G.index_space());
        EXPECT_EQ(barycenter(G, f), combine(G, WeightVector(f)));
    }
}

TEST(BarycenterPreimage, Examples) {
    const auto w = barycenter_preimage(pt({1, 3}), g0320);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(barycenter(g0320, *w), pt({1, 3}));
    EXPECT_FALSE(barycenter_preimage(pt({3, 0}), g0320).has_value());
}

TEST(Algebra, Examples) {
    EXPECT_TRUE(check_algebra(g0021, MetaDensity::point_mass(dirac(1, g0021.index_space()))));
    const auto& I = g0021.index_space();
    const MetaDensity N({{MaxPlusDensity(I, {0.0, -1.0}), ExtendedScore(0.0)},
                         {MaxPlusDensity(I, {-3.0, 0.0}), ExtendedScore(-0.5)}});
    EXPECT_TRUE(check_algebra(g0021, N));
    EXPECT_FALSE(check_algebra(g0021, N, 1e-9, DropWeightMultiply{}));
}

TEST(Algebra, RandomInstances) {
    Rng rng(53);
    for (int k = 0; k < 200; ++k) {
        const std::size_t d = rng.between(2, 3), n = rng.between(1, 5);
        std::vector<std::vector<double>> raw;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> p(d);
            for (auto& v : p) v = rng.uniform(-10, 10);
            raw.push_back(p);
        }
        const auto G = gens(raw);
        EXPECT_TRUE(check_algebra(G, random_meta(rng, G.index_space(), 4)));
    }
}

TEST(ConvexityEquivalence, Examples) {
    EXPECT_TRUE(check_convexity_equivalence(g0320, {pt({1, 3}), pt({3, 0})}));
    EXPECT_TRUE(check_convexity_equivalence(g0320, g0320.points()));
    for (const auto& p : g0320.points()) EXPECT_TRUE(hull_member(p, g0320));
}

TEST(ConvexityEquivalence, Grids) {
    Rng rng(54);
    for (int k = 0; k < 30; ++k) {
        const std::size_t d = rng.between(2, 3), n = rng.between(1, 4);
        std::vector<std::vector<double>> raw;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> p(d);
            for (auto& v : p) v = rng.uniform(-5, 5);
            raw.push_back(p);
        }
        const auto G = gens(raw);
        EXPECT_TRUE(check_convexity_equivalence(G, bounding_grid(G, 11)));
    }
}

TEST(BoundingGrid, Shape) {
    const auto grid = bounding_grid(g0320, 11);
    EXPECT_EQ(grid.size(), 121u);
    EXPECT_EQ(grid.front(), pt({0, 0}));
    EXPECT_EQ(grid.back(), pt({2, 3}));
    EXPECT_THROW(bounding_grid(g0320, 1), ValidationError);
}

TEST(HullClosure, AlphaCombinationsStayInside) {
    const auto a = combine(g0320, weights({0.0, -0.5}));
    const auto b = combine(g0320, weights({-1.25, 0.0}));
    for (double alpha = -6.0; alpha <= 0.0; alpha += 0.25) {
        std::vector<double> c{std::max(a[0] + alpha, b[0]), std::max(a[1] + alpha, b[1])};
        EXPECT_TRUE(hull_member(pt(c), g0320));
    }
}
