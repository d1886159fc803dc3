#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "idemkit/isomorphism.hpp"
#include "idemkit/random.hpp"

using namespace idemkit;

namespace {

const FiniteSpace ab{std::vector<std::string>{"a", "b"}};

MaxPlusDensity mp(std::vector<ExtendedScore> w) { return MaxPlusDensity(ab, std::move(w)); }

const MetaDensity worked({{mp({0.0, bottom}), ExtendedScore(0.0)}, {mp({bottom, 0.0}), ExtendedScore(-1.0)}});

}  // namespace

TEST(DensityExp, Examples) {
    const auto g = density_exp(mp({0.0, bottom}));
    EXPECT_EQ(g[0].value(), 1.0);
    EXPECT_EQ(g[1].value(), 0.0);
    EXPECT_NEAR(density_exp(mp({0.0, -0.693147}))[1].value(), 0.5, 1e-6);
    EXPECT_TRUE(approx_equal(density_exp(dirac("a", ab)), dirac_times("a", ab), 0.0));
}

TEST(DensityLog, Examples) {
    const auto f = density_log(MaxTimesDensity(ab, {1.0, 0.0}));
    EXPECT_EQ(f[0], ExtendedScore(0.0));
    EXPECT_TRUE(f[1].is_bottom());
    EXPECT_NEAR(density_log(MaxTimesDensity(ab, {1.0, 0.5}))[1].value(), -0.693147, 1e-6);
}

TEST(DensityExp, RoundTripsAndOrder) {
    Rng rng(31);
    for (int k = 0; k < 1000; ++k) {
        const auto s = random_space(rng, 1, 6);
        const auto f = random_density(rng, s, {.lowest = -30.0, .bottom_rate = 0.25});
        const auto g = random_density_times(rng, s);
        EXPECT_TRUE(approx_equal(density_log(density_exp(f)), f, 1e-12));
        EXPECT_TRUE(approx_equal(density_exp(density_log(g)), g, 1e-12));
        const auto f2 = random_density(rng, s);
        const auto e1 = density_exp(f), e2 = density_exp(f2);
        for (std::size_t x = 0; x < s.size(); ++x) EXPECT_EQ(f[x] <= f2[x], e1[x].value() <= e2[x].value());
    }
}

TEST(MetaExp, Examples) {
    const auto T = meta_exp(worked);
    ASSERT_EQ(T.size(), 2u);
    EXPECT_EQ(T.support()[0].second.value(), 1.0);
    EXPECT_NEAR(T.support()[1].second.value(), 0.367879, 1e-6);
    EXPECT_TRUE(approx_equal(meta_log(T), worked, 1e-12));

    const auto single = meta_exp(MetaDensity::point_mass(mp({0.0, -2.0})));
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(single.support()[0].second.value(), 1.0);
}

TEST(LMorphism, WorkedExample) {
    EXPECT_TRUE(check_l_morphism(worked));
    const auto lhs = density_exp(multiply(worked));
    EXPECT_EQ(lhs[0].value(), 1.0);
    EXPECT_NEAR(lhs[1].value(), 0.367879, 1e-6);
    EXPECT_TRUE(check_l_morphism(MetaDensity::point_mass(dirac("b", ab))));
}

TEST(LMorphism, RandomInstances) {
    Rng rng(32);
    for (int k = 0; k < 500; ++k) {
        const auto s = random_space(rng, 1, 6);
        EXPECT_TRUE(check_l_morphism(random_meta(rng, s, 4)));
    }
}

TEST(LMorphism, ExpCarriesEvaluation) {
    // exp(eval_measure(f, phi)) = eval_measure_times(exp f, exp phi) for phi <= 0
    Rng rng(33);
    for (int k = 0; k < 300; ++k) {
        const auto s = random_space(rng, 1, 6);
        const auto f = random_density(rng, s);
        const auto phi = random_function(rng, s, -10.0, 0.0);
        std::vector<UnitScore> e;
        for (double v : phi.values()) e.emplace_back(std::exp(v));
        EXPECT_NEAR(std::exp(eval_measure(f, phi)),
                    eval_measure_times(density_exp(f), UnitFunction(s, std::move(e))).value(), 1e-12);
    }
}

TEST(SMorphism, Examples) {
    EXPECT_TRUE(check_s_morphism(MetaDensity::point_mass(dirac("a", ab))));
    EXPECT_TRUE(check_s_morphism(worked));
    const FiniteSpace abc{std::vector<std::string>{"a", "b", "c"}};
    const MetaDensity N({{MaxPlusDensity(abc, {0.0, -1.0, bottom}), ExtendedScore(-0.25)},
                         {MaxPlusDensity(abc, {-4.0, bottom, 0.0}), ExtendedScore(0.0)}});
    EXPECT_TRUE(check_s_morphism(N));
}

TEST(SMorphism, RandomInstances) {
    Rng rng(34);
    for (int k = 0; k < 500; ++k) {
        const auto s = random_space(rng, 1, 6);
        EXPECT_TRUE(check_s_morphism(random_meta(rng, s, 4), 64.0, 1e-9));
    }
}

TEST(SMorphism, DetectsBrokenMultiply) {
    EXPECT_FALSE(check_s_morphism(worked, 64.0, 1e-9, DropWeightMultiply{}));
}
