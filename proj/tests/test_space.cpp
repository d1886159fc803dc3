#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "idemkit/random.hpp"
#include "idemkit/space.hpp"

using namespace idemkit;

namespace {

const FiniteSpace abc{std::vector<std::string>{"a", "b", "c"}};

RealFunction fn(const FiniteSpace& s, std::vector<double> v) { return RealFunction(s, std::move(v)); }

}  // namespace

TEST(FiniteSpace, LabelsAndLookup) {
    EXPECT_EQ(abc.size(), 3u);
    EXPECT_EQ(abc.label(1), "b");
    EXPECT_EQ(abc.at("c"), 2u);
    EXPECT_FALSE(abc.index_of("z").has_value());
    EXPECT_THROW((void)abc.at("z"), ValidationError);
}

TEST(FiniteSpace, Validation) {
    EXPECT_THROW(FiniteSpace(std::vector<std::string>{}), ValidationError);
    EXPECT_THROW(FiniteSpace(std::vector<std::string>{"a", "a"}), ValidationError);
}

TEST(FiniteSpace, EqualityIsSetEquality) {
    const FiniteSpace cba{std::vector<std::string>{"c", "b", "a"}};
    EXPECT_EQ(abc, cba);
    EXPECT_FALSE(abc.identical(cba));
    EXPECT_FALSE(abc == FiniteSpace::numbered(3));
}

TEST(PointFunction, RealValuesMustBeFinite) {
    EXPECT_THROW(fn(abc, {0.0, 1.0}), ValidationError);
    EXPECT_THROW(fn(abc, {0.0, 1.0, INFINITY}), ValidationError);
}

TEST(PointFunction, ReorderingKeepsValuesByLabel) {
    const FiniteSpace cba{std::vector<std::string>{"c", "b", "a"}};
    const auto phi = fn(abc, {0.0, 1.0, 2.0}).on(cba);
    EXPECT_EQ(phi[0], 2.0);
    EXPECT_EQ(phi.at("a"), 0.0);
}

TEST(LevelSet, Examples) {
    const auto phi = fn(abc, {0.0, 1.0, 2.0});
    EXPECT_EQ(level_set(phi, 1.0).members(), (std::vector<std::string>{"b", "c"}));
    EXPECT_EQ(level_set(phi, -1.0), SubsetMask::full(abc));
    EXPECT_TRUE(level_set(phi, 3.0).is_empty());
}

TEST(LevelSet, NestedAndMonotone) {
    Rng rng(3);
    for (int k = 0; k < 200; ++k) {
        const auto s = random_space(rng, 1, 6);
        const auto phi = random_function(rng, s);
        const double t1 = rng.uniform(-6, 6), t2 = rng.uniform(-6, 6);
        const double lo = std::min(t1, t2), hi = std::max(t1, t2);
        EXPECT_TRUE(level_set(phi, hi).subset_of(level_set(phi, lo)));
    }
}

TEST(Comonotone, Examples) {
    EXPECT_TRUE(comonotone(fn(abc, {0, 1, 2}), fn(abc, {0, 0, 1})));
    EXPECT_TRUE(comonotone(fn(abc, {4, 4, 4}), fn(abc, {3, -1, 2})));
    const FiniteSpace ab{std::vector<std::string>{"a", "b"}};
    EXPECT_FALSE(comonotone(fn(ab, {0, 1}), fn(ab, {1, 0})));
    EXPECT_THROW(comonotone(fn(ab, {0, 1}), fn(abc, {0, 1, 2})), ValidationError);
}

TEST(Comonotone, GeneratedPairsAreComonotone) {
    Rng rng(4);
    for (int k = 0; k < 500; ++k) {
        const auto s = random_space(rng, 1, 7);
        const auto [phi, psi] = random_comonotone_pair(rng, s);
        EXPECT_TRUE(comonotone(phi, psi));
    }
}

TEST(SubsetMask, Members) {
    const SubsetMask m(abc, std::vector<std::string>{"c", "a"});
    EXPECT_TRUE(m.contains(0));
    EXPECT_FALSE(m.contains(1));
    EXPECT_EQ(m.members(), (std::vector<std::string>{"a", "c"}));
    EXPECT_TRUE(SubsetMask::empty(abc).subset_of(m));
    EXPECT_THROW(SubsetMask(abc, std::vector<std::string>{"q"}), ValidationError);
}

TEST(PointMap, Validation) {
    const FiniteSpace uv{std::vector<std::string>{"u", "v"}};
    EXPECT_TRUE(validate_map(PointMap::identity(abc)));
    EXPECT_FALSE(validate_map(PointMap(abc, uv, {{"a", "u"}, {"b", "v"}})));
    EXPECT_FALSE(validate_map(PointMap(abc, uv, {{"a", "u"}, {"b", "v"}, {"c", "w"}})));
    EXPECT_TRUE(validate_map(PointMap(abc, uv, {{"a", "u"}, {"b", "u"}, {"c", "v"}})));
}

TEST(PointMap, Compose) {
    const FiniteSpace uv{std::vector<std::string>{"u", "v"}};
    const FiniteSpace z{std::vector<std::string>{"z"}};
    const PointMap h(abc, uv, {{"a", "u"}, {"b", "u"}, {"c", "v"}});
    const PointMap g(uv, z, {{"u", "z"}, {"v", "z"}});
    const auto gh = compose(g, h);
    EXPECT_EQ(gh.image_indices(), (std::vector<std::size_t>{0, 0, 0}));
    EXPECT_THROW(compose(h, g), ValidationError);
}
