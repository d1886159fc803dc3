#include <gtest/gtest.h>

#include <set>
#include <string>

#include "idemkit/laws.hpp"

using namespace idemkit;

namespace {

laws::Options quick(std::size_t trials = 60) {
    laws::Options o;
    o.trials = trials;
    return o;
}

}  // namespace

TEST(Random, StreamsAreIndependentAndReproducible) {
    EXPECT_EQ(derive_seed(0, stream_id("unit"), 3), derive_seed(0, stream_id("unit"), 3));
    EXPECT_NE(derive_seed(0, stream_id("unit"), 3), derive_seed(0, stream_id("unit"), 4));
    EXPECT_NE(derive_seed(0, stream_id("unit"), 3), derive_seed(0, stream_id("assoc"), 3));
    EXPECT_NE(derive_seed(0, stream_id("unit"), 3), derive_seed(1, stream_id("unit"), 3));
    Rng a(5), b(5);
    for (int k = 0; k < 100; ++k) EXPECT_EQ(a.next(), b.next());
}

TEST(Random, UniformRanges) {
    Rng rng(6);
    for (int k = 0; k < 10000; ++k) {
        const double u = rng.unit();
        EXPECT_GE(u, 0.0);
        EXPECT_LE(u, 1.0);
        const auto i = rng.between(2, 5);
        EXPECT_GE(i, 2u);
        EXPECT_LE(i, 5u);
    }
}

TEST(Registry, NamesAreUniqueAndCoverTheLaws) {
    std::set<std::string> names;
    for (const auto& s : laws::suites()) {
        EXPECT_TRUE(names.insert(std::string(s.name)).second);
        EXPECT_FALSE(s.law.empty());
    }
    for (const char* required : {"unit", "assoc", "s-iso", "l-iso", "repr", "charac", "convexity"})
        EXPECT_TRUE(names.count(required)) << required;
    EXPECT_EQ(laws::find_suite("nope"), nullptr);
    EXPECT_THROW(laws::run("nope", quick()), ValidationError);
}

TEST(Suites, AllPassWithoutMutation) {
    for (const auto& r : laws::run("all", quick())) {
        EXPECT_TRUE(r.passed()) << laws::summary(r);
        EXPECT_EQ(r.trials, 60u);
    }
}

TEST(Suites, MutationIsCaughtByUnitAndAssoc) {
    auto o = quick(100);
    o.mutation = laws::Mutation::drop_weight;
    for (const char* name : {"unit", "assoc"}) {
        const auto r = laws::run(name, o).front();
        EXPECT_FALSE(r.passed()) << name;
        ASSERT_FALSE(r.failures.empty());
        EXPECT_FALSE(r.failures.front().witness.empty());
    }
}

TEST(Suites, MutationDoesNotAffectMultiplyFreeSuites) {
    auto o = quick(40);
    o.mutation = laws::Mutation::drop_weight;
    for (const char* name : {"roundtrip", "repr", "shilkret", "charac", "poss-mult"})
        EXPECT_TRUE(laws::run(name, o).front().passed()) << name;
}

TEST(Suites, ReportsAreDeterministic) {
    auto o = quick(30);
    o.seed = 99;
    o.mutation = laws::Mutation::drop_weight;
    const auto a = laws::run("all", o);
    const auto b = laws::run("all", o);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(laws::to_json(a[i]).dump(), laws::to_json(b[i]).dump());
}

TEST(Suites, FailuresAreSortedByTrial) {
    auto o = quick(100);
    o.mutation = laws::Mutation::drop_weight;
    const auto r = laws::run("unit", o).front();
    for (std::size_t i = 1; i < r.failures.size(); ++i) EXPECT_LT(r.failures[i - 1].trial, r.failures[i].trial);
}

TEST(Suites, ReportJsonShape) {
    const auto r = laws::run("unit", quick(5)).front();
    const auto j = laws::to_json(r);
    EXPECT_EQ(j.at("suite"), "unit");
    EXPECT_EQ(j.at("trials"), 5);
    EXPECT_EQ(j.at("passed"), true);
    EXPECT_FALSE(j.contains("elapsed"));
}

TEST(Minimize, WitnessIsLocallyMinimal) {
    // Shrinking a failing unit-law density under the broken multiply ends at
    // a density with exactly one point of weight below the peak.
    const auto space = FiniteSpace::numbered(6);
    const MaxPlusDensity f(space, {0.0, -1.0, -2.0, bottom, -3.0, -0.5});
    auto fails = [](const MaxPlusDensity& d) { return !check_unit_laws(d, 1e-9, DropWeightMultiply{}); };
    ASSERT_TRUE(fails(f));
    const auto w = laws::minimize(f, fails, [](const auto& d) { return laws::shrink_candidates(d); });
    EXPECT_TRUE(fails(w));
    EXPECT_EQ(w.size(), 2u);
    for (const auto& c : laws::shrink_candidates(w)) EXPECT_FALSE(fails(c));
}

TEST(Minimize, MixtureCandidatesStayValid) {
    Rng rng(7);
    for (int k = 0; k < 50; ++k) {
        const auto G = random_third(rng, random_space(rng, 1, 4), 3);
        for (const auto& c : laws::shrink_candidates(G)) {
            bool peak = false;
            for (const auto& [m, w] : c.support()) peak = peak || MaxPlus::is_one(w);
            EXPECT_TRUE(peak);
        }
    }
}
