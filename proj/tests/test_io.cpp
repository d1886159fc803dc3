#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "idemkit/io.hpp"
#include "idemkit/isomorphism.hpp"
#include "idemkit/random.hpp"

using namespace idemkit;
using io::Json;

TEST(Io, Space) {
    const auto s = io::parse_space(io::parse_text(R"({"points": ["a", "b", "c"]})"));
    EXPECT_EQ(s.size(), 3u);
    EXPECT_EQ(io::to_json(s).dump(), R"({"points":["a","b","c"]})");
    EXPECT_THROW(io::parse_space(io::parse_text(R"({"points": ["a", "a"]})")), ValidationError);
    EXPECT_THROW(io::parse_space(io::parse_text(R"({"points": [1]})")), ValidationError);
    EXPECT_THROW(io::parse_space(io::parse_text(R"({})")), ValidationError);
    EXPECT_THROW(io::parse_text("{"), ValidationError);
}

TEST(Io, Function) {
    const FiniteSpace ab{std::vector<std::string>{"a", "b"}};
    const auto f = io::parse_function(io::parse_text(R"({"values": {"b": 5.0, "a": 2.0}})"), ab);
    EXPECT_EQ(f.at("a"), 2.0);
    EXPECT_THROW(io::parse_function(io::parse_text(R"({"values": {"a": 2.0}})"), ab), ValidationError);
    EXPECT_THROW(io::parse_function(io::parse_text(R"({"values": {"a": 2.0, "c": 1}})"), ab), ValidationError);
    EXPECT_THROW(io::parse_function(io::parse_text(R"({"values": {"a": 2.0, "b": "-inf"}})"), ab), ValidationError);
}

TEST(Io, Subset) {
    const FiniteSpace abc{std::vector<std::string>{"a", "b", "c"}};
    const auto m = io::parse_subset(io::parse_text(R"({"members": ["c", "a"]})"), abc);
    EXPECT_EQ(m.members(), (std::vector<std::string>{"a", "c"}));
    EXPECT_THROW(io::parse_subset(io::parse_text(R"({"members": ["z"]})"), abc), ValidationError);
}

TEST(Io, Scores) {
    EXPECT_EQ(io::score_from_json(Json("-inf")), bottom);
    EXPECT_EQ(io::score_from_json(Json(-1.5)), ExtendedScore(-1.5));
    EXPECT_THROW(io::score_from_json(Json("inf")), ValidationError);
    EXPECT_THROW(io::score_from_json(Json("NaN")), ValidationError);
    EXPECT_EQ(io::score_to_json(bottom), Json("-inf"));
}

TEST(Io, Densities) {
    const auto f = io::parse_density<MaxPlus>(io::parse_text(R"({"kind": "maxplus", "values": {"a": 0, "b": "-inf"}})"));
    EXPECT_TRUE(f[1].is_bottom());
    EXPECT_EQ(io::to_json(f).dump(), R"({"kind":"maxplus","values":{"a":0.0,"b":"-inf"}})");
    EXPECT_THROW(io::parse_density<MaxPlus>(io::parse_text(R"({"kind": "maxplus", "values": {"a": -1, "b": -2}})")),
                 ValidationError);
    EXPECT_THROW(io::parse_density<MaxTimes>(io::parse_text(R"({"kind": "maxplus", "values": {"a": 1}})")),
                 ValidationError);
    EXPECT_THROW(io::parse_density<MaxTimes>(io::parse_text(R"({"values": {"a": 1, "b": "-inf"}})")), ValidationError);
}

TEST(Io, DensityRoundTrip) {
    Rng rng(61);
    for (int k = 0; k < 200; ++k) {
        const auto s = random_space(rng, 1, 6);
        const auto f = random_density(rng, s);
        EXPECT_TRUE(approx_equal(io::parse_density<MaxPlus>(io::parse_text(io::to_json(f).dump())), f, 0.0));
        const auto g = random_density_times(rng, s);
        EXPECT_TRUE(approx_equal(io::parse_density<MaxTimes>(io::parse_text(io::to_json(g).dump())), g, 0.0));
    }
}

TEST(Io, Meta) {
    const auto doc = io::parse_text(R"({"support": [
        {"density": {"kind": "maxplus", "values": {"a": 0, "b": "-inf"}}, "weight": 0},
        {"density": {"kind": "maxplus", "values": {"a": "-inf", "b": 0}}, "weight": -1}]})");
    const auto F = io::parse_meta(doc);
    EXPECT_EQ(F.size(), 2u);
    EXPECT_TRUE(approx_equal(io::parse_meta(io::parse_text(io::to_json(F).dump())), F, 0.0));
    EXPECT_THROW(io::parse_meta(io::parse_text(R"({"support": []})")), ValidationError);
}

TEST(Io, Capacity) {
    const FiniteSpace ab{std::vector<std::string>{"a", "b"}};
    const auto c = io::parse_capacity(io::parse_text(R"({"kind": "capacity", "sets": {"": 0, "a": 0.3, "b": 0.3, "a|b": 1}})"), ab);
    EXPECT_EQ(c(std::uint64_t{1}), 0.3);
    EXPECT_EQ(io::to_json(c).dump(), R"({"kind":"capacity","sets":{"":0.0,"a":0.3,"b":0.3,"a|b":1.0}})");
    EXPECT_THROW(io::parse_capacity(io::parse_text(R"({"sets": {"": 0, "a": 0.3, "a|b": 1}})"), ab), ValidationError);
    EXPECT_THROW(io::parse_capacity(io::parse_text(R"({"sets": {"": 0, "a": 0.3, "b": 0.3, "a|b": 0.9}})"), ab),
                 ValidationError);
    EXPECT_THROW(io::parse_capacity(io::parse_text(R"({"sets": {"": 0, "a": 0.3, "z": 0.3, "a|b": 1}})"), ab),
                 ValidationError);
    const FiniteSpace ba{std::vector<std::string>{"b", "a"}};
    const auto cb = io::parse_capacity(io::parse_text(R"({"sets": {"": 0, "a": 0.2, "b": 0.3, "a|b": 1}})"), ba);
    EXPECT_EQ(cb(std::uint64_t{1}), 0.3);
}

TEST(Io, Possibility) {
    const auto pi = io::parse_possibility(io::parse_text(R"({"kind": "possibility", "singletons": {"a": 1.0, "b": 0.5}})"));
    EXPECT_EQ(pi[1].value(), 0.5);
    EXPECT_EQ(io::to_json(pi).dump(), R"({"kind":"possibility","singletons":{"a":1.0,"b":0.5}})");
    EXPECT_THROW(io::parse_possibility(io::parse_text(R"({"singletons": {"a": 0.9}})")), ValidationError);
}

TEST(Io, Geometry) {
    const auto g = io::parse_generators(io::parse_text(R"({"dim": 2, "points": [[0, 3], [2, 0]]})"));
    EXPECT_EQ(g.size(), 2u);
    EXPECT_THROW(io::parse_generators(io::parse_text(R"({"dim": 3, "points": [[0, 3], [2, 0]]})")), ValidationError);
    EXPECT_THROW(io::parse_generators(io::parse_text(R"({"points": []})")), ValidationError);
    const auto w = io::parse_weights(io::parse_text(R"({"weights": [0, "-inf", -2]})"));
    EXPECT_TRUE(w[1].is_bottom());
    EXPECT_EQ(io::to_json(w).dump(), R"({"weights":[0.0,"-inf",-2.0]})");
    EXPECT_NO_THROW(io::parse_weights(io::parse_text("[0, -1]")));
    EXPECT_EQ(io::format_point(TropicalPoint({1.0, -0.0})), "[1,0]");
    EXPECT_EQ(io::format_point(TropicalPoint({0.30685281944005466, 2.5})), "[0.306852819,2.5]");
}

TEST(Io, SubsetKeysAreSorted) {
    const FiniteSpace s{std::vector<std::string>{"c", "a", "b"}};
    EXPECT_EQ(io::subset_key(s, 0b011), "a|c");
    EXPECT_EQ(io::subset_key(s, 0), "");
}
