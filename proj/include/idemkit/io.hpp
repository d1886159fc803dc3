#pragma once

// JSON documents for spaces, functions, densities, mixtures, capacities and
// tropical points. `-inf` (as a string) is the only non-numeric value token.
//
//   space        {"points": ["a","b","c"]}
//   function     {"values": {"a": 2.0, "b": 5.0}}
//   subset       {"members": ["a","c"]}
//   density      {"kind": "maxplus"|"maxtimes", "values": {"a": 0, "b": "-inf"}}
//   meta         {"support": [{"density": {...}, "weight": w}, ...]}
//   third level  {"support": [{"meta": {...}, "weight": w}, ...]}
//   capacity     {"kind": "capacity", "sets": {"": 0, "a": 0.3, "a|b": 1}}
//   possibility  {"kind": "possibility", "singletons": {"a": 1, "b": 0.5}}
//   points       {"dim": 2, "points": [[0,3],[2,0]]}
//   weights      {"weights": [0, "-inf", -2]}

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "idemkit/capacity.hpp"
#include "idemkit/convexity.hpp"
#include "idemkit/density.hpp"
#include "idemkit/error.hpp"
#include "idemkit/score.hpp"
#include "idemkit/space.hpp"

namespace idemkit::io {

using Json = nlohmann::ordered_json;

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    detail::require(static_cast<bool>(in), "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

inline Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ValidationError(std::string("invalid JSON: ") + e.what());
    }
}

namespace detail {

using idemkit::detail::require;

inline const Json& field(const Json& doc, const char* key) {
    require(doc.is_object() && doc.contains(key), std::string("document is missing \"") + key + "\"");
    return doc.at(key);
}

inline void require_kind(const Json& doc, const std::string& kind) {
    if (!doc.contains("kind")) return;
    require(doc.at("kind").is_string() && doc.at("kind").get<std::string>() == kind,
            "expected a \"" + kind + "\" document");
}

inline double finite_number(const Json& v, const std::string& where) {
    require(v.is_number(), where + ": expected a number");
    const double d = v.get<double>();
    require(std::isfinite(d), where + ": expected a finite number");
    return d;
}

/// values object keyed by label; the key set must equal the space.
inline std::vector<Json> keyed_values(const Json& obj, const FiniteSpace& space, const char* what) {
    require(obj.is_object(), std::string(what) + ": expected an object keyed by point label");
    require(obj.size() == space.size(), std::string(what) + ": keys must exactly cover the space");
    std::vector<Json> out(space.size());
    for (const auto& [key, value] : obj.items()) {
        auto i = space.index_of(key);
        require(i.has_value(), std::string(what) + ": unknown point '" + key + "'");
        out[*i] = value;
    }
    return out;
}

inline FiniteSpace space_of_keys(const Json& obj, const char* what) {
    require(obj.is_object() && !obj.empty(), std::string(what) + ": expected a non-empty object");
    std::vector<std::string> labels;
    for (const auto& [key, value] : obj.items()) labels.push_back(key);
    return FiniteSpace(std::move(labels));
}

}  // namespace detail

// -- scalars ----------------------------------------------------------------

inline ExtendedScore score_from_json(const Json& v) {
    if (v.is_string()) {
        detail::require(v.get<std::string>() == "-inf", "only \"-inf\" is accepted as a non-numeric value");
        return bottom;
    }
    return ExtendedScore(detail::finite_number(v, "score"));
}

inline Json score_to_json(ExtendedScore s) {
    if (s.is_bottom()) return "-inf";
    return s.value();
}

// -- spaces, functions, subsets ---------------------------------------------

inline FiniteSpace parse_space(const Json& doc) {
    const auto& pts = detail::field(doc, "points");
    detail::require(pts.is_array(), "space: \"points\" must be an array");
    std::vector<std::string> labels;
    for (const auto& p : pts) {
        detail::require(p.is_string(), "space: labels must be strings");
        labels.push_back(p.get<std::string>());
    }
    return FiniteSpace(std::move(labels));
}

inline Json to_json(const FiniteSpace& space) {
    Json pts = Json::array();
    for (const auto& l : space.labels()) pts.push_back(l);
    return Json{{"points", pts}};
}

inline RealFunction parse_function(const Json& doc, const FiniteSpace& space) {
    const auto raw = detail::keyed_values(detail::field(doc, "values"), space, "function");
    std::vector<double> v;
    for (std::size_t i = 0; i < raw.size(); ++i) v.push_back(detail::finite_number(raw[i], "function value"));
    return RealFunction(space, std::move(v));
}

inline Json to_json(const RealFunction& f) {
    Json values = Json::object();
    for (std::size_t i = 0; i < f.size(); ++i) values[f.space().label(i)] = f[i];
    return Json{{"values", values}};
}

inline SubsetMask parse_subset(const Json& doc, const FiniteSpace& space) {
    const auto& m = detail::field(doc, "members");
    detail::require(m.is_array(), "subset: \"members\" must be an array");
    std::vector<std::string> members;
    for (const auto& x : m) {
        detail::require(x.is_string() && space.contains(x.get<std::string>()), "subset: unknown member");
        members.push_back(x.get<std::string>());
    }
    return SubsetMask(space, members);
}

// -- densities --------------------------------------------------------------

/// Reads a density of semiring S. Without a space, the space is the key set in document order.
template <Semiring S>
Density<S> parse_density(const Json& doc, const std::optional<FiniteSpace>& space = std::nullopt) {
    detail::require_kind(doc, S::name);
    const auto& values = detail::field(doc, "values");
    const FiniteSpace sp = space ? *space : detail::space_of_keys(values, "density");
    const auto raw = detail::keyed_values(values, sp, "density");
    std::vector<typename S::value_type> w;
    for (const auto& r : raw) {
        if constexpr (std::is_same_v<S, MaxPlus>)
            w.push_back(score_from_json(r));
        else
            w.emplace_back(detail::finite_number(r, "max-times weight"));
    }
    return Density<S>(sp, std::move(w));
}

template <Semiring S>
Json to_json(const Density<S>& f) {
    Json values = Json::object();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if constexpr (std::is_same_v<S, MaxPlus>)
            values[f.space().label(i)] = score_to_json(f[i]);
        else
            values[f.space().label(i)] = f[i].value();
    }
    return Json{{"kind", S::name}, {"values", values}};
}

template <class E, Semiring S>
Json to_json(const Mixture<E, S>& m) {
    constexpr bool nested = !std::is_same_v<E, Density<S>>;
    Json support = Json::array();
    for (const auto& [e, w] : m.support()) {
        Json weight;
        if constexpr (std::is_same_v<S, MaxPlus>)
            weight = score_to_json(w);
        else
            weight = w.value();
        support.push_back(Json{{nested ? "meta" : "density", to_json(e)}, {"weight", weight}});
    }
    return Json{{"support", support}};
}

inline MetaDensity parse_meta(const Json& doc, const std::optional<FiniteSpace>& space = std::nullopt) {
    const auto& support = detail::field(doc, "support");
    detail::require(support.is_array() && !support.empty(), "meta: \"support\" must be a non-empty array");
    std::vector<MetaDensity::Entry> entries;
    std::optional<FiniteSpace> sp = space;
    for (const auto& item : support) {
        auto f = parse_density<MaxPlus>(detail::field(item, "density"), sp);
        if (!sp) sp = f.space();
        entries.emplace_back(std::move(f), score_from_json(detail::field(item, "weight")));
    }
    return MetaDensity(std::move(entries));
}

// -- capacities -------------------------------------------------------------

/// `|`-joined sorted labels of a subset; "" for the empty set.
inline std::string subset_key(const FiniteSpace& space, std::uint64_t mask) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < space.size(); ++i)
        if ((mask >> i) & 1U) labels.push_back(space.label(i));
    std::sort(labels.begin(), labels.end());
    std::string key;
    for (std::size_t i = 0; i < labels.size(); ++i) key += (i ? "|" : "") + labels[i];
    return key;
}

inline Capacity parse_capacity(const Json& doc, const FiniteSpace& space) {
    detail::require_kind(doc, "capacity");
    for (const auto& l : space.labels())
        detail::require(l.find('|') == std::string::npos, "capacity: labels must not contain '|'");
    detail::require(space.size() <= Capacity::kMaxPoints, "capacity: spaces are limited to 20 points");
    const auto& sets = detail::field(doc, "sets");
    detail::require(sets.is_object(), "capacity: \"sets\" must be an object");
    const std::size_t total = std::size_t{1} << space.size();
    detail::require(sets.size() == total, "capacity: all 2^|X| subsets must be listed");
    std::vector<double> table(total, 0.0);
    std::vector<bool> seen(total, false);
    for (const auto& [key, value] : sets.items()) {
        std::uint64_t mask = 0;
        if (!key.empty()) {
            std::stringstream ss(key);
            std::string label;
            while (std::getline(ss, label, '|')) {
                auto i = space.index_of(label);
                detail::require(i.has_value(), "capacity: unknown point '" + label + "' in key '" + key + "'");
                mask |= std::uint64_t{1} << *i;
            }
        }
        detail::require(!seen[mask], "capacity: duplicate subset key '" + key + "'");
        seen[mask] = true;
        table[mask] = detail::finite_number(value, "capacity value");
    }
    return Capacity(space, std::move(table));
}

inline Json to_json(const Capacity& c) {
    Json sets = Json::object();
    for (std::size_t m = 0; m < c.table().size(); ++m) sets[subset_key(c.space(), m)] = c(m);
    return Json{{"kind", "capacity"}, {"sets", sets}};
}

inline PossibilityProfile parse_possibility(const Json& doc, const std::optional<FiniteSpace>& space = std::nullopt) {
    detail::require_kind(doc, "possibility");
    const auto& s = detail::field(doc, "singletons");
    const FiniteSpace sp = space ? *space : detail::space_of_keys(s, "possibility");
    const auto raw = detail::keyed_values(s, sp, "possibility");
    std::vector<UnitScore> v;
    for (const auto& r : raw) v.emplace_back(detail::finite_number(r, "possibility value"));
    return PossibilityProfile(sp, std::move(v));
}

inline Json to_json(const PossibilityProfile& pi) {
    Json s = Json::object();
    for (std::size_t i = 0; i < pi.size(); ++i) s[pi.space().label(i)] = pi[i].value();
    return Json{{"kind", "possibility"}, {"singletons", s}};
}

// -- tropical geometry ------------------------------------------------------

inline TropicalPoint parse_point(const Json& arr) {
    detail::require(arr.is_array(), "point: expected an array of coordinates");
    std::vector<double> c;
    for (const auto& v : arr) c.push_back(detail::finite_number(v, "coordinate"));
    return TropicalPoint(std::move(c));
}

inline Json to_json(const TropicalPoint& p) {
    Json a = Json::array();
    for (double c : p.coordinates()) a.push_back(c);
    return a;
}

inline GeneratorSet parse_generators(const Json& doc) {
    const auto& pts = detail::field(doc, "points");
    detail::require(pts.is_array() && !pts.empty(), "generators: \"points\" must be a non-empty array");
    std::vector<TropicalPoint> points;
    for (const auto& p : pts) points.push_back(parse_point(p));
    if (doc.contains("dim")) {
        const auto& dim = doc.at("dim");
        detail::require(dim.is_number_unsigned(), "generators: \"dim\" must be a positive integer");
        for (const auto& p : points)
            detail::require(p.dimension() == dim.get<std::size_t>(), "generators: dimension mismatch");
    }
    return GeneratorSet(std::move(points));
}

inline Json to_json(const GeneratorSet& g) {
    Json pts = Json::array();
    for (const auto& p : g.points()) pts.push_back(to_json(p));
    return Json{{"dim", g.dimension()}, {"points", pts}};
}

inline WeightVector parse_weights(const Json& doc) {
    const auto& w = doc.is_array() ? doc : detail::field(doc, "weights");
    detail::require(w.is_array(), "weights: expected an array");
    std::vector<ExtendedScore> out;
    for (const auto& v : w) out.push_back(score_from_json(v));
    return WeightVector(std::move(out));
}

inline Json to_json(const WeightVector& w) {
    Json a = Json::array();
    for (auto v : w.weights()) a.push_back(score_to_json(v));
    return Json{{"weights", a}};
}

/// JSON array with 9 significant digits per coordinate, e.g. [1,0].
inline std::string format_point(const TropicalPoint& p) {
    std::string out = "[";
    for (std::size_t t = 0; t < p.dimension(); ++t) out += (t ? "," : "") + format_score(p[t]);
    return out + "]";
}

}  // namespace idemkit::io
