// idemkit command-line tool: integrals, hulls, barycenters, conversions, law suites.
//
// Exit status: 0 success, 1 law or internal failure, 2 invalid input.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idemkit/capacity.hpp"
#include "idemkit/convexity.hpp"
#include "idemkit/density.hpp"
#include "idemkit/io.hpp"
#include "idemkit/isomorphism.hpp"
#include "idemkit/laws.hpp"

namespace {

using namespace idemkit;
using io::Json;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kInvalid = 2;

double tolerance() {
    const char* env = std::getenv("IDEMKIT_TOLERANCE");
    if (!env || !*env) return kDefaultTolerance;
    char* end = nullptr;
    const double t = std::strtod(env, &end);
    detail::require(end && *end == '\0' && std::isfinite(t) && t > 0.0,
                    std::string("IDEMKIT_TOLERANCE: expected a positive number, got '") + env + "'");
    return t;
}

/// Inline JSON when the argument looks like JSON, otherwise a file path.
Json document(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{')) return io::parse_text(arg);
    return io::load_json(arg);
}

void write_document(const Json& doc, const std::string& path) {
    const std::string text = doc.dump(2) + "\n";
    if (path.empty() || path == "-") {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(path);
    detail::require(static_cast<bool>(out), "cannot write '" + path + "'");
    out << text;
}

// -- integrate ---------------------------------------------------------------

struct IntegrateArgs {
    std::string space, capacity, function;
    bool both = false;
};

int cmd_integrate(const IntegrateArgs& a) {
    const auto space = io::parse_space(document(a.space));
    const auto cdoc = document(a.capacity);
    const auto phi = io::parse_function(document(a.function), space);
    const bool possibility =
        cdoc.contains("singletons") || (cdoc.contains("kind") && cdoc.at("kind") == "possibility");

    if (!possibility) {
        detail::require(!a.both, "--both requires a possibility document");
        std::puts(format_score(maxplus_integral(io::parse_capacity(cdoc, space), phi)).c_str());
        return kOk;
    }
    const auto pi = io::parse_possibility(cdoc, space);
    const auto integral = maxplus_integral(capacity_from_profile(pi), phi);
    std::puts(format_score(integral).c_str());
    if (a.both) {
        const auto repr = possibility_integral(pi, phi);
        double diff = 0.0;
        if (integral.is_bottom() != repr.is_bottom())
            diff = INFINITY;
        else if (integral.is_finite())
            diff = std::abs(integral.value() - repr.value());
        std::printf("iX %s\n", format_score(repr).c_str());
        std::printf("difference %s\n", std::isinf(diff) ? "inf" : format_score(diff).c_str());
        if (diff > tolerance()) return kFailure;
    }
    return kOk;
}

// -- hull, barycenter ---------------------------------------------------------

struct HullArgs {
    std::string generators, point, weights;
};

int cmd_member(const HullArgs& a) {
    const auto gens = io::parse_generators(document(a.generators));
    const auto p = io::parse_point(document(a.point));
    detail::require(p.dimension() == gens.dimension(), "point: dimension mismatch with the generators");
    std::puts(hull_member(p, gens, tolerance()) ? "true" : "false");
    return kOk;
}

int cmd_combine(const HullArgs& a) {
    const auto gens = io::parse_generators(document(a.generators));
    const auto w = io::parse_weights(document(a.weights));
    std::puts(io::format_point(combine(gens, w)).c_str());
    return kOk;
}

struct BarycenterArgs {
    std::string generators, density;
};

int cmd_barycenter(const BarycenterArgs& a) {
    const auto gens = io::parse_generators(document(a.generators));
    const auto doc = document(a.density);
    const auto f = doc.is_object() && doc.contains("values") ? io::parse_density<MaxPlus>(doc, gens.index_space())
                                                              : io::parse_weights(doc).as_density(gens);
    std::puts(io::format_point(barycenter(gens, f)).c_str());
    return kOk;
}

// -- convert -----------------------------------------------------------------

struct ConvertArgs {
    std::string from, to, input, output;
};

int cmd_convert(const ConvertArgs& a) {
    const auto doc = document(a.input);
    Json out;
    if (a.from == "maxplus") {
        const auto f = io::parse_density<MaxPlus>(doc);
        if (a.to == "maxplus")
            out = io::to_json(f);
        else if (a.to == "maxtimes")
            out = io::to_json(density_exp(f));
        else
            out = io::to_json(PossibilityProfile(density_exp(f)));
    } else {
        const auto g = a.from == "maxtimes" ? io::parse_density<MaxTimes>(doc) : io::parse_possibility(doc).as_density();
        if (a.to == "maxplus")
            out = io::to_json(density_log(g));
        else if (a.to == "maxtimes")
            out = io::to_json(g);
        else
            out = io::to_json(PossibilityProfile(g));
    }
    write_document(out, a.output);
    return kOk;
}

// -- laws --------------------------------------------------------------------

struct LawsArgs {
    std::string suite = "all";
    std::size_t trials = 500;
    std::uint64_t seed = 0;
    std::size_t max_space = 5;
    std::string mutate = "none";
    bool json = false;
    bool list = false;
};

int cmd_laws(const LawsArgs& a) {
    if (a.list) {
        for (const auto& s : laws::suites()) std::printf("%-10s %s\n", std::string(s.name).c_str(), std::string(s.law).c_str());
        return kOk;
    }
    detail::require(a.suite == "all" || laws::find_suite(a.suite), "unknown suite '" + a.suite + "'");
    detail::require(a.trials >= 1, "--trials must be at least 1");
    detail::require(a.max_space >= 1 && a.max_space <= 12, "--max-space must be between 1 and 12");

    laws::Options o;
    o.trials = a.trials;
    o.seed = a.seed;
    o.max_space = a.max_space;
    o.tolerance = tolerance();
    o.mutation = a.mutate == "drop-weight" ? laws::Mutation::drop_weight : laws::Mutation::none;

    const auto reports = laws::run(a.suite, o);
    bool passed = true;
    for (const auto& r : reports) passed = passed && r.passed();

    if (a.json) {
        Json arr = Json::array();
        for (const auto& r : reports) arr.push_back(laws::to_json(r));
        std::puts(Json{{"passed", passed}, {"reports", arr}}.dump(2).c_str());
    } else {
        double total = 0.0;
        std::size_t failures = 0;
        for (const auto& r : reports) {
            std::fputs(laws::summary(r).c_str(), stdout);
            total += r.elapsed_seconds;
            failures += r.failures.size();
        }
        std::printf("%s: %zu failure(s) in %.3f s\n", passed ? "PASSED" : "FAILED", failures, total);
    }
    return passed ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Idempotent measures, max-plus integrals and max-plus convexity"};
    app.require_subcommand(1);

    IntegrateArgs ia;
    auto* integrate = app.add_subcommand("integrate", "Max-plus integral of a function against a capacity");
    integrate->add_option("--space", ia.space, "space document")->required();
    integrate->add_option("--capacity", ia.capacity, "capacity or possibility document")->required();
    integrate->add_option("--function", ia.function, "function document")->required();
    integrate->add_flag("--both", ia.both, "also print the possibility representation and the difference");

    HullArgs ha;
    auto* hull = app.add_subcommand("hull", "Max-plus convex hulls");
    hull->require_subcommand(1);
    auto* member = hull->add_subcommand("member", "Is the point in the hull of the generators?");
    member->add_option("--generators", ha.generators, "points document")->required();
    member->add_option("--point", ha.point, "point as a JSON array or file")->required();
    auto* comb = hull->add_subcommand("combine", "Max-plus combination of the generators");
    comb->add_option("--generators", ha.generators, "points document")->required();
    comb->add_option("--weights", ha.weights, "weights as a JSON array, document or file")->required();

    BarycenterArgs ba;
    auto* bary = app.add_subcommand("barycenter", "Idempotent barycenter of a weight density");
    bary->add_option("--generators", ba.generators, "points document")->required();
    bary->add_option("--density", ba.density, "max-plus density over generator indices, or weights")->required();

    LawsArgs la;
    auto* lawcmd = app.add_subcommand("laws", "Run randomized law suites");
    std::vector<std::string> names{"all"};
    for (const auto& s : laws::suites()) names.emplace_back(s.name);
    lawcmd->add_option("--suite", la.suite, "suite name or all")->check(CLI::IsMember(names));
    lawcmd->add_option("--trials", la.trials, "trials per suite")->check(CLI::PositiveNumber);
    lawcmd->add_option("--seed", la.seed, "64-bit seed");
    lawcmd->add_option("--max-space", la.max_space, "largest random space")->check(CLI::Range(1, 12));
    lawcmd->add_option("--mutate", la.mutate, "corrupt the multiplication")
        ->check(CLI::IsMember({"none", "drop-weight"}));
    lawcmd->add_flag("--json", la.json, "print the report as JSON");
    lawcmd->add_flag("--list", la.list, "list suites and the identities they check");

    ConvertArgs ca;
    auto* convert = app.add_subcommand("convert", "Convert between max-plus, max-times and possibility documents");
    const std::vector<std::string> kinds{"maxplus", "maxtimes", "possibility"};
    convert->add_option("--from", ca.from, "input kind")->required()->check(CLI::IsMember(kinds));
    convert->add_option("--to", ca.to, "output kind")->required()->check(CLI::IsMember(kinds));
    convert->add_option("--input", ca.input, "input document")->required();
    convert->add_option("--output", ca.output, "output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (*integrate) return cmd_integrate(ia);
        if (*member) return cmd_member(ha);
        if (*comb) return cmd_combine(ha);
        if (*bary) return cmd_barycenter(ba);
        if (*lawcmd) return cmd_laws(la);
        if (*convert) return cmd_convert(ca);
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "idemkit: error: %s\n", e.what());
        return kInvalid;
    } catch (const Json::exception& e) {
        std::fprintf(stderr, "idemkit: error: malformed document: %s\n", e.what());
        return kInvalid;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "idemkit: internal error: %s\n", e.what());
        return kFailure;
    }
    return kFailure;
}
