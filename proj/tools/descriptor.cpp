#include "descriptor.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "lightlike/errors.hpp"

namespace lightlike::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::InvalidDescriptor, msg); }

double number(const json& params, const char* key, double fallback) {
    if (!params.contains(key)) {
        return fallback;
    }
    const json& v = params.at(key);
    if (!v.is_number()) {
        bad(std::string("parameter '") + key + "' must be a number");
    }
    return v.get<double>();
}

std::string word(const json& params, const char* key, const char* fallback) {
    if (!params.contains(key)) {
        return fallback;
    }
    const json& v = params.at(key);
    if (!v.is_string()) {
        bad(std::string("parameter '") + key + "' must be a string");
    }
    return v.get<std::string>();
}

void only_keys(const json& params, std::initializer_list<const char*> allowed, const std::string& kind) {
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = params.begin(); it != params.end(); ++it) {
        if (!ok.count(it.key())) {
            bad("unknown parameter '" + it.key() + "' for kind " + kind);
        }
    }
}

// null stands for an open end.
Interval s_interval(const json& params, Interval fallback) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const bool lo_open = params.contains("s_min") && params.at("s_min").is_null();
    const bool hi_open = params.contains("s_max") && params.at("s_max").is_null();
    return {lo_open ? -inf : number(params, "s_min", fallback.lo), hi_open ? inf : number(params, "s_max", fallback.hi)};
}

} // namespace

FamilyDescriptor parse_family(const json& d) {
    if (!d.is_object()) {
        bad("family descriptor must be a JSON object");
    }
    for (auto it = d.begin(); it != d.end(); ++it) {
        if (it.key() != "kind" && it.key() != "params") {
            bad("unknown descriptor field '" + it.key() + "'");
        }
    }
    if (!d.contains("kind") || !d.at("kind").is_string()) {
        bad("descriptor needs a string 'kind'");
    }
    const std::string kind = d.at("kind").get<std::string>();
    const json params = d.value("params", json::object());
    if (!params.is_object()) {
        bad("'params' must be an object");
    }

    GraphParams gp;
    if (kind == "type_i") {
        only_keys(params, {"lambda", "z0", "a0"}, kind);
        gp.lambda = number(params, "lambda", gp.lambda);
        gp.z0 = number(params, "z0", gp.z0);
        gp.a0 = number(params, "a0", gp.a0);
        return GraphSolitonFamily::make(GraphType::I, gp);
    }
    if (kind == "type_ii") {
        only_keys(params, {"a1", "b1", "b0"}, kind);
        gp.a1 = number(params, "a1", gp.a1);
        gp.b1 = number(params, "b1", gp.b1);
        gp.b0 = number(params, "b0", gp.b0);
        return GraphSolitonFamily::make(GraphType::II, gp);
    }
    if (kind == "type_iii") {
        only_keys(params, {"lambda", "z0", "b0", "k"}, kind);
        gp.lambda = number(params, "lambda", gp.lambda);
        gp.z0 = number(params, "z0", gp.z0);
        gp.b0 = number(params, "b0", gp.b0);
        if (params.contains("k")) {
            if (!params.at("k").is_number_integer()) {
                bad("parameter 'k' must be an integer");
            }
            gp.k = params.at("k").get<int>();
        }
        return GraphSolitonFamily::make(GraphType::III, gp);
    }
    if (kind == "type_iv") {
        only_keys(params, {"lambda", "z0", "a0", "half"}, kind);
        gp.lambda = number(params, "lambda", gp.lambda);
        gp.z0 = number(params, "z0", gp.z0);
        gp.a0 = number(params, "a0", gp.a0);
        const std::string half = word(params, "half", "plus");
        if (half != "plus" && half != "minus") {
            bad("'half' must be \"plus\" or \"minus\"");
        }
        gp.half = half == "plus" ? HalfPlaneSide::Plus : HalfPlaneSide::Minus;
        return GraphSolitonFamily::make(GraphType::IV, gp);
    }
    if (kind == "parabolic_1") {
        only_keys(params, {"a0", "a1", "s_min", "s_max"}, kind);
        const Interval s = s_interval(params, {0.0, std::numeric_limits<double>::infinity()});
        return ParabolicProfile::case1(number(params, "a0", 0.0), number(params, "a1", 1.0), s);
    }
    if (kind == "parabolic_2") {
        only_keys(params, {"b0", "b1", "branch", "s_min", "s_max"}, kind);
        const double b0 = number(params, "b0", 0.0);
        const double b1 = number(params, "b1", 1.0);
        const std::string br = word(params, "branch", "plus");
        if (br != "plus" && br != "minus") {
            bad("'branch' must be \"plus\" or \"minus\"");
        }
        const ProfileBranch branch = br == "plus" ? ProfileBranch::Plus : ProfileBranch::Minus;
        std::optional<Interval> s;
        if (params.contains("s_min") || params.contains("s_max")) {
            s = s_interval(params, ParabolicProfile::admissible_interval(b0, b1, branch));
        }
        return ParabolicProfile::case2(b0, b1, branch, s);
    }
    bad("unknown family kind '" + kind + "'");
}

FamilyDescriptor parse_family_arg(std::string_view arg) {
    std::string text(arg);
    if (!text.empty() && text.front() == '@') {
        std::ifstream in(text.substr(1));
        if (!in) {
            bad("cannot read descriptor file '" + text.substr(1) + "'");
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    json d;
    try {
        d = json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("malformed JSON: ") + e.what());
    }
    return parse_family(d);
}

namespace {

json bound(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

} // namespace

json to_json(const FamilyDescriptor& family) {
    if (const auto* g = std::get_if<GraphSolitonFamily>(&family)) {
        const GraphParams& p = g->params();
        json params;
        switch (g->type()) {
        case GraphType::I: params = {{"lambda", p.lambda}, {"z0", p.z0}, {"a0", p.a0}}; break;
        case GraphType::II: params = {{"a1", p.a1}, {"b1", p.b1}, {"b0", p.b0}}; break;
        case GraphType::III: params = {{"lambda", p.lambda}, {"z0", p.z0}, {"b0", p.b0}, {"k", p.k}}; break;
        case GraphType::IV:
            params = {{"lambda", p.lambda},
                      {"z0", p.z0},
                      {"a0", p.a0},
                      {"half", p.half == HalfPlaneSide::Plus ? "plus" : "minus"}};
            break;
        }
        return {{"kind", to_string(g->type())}, {"params", params}};
    }
    const auto& pr = std::get<ParabolicProfile>(family);
    if (pr.profile_case() == ProfileCase::ExplicitXOfS) {
        return {{"kind", "parabolic_1"},
                {"params",
                 {{"a0", pr.a0()}, {"a1", pr.a1()}, {"s_min", bound(pr.s_range().lo)}, {"s_max", bound(pr.s_range().hi)}}}};
    }
    return {{"kind", "parabolic_2"},
            {"params",
             {{"b0", pr.b0()},
              {"b1", pr.b1()},
              {"branch", pr.branch() == ProfileBranch::Plus ? "plus" : "minus"},
              {"s_min", bound(pr.s_range().lo)},
              {"s_max", bound(pr.s_range().hi)}}}};
}

std::string family_name(const FamilyDescriptor& family) { return to_json(family).at("kind").get<std::string>(); }

SurfacePatch family_patch(const FamilyDescriptor& family) {
    if (const auto* g = std::get_if<GraphSolitonFamily>(&family)) {
        return g->patch();
    }
    return sweep_surface(std::get<ParabolicProfile>(family));
}

bool is_graph(const FamilyDescriptor& family) { return std::holds_alternative<GraphSolitonFamily>(family); }

} // namespace lightlike::cli
