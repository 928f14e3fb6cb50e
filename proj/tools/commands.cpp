#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>

#include <CLI11.hpp>

#include "lightlike/completeness.hpp"
#include "lightlike/errors.hpp"
#include "lightlike/geodesics.hpp"

namespace lightlike::cli {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWindowMargin = 1e-3;

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::InvalidParam, msg); }

double parse_real(std::string_view text, const char* what) {
    const std::string s(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
        invalid(std::string("cannot parse ") + what + " from '" + s + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

GridSpec parse_grid(std::string_view text, double margin) {
    const auto axes = split(text, ',');
    if (axes.size() != 2) {
        invalid("grid must look like 'pmin:pmax:np,qmin:qmax:nq'");
    }
    GridSpec g;
    g.margin = margin;
    for (int a = 0; a < 2; ++a) {
        const auto parts = split(axes[a], ':');
        if (parts.size() != 3) {
            invalid("grid axis must look like 'min:max:count'");
        }
        const double lo = parse_real(parts[0], "grid minimum");
        const double hi = parse_real(parts[1], "grid maximum");
        const double n = parse_real(parts[2], "grid count");
        if (n != std::floor(n) || n < 2 || n > 1e6) {
            invalid("grid count must be an integer >= 2");
        }
        if (!(lo < hi)) {
            invalid("grid minimum must be below maximum");
        }
        (a == 0 ? g.p : g.q) = {lo, hi};
        (a == 0 ? g.p_count : g.q_count) = static_cast<int>(n);
    }
    if (!(margin >= 0.0) || !std::isfinite(margin)) {
        invalid("margin must be finite and >= 0");
    }
    return g;
}

namespace {

Interval bounded_window(Interval range, double margin, double span) {
    const bool lo_ok = std::isfinite(range.lo);
    const bool hi_ok = std::isfinite(range.hi);
    if (lo_ok && hi_ok) {
        return {range.lo + margin, range.hi - margin};
    }
    if (lo_ok) {
        return {range.lo + margin, range.lo + margin + span};
    }
    if (hi_ok) {
        return {range.hi - margin - span, range.hi - margin};
    }
    return {-span / 2, span / 2};
}

} // namespace

GridSpec default_grid(const FamilyDescriptor& family, double margin, int count) {
    const double m = std::max(margin, kWindowMargin);
    GridSpec g;
    g.margin = margin;
    g.p_count = count;
    g.q_count = count;
    if (const auto* f = std::get_if<GraphSolitonFamily>(&family)) {
        const GraphParams& p = f->params();
        g.p = {-1.0, 1.0};
        switch (f->type()) {
        case GraphType::I: g.q = {p.z0 - 4.0, p.z0 + 4.0}; break;
        case GraphType::II: g.q = {-4.0, 4.0}; break;
        case GraphType::III: g.q = bounded_window(f->domain().q_range(), m, 0.0); break;
        case GraphType::IV:
            g.q = p.half == HalfPlaneSide::Plus ? Interval{p.z0 + m, p.z0 + 4.0} : Interval{p.z0 - 4.0, p.z0 - m};
            break;
        }
        return g;
    }
    const auto& pr = std::get<ParabolicProfile>(family);
    g.p = bounded_window(pr.s_range(), m, 3.0);
    g.q = {-1.0, 1.0};
    return g;
}

bool grid_point_inside(const FamilyDescriptor& family, Point2 at, double margin) {
    if (const auto* f = std::get_if<GraphSolitonFamily>(&family)) {
        return f->contains(at.p, at.q, margin);
    }
    return std::get<ParabolicProfile>(family).contains(at.p, margin);
}

// ---------------------------------------------------------------------------
// verify

namespace {

struct Accumulator {
    std::string name;
    double tolerance;
    double max_error = 0.0;
    bool saw_nonfinite = false;

    void add(double e) {
        if (!std::isfinite(e)) {
            saw_nonfinite = true;
            return;
        }
        max_error = std::max(max_error, std::abs(e));
    }
    CheckResult result(std::optional<double> tol) const {
        const double t = tol.value_or(tolerance);
        const double shown = saw_nonfinite ? std::numeric_limits<double>::infinity() : max_error;
        return {name, shown, t, !saw_nonfinite && max_error <= t};
    }
};

template <class F>
void for_each_grid_point(const GridSpec& g, const FamilyDescriptor& family, F&& fn) {
    for (int i = 0; i < g.p_count; ++i) {
        for (int j = 0; j < g.q_count; ++j) {
            const Point2 at{g.p_at(i), g.q_at(j)};
            if (grid_point_inside(family, at, g.margin)) {
                fn(at);
            }
        }
    }
}

std::vector<CheckResult> verify_graph(const GraphSolitonFamily& f, std::optional<double> tol) {
    const GraphParams& p = f.params();
    const double scale = std::max({1.0, p.lambda * p.lambda, p.a1 * p.a1, p.b1 * p.b1});
    const FamilyDescriptor fd = f;
    const GridSpec grid = default_grid(fd, kWindowMargin);
    const SurfacePatch patch = f.patch();
    const InducedMetric metric = InducedMetric::from_patch(patch);
    const bool spacelike = f.causal_character() == CausalCharacter::Spacelike;

    Accumulator pde{"pde_residual", 1e-9 * scale};
    Accumulator soliton{"soliton_residual", 1e-9 * scale};
    Accumulator flat{"flatness", 1e-8};
    Accumulator hw{"mean_curvature_identity", 1e-9};
    Accumulator causal{"causal_character", 0.0};
    Accumulator chris{"christoffel_closed_form", 1e-8};
    const bool has_closed_form = f.type() == GraphType::I || f.type() == GraphType::II;

    for_each_grid_point(grid, fd, [&](Point2 at) {
        pde.add(f.pde_residual(at.p, at.q));
        const FundamentalForms ff = fundamental_forms(patch, at);
        soliton.add(soliton_residual(patch, at));
        flat.add(ff.K);
        hw.add(ff.H * ff.W + 1.0);
        causal.add((ff.disc > 0.0) == spacelike ? 0.0 : 1.0);
        if (has_closed_form) {
            const ChristoffelSymbols num = christoffel(metric, at);
            const ChristoffelSymbols ref = f.type() == GraphType::I ? type_i_christoffel(p, at.p, at.q)
                                                                    : type_ii_christoffel(p, at.p, at.q);
            for (double e : {num.g1_11 - ref.g1_11, num.g2_11 - ref.g2_11, num.g1_12 - ref.g1_12,
                             num.g2_12 - ref.g2_12, num.g1_22 - ref.g1_22, num.g2_22 - ref.g2_22}) {
                chris.add(e);
            }
        }
    });
    std::vector<CheckResult> out{pde.result(tol), soliton.result(tol), flat.result(tol), hw.result(tol)};
    out.push_back(causal.result(std::nullopt));
    if (has_closed_form) {
        out.push_back(chris.result(tol));
    }
    return out;
}

std::vector<CheckResult> verify_parabolic(const ParabolicProfile& pr, std::optional<double> tol) {
    const FamilyDescriptor fd = pr;
    const GridSpec grid = default_grid(fd, kWindowMargin);
    const SurfacePatch patch = sweep_surface(pr);
    const bool spacelike = pr.causal_character() == CausalCharacter::Spacelike;

    Accumulator soliton{"soliton_residual", 1e-8};
    Accumulator ode{"profile_ode_residual", 1e-8};
    Accumulator causal{"causal_character", 0.0};
    Accumulator inv{"a3_invariance", 1e-12};
    for_each_grid_point(grid, fd, [&](Point2 at) {
        soliton.add(soliton_residual(patch, at));
        ode.add(pr.ode_residual(at.p));
        causal.add((first_form(patch, at).disc > 0.0) == spacelike ? 0.0 : 1.0);
        for (double shift : {-0.7, 0.3, 1.9}) {
            const LorentzVector moved = ParabolicIsometry(shift).apply(sweep_point(pr, at.p, at.q));
            const LorentzVector direct = sweep_point(pr, at.p, at.q + shift);
            inv.add(euclidean_distance(moved, direct) / std::max(1.0, euclidean_norm(direct)));
        }
    });
    std::vector<CheckResult> out{soliton.result(tol), ode.result(tol)};
    out.push_back(causal.result(std::nullopt));
    out.push_back(inv.result(tol));
    return out;
}

} // namespace

std::vector<CheckResult> verify_family(const FamilyDescriptor& family, std::optional<double> tol) {
    if (const auto* f = std::get_if<GraphSolitonFamily>(&family)) {
        return verify_graph(*f, tol);
    }
    return verify_parabolic(std::get<ParabolicProfile>(family), tol);
}

std::vector<CheckResult> verify_global(std::optional<double> tol) {
    Accumulator round{"phi_round_trip", 1e-10};
    for (int i = 0; i <= 240; ++i) {
        const double v = -std::pow(10.0, -6.0 + 12.0 * i / 240.0);
        round.add((phi(phi_inverse(v)) - v) / std::max(1.0, std::abs(v)));
    }
    Accumulator group{"a3_group_law", 1e-12};
    Accumulator iso{"a3_isometry", 1e-12};
    const LorentzVector probes[] = {{1.0, 0.0, 0.0}, {0.3, -1.2, 0.7}, {-2.0, 0.5, 1.5}};
    for (double s : {-1.5, -0.2, 0.4, 2.0}) {
        for (double t : {-0.9, 0.0, 1.1}) {
            const ParabolicIsometry a(s), b(t);
            for (const auto& v : probes) {
                const LorentzVector two = b.apply(a.apply(v));
                const LorentzVector one = compose(a, b).apply(v);
                group.add(euclidean_distance(two, one) / std::max(1.0, euclidean_norm(one)));
                for (const auto& w : probes) {
                    iso.add(inner(a.apply(v), a.apply(w)) - inner(v, w));
                }
            }
        }
    }
    return {round.result(tol), group.result(tol), iso.result(tol)};
}

std::vector<FamilyDescriptor> default_families() {
    GraphParams p;
    GraphParams neg = p;
    neg.a1 = -1.0;
    GraphParams minus = p;
    minus.half = HalfPlaneSide::Minus;
    return {
        GraphSolitonFamily::make(GraphType::I, p),
        GraphSolitonFamily::make(GraphType::II, p),
        GraphSolitonFamily::make(GraphType::II, neg),
        GraphSolitonFamily::make(GraphType::III, p),
        GraphSolitonFamily::make(GraphType::IV, p),
        GraphSolitonFamily::make(GraphType::IV, minus),
        ParabolicProfile::case1(1.0, 0.0),
        ParabolicProfile::case1(-1.0, 0.0),
        ParabolicProfile::case2(1.0, -1.0, ProfileBranch::Plus),
        ParabolicProfile::case2(-1.0, -1.0, ProfileBranch::Minus),
    };
}

// ---------------------------------------------------------------------------
// table

std::vector<TableRow> compute_table() {
    GraphParams pos;
    GraphParams neg;
    neg.a1 = -1.0;
    const std::vector<std::pair<std::string, GraphSolitonFamily>> rows{
        {"I", GraphSolitonFamily::make(GraphType::I, pos)},
        {"II", GraphSolitonFamily::make(GraphType::II, pos)},
        {"II", GraphSolitonFamily::make(GraphType::II, neg)},
        {"III", GraphSolitonFamily::make(GraphType::III, pos)},
        {"IV", GraphSolitonFamily::make(GraphType::IV, pos)},
    };
    std::vector<TableRow> out;
    for (const auto& [name, f] : rows) {
        TableRow r;
        r.type = name;
        r.entire = f.entire();
        r.causal = to_string(f.causal_character());
        if (f.type() == GraphType::II) {
            r.causal += f.params().a1 > 0.0 ? " if a1>0" : " if a1<0";
        }
        switch (completeness_probe(f).verdict) {
        case CompletenessVerdict::CompleteEvidence: r.complete = "yes"; break;
        case CompletenessVerdict::IncompleteWitness: r.complete = "no"; break;
        case CompletenessVerdict::Inconclusive: r.complete = "inconclusive"; break;
        }
        out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subcommands

namespace {

struct Common {
    std::string family = "all";
    std::string grid;
    double margin = kFamilyBoundaryMargin;
    std::string out_path;
    std::string format;
    std::optional<double> tol;
    double horizon = 100.0;
    std::string init;
    bool witness = false;
};

std::string header_line(const char* command) { return std::string("# lightlike ") + kVersion + " " + command; }

/// Runs `write` against --out when given, otherwise against `fallback`.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream file(path);
    if (!file) {
        invalid("cannot open output file '" + path + "'");
    }
    write(file);
}

GridSpec grid_for(const Common& c, const FamilyDescriptor& f) {
    return c.grid.empty() ? default_grid(f, c.margin) : parse_grid(c.grid, c.margin);
}

std::string cell(double v) { return std::isnan(v) ? std::string() : format_double(v); }

int cmd_eval(const Common& c, std::ostream& out) {
    const FamilyDescriptor family = parse_family_arg(c.family);
    const GridSpec grid = grid_for(c, family);
    const std::string format = c.format.empty() ? "csv" : c.format;
    if (format != "csv" && format != "json") {
        invalid("eval supports --format csv or json");
    }
    const SurfacePatch patch = family_patch(family);
    const bool graph = is_graph(family);
    const std::vector<std::string> columns = graph ? std::vector<std::string>{"y", "z", "u", "H", "K", "W", "residual"}
                                                   : std::vector<std::string>{"s", "t", "x", "H", "K", "W", "residual"};
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::array<double, 7>> rows;
    for (int i = 0; i < grid.p_count; ++i) {
        for (int j = 0; j < grid.q_count; ++j) {
            const Point2 at{grid.p_at(i), grid.q_at(j)};
            std::array<double, 7> r{at.p, at.q, nan, nan, nan, nan, nan};
            if (grid_point_inside(family, at, grid.margin)) {
                try {
                    const FundamentalForms ff = fundamental_forms(patch, at);
                    const double res = soliton_residual(patch, at);
                    r = {at.p, at.q, patch.position(at).x, ff.H, ff.K, ff.W, res};
                } catch (const Error&) {
                }
            }
            rows.push_back(r);
        }
    }
    emit(c.out_path, out, [&](std::ostream& os) {
        if (format == "csv") {
            os << header_line("eval") << "\n";
            for (std::size_t k = 0; k < columns.size(); ++k) {
                os << (k ? "," : "") << columns[k];
            }
            os << "\n";
            for (const auto& r : rows) {
                for (std::size_t k = 0; k < r.size(); ++k) {
                    os << (k ? "," : "") << cell(r[k]);
                }
                os << "\n";
            }
            return;
        }
        json rows_json = json::array();
        for (const auto& r : rows) {
            json row = json::array();
            for (double v : r) {
                row.push_back(std::isfinite(v) ? json(v) : json(nullptr));
            }
            rows_json.push_back(row);
        }
        os << json{{"version", kVersion}, {"family", to_json(family)}, {"columns", columns}, {"rows", rows_json}}.dump(2)
           << "\n";
    });
    return kExitOk;
}

json checks_json(const std::vector<CheckResult>& checks) {
    json arr = json::array();
    for (const auto& ch : checks) {
        arr.push_back({{"name", ch.name},
                       {"max_error", std::isfinite(ch.max_error) ? json(ch.max_error) : json("inf")},
                       {"tolerance", ch.tolerance},
                       {"pass", ch.pass}});
    }
    return arr;
}

int cmd_verify(const Common& c, std::ostream& out, std::ostream& err) {
    std::vector<FamilyDescriptor> families;
    if (c.family == "all") {
        families = default_families();
    } else {
        families.push_back(parse_family_arg(c.family));
    }
    std::vector<std::string> failures;
    json fam_json = json::array();
    for (const auto& f : families) {
        const auto checks = verify_family(f, c.tol);
        for (const auto& ch : checks) {
            if (!ch.pass) {
                failures.push_back(family_name(f) + "/" + ch.name);
            }
        }
        fam_json.push_back({{"family", to_json(f)}, {"checks", checks_json(checks)}});
    }
    const auto global = verify_global(c.tol);
    for (const auto& ch : global) {
        if (!ch.pass) {
            failures.push_back("global/" + ch.name);
        }
    }
    const json report{{"version", kVersion},
                      {"families", fam_json},
                      {"global", checks_json(global)},
                      {"failed", failures},
                      {"pass", failures.empty()}};
    emit(c.out_path, out, [&](std::ostream& os) { os << report.dump(2) << "\n"; });
    if (!failures.empty()) {
        err << "verification failed:";
        for (const auto& f : failures) {
            err << " " << f;
        }
        err << "\n";
        return kExitVerificationFailed;
    }
    return kExitOk;
}

GeodesicState witness_state(const FamilyDescriptor& family) {
    const auto* f = std::get_if<GraphSolitonFamily>(&family);
    if (!f) {
        invalid("--witness is only defined for the graph families");
    }
    const GraphParams& p = f->params();
    switch (f->type()) {
    case GraphType::I: return {0.0, p.z0, 0.0, 1.0};
    case GraphType::II: return {0.0, 0.0, 1.0, p.b1};
    case GraphType::III: return {0.0, p.z0 + 2.0 * p.k * p.lambda * kPi, 0.0, 1.0};
    case GraphType::IV:
        return p.half == HalfPlaneSide::Plus ? GeodesicState{0.0, p.z0 + 0.5, 0.0, -1.0}
                                             : GeodesicState{0.0, p.z0 - 0.5, 0.0, 1.0};
    }
    return {};
}

GeodesicState parse_state(std::string_view text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4) {
        invalid("--init must be 'p,q,dp,dq'");
    }
    return {parse_real(parts[0], "p"), parse_real(parts[1], "q"), parse_real(parts[2], "dp"),
            parse_real(parts[3], "dq")};
}

int cmd_geodesic(const Common& c, std::ostream& out) {
    const FamilyDescriptor family = parse_family_arg(c.family);
    if (c.witness == !c.init.empty()) {
        invalid("give exactly one of --init or --witness");
    }
    if (!c.format.empty() && c.format != "csv") {
        invalid("geodesic writes its trajectory as csv");
    }
    const GeodesicState init = c.witness ? witness_state(family) : parse_state(c.init);
    IntegratorOptions opts;
    opts.boundary_margin = c.margin;
    if (c.tol) {
        opts.abs_tol = *c.tol;
        opts.rel_tol = *c.tol;
    }
    const InducedMetric metric = InducedMetric::from_patch(family_patch(family));
    const GeodesicTrajectory tr = integrate_geodesic(metric, init, c.horizon, opts);
    if (!c.out_path.empty()) {
        emit(c.out_path, out, [&](std::ostream& os) {
            os << header_line("geodesic") << "\n" << "t,y,z,dy,dz,cumlen\n";
            for (const auto& s : tr.samples) {
                os << format_double(s.t) << "," << format_double(s.p) << "," << format_double(s.q) << ","
                   << format_double(s.dp) << "," << format_double(s.dq) << "," << format_double(s.length) << "\n";
            }
        });
    }
    const auto& last = tr.samples.back();
    const json verdict{{"version", kVersion},
                       {"family", to_json(family)},
                       {"initial", {init.p, init.q, init.dp, init.dq}},
                       {"horizon", c.horizon},
                       {"verdict", to_string(tr.verdict)},
                       {"exit_reason", to_string(tr.exit_reason)},
                       {"length", tr.length},
                       {"final_time", tr.final_time()},
                       {"final_state", {last.p, last.q, last.dp, last.dq}},
                       {"initial_norm_sq", tr.initial_norm_sq},
                       {"max_relative_drift", tr.max_relative_drift},
                       {"accepted_steps", tr.accepted_steps},
                       {"rejected_steps", tr.rejected_steps}};
    out << verdict.dump() << "\n";
    return kExitOk;
}

int cmd_mesh(const Common& c, std::ostream& out) {
    const FamilyDescriptor family = parse_family_arg(c.family);
    const GridSpec grid = grid_for(c, family);
    const std::string format = c.format.empty() ? "obj" : c.format;
    if (format != "obj" && format != "csv") {
        invalid("mesh supports --format obj or csv");
    }
    const SurfacePatch patch = family_patch(family);
    std::vector<int> index(static_cast<std::size_t>(grid.p_count) * grid.q_count, -1);
    std::vector<std::pair<Point2, LorentzVector>> vertices;
    for (int i = 0; i < grid.p_count; ++i) {
        for (int j = 0; j < grid.q_count; ++j) {
            const Point2 at{grid.p_at(i), grid.q_at(j)};
            if (!grid_point_inside(family, at, grid.margin)) {
                continue;
            }
            const LorentzVector v = patch.position(at);
            if (!is_finite(v)) {
                continue;
            }
            index[static_cast<std::size_t>(i) * grid.q_count + j] = static_cast<int>(vertices.size());
            vertices.emplace_back(at, v);
        }
    }
    if (vertices.empty()) {
        invalid("no grid point lies inside the family's domain");
    }
    std::vector<std::array<int, 3>> faces;
    auto idx = [&](int i, int j) { return index[static_cast<std::size_t>(i) * grid.q_count + j]; };
    for (int i = 0; i + 1 < grid.p_count; ++i) {
        for (int j = 0; j + 1 < grid.q_count; ++j) {
            const int a = idx(i, j), b = idx(i + 1, j), cc = idx(i + 1, j + 1), d = idx(i, j + 1);
            if (a < 0 || b < 0 || cc < 0 || d < 0) {
                continue;
            }
            faces.push_back({a, b, cc});
            faces.push_back({a, cc, d});
        }
    }
    emit(c.out_path, out, [&](std::ostream& os) {
        os << header_line("mesh") << "\n";
        if (format == "csv") {
            os << "p,q,x,y,z\n";
            for (const auto& [at, v] : vertices) {
                os << format_double(at.p) << "," << format_double(at.q) << "," << format_double(v.x) << ","
                   << format_double(v.y) << "," << format_double(v.z) << "\n";
            }
            return;
        }
        os << "# family " << to_json(family).dump() << "\n";
        for (const auto& [at, v] : vertices) {
            os << "v " << format_double(v.x) << " " << format_double(v.y) << " " << format_double(v.z) << "\n";
        }
        for (const auto& f : faces) {
            os << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
        }
    });
    return kExitOk;
}

int cmd_table(const Common& c, std::ostream& out) {
    const std::string format = c.format.empty() ? "text" : c.format;
    if (format != "text" && format != "csv" && format != "json") {
        invalid("table supports --format text, csv or json");
    }
    const auto rows = compute_table();
    emit(c.out_path, out, [&](std::ostream& os) {
        if (format == "json") {
            json arr = json::array();
            for (const auto& r : rows) {
                arr.push_back({{"type", r.type}, {"entire", r.entire}, {"causal", r.causal}, {"complete", r.complete}});
            }
            os << json{{"version", kVersion}, {"rows", arr}}.dump(2) << "\n";
        } else if (format == "csv") {
            os << header_line("table") << "\n" << "type,entire,causal,complete\n";
            for (const auto& r : rows) {
                os << r.type << "," << (r.entire ? "yes" : "no") << "," << r.causal << "," << r.complete << "\n";
            }
        } else {
            char line[128];
            std::snprintf(line, sizeof line, "%-5s %-7s %-22s %s\n", "Type", "Entire", "Causal Character",
                          "Completeness");
            os << line;
            for (const auto& r : rows) {
                std::snprintf(line, sizeof line, "%-5s %-7s %-22s %s\n", r.type.c_str(), r.entire ? "yes" : "no",
                              r.causal.c_str(), r.complete.c_str());
                os << line;
            }
        }
    });
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Translating solitons along a light-like direction in Minkowski 3-space", "lightlike"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Common c;

    auto add_family = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--family", c.family, "family JSON or @file");
        if (required) {
            opt->required();
        }
    };
    auto add_grid = [&](CLI::App* sub) {
        sub->add_option("--grid", c.grid, "pmin:pmax:np,qmin:qmax:nq");
        sub->add_option("--margin", c.margin, "distance kept from excluded lines");
    };
    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", c.out_path, "output file (default: stdout)");
        sub->add_option("--format", c.format, "csv, json, obj or text, depending on the command");
    };

    auto* eval = app.add_subcommand("eval", "evaluate u, H, K, W and the soliton residual on a grid");
    add_family(eval, true);
    add_grid(eval);
    add_out(eval);

    auto* verify = app.add_subcommand("verify", "run the invariant checks (\"all\" or one family)");
    add_family(verify, false);
    verify->add_option("--tol", c.tol, "tolerance used by every check");
    add_out(verify);

    auto* geo = app.add_subcommand("geodesic", "integrate a geodesic of the induced metric");
    add_family(geo, true);
    geo->add_option("--init", c.init, "initial state p,q,dp,dq");
    geo->add_flag("--witness", c.witness, "start from the family's canonical probe state");
    geo->add_option("--horizon", c.horizon, "final parameter");
    geo->add_option("--tol", c.tol, "absolute and relative step tolerance");
    geo->add_option("--margin", c.margin, "distance kept from excluded lines");
    add_out(geo);

    auto* mesh = app.add_subcommand("mesh", "export the surface over a grid");
    add_family(mesh, true);
    add_grid(mesh);
    add_out(mesh);

    auto* table = app.add_subcommand("table", "causal character and completeness of the graph families");
    add_out(table);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitInvalidInput;
    }

    try {
        if (eval->parsed()) {
            return cmd_eval(c, out);
        }
        if (verify->parsed()) {
            return cmd_verify(c, out, err);
        }
        if (geo->parsed()) {
            return cmd_geodesic(c, out);
        }
        if (mesh->parsed()) {
            return cmd_mesh(c, out);
        }
        if (table->parsed()) {
            return cmd_table(c, out);
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.code() == ErrorCode::NoConvergence || e.code() == ErrorCode::NonFinite ? kExitVerificationFailed
                                                                                        : kExitInvalidInput;
    }
    return kExitInvalidInput;
}

} // namespace lightlike::cli
