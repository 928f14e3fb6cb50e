#include "lightlike/families.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lightlike/errors.hpp"

namespace lightlike {

const char* to_string(GraphType type) {
    switch (type) {
    case GraphType::I: return "type_i";
    case GraphType::II: return "type_ii";
    case GraphType::III: return "type_iii";
    case GraphType::IV: return "type_iv";
    }
    return "unknown";
}

const char* roman(GraphType type) {
    switch (type) {
    case GraphType::I: return "I";
    case GraphType::II: return "II";
    case GraphType::III: return "III";
    case GraphType::IV: return "IV";
    }
    return "?";
}

SurfacePatch graph_patch(const GraphDefinition& graph) {
    auto position = [u = graph.u](Point2 at) { return LorentzVector{u(at.p, at.q), at.p, at.q}; };
    auto jet = [u = graph.u, partials = graph.partials](Point2 at) {
        const GraphPartials d = partials(at.p, at.q);
        PatchJet j;
        j.position = {u(at.p, at.q), at.p, at.q};
        j.dp = {d.u_y, 1.0, 0.0};
        j.dq = {d.u_z, 0.0, 1.0};
        j.dpp = {d.u_yy, 0.0, 0.0};
        j.dpq = {d.u_yz, 0.0, 0.0};
        j.dqq = {d.u_zz, 0.0, 0.0};
        return j;
    };
    return SurfacePatch::analytic(position, jet, graph.domain);
}

namespace {

void require_param(bool ok, const std::string& what) {
    if (!ok) {
        throw Error(ErrorCode::InvalidParam, what);
    }
}

bool finite_params(const GraphParams& p) {
    return std::isfinite(p.lambda) && std::isfinite(p.z0) && std::isfinite(p.a0) && std::isfinite(p.a1) &&
           std::isfinite(p.b0) && std::isfinite(p.b1);
}

} // namespace

GraphSolitonFamily::GraphSolitonFamily(GraphType type, const GraphParams& params)
    : type_(type), params_(params) {
    require_param(finite_params(params), "family parameters must be finite");
    switch (type) {
    case GraphType::II:
        require_param(params.a1 != 0.0, "type II requires a1 != 0");
        break;
    case GraphType::I:
    case GraphType::III:
    case GraphType::IV:
        require_param(params.lambda > 0.0, std::string(to_string(type)) + " requires lambda > 0");
        break;
    }
}

GraphSolitonFamily GraphSolitonFamily::make(GraphType type, const GraphParams& params) {
    return GraphSolitonFamily(type, params);
}

GraphSolitonFamily GraphSolitonFamily::type_i(double lambda, double z0, double a0) {
    GraphParams p;
    p.lambda = lambda;
    p.z0 = z0;
    p.a0 = a0;
    return GraphSolitonFamily(GraphType::I, p);
}

GraphSolitonFamily GraphSolitonFamily::type_ii(double a1, double b1, double b0) {
    GraphParams p;
    p.a1 = a1;
    p.b1 = b1;
    p.b0 = b0;
    return GraphSolitonFamily(GraphType::II, p);
}

GraphSolitonFamily GraphSolitonFamily::type_iii(double lambda, double z0, double b0, int k) {
    GraphParams p;
    p.lambda = lambda;
    p.z0 = z0;
    p.b0 = b0;
    p.k = k;
    return GraphSolitonFamily(GraphType::III, p);
}

GraphSolitonFamily GraphSolitonFamily::type_iv(double lambda, double z0, double a0, HalfPlaneSide half) {
    GraphParams p;
    p.lambda = lambda;
    p.z0 = z0;
    p.a0 = a0;
    p.half = half;
    return GraphSolitonFamily(GraphType::IV, p);
}

DomainSpec GraphSolitonFamily::domain() const {
    switch (type_) {
    case GraphType::I:
    case GraphType::II:
        return DomainSpec::full_plane();
    case GraphType::III: {
        const double center = params_.z0 + 2.0 * params_.k * params_.lambda * std::numbers::pi;
        const double half_width = params_.lambda * std::numbers::pi;
        return DomainSpec::horizontal_strip(center - half_width, center + half_width);
    }
    case GraphType::IV:
        return DomainSpec::half_plane(params_.z0, params_.half == HalfPlaneSide::Plus);
    }
    return DomainSpec::full_plane();
}

bool GraphSolitonFamily::contains(double y, double z, double margin) const {
    return domain().contains({y, z}, margin);
}

void GraphSolitonFamily::require_inside(double y, double z) const {
    if (!contains(y, z)) {
        throw Error(ErrorCode::OutOfDomain, std::string(to_string(type_)) + ": (" + std::to_string(y) +
                                                ", " + std::to_string(z) + ") outside natural domain");
    }
}

double GraphSolitonFamily::eval_u(double y, double z) const {
    require_inside(y, z);
    return detail::graph_u<double>(type_, params_, y, z);
}

GraphPartials GraphSolitonFamily::partials_u(double y, double z) const {
    require_inside(y, z);
    return detail::graph_partials<double>(type_, params_, y, z);
}

double GraphSolitonFamily::pde_residual(double y, double z) const {
    require_inside(y, z);
    const auto d = detail::graph_partials<long double>(type_, params_, y, z);
    return static_cast<double>(lightlike::pde_residual(d));
}

CausalCharacter GraphSolitonFamily::causal_character() const noexcept {
    switch (type_) {
    case GraphType::I: return CausalCharacter::Spacelike;
    case GraphType::II: return params_.a1 > 0.0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
    case GraphType::III:
    case GraphType::IV: return CausalCharacter::Timelike;
    }
    return CausalCharacter::Timelike;
}

GraphDefinition GraphSolitonFamily::definition() const {
    const GraphSolitonFamily self = *this;
    return {[self](double y, double z) { return self.eval_u(y, z); },
            [self](double y, double z) { return self.partials_u(y, z); }, domain()};
}

SurfacePatch GraphSolitonFamily::patch() const { return graph_patch(definition()); }

GraphSolitonFamily grim_reaper(GrimReaperForm form) {
    return GraphSolitonFamily::type_ii(form == GrimReaperForm::Surface ? 2.0 : 0.5, 0.0, 0.0);
}

// ---------------------------------------------------------------------------
// phi and its inverse

double phi(double r) { return -0.25 * (2.0 * r * r + 2.0 * r + 1.0) * std::exp(-2.0 * r); }

double phi_derivative(double r) { return r * r * std::exp(-2.0 * r); }

double phi_inverse(double v, double tol) {
    if (!std::isfinite(v) || !(v < 0.0)) {
        throw Error(ErrorCode::OutOfRange, "phi_inverse: argument must lie in (-inf, 0), got " +
                                               std::to_string(v));
    }
    if (!(tol > 0.0)) {
        throw Error(ErrorCode::InvalidParam, "phi_inverse: tol must be > 0");
    }
    const double target_tol = tol * std::max(1.0, std::abs(v));

    // Bracket [lo, hi] with phi(lo) <= v <= phi(hi).
    double lo = 0.0;
    double hi = 0.0;
    int expansions = 0;
    if (v >= kPhiAtZero) {
        hi = 1.0;
        while (phi(hi) < v) {
            lo = hi;
            hi *= 2.0;
            if (++expansions > 64) {
                throw Error(ErrorCode::NoConvergence, "phi_inverse: bracket expansion failed");
            }
        }
    } else {
        lo = -1.0;
        while (phi(lo) > v) {
            hi = lo;
            lo *= 2.0;
            if (++expansions > 64) {
                throw Error(ErrorCode::NoConvergence, "phi_inverse: bracket expansion failed");
            }
        }
    }

    // Newton safeguarded by bisection; phi' vanishes only at r = 0.
    double r = 0.5 * (lo + hi);
    constexpr int kBudget = 200;
    for (int it = 0; it < kBudget; ++it) {
        const double f = phi(r) - v;
        if (f == 0.0) {
            return r;
        }
        if (f < 0.0) {
            lo = r;
        } else {
            hi = r;
        }
        const double d = phi_derivative(r);
        double next = d > 0.0 ? r - f / d : lo - 1.0;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        const double step = std::abs(next - r);
        r = next;
        const double scale = std::max(1.0, std::abs(r));
        if (step <= 4.0 * std::numeric_limits<double>::epsilon() * scale ||
            hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * scale) {
            break;
        }
    }
    // Polish over neighbouring doubles; Newton can stall a few ulps from the best one.
    double best = r;
    double best_err = std::abs(phi(r) - v);
    for (double dir : {-1.0, 1.0}) {
        double x = r;
        for (int k = 0; k < 16; ++k) {
            x = std::nextafter(x, dir * std::numeric_limits<double>::infinity());
            const double e = std::abs(phi(x) - v);
            if (e < best_err) {
                best = x;
                best_err = e;
            }
        }
    }
    if (best_err <= target_tol) {
        return best;
    }
    throw Error(ErrorCode::NoConvergence, "phi_inverse: tolerance not reached for v = " + std::to_string(v));
}

// ---------------------------------------------------------------------------
// Parabolic profiles

ParabolicProfile ParabolicProfile::case1(double a0, double a1, Interval s) {
    require_param(std::isfinite(a0) && std::isfinite(a1), "parabolic case 1: parameters must be finite");
    require_param(a0 != 0.0, "parabolic case 1 requires a0 != 0");
    require_param(s.lo < s.hi, "parabolic case 1: empty s-interval");
    require_param(s.lo >= 0.0 || s.hi <= 0.0, "parabolic case 1: s-interval must exclude s = 0");
    ParabolicProfile p;
    p.case_ = ProfileCase::ExplicitXOfS;
    p.a0_ = a0;
    p.a1_ = a1;
    p.s_ = s;
    p.branch_ = s.lo >= 0.0 ? ProfileBranch::Plus : ProfileBranch::Minus;
    return p;
}

Interval ParabolicProfile::admissible_interval(double b0, double b1, ProfileBranch branch) {
    require_param(std::isfinite(b0) && std::isfinite(b1), "parabolic case 2: parameters must be finite");
    require_param(b0 != 0.0, "parabolic case 2 requires b0 != 0");
    constexpr double inf = std::numeric_limits<double>::infinity();
    // Plus: b0 s + b1 in (-1/4, 0); Minus: b0 s + b1 in (-inf, -1/4).
    const double at_zero = -b1 / b0;
    const double at_quarter = (kPhiAtZero - b1) / b0;
    if (branch == ProfileBranch::Plus) {
        return b0 > 0.0 ? Interval{at_quarter, at_zero} : Interval{at_zero, at_quarter};
    }
    return b0 > 0.0 ? Interval{-inf, at_quarter} : Interval{at_quarter, inf};
}

ParabolicProfile ParabolicProfile::case2(double b0, double b1, ProfileBranch branch, std::optional<Interval> s) {
    const Interval maximal = admissible_interval(b0, b1, branch);
    ParabolicProfile p;
    p.case_ = ProfileCase::PhiInverseYOfS;
    p.b0_ = b0;
    p.b1_ = b1;
    p.branch_ = branch;
    if (s) {
        require_param(s->lo < s->hi, "parabolic case 2: empty s-interval");
        if (s->lo < maximal.lo || s->hi > maximal.hi) {
            throw Error(ErrorCode::OutOfDomain, "parabolic case 2: s-interval leaves the admissible interval");
        }
        p.s_ = *s;
    } else {
        p.s_ = maximal;
    }
    return p;
}

ProfileJet ParabolicProfile::jet(double s) const {
    if (!contains(s)) {
        throw Error(ErrorCode::OutOfDomain, "parabolic profile: s = " + std::to_string(s) +
                                                " outside the profile interval");
    }
    ProfileJet j;
    if (case_ == ProfileCase::ExplicitXOfS) {
        const double e = std::exp(-2.0 * s);
        j.x = a0_ * (2.0 * s * s + 2.0 * s + 1.0) * e + a1_;
        j.dx = -4.0 * a0_ * s * s * e;
        j.ddx = -8.0 * a0_ * s * (1.0 - s) * e;
        j.y = s;
        j.dy = 1.0;
        j.ddy = 0.0;
    } else {
        const double y = phi_inverse(b0_ * s + b1_);
        j.x = s;
        j.dx = 1.0;
        j.ddx = 0.0;
        j.y = y;
        j.dy = b0_ * std::exp(2.0 * y) / (y * y);
        j.ddy = 2.0 * j.dy * j.dy * (1.0 - 1.0 / y);
    }
    return j;
}

LorentzVector ParabolicProfile::curve(double s) const {
    const ProfileJet j = jet(s);
    return {j.x, j.y, 0.0};
}

int ParabolicProfile::eps() const noexcept {
    if (case_ == ProfileCase::ExplicitXOfS) {
        return a0_ > 0.0 ? -1 : 1;
    }
    return b0_ > 0.0 ? 1 : -1;
}

CausalCharacter ParabolicProfile::causal_character() const noexcept {
    return eps() < 0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
}

double ParabolicProfile::ode_residual(double s) const {
    const ProfileJet j = jet(s);
    return j.y * j.dx * j.ddy + 2.0 * j.dx * j.dy * j.dy - j.y * j.dy * j.ddx - 2.0 * j.y * j.dx * j.dy * j.dy;
}

LorentzVector sweep_point(const ParabolicProfile& profile, double s, double t) {
    const ProfileJet j = profile.jet(s);
    return {j.x + 0.5 * t * t * j.y, j.y, t * j.y};
}

SurfacePatch sweep_surface(const ParabolicProfile& profile) {
    auto position = [profile](Point2 at) { return sweep_point(profile, at.p, at.q); };
    auto jet = [profile](Point2 at) {
        const double t = at.q;
        const ProfileJet j = profile.jet(at.p);
        PatchJet out;
        out.position = {j.x + 0.5 * t * t * j.y, j.y, t * j.y};
        out.dp = {j.dx + 0.5 * t * t * j.dy, j.dy, t * j.dy};
        out.dq = {t * j.y, 0.0, j.y};
        out.dpp = {j.ddx + 0.5 * t * t * j.ddy, j.ddy, t * j.ddy};
        out.dpq = {t * j.dy, 0.0, j.dy};
        out.dqq = {j.y, 0.0, 0.0};
        return out;
    };
    return SurfacePatch::analytic(position, jet, DomainSpec::interval_product(profile.s_range(), Interval{}));
}

} // namespace lightlike
