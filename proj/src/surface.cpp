#include "lightlike/surface.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "lightlike/errors.hpp"

namespace lightlike {

// ---------------------------------------------------------------------------
// DomainSpec

DomainSpec DomainSpec::full_plane() { return DomainSpec{}; }

DomainSpec DomainSpec::horizontal_strip(double q_lo, double q_hi) {
    if (!(q_lo < q_hi)) {
        throw Error(ErrorCode::InvalidParam, "horizontal_strip: need q_lo < q_hi");
    }
    DomainSpec d;
    d.kind_ = DomainKind::HorizontalStrip;
    d.q_ = {q_lo, q_hi};
    d.excluded_ = {q_lo, q_hi};
    return d;
}

DomainSpec DomainSpec::half_plane(double q0, bool upper) {
    DomainSpec d;
    d.kind_ = DomainKind::HalfPlane;
    constexpr double inf = std::numeric_limits<double>::infinity();
    d.q_ = upper ? Interval{q0, inf} : Interval{-inf, q0};
    d.excluded_ = {q0};
    return d;
}

DomainSpec DomainSpec::interval_product(Interval p, Interval q) {
    if (!(p.lo < p.hi) || !(q.lo < q.hi)) {
        throw Error(ErrorCode::InvalidParam, "interval_product: empty interval");
    }
    DomainSpec d;
    d.kind_ = DomainKind::IntervalProduct;
    d.p_ = p;
    d.q_ = q;
    return d;
}

bool DomainSpec::contains(Point2 at, double margin) const {
    if (!std::isfinite(at.p) || !std::isfinite(at.q)) {
        return false;
    }
    if (!p_.contains(at.p, margin) || !q_.contains(at.q, margin)) {
        return false;
    }
    for (double line : excluded_) {
        if (std::abs(at.q - line) <= margin) {
            return false;
        }
    }
    return true;
}

double DomainSpec::boundary_distance(Point2 at) const {
    double d = std::numeric_limits<double>::infinity();
    auto consider = [&d](double bound, double v) {
        if (std::isfinite(bound)) {
            d = std::min(d, std::abs(v - bound));
        }
    };
    consider(p_.lo, at.p);
    consider(p_.hi, at.p);
    consider(q_.lo, at.q);
    consider(q_.hi, at.q);
    for (double line : excluded_) {
        consider(line, at.q);
    }
    return d;
}

// ---------------------------------------------------------------------------
// SurfacePatch

SurfacePatch::SurfacePatch(PositionMap position, JetMap jet, DomainSpec domain, PartialsKind kind)
    : position_(std::move(position)), jet_(std::move(jet)), domain_(std::move(domain)), kind_(kind) {}

SurfacePatch SurfacePatch::analytic(PositionMap position, JetMap jet, DomainSpec domain) {
    return SurfacePatch(std::move(position), std::move(jet), std::move(domain), PartialsKind::Analytic);
}

SurfacePatch SurfacePatch::finite_difference(PositionMap position, DomainSpec domain,
                                             std::optional<double> step) {
    const double scale = step.value_or(kDefaultFdScale);
    if (!(scale > 0.0)) {
        throw Error(ErrorCode::InvalidParam, "finite_difference: step must be > 0");
    }
    JetMap jet = [position, domain, scale](Point2 at) {
        return numeric_partials(position, domain, at, default_fd_step(at.p, scale),
                                default_fd_step(at.q, scale));
    };
    return SurfacePatch(std::move(position), std::move(jet), std::move(domain),
                        PartialsKind::FiniteDifference);
}

namespace {

void require_inside(const DomainSpec& domain, Point2 at) {
    if (!domain.contains(at)) {
        throw Error(ErrorCode::OutOfDomain, "point (" + std::to_string(at.p) + ", " +
                                                std::to_string(at.q) + ") outside patch domain");
    }
}

void require_finite_jet(const PatchJet& j) {
    if (!is_finite(j.position) || !is_finite(j.dp) || !is_finite(j.dq) || !is_finite(j.dpp) ||
        !is_finite(j.dpq) || !is_finite(j.dqq)) {
        throw Error(ErrorCode::NonFinite, "patch jet has non-finite entries");
    }
}

} // namespace

PatchJet SurfacePatch::jet(Point2 at) const {
    require_inside(domain_, at);
    PatchJet j = jet_(at);
    require_finite_jet(j);
    return j;
}

LorentzVector SurfacePatch::position(Point2 at) const {
    require_inside(domain_, at);
    return position_(at);
}

SurfacePatch SurfacePatch::translated(const LorentzVector& offset) const {
    PositionMap pos = [inner_pos = position_, offset](Point2 at) { return inner_pos(at) + offset; };
    JetMap jet = [inner_jet = jet_, offset](Point2 at) {
        PatchJet j = inner_jet(at);
        j.position += offset;
        return j;
    };
    return SurfacePatch(std::move(pos), std::move(jet), domain_, kind_);
}

// ---------------------------------------------------------------------------
// Fundamental forms

bool is_degenerate(double E, double F, double G, double disc) {
    const double scale = std::max({1.0, std::abs(E), std::abs(F), std::abs(G)});
    return !(std::abs(disc) >= 1e-12 * scale * scale);
}

FirstForm first_form(const PatchJet& jet) {
    FirstForm I;
    I.E = inner(jet.dp, jet.dp);
    I.F = inner(jet.dp, jet.dq);
    I.G = inner(jet.dq, jet.dq);
    I.disc = I.E * I.G - I.F * I.F;
    if (is_degenerate(I.E, I.F, I.G, I.disc)) {
        throw Error(ErrorCode::DegenerateMetric,
                    "induced metric degenerate (EG - F^2 = " + std::to_string(I.disc) + ")");
    }
    return I;
}

UnitNormal unit_normal(const PatchJet& jet) {
    (void)first_form(jet);
    LorentzVector w = minkowski_cross(jet.dp, jet.dq);
    const double q = inner(w, w);
    UnitNormal n;
    n.eps = q > 0.0 ? 1 : -1;
    w *= 1.0 / std::sqrt(std::abs(q));
    if (w.y < 0.0) {
        w = -w;
    }
    n.N = w;
    n.W = w.y > 0.0 ? 1.0 / w.y : std::numeric_limits<double>::infinity();
    return n;
}

namespace {

SecondForm second_form_with(const PatchJet& jet, const LorentzVector& N) {
    return {inner(N, jet.dpp), inner(N, jet.dpq), inner(N, jet.dqq)};
}

} // namespace

SecondForm second_form(const PatchJet& jet) { return second_form_with(jet, unit_normal(jet).N); }

Matrix2 shape_operator(const PatchJet& jet) {
    const FirstForm I = first_form(jet);
    const SecondForm II = second_form(jet);
    const double inv = 1.0 / I.disc;
    return {{{inv * (I.G * II.e - I.F * II.f), inv * (I.G * II.f - I.F * II.g)},
             {inv * (I.E * II.f - I.F * II.e), inv * (I.E * II.g - I.F * II.f)}}};
}

FundamentalForms fundamental_forms(const PatchJet& jet) {
    const FirstForm I = first_form(jet);
    const UnitNormal n = unit_normal(jet);
    const SecondForm II = second_form_with(jet, n.N);
    FundamentalForms out;
    out.E = I.E;
    out.F = I.F;
    out.G = I.G;
    out.disc = I.disc;
    out.e = II.e;
    out.f = II.f;
    out.g = II.g;
    out.N = n.N;
    out.W = n.W;
    out.eps = n.eps;
    out.H = (I.E * II.g - 2.0 * I.F * II.f + I.G * II.e) / I.disc;
    out.K = (II.e * II.g - II.f * II.f) / I.disc;
    return out;
}

Curvatures curvatures(const PatchJet& jet) {
    const FundamentalForms ff = fundamental_forms(jet);
    return {ff.H, ff.K};
}

double soliton_residual(const PatchJet& jet, const LorentzVector& direction) {
    const FundamentalForms ff = fundamental_forms(jet);
    return ff.H - inner(direction, ff.N);
}

FirstForm first_form(const SurfacePatch& patch, Point2 at) { return first_form(patch.jet(at)); }
UnitNormal unit_normal(const SurfacePatch& patch, Point2 at) { return unit_normal(patch.jet(at)); }
SecondForm second_form(const SurfacePatch& patch, Point2 at) { return second_form(patch.jet(at)); }
Matrix2 shape_operator(const SurfacePatch& patch, Point2 at) { return shape_operator(patch.jet(at)); }
Curvatures curvatures(const SurfacePatch& patch, Point2 at) { return curvatures(patch.jet(at)); }
FundamentalForms fundamental_forms(const SurfacePatch& patch, Point2 at) {
    return fundamental_forms(patch.jet(at));
}
double soliton_residual(const SurfacePatch& patch, Point2 at, const LorentzVector& direction) {
    return soliton_residual(patch.jet(at), direction);
}

std::optional<std::array<double, 2>> principal_curvatures(const Matrix2& A) {
    const double tr = A[0][0] + A[1][1];
    const double half = 0.5 * (A[0][0] - A[1][1]);
    const double d = half * half + A[0][1] * A[1][0]; // (tr/2)^2 - det, without the cancellation
    if (d < 0.0) {
        return std::nullopt;
    }
    const double r = std::sqrt(d);
    return std::array<double, 2>{0.5 * tr - r, 0.5 * tr + r};
}

// ---------------------------------------------------------------------------
// Finite differences

namespace {

void require_stencil(const DomainSpec& domain, Point2 at) {
    if (!domain.contains(at)) {
        throw Error(ErrorCode::StencilOutOfDomain, "finite-difference stencil leaves the domain at (" +
                                                       std::to_string(at.p) + ", " +
                                                       std::to_string(at.q) + ")");
    }
}

void require_steps(double hp, double hq) {
    if (!(hp > 0.0) || !(hq > 0.0)) {
        throw Error(ErrorCode::InvalidParam, "finite-difference step must be > 0");
    }
}

} // namespace

FirstPartials central_difference(const std::function<LorentzVector(Point2)>& map,
                                 const DomainSpec& domain, Point2 at, double hp, double hq) {
    require_steps(hp, hq);
    const Point2 pts[4] = {{at.p + hp, at.q}, {at.p - hp, at.q}, {at.p, at.q + hq}, {at.p, at.q - hq}};
    for (const Point2& s : pts) {
        require_stencil(domain, s);
    }
    return {(map(pts[0]) - map(pts[1])) * (0.5 / hp), (map(pts[2]) - map(pts[3])) * (0.5 / hq)};
}

PatchJet numeric_partials(const SurfacePatch::PositionMap& map, const DomainSpec& domain, Point2 at,
                          double h) {
    return numeric_partials(map, domain, at, h, h);
}

PatchJet numeric_partials(const SurfacePatch::PositionMap& map, const DomainSpec& domain, Point2 at,
                          double hp, double hq) {
    require_steps(hp, hq);
    const Point2 pts[8] = {{at.p + hp, at.q},      {at.p - hp, at.q},      {at.p, at.q + hq},
                           {at.p, at.q - hq},      {at.p + hp, at.q + hq}, {at.p + hp, at.q - hq},
                           {at.p - hp, at.q + hq}, {at.p - hp, at.q - hq}};
    for (const Point2& s : pts) {
        require_stencil(domain, s);
    }
    LorentzVector v[8];
    for (int i = 0; i < 8; ++i) {
        v[i] = map(pts[i]);
    }
    const LorentzVector c = map(at);
    PatchJet j;
    j.position = c;
    j.dp = (v[0] - v[1]) * (0.5 / hp);
    j.dq = (v[2] - v[3]) * (0.5 / hq);
    j.dpp = (v[0] - 2.0 * c + v[1]) * (1.0 / (hp * hp));
    j.dqq = (v[2] - 2.0 * c + v[3]) * (1.0 / (hq * hq));
    j.dpq = (v[4] - v[5] - v[6] + v[7]) * (0.25 / (hp * hq));
    return j;
}

} // namespace lightlike
