#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "lightlike/minkowski.hpp"

namespace lightlike {

/// Parameter-plane point (p,q); (y,z) for graphs, (s,t) for parabolic sweeps.
struct Point2 {
    double p = 0.0;
    double q = 0.0;
};

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double v, double margin = 0.0) const { return v > lo + margin && v < hi - margin; }
    bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
};

enum class DomainKind { FullPlane, HorizontalStrip, HalfPlane, IntervalProduct };

class DomainSpec {
public:
    static DomainSpec full_plane();
    /// q_lo < q < q_hi.
    static DomainSpec horizontal_strip(double q_lo, double q_hi);
    /// q > q0 when upper, q < q0 otherwise.
    static DomainSpec half_plane(double q0, bool upper);
    static DomainSpec interval_product(Interval p, Interval q);

    DomainKind kind() const noexcept { return kind_; }
    const Interval& p_range() const noexcept { return p_; }
    const Interval& q_range() const noexcept { return q_; }
    /// q-values of boundary or singular lines.
    const std::vector<double>& excluded_lines() const noexcept { return excluded_; }

    /// Strict interior membership, keeping `margin` away from every finite bound and excluded line.
    bool contains(Point2 at, double margin = 0.0) const;

    /// Coordinate distance to the nearest finite bound or excluded line; +inf if there is none.
    double boundary_distance(Point2 at) const;

private:
    DomainKind kind_ = DomainKind::FullPlane;
    Interval p_{};
    Interval q_{};
    std::vector<double> excluded_{};
};

/// Position with first and second partials at one parameter point.
struct PatchJet {
    LorentzVector position;
    LorentzVector dp, dq;
    LorentzVector dpp, dpq, dqq;
};

enum class PartialsKind { Analytic, FiniteDifference };

/// Immutable immersion (p,q) -> L^3 with its domain. Safe to evaluate concurrently.
class SurfacePatch {
public:
    using PositionMap = std::function<LorentzVector(Point2)>;
    using JetMap = std::function<PatchJet(Point2)>;

    static SurfacePatch analytic(PositionMap position, JetMap jet, DomainSpec domain);
    /// Partials by central differences; `step` scales the default per-coordinate rule.
    static SurfacePatch finite_difference(PositionMap position, DomainSpec domain,
                                          std::optional<double> step = std::nullopt);

    /// Throws OUT_OF_DOMAIN outside the open domain, NON_FINITE on overflow.
    PatchJet jet(Point2 at) const;
    LorentzVector position(Point2 at) const;

    const DomainSpec& domain() const noexcept { return domain_; }
    PartialsKind partials_kind() const noexcept { return kind_; }

    /// Same patch moved by a constant ambient offset.
    SurfacePatch translated(const LorentzVector& offset) const;

private:
    SurfacePatch(PositionMap position, JetMap jet, DomainSpec domain, PartialsKind kind);

    PositionMap position_;
    JetMap jet_;
    DomainSpec domain_;
    PartialsKind kind_;
};

struct FirstForm {
    double E = 0.0, F = 0.0, G = 0.0;
    double disc = 0.0; // EG - F^2
};

struct SecondForm {
    double e = 0.0, f = 0.0, g = 0.0;
};

struct UnitNormal {
    LorentzVector N;
    double W = 0.0; // N = (1/W)(., 1, .); +inf when N has no y-component
    int eps = 0;    // <N,N>
};

struct Curvatures {
    double H = 0.0; // (Eg - 2Ff + Ge)/(EG - F^2), the un-halved trace
    double K = 0.0;
};

struct FundamentalForms {
    double E = 0.0, F = 0.0, G = 0.0;
    double e = 0.0, f = 0.0, g = 0.0;
    LorentzVector N;
    double W = 0.0;
    int eps = 0;
    double H = 0.0;
    double K = 0.0;
    double disc = 0.0;
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// |disc| below 1e-12 * max(1,|E|,|F|,|G|)^2 is degenerate.
bool is_degenerate(double E, double F, double G, double disc);

FirstForm first_form(const PatchJet& jet);
UnitNormal unit_normal(const PatchJet& jet);
SecondForm second_form(const PatchJet& jet);
Matrix2 shape_operator(const PatchJet& jet);
Curvatures curvatures(const PatchJet& jet);
FundamentalForms fundamental_forms(const PatchJet& jet);
/// H - <K,N>; zero iff the translating-soliton equation holds at the point.
double soliton_residual(const PatchJet& jet, const LorentzVector& direction = kLightlikeX);

FirstForm first_form(const SurfacePatch& patch, Point2 at);
UnitNormal unit_normal(const SurfacePatch& patch, Point2 at);
SecondForm second_form(const SurfacePatch& patch, Point2 at);
Matrix2 shape_operator(const SurfacePatch& patch, Point2 at);
Curvatures curvatures(const SurfacePatch& patch, Point2 at);
FundamentalForms fundamental_forms(const SurfacePatch& patch, Point2 at);
double soliton_residual(const SurfacePatch& patch, Point2 at,
                        const LorentzVector& direction = kLightlikeX);

/// Real eigenvalues of a shape operator in ascending order; nullopt if they are complex.
std::optional<std::array<double, 2>> principal_curvatures(const Matrix2& shape);

inline constexpr double kDefaultFdScale = 1e-4;

/// h = scale * max(1, |c|).
inline double default_fd_step(double coordinate, double scale = kDefaultFdScale) {
    return scale * std::max(1.0, std::abs(coordinate));
}

struct FirstPartials {
    LorentzVector dp, dq;
};

/// Central differences of an arbitrary vector map; throws STENCIL_OUT_OF_DOMAIN.
FirstPartials central_difference(const std::function<LorentzVector(Point2)>& map,
                                 const DomainSpec& domain, Point2 at, double hp, double hq);

/// Central-difference jet, O(h^2); `position` of the result is map(at).
PatchJet numeric_partials(const SurfacePatch::PositionMap& map, const DomainSpec& domain, Point2 at,
                          double h);
PatchJet numeric_partials(const SurfacePatch::PositionMap& map, const DomainSpec& domain, Point2 at,
                          double hp, double hq);

} // namespace lightlike
