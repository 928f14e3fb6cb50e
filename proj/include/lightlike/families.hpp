#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>

#include "lightlike/minkowski.hpp"
#include "lightlike/surface.hpp"

namespace lightlike {

enum class GraphType { I, II, III, IV };

/// "type_i" ... "type_iv".
const char* to_string(GraphType type);
/// "I" ... "IV".
const char* roman(GraphType type);

enum class HalfPlaneSide { Plus, Minus };

/// Parameters of u(y,z); each type reads only its own subset.
struct GraphParams {
    double lambda = 1.0;
    double z0 = 0.0;
    double a0 = 0.0;
    double a1 = 1.0;
    double b0 = 0.0;
    double b1 = 1.0;
    int k = 0;
    HalfPlaneSide half = HalfPlaneSide::Plus;
};

template <class Real>
struct GraphPartialsT {
    Real u_y{}, u_z{}, u_yy{}, u_yz{}, u_zz{};
};
using GraphPartials = GraphPartialsT<double>;

/// u_yy + 2 u_z u_yz - 2 u_y u_zz + 2 u_y + u_z^2.
template <class Real>
Real pde_residual(const GraphPartialsT<Real>& d) {
    return d.u_yy + Real(2) * d.u_z * d.u_yz - Real(2) * d.u_y * d.u_zz + Real(2) * d.u_y + d.u_z * d.u_z;
}

/// Points closer than this to an excluded line are rejected by the family evaluators.
inline constexpr double kFamilyBoundaryMargin = 1e-8;

namespace detail {

template <class Real>
Real log_cosh(Real w) {
    const Real a = std::abs(w);
    return a + std::log1p(std::exp(Real(-2) * a)) - std::log(Real(2));
}

template <class Real>
Real log_abs_sinh(Real w) {
    const Real a = std::abs(w);
    return a + std::log1p(-std::exp(Real(-2) * a)) - std::log(Real(2));
}

/// Closed-form u for a validated parameter set at an interior point.
template <class Real>
Real graph_u(GraphType type, const GraphParams& p, Real y, Real z) {
    const Real lam = p.lambda;
    const Real w = (z - Real(p.z0)) / (Real(2) * lam);
    switch (type) {
    case GraphType::I:
        return Real(-2) * lam * lam * y + Real(4) * lam * lam * log_cosh(w) + Real(p.a0);
    case GraphType::II: {
        const Real b1 = p.b1;
        return Real(p.a1) * std::exp(Real(-2) * y) - b1 * b1 / Real(2) * y + b1 * z + Real(p.b0);
    }
    case GraphType::III:
        return Real(2) * lam * lam * y - Real(4) * lam * lam * std::log(std::abs(std::cos(w))) + Real(p.b0);
    case GraphType::IV:
        return Real(-2) * lam * lam * y + Real(4) * lam * lam * log_abs_sinh(w) + Real(p.a0);
    }
    return Real(0);
}

template <class Real>
GraphPartialsT<Real> graph_partials(GraphType type, const GraphParams& p, Real y, Real z) {
    const Real lam = p.lambda;
    const Real w = (z - Real(p.z0)) / (Real(2) * lam);
    GraphPartialsT<Real> d;
    switch (type) {
    case GraphType::I: {
        const Real c = std::cosh(w);
        d.u_y = Real(-2) * lam * lam;
        d.u_z = Real(2) * lam * std::tanh(w);
        d.u_zz = Real(1) / (c * c);
        break;
    }
    case GraphType::II: {
        const Real e = std::exp(Real(-2) * y);
        const Real b1 = p.b1;
        d.u_y = Real(-2) * Real(p.a1) * e - b1 * b1 / Real(2);
        d.u_yy = Real(4) * Real(p.a1) * e;
        d.u_z = b1;
        break;
    }
    case GraphType::III: {
        const Real c = std::cos(w);
        d.u_y = Real(2) * lam * lam;
        d.u_z = Real(2) * lam * std::tan(w);
        d.u_zz = Real(1) / (c * c);
        break;
    }
    case GraphType::IV: {
        const Real s = std::sinh(w);
        d.u_y = Real(-2) * lam * lam;
        d.u_z = Real(2) * lam / std::tanh(w);
        d.u_zz = Real(-1) / (s * s);
        break;
    }
    }
    return d;
}

} // namespace detail

/// A graph psi(y,z) = (u(y,z), y, z) given by u and its analytic partials.
struct GraphDefinition {
    std::function<double(double, double)> u;
    std::function<GraphPartials(double, double)> partials;
    DomainSpec domain;
};

SurfacePatch graph_patch(const GraphDefinition& graph);

/// One of the four translation-surface solitons; parameters are validated at construction.
class GraphSolitonFamily {
public:
    static GraphSolitonFamily type_i(double lambda, double z0 = 0.0, double a0 = 0.0);
    static GraphSolitonFamily type_ii(double a1, double b1 = 0.0, double b0 = 0.0);
    static GraphSolitonFamily type_iii(double lambda, double z0 = 0.0, double b0 = 0.0, int k = 0);
    static GraphSolitonFamily type_iv(double lambda, double z0 = 0.0, double a0 = 0.0,
                                      HalfPlaneSide half = HalfPlaneSide::Plus);
    static GraphSolitonFamily make(GraphType type, const GraphParams& params);

    GraphType type() const noexcept { return type_; }
    const GraphParams& params() const noexcept { return params_; }

    /// Natural domain: the plane (I, II), the strip S(z0, lambda, k) (III), or S^+/S^- (IV).
    DomainSpec domain() const;
    bool entire() const noexcept { return type_ == GraphType::I || type_ == GraphType::II; }
    bool contains(double y, double z, double margin = kFamilyBoundaryMargin) const;

    double eval_u(double y, double z) const;
    GraphPartials partials_u(double y, double z) const;
    /// PDE left-hand side, evaluated in extended precision.
    double pde_residual(double y, double z) const;

    CausalCharacter causal_character() const noexcept;

    GraphDefinition definition() const;
    SurfacePatch patch() const;

private:
    GraphSolitonFamily(GraphType type, const GraphParams& params);
    void require_inside(double y, double z) const;

    GraphType type_;
    GraphParams params_;
};

enum class GrimReaperForm {
    Surface, // a1 = 2, b1 = 0
    Curve,   // x = e^{-2y}/2, i.e. a1 = 1/2
};

GraphSolitonFamily grim_reaper(GrimReaperForm form = GrimReaperForm::Surface);

// ---------------------------------------------------------------------------
// Parabolic (A_3-invariant) solitons

inline constexpr double kPhiAtZero = -0.25;

/// -(1/4)(2r^2 + 2r + 1) e^{-2r}; strictly increasing onto (-inf, 0).
double phi(double r);
/// r^2 e^{-2r}.
double phi_derivative(double r);

/// r with |phi(r) - v| <= tol * max(1,|v|). OUT_OF_RANGE unless v < 0.
double phi_inverse(double v, double tol = 1e-14);

enum class ProfileCase {
    ExplicitXOfS,    // y = s,  x = a0(2s^2+2s+1)e^{-2s} + a1
    PhiInverseYOfS,  // x = s,  y = phi^{-1}(b0 s + b1)
};

/// Sign of y along the profile: the curve stays in {y > 0} or {y < 0}.
enum class ProfileBranch { Plus, Minus };

struct ProfileJet {
    double x = 0.0, dx = 0.0, ddx = 0.0;
    double y = 0.0, dy = 0.0, ddy = 0.0;
};

class ParabolicProfile {
public:
    /// s-interval must not contain 0.
    static ParabolicProfile case1(double a0, double a1,
                                  Interval s = {0.0, std::numeric_limits<double>::infinity()});
    /// Without `s` the maximal admissible interval of the branch is used.
    static ParabolicProfile case2(double b0, double b1, ProfileBranch branch,
                                  std::optional<Interval> s = std::nullopt);

    /// Largest s-interval on which b0 s + b1 stays in the branch's part of (-inf,0) minus {-1/4}.
    static Interval admissible_interval(double b0, double b1, ProfileBranch branch);

    ProfileCase profile_case() const noexcept { return case_; }
    double a0() const noexcept { return a0_; }
    double a1() const noexcept { return a1_; }
    double b0() const noexcept { return b0_; }
    double b1() const noexcept { return b1_; }
    ProfileBranch branch() const noexcept { return branch_; }
    const Interval& s_range() const noexcept { return s_; }

    bool contains(double s, double margin = kFamilyBoundaryMargin) const { return s_.contains(s, margin); }

    ProfileJet jet(double s) const;
    /// alpha(s) = (x(s), y(s), 0).
    LorentzVector curve(double s) const;

    /// sign(x' y'); space-like sweep iff eps = -1.
    int eps() const noexcept;
    CausalCharacter causal_character() const noexcept;

    /// y x' y'' + 2 x' y'^2 - y y' x'' - 2 y x' y'^2.
    double ode_residual(double s) const;

private:
    ParabolicProfile() = default;

    ProfileCase case_ = ProfileCase::ExplicitXOfS;
    double a0_ = 0.0, a1_ = 0.0, b0_ = 0.0, b1_ = 0.0;
    ProfileBranch branch_ = ProfileBranch::Plus;
    Interval s_{};
};

/// psi(s,t) = (x + t^2 y/2, y, t y).
LorentzVector sweep_point(const ParabolicProfile& profile, double s, double t);
SurfacePatch sweep_surface(const ParabolicProfile& profile);

} // namespace lightlike
