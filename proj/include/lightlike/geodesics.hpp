#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lightlike/surface.hpp"

namespace lightlike {

/// First fundamental form coefficients and their first partials at a point.
struct MetricJet {
    double E = 0.0, F = 0.0, G = 0.0;
    double E_p = 0.0, E_q = 0.0;
    double F_p = 0.0, F_q = 0.0;
    double G_p = 0.0, G_q = 0.0;

    double disc() const { return E * G - F * F; }
};

/// The pulled-back metric I = psi^* <,> on a parameter domain.
class InducedMetric {
public:
    using Map = std::function<MetricJet(Point2)>;

    InducedMetric(Map map, DomainSpec domain);

    /// E_p = 2<psi_pp, psi_p>, F_p = <psi_pp, psi_q> + <psi_p, psi_pq>, and so on.
    static InducedMetric from_patch(const SurfacePatch& patch);
    static InducedMetric constant(double E, double F, double G);

    /// OUT_OF_DOMAIN outside the domain, DEGENERATE_METRIC where |EG - F^2| is below tolerance.
    MetricJet at(Point2 at) const;
    const DomainSpec& domain() const noexcept { return domain_; }

    /// I(v, v).
    double norm_sq(Point2 at, double vp, double vq) const;

private:
    Map map_;
    DomainSpec domain_;
};

/// Gamma^k_ij with index 1 = p, 2 = q; symmetric in the lower pair.
struct ChristoffelSymbols {
    double g1_11 = 0.0, g2_11 = 0.0;
    double g1_12 = 0.0, g2_12 = 0.0;
    double g1_22 = 0.0, g2_22 = 0.0;
};

/// Two 2x2 solves per lower-index pair against the metric matrix.
ChristoffelSymbols christoffel(const MetricJet& m);
ChristoffelSymbols christoffel(const InducedMetric& metric, Point2 at);

struct GeodesicState {
    double p = 0.0, q = 0.0;
    double dp = 0.0, dq = 0.0;
};

/// (p', q', -Gamma^1_ij v^i v^j, -Gamma^2_ij v^i v^j).
GeodesicState geodesic_rhs(const InducedMetric& metric, const GeodesicState& state);

enum class Verdict { CompletedHorizon, LeftDomainFiniteLength, Blowup, StepUnderflow };
const char* to_string(Verdict v);

enum class ExitReason { None, DomainBoundary, DegenerateMetric };
const char* to_string(ExitReason r);

struct IntegratorOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::size_t max_steps = 10'000'000;
    double boundary_margin = 1e-8;
    double initial_step = 1e-3;
    double min_step = 1e-14;
    /// Euclidean parameter speed above which the trajectory is declared a blowup.
    double blowup_speed = 1e12;
};

struct TrajectorySample {
    double t = 0.0;
    double p = 0.0, q = 0.0;
    double dp = 0.0, dq = 0.0;
    double length = 0.0; // cumulative integral of sqrt|I(v,v)|
};

struct GeodesicTrajectory {
    std::vector<TrajectorySample> samples;
    double length = 0.0;
    Verdict verdict = Verdict::StepUnderflow;
    ExitReason exit_reason = ExitReason::None;
    double initial_norm_sq = 0.0;
    /// max |I(v,v) - I_0| / max(|I_0|, 1e-300) over the samples.
    double max_relative_drift = 0.0;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;

    double final_time() const { return samples.empty() ? 0.0 : samples.back().t; }
};

/// Dormand-Prince 5(4) with adaptive steps; the arc length is integrated as a fifth component.
GeodesicTrajectory integrate_geodesic(const InducedMetric& metric, const GeodesicState& initial,
                                      double horizon, const IntegratorOptions& options = {});

/// Position and velocity of a parametrized curve in the parameter plane.
struct CurvePoint {
    double p = 0.0, q = 0.0;
    double dp = 0.0, dq = 0.0;
};
using Curve = std::function<CurvePoint(double)>;

/// Composite Simpson on the (possibly non-uniform) sample grid, quadratic per interval pair.
double curve_length(const InducedMetric& metric, std::span<const TrajectorySample> samples);

/// Adaptive Simpson with Richardson correction on [a, b]; refinement concentrates where needed.
double curve_length(const InducedMetric& metric, const Curve& curve, double a, double b,
                    double tol = 1e-13);

} // namespace lightlike
