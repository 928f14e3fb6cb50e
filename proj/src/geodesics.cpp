#include "lightlike/geodesics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "lightlike/errors.hpp"

namespace lightlike {

InducedMetric::InducedMetric(Map map, DomainSpec domain) : map_(std::move(map)), domain_(std::move(domain)) {}

InducedMetric InducedMetric::from_patch(const SurfacePatch& patch) {
    Map map = [patch](Point2 at) {
        const PatchJet j = patch.jet(at);
        MetricJet m;
        m.E = inner(j.dp, j.dp);
        m.F = inner(j.dp, j.dq);
        m.G = inner(j.dq, j.dq);
        m.E_p = 2.0 * inner(j.dpp, j.dp);
        m.E_q = 2.0 * inner(j.dpq, j.dp);
        m.F_p = inner(j.dpp, j.dq) + inner(j.dp, j.dpq);
        m.F_q = inner(j.dpq, j.dq) + inner(j.dp, j.dqq);
        m.G_p = 2.0 * inner(j.dpq, j.dq);
        m.G_q = 2.0 * inner(j.dqq, j.dq);
        return m;
    };
    return InducedMetric(std::move(map), patch.domain());
}

InducedMetric InducedMetric::constant(double E, double F, double G) {
    Map map = [E, F, G](Point2) {
        MetricJet m;
        m.E = E;
        m.F = F;
        m.G = G;
        return m;
    };
    return InducedMetric(std::move(map), DomainSpec::full_plane());
}

MetricJet InducedMetric::at(Point2 at) const {
    if (!domain_.contains(at)) {
        throw Error(ErrorCode::OutOfDomain, "metric evaluated outside its domain");
    }
    const MetricJet m = map_(at);
    if (is_degenerate(m.E, m.F, m.G, m.disc())) {
        throw Error(ErrorCode::DegenerateMetric, "induced metric degenerate (EG - F^2 = " +
                                                     std::to_string(m.disc()) + ")");
    }
    return m;
}

double InducedMetric::norm_sq(Point2 point, double vp, double vq) const {
    const MetricJet m = at(point);
    return m.E * vp * vp + 2.0 * m.F * vp * vq + m.G * vq * vq;
}

ChristoffelSymbols christoffel(const MetricJet& m) {
    const double disc = m.disc();
    if (is_degenerate(m.E, m.F, m.G, disc)) {
        throw Error(ErrorCode::DegenerateMetric, "christoffel: degenerate metric");
    }
    // [E F; F G] (G^1_ij, G^2_ij)^T = (I(nabla_i d_j, d_p), I(nabla_i d_j, d_q))^T
    auto solve = [&](double r1, double r2) {
        return std::pair{(m.G * r1 - m.F * r2) / disc, (m.E * r2 - m.F * r1) / disc};
    };
    ChristoffelSymbols c;
    std::tie(c.g1_11, c.g2_11) = solve(0.5 * m.E_p, m.F_p - 0.5 * m.E_q);
    std::tie(c.g1_12, c.g2_12) = solve(0.5 * m.E_q, 0.5 * m.G_p);
    std::tie(c.g1_22, c.g2_22) = solve(m.F_q - 0.5 * m.G_p, 0.5 * m.G_q);
    return c;
}

ChristoffelSymbols christoffel(const InducedMetric& metric, Point2 at) { return christoffel(metric.at(at)); }

namespace {

std::pair<double, double> acceleration(const ChristoffelSymbols& c, double vp, double vq) {
    return {-(c.g1_11 * vp * vp + 2.0 * c.g1_12 * vp * vq + c.g1_22 * vq * vq),
            -(c.g2_11 * vp * vp + 2.0 * c.g2_12 * vp * vq + c.g2_22 * vq * vq)};
}

} // namespace

GeodesicState geodesic_rhs(const InducedMetric& metric, const GeodesicState& s) {
    const auto [ap, aq] = acceleration(christoffel(metric, {s.p, s.q}), s.dp, s.dq);
    return {s.dp, s.dq, ap, aq};
}

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::CompletedHorizon: return "COMPLETED_HORIZON";
    case Verdict::LeftDomainFiniteLength: return "LEFT_DOMAIN_FINITE_LENGTH";
    case Verdict::Blowup: return "BLOWUP";
    case Verdict::StepUnderflow: return "STEP_UNDERFLOW";
    }
    return "UNKNOWN";
}

const char* to_string(ExitReason r) {
    switch (r) {
    case ExitReason::None: return "none";
    case ExitReason::DomainBoundary: return "domain_boundary";
    case ExitReason::DegenerateMetric: return "degenerate_metric";
    }
    return "unknown";
}

namespace {

using State = std::array<double, 5>; // p, q, dp, dq, length

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct StageFailure {
    ExitReason reason;
};

class GeodesicSystem {
public:
    GeodesicSystem(const InducedMetric& metric, double margin) : metric_(metric), margin_(margin) {}

    /// nullopt signals that the stage left the usable domain; `failure` says why.
    std::optional<State> rhs(const State& y, ExitReason& failure) const {
        for (double v : y) {
            if (!std::isfinite(v)) {
                failure = ExitReason::None;
                return std::nullopt;
            }
        }
        const Point2 at{y[0], y[1]};
        if (!metric_.domain().contains(at, margin_)) {
            failure = ExitReason::DomainBoundary;
            return std::nullopt;
        }
        MetricJet m;
        try {
            m = metric_.at(at);
        } catch (const Error& e) {
            failure = e.code() == ErrorCode::DegenerateMetric ? ExitReason::DegenerateMetric
                                                              : ExitReason::DomainBoundary;
            return std::nullopt;
        }
        const ChristoffelSymbols c = christoffel(m);
        const auto [ap, aq] = acceleration(c, y[2], y[3]);
        const double I = m.E * y[2] * y[2] + 2.0 * m.F * y[2] * y[3] + m.G * y[3] * y[3];
        State d{y[2], y[3], ap, aq, std::sqrt(std::abs(I))};
        for (double v : d) {
            if (!std::isfinite(v)) {
                failure = ExitReason::None;
                return std::nullopt;
            }
        }
        return d;
    }

private:
    const InducedMetric& metric_;
    double margin_;
};

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = y;
    for (const auto& [coef, k] : terms) {
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += h * coef * (*k)[i];
        }
    }
    return out;
}

} // namespace

namespace {

/// Inside the boundary band, a trajectory still this far (in parameter time) from the boundary
/// is hugging it rather than crossing it.
constexpr double kExitTimeScale = 1e-4;

/// Distance to the boundary over its current rate of decrease; +inf when not approaching.
template <class S>
double approach_time(const DomainSpec& domain, const S& y) {
    const double d0 = domain.boundary_distance({y[0], y[1]});
    const double v = std::hypot(y[2], y[3]);
    if (!(v > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    const double s = 0.25 * d0 / v;
    const double rate = (d0 - domain.boundary_distance({y[0] + s * y[2], y[1] + s * y[3]})) / s;
    return rate > 0.0 ? d0 / rate : std::numeric_limits<double>::infinity();
}

} // namespace

GeodesicTrajectory integrate_geodesic(const InducedMetric& metric, const GeodesicState& initial,
                                      double horizon, const IntegratorOptions& options) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw Error(ErrorCode::InvalidParam, "integrate_geodesic: horizon must be finite and > 0");
    }
    if (!metric.domain().contains({initial.p, initial.q}, options.boundary_margin)) {
        throw Error(ErrorCode::OutOfDomain, "integrate_geodesic: initial point not in the domain interior");
    }
    const GeodesicSystem system(metric, options.boundary_margin);

    GeodesicTrajectory traj;
    State y{initial.p, initial.q, initial.dp, initial.dq, 0.0};
    ExitReason failure = ExitReason::None;
    auto k1_opt = system.rhs(y, failure);
    if (!k1_opt) {
        throw Error(ErrorCode::DegenerateMetric, "integrate_geodesic: metric unusable at the initial point");
    }
    State k1 = *k1_opt;

    traj.initial_norm_sq = metric.norm_sq({y[0], y[1]}, y[2], y[3]);
    const double drift_scale = std::max(std::abs(traj.initial_norm_sq), 1e-300);
    auto record = [&](double t, const State& s) {
        traj.samples.push_back({t, s[0], s[1], s[2], s[3], s[4]});
        const double I = metric.norm_sq({s[0], s[1]}, s[2], s[3]);
        traj.max_relative_drift = std::max(traj.max_relative_drift, std::abs(I - traj.initial_norm_sq) / drift_scale);
    };

    double t = 0.0;
    record(t, y);
    double h = std::min(options.initial_step, horizon);
    constexpr double eps = std::numeric_limits<double>::epsilon();

    auto finish = [&](Verdict v, ExitReason r) {
        traj.verdict = v;
        traj.exit_reason = r;
        traj.length = y[4];
        return traj;
    };

    while (true) {
        if (t >= horizon * (1.0 - 4.0 * eps)) {
            return finish(Verdict::CompletedHorizon, ExitReason::None);
        }
        if (traj.accepted_steps + traj.rejected_steps >= options.max_steps) {
            return finish(Verdict::StepUnderflow, ExitReason::None);
        }
        const double h_min = std::max(options.min_step, 8.0 * eps * std::abs(t));
        h = std::min(h, horizon - t);

        // Stages; a failed stage shrinks the step.
        std::optional<State> k2, k3, k4, k5, k6, k7;
        State y5;
        bool ok = (k2 = system.rhs(axpy(y, h, {{a21, &k1}}), failure)).has_value() &&
                  (k3 = system.rhs(axpy(y, h, {{a31, &k1}, {a32, &*k2}}), failure)).has_value() &&
                  (k4 = system.rhs(axpy(y, h, {{a41, &k1}, {a42, &*k2}, {a43, &*k3}}), failure)).has_value() &&
                  (k5 = system.rhs(axpy(y, h, {{a51, &k1}, {a52, &*k2}, {a53, &*k3}, {a54, &*k4}}), failure))
                      .has_value() &&
                  (k6 = system.rhs(axpy(y, h, {{a61, &k1}, {a62, &*k2}, {a63, &*k3}, {a64, &*k4}, {a65, &*k5}}),
                                   failure))
                      .has_value();
        if (ok) {
            y5 = axpy(y, h, {{b1, &k1}, {b3, &*k3}, {b4, &*k4}, {b5, &*k5}, {b6, &*k6}});
            ok = (k7 = system.rhs(y5, failure)).has_value();
        }
        if (!ok) {
            ++traj.rejected_steps;
            if (failure == ExitReason::DomainBoundary) {
                const double dist = metric.domain().boundary_distance({y[0], y[1]});
                if (dist <= 2.0 * options.boundary_margin) {
                    const bool exits = approach_time(metric.domain(), y) <= kExitTimeScale;
                    return finish(exits ? Verdict::LeftDomainFiniteLength : Verdict::StepUnderflow, failure);
                }
            }
            h *= 0.25;
            if (h < h_min) {
                if (failure == ExitReason::DegenerateMetric) {
                    return finish(Verdict::LeftDomainFiniteLength, failure);
                }
                if (failure == ExitReason::DomainBoundary) {
                    const double speed = std::hypot(y[2], y[3]);
                    const double dist = metric.domain().boundary_distance({y[0], y[1]});
                    if (dist <= 2.0 * options.boundary_margin + 16.0 * speed * h_min) {
                        return finish(Verdict::LeftDomainFiniteLength, failure);
                    }
                }
                return finish(failure == ExitReason::None ? Verdict::Blowup : Verdict::StepUnderflow, failure);
            }
            continue;
        }

        double err = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double est = h * (e1 * k1[i] + e3 * (*k3)[i] + e4 * (*k4)[i] + e5 * (*k5)[i] + e6 * (*k6)[i] +
                                    e7 * (*k7)[i]);
            const double sc = options.abs_tol + options.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err = std::max(err, std::abs(est) / sc);
        }

        if (err <= 1.0) {
            t += h;
            y = y5;
            k1 = *k7;
            ++traj.accepted_steps;
            record(t, y);
            const double speed = std::hypot(y[2], y[3]);
            if (!std::isfinite(speed) || speed > options.blowup_speed) {
                return finish(Verdict::Blowup, ExitReason::None);
            }
            const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h *= factor;
        } else {
            ++traj.rejected_steps;
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
            if (h < h_min) {
                return finish(Verdict::StepUnderflow, ExitReason::None);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Arc length

namespace {

double speed(const InducedMetric& metric, double p, double q, double dp, double dq) {
    return std::sqrt(std::abs(metric.norm_sq({p, q}, dp, dq)));
}

} // namespace

double curve_length(const InducedMetric& metric, std::span<const TrajectorySample> samples) {
    const std::size_t n = samples.size();
    if (n < 2) {
        return 0.0;
    }
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = samples[i];
        f[i] = speed(metric, s.p, s.q, s.dp, s.dq);
    }
    double total = 0.0;
    std::size_t i = 0;
    for (; i + 2 < n; i += 2) {
        const double h1 = samples[i + 1].t - samples[i].t;
        const double h2 = samples[i + 2].t - samples[i + 1].t;
        if (h1 <= 0.0 || h2 <= 0.0) {
            throw Error(ErrorCode::InvalidParam, "curve_length: sample times must increase");
        }
        const double H = h1 + h2;
        total += H / 6.0 * ((2.0 - h2 / h1) * f[i] + H * H / (h1 * h2) * f[i + 1] + (2.0 - h1 / h2) * f[i + 2]);
    }
    if (i + 1 < n) {
        total += 0.5 * (samples[i + 1].t - samples[i].t) * (f[i] + f[i + 1]);
    }
    return total;
}

namespace {

struct SimpsonPanel {
    double a, m, b, fa, fm, fb, whole;
};

double adaptive_simpson(const std::function<double(double)>& f, const SimpsonPanel& s, double tol, int depth,
                        long& budget) {
    const double lm = 0.5 * (s.a + s.m);
    const double rm = 0.5 * (s.m + s.b);
    const double flm = f(lm);
    const double frm = f(rm);
    budget -= 2;
    const double left = (s.m - s.a) / 6.0 * (s.fa + 4.0 * flm + s.fm);
    const double right = (s.b - s.m) / 6.0 * (s.fm + 4.0 * frm + s.fb);
    const double delta = left + right - s.whole;
    if (depth <= 0 || budget <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, {s.a, lm, s.m, s.fa, flm, s.fm, left}, 0.5 * tol, depth - 1, budget) +
           adaptive_simpson(f, {s.m, rm, s.b, s.fm, frm, s.fb, right}, 0.5 * tol, depth - 1, budget);
}

} // namespace

double curve_length(const InducedMetric& metric, const Curve& curve, double a, double b, double tol) {
    if (!(a <= b)) {
        throw Error(ErrorCode::InvalidParam, "curve_length: need a <= b");
    }
    if (a == b) {
        return 0.0;
    }
    const std::function<double(double)> f = [&](double t) {
        const CurvePoint c = curve(t);
        return speed(metric, c.p, c.q, c.dp, c.dq);
    };
    constexpr int kPanels = 16;
    constexpr int kDepth = 40;
    // Roundoff noise in the integrand can defeat the tolerance; cap the total work.
    long budget = 1L << 21;
    double total = 0.0;
    for (int i = 0; i < kPanels; ++i) {
        const double lo = a + (b - a) * i / kPanels;
        const double hi = i + 1 == kPanels ? b : a + (b - a) * (i + 1) / kPanels;
        const double mid = 0.5 * (lo + hi);
        const double flo = f(lo), fmid = f(mid), fhi = f(hi);
        const SimpsonPanel panel{lo, mid, hi, flo, fmid, fhi, (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)};
        total += adaptive_simpson(f, panel, tol / kPanels, kDepth, budget);
    }
    return total;
}

} // namespace lightlike
