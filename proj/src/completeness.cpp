#include "lightlike/completeness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "lightlike/errors.hpp"

namespace lightlike {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

ChristoffelSymbols type_i_christoffel(const GraphParams& params, double, double z) {
    const double lam = params.lambda;
    ChristoffelSymbols c;
    c.g1_22 = -1.0 / (4.0 * lam * lam);
    c.g2_22 = -std::tanh((z - params.z0) / (2.0 * lam)) / (2.0 * lam);
    return c;
}

ChristoffelSymbols type_ii_christoffel(const GraphParams& params, double, double) {
    ChristoffelSymbols c;
    c.g1_11 = -1.0;
    c.g2_11 = -params.b1;
    return c;
}

double gudermannian(double x) { return std::atan(std::sinh(x)); }

double inverse_gudermannian(double x) { return std::atanh(std::sin(x)); }

TypeIGeodesic::TypeIGeodesic(const GraphParams& params, const GeodesicState& initial)
    : params_(params), initial_(initial) {
    const double lam = params.lambda;
    const double w0 = (initial.q - params.z0) / (2.0 * lam);
    c_ = initial.dq / (2.0 * lam) / std::cosh(w0);
    d_ = gudermannian(w0);
    C_ = 4.0 * lam * lam * initial.dp - 2.0 * lam * std::tanh(w0) * initial.dq;
}

CurvePoint TypeIGeodesic::operator()(double t) const {
    const double lam = params_.lambda;
    const double w0 = (initial_.q - params_.z0) / (2.0 * lam);
    const double w = c_ == 0.0 ? w0 : inverse_gudermannian(c_ * t + d_);
    CurvePoint out;
    out.p = initial_.p + C_ * t / (4.0 * lam * lam) + detail::log_cosh(w) - detail::log_cosh(w0);
    out.q = params_.z0 + 2.0 * lam * w;
    out.dp = C_ / (4.0 * lam * lam) + c_ * std::sinh(w);
    out.dq = 2.0 * lam * c_ * std::cosh(w);
    return out;
}

Interval TypeIGeodesic::lifetime() const {
    if (c_ == 0.0) {
        return {-kInf, kInf};
    }
    const double lo = (-kPi / 2 - d_) / c_;
    const double hi = (kPi / 2 - d_) / c_;
    return {std::min(lo, hi), std::max(lo, hi)};
}

Curve type_i_strip_witness(const GraphParams& params, double y0) {
    const double lam = params.lambda;
    const double z0 = params.z0;
    return [lam, z0, y0](double v) {
        const double th = v / (2.0 * lam);
        const double c = std::cos(th);
        return CurvePoint{y0 - std::log(c), z0 + 2.0 * lam * inverse_gudermannian(th), std::tan(th) / (2.0 * lam),
                          1.0 / c};
    };
}

Curve type_ii_witness(const GraphParams& params) {
    const double b1 = params.b1;
    return [b1](double t) {
        const double l = std::log1p(-t);
        return CurvePoint{-l, -b1 * l, 1.0 / (1.0 - t), b1 / (1.0 - t)};
    };
}

Curve type_ii_mirrored_curve(const GraphParams& params) {
    const double b1 = params.b1;
    return [b1](double t) {
        const double l = std::log1p(-t);
        return CurvePoint{l, b1 * l, -1.0 / (1.0 - t), -b1 / (1.0 - t)};
    };
}

Curve type_iii_probe(const GraphParams& params, double y0) {
    const double center = params.z0 + 2.0 * params.k * params.lambda * kPi;
    return [center, y0](double t) { return CurvePoint{y0, t + center, 0.0, 1.0}; };
}

Curve type_iv_probe(const GraphParams&, double y0) {
    return [y0](double s) { return CurvePoint{y0, s, 0.0, 1.0}; };
}

// ---------------------------------------------------------------------------
// Two-parameter Levenberg-Marquardt

namespace {

struct ModelValue {
    double f, d1, d2;
};
using Model = std::function<ModelValue(double t, double c1, double c2)>;

FitResult levenberg_marquardt(const Model& model, const std::vector<TrajectorySample>& samples, double c1,
                              double c2) {
    FitResult out;
    if (samples.empty()) {
        return out;
    }
    auto cost_of = [&](double a, double b) {
        double s = 0.0;
        for (const auto& smp : samples) {
            const double r = model(smp.t, a, b).f - smp.q;
            s += r * r;
        }
        return std::isfinite(s) ? s : kInf;
    };
    double cost = cost_of(c1, c2);
    double mu = 1e-3;
    constexpr int kMaxIter = 200;
    int it = 0;
    for (; it < kMaxIter; ++it) {
        double a11 = 0.0, a12 = 0.0, a22 = 0.0, g1 = 0.0, g2 = 0.0;
        for (const auto& smp : samples) {
            const ModelValue m = model(smp.t, c1, c2);
            const double r = m.f - smp.q;
            a11 += m.d1 * m.d1;
            a12 += m.d1 * m.d2;
            a22 += m.d2 * m.d2;
            g1 += m.d1 * r;
            g2 += m.d2 * r;
        }
        bool improved = false;
        for (int tries = 0; tries < 40 && !improved; ++tries) {
            const double m11 = a11 * (1.0 + mu);
            const double m22 = a22 * (1.0 + mu);
            const double det = m11 * m22 - a12 * a12;
            if (!(det > 0.0) || !std::isfinite(det)) {
                mu *= 4.0;
                continue;
            }
            const double s1 = -(m22 * g1 - a12 * g2) / det;
            const double s2 = -(m11 * g2 - a12 * g1) / det;
            const double trial = cost_of(c1 + s1, c2 + s2);
            if (trial <= cost) {
                const double rel = (cost - trial) / std::max(cost, 1e-300);
                c1 += s1;
                c2 += s2;
                cost = trial;
                mu = std::max(mu / 3.0, 1e-12);
                improved = true;
                if (rel < 1e-15 || std::hypot(s1, s2) < 1e-15 * (1.0 + std::hypot(c1, c2))) {
                    out.converged = true;
                }
            } else {
                mu *= 4.0;
            }
        }
        if (!improved || out.converged) {
            out.converged = true;
            break;
        }
    }
    out.c1 = c1;
    out.c2 = c2;
    out.rms = std::sqrt(cost / static_cast<double>(samples.size()));
    out.iterations = it;
    return out;
}

} // namespace

FitResult fit_type_i_asinh(const GraphParams& params, const std::vector<TrajectorySample>& samples) {
    if (samples.empty()) {
        throw Error(ErrorCode::InvalidParam, "fit_type_i_asinh: no samples");
    }
    const double lam = params.lambda;
    const double z0 = params.z0;
    const Model model = [lam, z0](double t, double c1, double c2) {
        const double a = c1 * t / (2.0 * lam) + c2;
        const double s = std::sqrt(1.0 + a * a);
        return ModelValue{z0 + 2.0 * lam * std::asinh(a), t / s, 2.0 * lam / s};
    };
    const auto& s0 = samples.front();
    const double c2 = std::sinh((s0.q - z0) / (2.0 * lam));
    const double c1 = s0.dq * std::sqrt(1.0 + c2 * c2);
    return levenberg_marquardt(model, samples, c1, c2);
}

FitResult fit_type_i_gudermannian(const GraphParams& params, const std::vector<TrajectorySample>& samples) {
    if (samples.empty()) {
        throw Error(ErrorCode::InvalidParam, "fit_type_i_gudermannian: no samples");
    }
    const double lam = params.lambda;
    const double z0 = params.z0;
    const Model model = [lam, z0](double t, double c1, double c2) {
        const double x = c1 * t + c2;
        const double sec = 1.0 / std::cos(x);
        return ModelValue{z0 + 2.0 * lam * inverse_gudermannian(x), 2.0 * lam * t * sec, 2.0 * lam * sec};
    };
    const auto& s0 = samples.front();
    const double w0 = (s0.q - z0) / (2.0 * lam);
    return levenberg_marquardt(model, samples, s0.dq / (2.0 * lam) / std::cosh(w0), gudermannian(w0));
}

const char* to_string(CompletenessVerdict v) {
    switch (v) {
    case CompletenessVerdict::CompleteEvidence: return "COMPLETE_EVIDENCE";
    case CompletenessVerdict::IncompleteWitness: return "INCOMPLETE_WITNESS";
    case CompletenessVerdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "UNKNOWN";
}

double ProbeReport::number(const std::string& key) const {
    for (const auto& [k, v] : numbers) {
        if (k == key) {
            return v;
        }
    }
    throw Error(ErrorCode::InvalidParam, "probe report has no number '" + key + "'");
}

double extrapolate_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw Error(ErrorCode::InvalidParam, "extrapolate_linear: need at least two matching points");
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return (sy - slope * sx) / n;
}

// ---------------------------------------------------------------------------
// Probes

namespace {

double sup_abs_dp(const GeodesicTrajectory& tr) {
    double m = 0.0;
    for (const auto& s : tr.samples) {
        m = std::max(m, std::abs(s.dp));
    }
    return m;
}

/// Length of `curve` on windows shrinking toward the open ends, then extrapolated to delta = 0.
struct LengthStudy {
    std::vector<double> deltas;
    std::vector<double> lengths;
    double limit = 0.0;
};

LengthStudy length_study(const InducedMetric& metric, const Curve& curve, const std::vector<double>& deltas,
                         const std::function<Interval(double)>& window) {
    LengthStudy out;
    for (double d : deltas) {
        const Interval w = window(d);
        try {
            out.lengths.push_back(curve_length(metric, curve, w.lo, w.hi));
            out.deltas.push_back(d);
        } catch (const Error& e) {
            // Windows reaching the numerically degenerate zone are skipped.
            if (e.code() != ErrorCode::DegenerateMetric) {
                throw;
            }
        }
    }
    if (out.lengths.empty()) {
        out.limit = std::numeric_limits<double>::quiet_NaN();
    } else {
        out.limit = out.lengths.size() >= 2 ? extrapolate_linear(out.deltas, out.lengths) : out.lengths.front();
    }
    return out;
}

void add_study(ProbeReport& report, const LengthStudy& study) {
    for (std::size_t i = 0; i < study.deltas.size(); ++i) {
        char key[48];
        std::snprintf(key, sizeof key, "length_delta_%.0e", study.deltas[i]);
        report.numbers.emplace_back(key, study.lengths[i]);
    }
    report.numbers.emplace_back("witness_length", study.limit);
}

ProbeReport probe_type_i(const GraphSolitonFamily& family, const ProbeConfig& cfg) {
    const GraphParams& p = family.params();
    const InducedMetric metric = InducedMetric::from_patch(family.patch());
    ProbeReport report;
    report.family = GraphType::I;

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    int completed = 0;
    int left = 0;
    double worst_ratio = 1.0;
    double shortest_exit = kInf;
    double worst_drift = 0.0;
    for (int i = 0; i < cfg.geodesics; ++i) {
        const GeodesicState init{unit(rng), p.z0 + 2.0 * p.lambda * unit(rng), unit(rng), unit(rng)};
        const GeodesicTrajectory tr = integrate_geodesic(metric, init, cfg.horizon, cfg.integrator);
        const GeodesicTrajectory tr2 = integrate_geodesic(metric, init, 2.0 * cfg.horizon, cfg.integrator);
        const double s1 = sup_abs_dp(tr);
        const double s2 = sup_abs_dp(tr2);
        const double ratio = s1 > 0.0 ? s2 / s1 : 1.0;
        if (std::abs(ratio - 1.0) > std::abs(worst_ratio - 1.0)) {
            worst_ratio = ratio;
        }
        worst_drift = std::max(worst_drift, tr.max_relative_drift);
        if (tr.verdict == Verdict::CompletedHorizon) {
            ++completed;
        } else if (tr.verdict == Verdict::LeftDomainFiniteLength) {
            ++left;
            shortest_exit = std::min(shortest_exit, tr.final_time());
        }
    }
    report.numbers.emplace_back("geodesics", cfg.geodesics);
    report.numbers.emplace_back("completed_horizon", completed);
    report.numbers.emplace_back("left_domain", left);
    report.numbers.emplace_back("sup_dy_doubling_ratio", worst_ratio);
    report.numbers.emplace_back("max_invariant_drift", worst_drift);
    if (left > 0) {
        report.numbers.emplace_back("shortest_exit_time", shortest_exit);
    }

    const bool stable = worst_ratio >= 1.0 && worst_ratio <= 1.01;
    if (completed == cfg.geodesics && stable) {
        report.verdict = CompletenessVerdict::CompleteEvidence;
        report.witness = "none";
        report.note = "all sampled geodesics reached the horizon with bounded y'";
        return report;
    }
    const double lam = p.lambda;
    const LengthStudy study = length_study(metric, type_i_strip_witness(p, cfg.y0), cfg.deltas, [lam](double d) {
        return Interval{-kPi * lam + d, kPi * lam - d};
    });
    add_study(report, study);
    report.numbers.emplace_back("expected_length", 2.0 * kPi * lam);
    report.verdict = left > 0 && std::isfinite(study.limit) ? CompletenessVerdict::IncompleteWitness
                                                            : CompletenessVerdict::Inconclusive;
    report.witness = "unit-speed geodesic V -> (y0 - ln cos(V/2l), z0 + 2l gd^-1(V/2l)), V in (-pi l, pi l)";
    report.note = "sampled geodesics with z' != 0 leave every compact set in finite time; the metric "
                  "(2l dy - tanh w dz)^2 + sech^2 w dz^2 is isometric to a strip of width 2 pi l";
    return report;
}

ProbeReport probe_type_ii(const GraphSolitonFamily& family, const ProbeConfig& cfg) {
    const GraphParams& p = family.params();
    const InducedMetric metric = InducedMetric::from_patch(family.patch());
    ProbeReport report;
    report.family = GraphType::II;

    const Curve witness = type_ii_witness(p);
    double drift = 0.0;
    for (double t = 0.0; t < 1.0 - 1e-6; t += 1e-3) {
        const CurvePoint c = witness(t);
        const double I = metric.norm_sq({c.p, c.q}, c.dp, c.dq);
        drift = std::max(drift, std::abs(I - 4.0 * p.a1) / std::abs(4.0 * p.a1));
    }
    const LengthStudy study =
        length_study(metric, witness, cfg.deltas, [](double d) { return Interval{0.0, 1.0 - d}; });
    add_study(report, study);
    report.numbers.emplace_back("expected_length", 2.0 * std::sqrt(std::abs(p.a1)));
    report.numbers.emplace_back("invariant", 4.0 * p.a1);
    report.numbers.emplace_back("invariant_relative_drift", drift);

    const GeodesicTrajectory tr = integrate_geodesic(metric, {0.0, 0.0, 1.0, p.b1}, 2.0, cfg.integrator);
    report.numbers.emplace_back("integrated_exit_time", tr.final_time());
    report.numbers.emplace_back("integrated_length", tr.length);
    const bool escaped = tr.verdict == Verdict::LeftDomainFiniteLength || tr.verdict == Verdict::Blowup;
    report.verdict = escaped && std::isfinite(study.limit) ? CompletenessVerdict::IncompleteWitness
                                                           : CompletenessVerdict::Inconclusive;
    report.witness = "geodesic t -> (-ln(1-t), -b1 ln(1-t)) on [0,1)";
    report.note = std::string("integrated geodesic from (0,0) with velocity (1,b1): ") + to_string(tr.verdict) +
                  " (" + to_string(tr.exit_reason) + ")";
    return report;
}

ProbeReport probe_strip_or_half(const GraphSolitonFamily& family, const ProbeConfig& cfg) {
    const GraphParams& p = family.params();
    const InducedMetric metric = InducedMetric::from_patch(family.patch());
    ProbeReport report;
    report.family = family.type();

    LengthStudy study;
    double expected = 0.0;
    if (family.type() == GraphType::III) {
        const double lam = p.lambda;
        study = length_study(metric, type_iii_probe(p, cfg.y0), cfg.deltas, [lam](double d) {
            return Interval{-kPi * lam + d, kPi * lam - d};
        });
        expected = 2.0 * kPi * lam;
        report.witness = "probe t -> (y0, t + z0 + 2 k l pi), t in (-pi l, pi l)";
    } else {
        const double z0 = p.z0;
        const bool plus = p.half == HalfPlaneSide::Plus;
        study = length_study(metric, type_iv_probe(p, cfg.y0), cfg.deltas, [z0, plus](double d) {
            return plus ? Interval{z0 + d, z0 + 1.0} : Interval{z0 - 1.0, z0 - d};
        });
        expected = 1.0;
        report.witness = plus ? "probe s -> (y0, s), s in (z0, z0 + 1)" : "probe s -> (y0, s), s in (z0 - 1, z0)";
    }
    add_study(report, study);
    report.numbers.emplace_back("expected_length", expected);
    report.verdict =
        std::isfinite(study.limit) ? CompletenessVerdict::IncompleteWitness : CompletenessVerdict::Inconclusive;
    report.note = "space-like finite-length divergent probe measured; incompleteness in the time-like and "
                  "light-like senses is proved via a flat development and is not machine-checked";
    return report;
}

} // namespace

ProbeReport completeness_probe(const GraphSolitonFamily& family, const ProbeConfig& config) {
    switch (family.type()) {
    case GraphType::I: return probe_type_i(family, config);
    case GraphType::II: return probe_type_ii(family, config);
    case GraphType::III:
    case GraphType::IV: return probe_strip_or_half(family, config);
    }
    return {};
}

} // namespace lightlike
