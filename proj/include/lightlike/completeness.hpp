#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lightlike/families.hpp"
#include "lightlike/geodesics.hpp"

namespace lightlike {

/// Closed-form Christoffel symbols of the Type I metric (4 lambda^2, -2 lambda tanh w, 1).
ChristoffelSymbols type_i_christoffel(const GraphParams& params, double y, double z);
/// Closed-form Christoffel symbols of the Type II metric (4 a1 e^{-2y} + b1^2, -b1, 1).
ChristoffelSymbols type_ii_christoffel(const GraphParams& params, double y, double z);

/// Exact Type I geodesic through (y0, z0) with velocity (dy0, dz0).
/// With w = (z - z0)/(2 lambda): gd(w(t)) = c t + d, y = y0 + C t/(4 lambda^2) + ln cosh w - ln cosh w0.
class TypeIGeodesic {
public:
    TypeIGeodesic(const GraphParams& params, const GeodesicState& initial);

    CurvePoint operator()(double t) const;
    /// Maximal interval of existence; infinite ends when c == 0.
    Interval lifetime() const;

    double c() const noexcept { return c_; }
    double d() const noexcept { return d_; }
    double C() const noexcept { return C_; }

private:
    GraphParams params_;
    GeodesicState initial_;
    double c_ = 0.0, d_ = 0.0, C_ = 0.0;
};

double gudermannian(double x);
double inverse_gudermannian(double x);

/// Unit-speed Type I geodesic crossing the whole parameter plane in time 2 pi lambda,
/// V -> (y0 - ln cos(V/(2 lambda)), z0 + 2 lambda gd^{-1}(V/(2 lambda))) on (-pi lambda, pi lambda).
Curve type_i_strip_witness(const GraphParams& params, double y0);

/// Type II geodesic t -> (-ln(1 - t), -b1 ln(1 - t)) on [0, 1), with I(a', a') = 4 a1.
Curve type_ii_witness(const GraphParams& params);

/// The sign-flipped curve t -> (ln(1 - t), b1 ln(1 - t)); not a geodesic.
Curve type_ii_mirrored_curve(const GraphParams& params);

/// t -> (y0, t + z0 + 2 k lambda pi) on (-pi lambda, pi lambda).
Curve type_iii_probe(const GraphParams& params, double y0);

/// s -> (y0, s) running into the excluded line z = z0 from the chosen half-plane.
Curve type_iv_probe(const GraphParams& params, double y0);

struct FitResult {
    double c1 = 0.0, c2 = 0.0;
    double rms = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Least-squares fit of z(t) = z0 + 2 lambda asinh(c1 t/(2 lambda) + c2) over the samples.
FitResult fit_type_i_asinh(const GraphParams& params, const std::vector<TrajectorySample>& samples);

/// Least-squares fit of z(t) = z0 + 2 lambda gd^{-1}(c1 t + c2) over the samples.
FitResult fit_type_i_gudermannian(const GraphParams& params, const std::vector<TrajectorySample>& samples);

enum class CompletenessVerdict { CompleteEvidence, IncompleteWitness, Inconclusive };
const char* to_string(CompletenessVerdict v);

struct ProbeConfig {
    int geodesics = 20;
    double horizon = 1e3;
    std::uint64_t seed = 0x5eed1e55ULL;
    std::vector<double> deltas{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    double y0 = 0.0;
    IntegratorOptions integrator{};
};

struct ProbeReport {
    GraphType family = GraphType::I;
    CompletenessVerdict verdict = CompletenessVerdict::Inconclusive;
    std::string witness;
    std::vector<std::pair<std::string, double>> numbers;
    std::string note;

    double number(const std::string& key) const;
};

ProbeReport completeness_probe(const GraphSolitonFamily& family, const ProbeConfig& config = {});

/// Value at delta = 0 of the least-squares line through (delta_i, value_i).
double extrapolate_linear(const std::vector<double>& deltas, const std::vector<double>& values);

} // namespace lightlike
