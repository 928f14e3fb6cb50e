#include "lightlike/minkowski.hpp"

#include <algorithm>
#include <string>

#include "lightlike/errors.hpp"

namespace lightlike {

namespace {

void require_finite(const LorentzVector& v, const char* what) {
    if (!is_finite(v)) {
        throw Error(ErrorCode::NonFinite, std::string(what) + " has a non-finite component");
    }
}

} // namespace

double inner(const LorentzVector& u, const LorentzVector& v) {
    require_finite(u, "inner: u");
    require_finite(v, "inner: v");
    return -(u.x * v.y + u.y * v.x) + u.z * v.z;
}

const char* to_string(CausalCharacter c) {
    switch (c) {
    case CausalCharacter::Spacelike: return "space-like";
    case CausalCharacter::Timelike: return "time-like";
    case CausalCharacter::Lightlike: return "light-like";
    case CausalCharacter::Zero: return "zero";
    }
    return "unknown";
}

CausalCharacter causal_character(const LorentzVector& v, double tol) {
    if (!(tol >= 0.0)) {
        throw Error(ErrorCode::InvalidParam, "causal_character: tol must be >= 0");
    }
    const double q = inner(v, v);
    if (v.x == 0.0 && v.y == 0.0 && v.z == 0.0) {
        return CausalCharacter::Zero;
    }
    if (std::abs(q) <= tol * std::max(1.0, euclidean_norm_sq(v))) {
        return CausalCharacter::Lightlike;
    }
    return q > 0.0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
}

LorentzVector minkowski_cross(const LorentzVector& u, const LorentzVector& v) {
    require_finite(u, "minkowski_cross: u");
    require_finite(v, "minkowski_cross: v");
    // det(u, v, a) = c . a with c the Euclidean cross product; raise the index.
    const LorentzVector c{u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
    return row_times(c, metric_matrix());
}

Matrix3 multiply(const Matrix3& a, const Matrix3& b) {
    Matrix3 out{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) {
                s += a[i][k] * b[k][j];
            }
            out[i][j] = s;
        }
    }
    return out;
}

LorentzVector row_times(const LorentzVector& v, const Matrix3& m) {
    return {v.x * m[0][0] + v.y * m[1][0] + v.z * m[2][0],
            v.x * m[0][1] + v.y * m[1][1] + v.z * m[2][1],
            v.x * m[0][2] + v.y * m[1][2] + v.z * m[2][2]};
}

ParabolicIsometry::ParabolicIsometry(double t) : t_(t) {
    if (!std::isfinite(t)) {
        throw Error(ErrorCode::NonFinite, "ParabolicIsometry: non-finite parameter");
    }
}

Matrix3 ParabolicIsometry::matrix() const {
    return {{{1.0, 0.0, 0.0}, {0.5 * t_ * t_, 1.0, t_}, {t_, 0.0, 1.0}}};
}

LorentzVector ParabolicIsometry::apply(const LorentzVector& p) const {
    require_finite(p, "apply_isometry: p");
    return {p.x + 0.5 * t_ * t_ * p.y + t_ * p.z, p.y, t_ * p.y + p.z};
}

LorentzVector apply_isometry(const ParabolicIsometry& g, const LorentzVector& p) { return g.apply(p); }

ParabolicIsometry compose(const ParabolicIsometry& a, const ParabolicIsometry& b) {
    return ParabolicIsometry(a.parameter() + b.parameter());
}

} // namespace lightlike
