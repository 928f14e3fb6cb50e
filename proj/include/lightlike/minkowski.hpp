#pragma once

#include <array>
#include <cmath>

namespace lightlike {

/// Point or vector of L^3 in light-cone coordinates, metric -2 dx dy + dz^2.
struct LorentzVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr LorentzVector& operator+=(const LorentzVector& o) {
        x += o.x; y += o.y; z += o.z;
        return *this;
    }
    constexpr LorentzVector& operator-=(const LorentzVector& o) {
        x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }
    constexpr LorentzVector& operator*=(double s) {
        x *= s; y *= s; z *= s;
        return *this;
    }
    friend constexpr LorentzVector operator+(LorentzVector a, const LorentzVector& b) { return a += b; }
    friend constexpr LorentzVector operator-(LorentzVector a, const LorentzVector& b) { return a -= b; }
    friend constexpr LorentzVector operator*(LorentzVector a, double s) { return a *= s; }
    friend constexpr LorentzVector operator*(double s, LorentzVector a) { return a *= s; }
    friend constexpr LorentzVector operator-(LorentzVector a) { return a *= -1.0; }
    friend constexpr bool operator==(const LorentzVector&, const LorentzVector&) = default;
};

/// The light-like direction x = (1,0,0) along which the solitons translate.
inline constexpr LorentzVector kLightlikeX{1.0, 0.0, 0.0};

inline bool is_finite(const LorentzVector& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

inline double euclidean_norm_sq(const LorentzVector& v) { return v.x * v.x + v.y * v.y + v.z * v.z; }
inline double euclidean_norm(const LorentzVector& v) { return std::sqrt(euclidean_norm_sq(v)); }
inline double euclidean_distance(const LorentzVector& a, const LorentzVector& b) {
    return euclidean_norm(a - b);
}

/// -(u_x v_y + u_y v_x) + u_z v_z. Throws NON_FINITE on NaN/inf input.
double inner(const LorentzVector& u, const LorentzVector& v);

enum class CausalCharacter { Spacelike, Timelike, Lightlike, Zero };

const char* to_string(CausalCharacter c);

inline constexpr double kDefaultCausalTol = 1e-10;

/// |<v,v>| <= tol * max(1, |v|_E^2) counts as light-like (or zero for v == 0).
CausalCharacter causal_character(const LorentzVector& v, double tol = kDefaultCausalTol);

/// The w with <w,a> = det(u,v,a) for every a.
LorentzVector minkowski_cross(const LorentzVector& u, const LorentzVector& v);

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Gram matrix of the light-cone basis; it is its own inverse.
constexpr Matrix3 metric_matrix() {
    return {{{0.0, -1.0, 0.0}, {-1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}}};
}

Matrix3 multiply(const Matrix3& a, const Matrix3& b);

/// Row vector times matrix, (v M)_j = sum_i v_i M_ij.
LorentzVector row_times(const LorentzVector& v, const Matrix3& m);

/// Element xi_t of the parabolic group A_3 fixing the light-like axis spanned by x.
class ParabolicIsometry {
public:
    constexpr ParabolicIsometry() = default;
    explicit ParabolicIsometry(double t);

    static constexpr ParabolicIsometry identity() { return ParabolicIsometry(); }

    double parameter() const noexcept { return t_; }

    /// Rows (1,0,0), (t^2/2,1,t), (t,0,1).
    Matrix3 matrix() const;

    ParabolicIsometry inverse() const { return ParabolicIsometry(-t_); }

    /// (x,y,z) xi_t = (x + t^2 y/2 + t z, y, t y + z).
    LorentzVector apply(const LorentzVector& p) const;

private:
    double t_ = 0.0;
};

LorentzVector apply_isometry(const ParabolicIsometry& g, const LorentzVector& p);

/// Group product; the parameters add.
ParabolicIsometry compose(const ParabolicIsometry& a, const ParabolicIsometry& b);

} // namespace lightlike
