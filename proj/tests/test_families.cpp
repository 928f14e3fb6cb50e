#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "lightlike/errors.hpp"
#include "lightlike/families.hpp"
#include "lightlike/surface.hpp"

using namespace lightlike;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::InvalidParam;
}

// Central-difference partials of u, independent of the analytic kernels.
GraphPartials fd_partials(const GraphSolitonFamily& f, double y, double z, double h) {
    auto u = [&](double a, double b) { return f.eval_u(a, b); };
    GraphPartials d;
    d.u_y = (u(y + h, z) - u(y - h, z)) / (2 * h);
    d.u_z = (u(y, z + h) - u(y, z - h)) / (2 * h);
    d.u_yy = (u(y + h, z) - 2 * u(y, z) + u(y - h, z)) / (h * h);
    d.u_zz = (u(y, z + h) - 2 * u(y, z) + u(y, z - h)) / (h * h);
    d.u_yz = (u(y + h, z + h) - u(y + h, z - h) - u(y - h, z + h) + u(y - h, z - h)) / (4 * h * h);
    return d;
}

// Profile ODE residual from explicit derivatives.
double profile_ode(double y, double dx, double ddx, double dy, double ddy) {
    return y * dx * ddy + 2 * dx * dy * dy - y * dy * ddx - 2 * y * dx * dy * dy;
}

} // namespace

TEST(EvalU, Examples) {
    EXPECT_DOUBLE_EQ(GraphSolitonFamily::type_i(1.0, 0.0, 0.0).eval_u(1.0, 0.0), -2.0);
    EXPECT_DOUBLE_EQ(GraphSolitonFamily::type_ii(1.0, 0.0, 0.0).eval_u(0.0, 5.0), 1.0);
    EXPECT_EQ(code_of([] { (void)GraphSolitonFamily::type_iii(1.0).eval_u(0.0, kPi); }), ErrorCode::OutOfDomain);
    EXPECT_EQ(code_of([] { (void)GraphSolitonFamily::type_iv(1.0, 0.5).eval_u(0.0, 0.5); }), ErrorCode::OutOfDomain);
}

TEST(EvalU, ClosedForms) {
    const double lam = 1.3, z0 = 0.2, y = -0.4, z = 1.1;
    const double w = (z - z0) / (2 * lam);
    EXPECT_NEAR(GraphSolitonFamily::type_i(lam, z0, 0.5).eval_u(y, z),
                -2 * lam * lam * y + 4 * lam * lam * std::log(std::cosh(w)) + 0.5, 1e-13);
    EXPECT_NEAR(GraphSolitonFamily::type_ii(-2.0, 3.0, 0.1).eval_u(y, z),
                -2.0 * std::exp(-2 * y) - 4.5 * y + 3.0 * z + 0.1, 1e-13);
    EXPECT_NEAR(GraphSolitonFamily::type_iii(lam, z0, 0.3).eval_u(y, z),
                2 * lam * lam * y - 4 * lam * lam * std::log(std::abs(std::cos(w))) + 0.3, 1e-13);
    EXPECT_NEAR(GraphSolitonFamily::type_iv(lam, z0, -0.7).eval_u(y, z),
                -2 * lam * lam * y + 4 * lam * lam * std::log(std::abs(std::sinh(w))) - 0.7, 1e-13);
}

TEST(EvalU, LogCoshIsStableForLargeArguments) {
    const auto f = GraphSolitonFamily::type_i(1.0);
    const double z = 2000.0; // cosh overflows here
    EXPECT_TRUE(std::isfinite(f.eval_u(0.0, z)));
    EXPECT_NEAR(f.eval_u(0.0, z), 4 * (z / 2 - std::log(2.0)), 1e-9);
}

TEST(Domains, NaturalDomains) {
    EXPECT_TRUE(GraphSolitonFamily::type_i(1).entire());
    EXPECT_TRUE(GraphSolitonFamily::type_ii(1).entire());
    EXPECT_FALSE(GraphSolitonFamily::type_iii(1).entire());
    EXPECT_FALSE(GraphSolitonFamily::type_iv(1).entire());
    const auto iii = GraphSolitonFamily::type_iii(0.5, 1.0, 0.0, 2);
    const double center = 1.0 + 2 * 2 * 0.5 * kPi;
    EXPECT_TRUE(iii.contains(0.0, center));
    EXPECT_TRUE(iii.contains(0.0, center + 0.5 * kPi - 1e-6));
    EXPECT_FALSE(iii.contains(0.0, center + 0.5 * kPi));
    EXPECT_FALSE(iii.contains(0.0, 1.0));
    const auto minus = GraphSolitonFamily::type_iv(1.0, 2.0, 0.0, HalfPlaneSide::Minus);
    EXPECT_TRUE(minus.contains(0.0, 1.0));
    EXPECT_FALSE(minus.contains(0.0, 3.0));
    EXPECT_FALSE(minus.contains(0.0, 2.0 - 1e-9));
}

TEST(Validation, Parameters) {
    EXPECT_EQ(code_of([] { (void)GraphSolitonFamily::type_ii(0.0); }), ErrorCode::InvalidParam);
    EXPECT_EQ(code_of([] { (void)GraphSolitonFamily::type_i(0.0); }), ErrorCode::InvalidParam);
    EXPECT_EQ(code_of([] { (void)GraphSolitonFamily::type_iii(-1.0); }), ErrorCode::InvalidParam);
    EXPECT_EQ(code_of([] { (void)GraphSolitonFamily::type_iv(std::nan("")); }), ErrorCode::InvalidParam);
}

TEST(Partials, Examples) {
    const double lam = 0.7, z0 = 0.3;
    const auto d1 = GraphSolitonFamily::type_i(lam, z0).partials_u(2.0, -1.0);
    EXPECT_DOUBLE_EQ(d1.u_y, -2 * lam * lam);
    EXPECT_NEAR(d1.u_z, 2 * lam * std::tanh((-1.0 - z0) / (2 * lam)), 1e-14);
    const auto d4 = GraphSolitonFamily::type_iv(lam, z0).partials_u(0.0, 1.5);
    EXPECT_NEAR(d4.u_z, 2 * lam / std::tanh((1.5 - z0) / (2 * lam)), 1e-13);
    const auto d2 = GraphSolitonFamily::type_ii(1.5, 0.5).partials_u(0.4, 0.0);
    EXPECT_NEAR(d2.u_yy, 4 * 1.5 * std::exp(-0.8), 1e-13);
}

TEST(Partials, MixedPartialVanishesExactly) {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double y = u(rng), z = u(rng);
        EXPECT_EQ(GraphSolitonFamily::type_i(1.2, 0.1).partials_u(y, z).u_yz, 0.0);
        EXPECT_EQ(GraphSolitonFamily::type_ii(-1.0, 2.0).partials_u(y, z).u_yz, 0.0);
        EXPECT_EQ(GraphSolitonFamily::type_iii(1.0).partials_u(y, z).u_yz, 0.0);
        EXPECT_EQ(GraphSolitonFamily::type_iv(1.0, -2.0).partials_u(y, z).u_yz, 0.0);
    }
}

TEST(Partials, AgreeWithFiniteDifferencesOfU) {
    const GraphSolitonFamily fams[] = {GraphSolitonFamily::type_i(1.1, 0.2), GraphSolitonFamily::type_ii(-1.3, 0.8),
                                       GraphSolitonFamily::type_iii(0.9, -0.1),
                                       GraphSolitonFamily::type_iv(1.0, -1.0)};
    for (const auto& f : fams) {
        for (double z : {0.05, 0.6, 1.2}) {
            const auto a = f.partials_u(0.3, z);
            const auto n = fd_partials(f, 0.3, z, 1e-4);
            EXPECT_NEAR(a.u_y, n.u_y, 1e-6 * std::max(1.0, std::abs(a.u_y))) << to_string(f.type());
            EXPECT_NEAR(a.u_z, n.u_z, 1e-6 * std::max(1.0, std::abs(a.u_z))) << to_string(f.type());
            EXPECT_NEAR(a.u_yy, n.u_yy, 1e-4 * std::max(1.0, std::abs(a.u_yy))) << to_string(f.type());
            EXPECT_NEAR(a.u_zz, n.u_zz, 1e-4 * std::max(1.0, std::abs(a.u_zz))) << to_string(f.type());
            EXPECT_NEAR(n.u_yz, 0.0, 1e-4) << to_string(f.type());
        }
    }
}

TEST(PdeResidual, VanishesAcrossParameterSweep) {
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        GraphParams p;
        p.lambda = 0.25 + 2 * std::abs(u(rng));
        p.z0 = u(rng);
        p.a1 = 3 * u(rng);
        if (p.a1 == 0.0) {
            p.a1 = 1.0;
        }
        p.b1 = 3 * u(rng);
        const double scale = std::max({1.0, p.lambda * p.lambda, p.a1 * p.a1, p.b1 * p.b1});
        const double y = u(rng);
        EXPECT_LT(std::abs(GraphSolitonFamily::make(GraphType::I, p).pde_residual(y, 4 * u(rng))), 1e-9 * scale);
        EXPECT_LT(std::abs(GraphSolitonFamily::make(GraphType::II, p).pde_residual(y, 4 * u(rng))), 1e-9 * scale);
        EXPECT_LT(std::abs(GraphSolitonFamily::make(GraphType::III, p).pde_residual(y, p.z0 + 0.999 * kPi * p.lambda * u(rng))),
                  1e-9 * scale);
        EXPECT_LT(std::abs(GraphSolitonFamily::make(GraphType::IV, p).pde_residual(y, p.z0 + 1e-3 + 3 * std::abs(u(rng)))),
                  1e-9 * scale);
    }
}

TEST(PdeResidual, NonSolitonIsDetected) {
    GraphPartials d; // u(y,z) = y
    d.u_y = 1.0;
    EXPECT_EQ(pde_residual(d), 2.0);
}

// Wrong-sign variants built from the same pieces must fail the equation.
TEST(PdeResidual, MutatedSignsFail) {
    const double lam = 1.0;
    GraphDefinition wrong_iv;
    wrong_iv.u = [lam](double y, double z) {
        return -2 * lam * lam * y - 4 * lam * lam * std::log(std::abs(std::sinh(z / (2 * lam))));
    };
    wrong_iv.partials = [lam](double, double z) {
        const double s = std::sinh(z / (2 * lam));
        GraphPartials d;
        d.u_y = -2 * lam * lam;
        d.u_z = -2 * lam / std::tanh(z / (2 * lam));
        d.u_zz = 1 / (s * s);
        return d;
    };
    wrong_iv.domain = DomainSpec::half_plane(0.0, true);
    const auto patch = graph_patch(wrong_iv);
    EXPECT_GT(std::abs(pde_residual(wrong_iv.partials(0.0, 1.0))), 1e-3);
    EXPECT_GT(std::abs(soliton_residual(patch, {0.0, 1.0})), 1e-3);

    GraphPartials wrong_i = GraphSolitonFamily::type_i(lam).partials_u(0.0, 0.7);
    wrong_i.u_z = -wrong_i.u_z;
    wrong_i.u_zz = -wrong_i.u_zz;
    EXPECT_GT(std::abs(pde_residual(wrong_i)), 1e-3);
}

TEST(CausalCharacterOf, Table) {
    EXPECT_EQ(GraphSolitonFamily::type_i(1).causal_character(), CausalCharacter::Spacelike);
    EXPECT_EQ(GraphSolitonFamily::type_ii(1).causal_character(), CausalCharacter::Spacelike);
    EXPECT_EQ(GraphSolitonFamily::type_ii(-1).causal_character(), CausalCharacter::Timelike);
    EXPECT_EQ(GraphSolitonFamily::type_iii(1).causal_character(), CausalCharacter::Timelike);
    EXPECT_EQ(GraphSolitonFamily::type_iv(1).causal_character(), CausalCharacter::Timelike);
}

TEST(CausalCharacterOf, MatchesDiscriminantSign) {
    const GraphSolitonFamily fams[] = {GraphSolitonFamily::type_i(0.6), GraphSolitonFamily::type_ii(2.0, 1.0),
                                       GraphSolitonFamily::type_ii(-0.5, 3.0), GraphSolitonFamily::type_iii(1.5),
                                       GraphSolitonFamily::type_iv(0.8, 0.0, 0.0, HalfPlaneSide::Minus)};
    for (const auto& f : fams) {
        const double z = f.type() == GraphType::IV ? -0.4 : 0.4;
        const double disc = first_form(f.patch(), {0.2, z}).disc;
        EXPECT_EQ(disc > 0, f.causal_character() == CausalCharacter::Spacelike) << to_string(f.type());
    }
}

TEST(GrimReaper, Forms) {
    const auto g = grim_reaper();
    EXPECT_EQ(g.type(), GraphType::II);
    EXPECT_EQ(g.params().a1, 2.0);
    EXPECT_EQ(g.params().b1, 0.0);
    EXPECT_DOUBLE_EQ(g.eval_u(0.0, 3.0), 2.0);
    EXPECT_DOUBLE_EQ(g.eval_u(0.5, 0.0), 2 * std::exp(-1.0));
    EXPECT_EQ(g.causal_character(), CausalCharacter::Spacelike);
    EXPECT_EQ(g.pde_residual(0.3, 0.1), 0.0);
    const auto c = grim_reaper(GrimReaperForm::Curve);
    EXPECT_DOUBLE_EQ(c.eval_u(0.5, 0.0), std::exp(-1.0) / 2);
    EXPECT_EQ(c.pde_residual(-0.3, 0.1), 0.0);
}

TEST(Phi, Values) {
    EXPECT_EQ(phi(0.0), kPhiAtZero);
    EXPECT_EQ(kPhiAtZero, -0.25);
    // -(5/4) e^{-2}, 30-digit reference.
    EXPECT_NEAR(phi(1.0), -0.169169104045765879043666219048, 1e-16);
    EXPECT_EQ(phi_derivative(0.0), 0.0);
}

TEST(Phi, NegativeAndStrictlyIncreasing) {
    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> r(-8.0, 15.0);
    for (int i = 0; i < 1000; ++i) {
        double a = r(rng), b = r(rng);
        if (a > b) {
            std::swap(a, b);
        }
        EXPECT_LT(phi(a), 0.0);
        if (b - a > 1e-6) {
            EXPECT_LT(phi(a), phi(b));
        }
        EXPECT_GE(phi_derivative(a), 0.0);
        if (a != 0.0) {
            EXPECT_GT(phi_derivative(a), 0.0);
        }
        const double h = 1e-5;
        EXPECT_NEAR((phi(a + h) - phi(a - h)) / (2 * h), phi_derivative(a), 1e-6 * std::max(1.0, phi_derivative(a)));
    }
}

TEST(PhiInverse, Examples) {
    // phi(r) + 1/4 ~ r^3/3, so r is resolvable only to about cbrt(3 ulp(1/4)).
    EXPECT_NEAR(phi_inverse(-0.25), 0.0, 1e-5);
    EXPECT_NEAR(phi(phi_inverse(-0.25)), -0.25, 1e-14);
    EXPECT_NEAR(phi_inverse(-0.169169104045765879), 1.0, 1e-12);
    EXPECT_EQ(code_of([] { (void)phi_inverse(0.0); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([] { (void)phi_inverse(1.0); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([] { (void)phi_inverse(-1.0, 0.0); }), ErrorCode::InvalidParam);
}

TEST(PhiInverse, RoundTrips) {
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> r(-5.0, 5.0);
    for (int i = 0; i < 500; ++i) {
        const double x = r(rng);
        // phi is flat at 0, so inverse accuracy degrades like sqrt of the value error there.
        EXPECT_NEAR(phi_inverse(phi(x)), x, std::abs(x) > 0.05 ? 1e-10 : 1e-5);
    }
    for (int i = 0; i <= 120; ++i) {
        const double v = -std::pow(10.0, -6.0 + 12.0 * i / 120.0);
        EXPECT_LE(std::abs(phi(phi_inverse(v)) - v), 1e-10 * std::max(1.0, std::abs(v))) << v;
    }
}

TEST(PhiInverse, Monotone) {
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 200; ++i) {
        const double v = -1e4 + (1e4 - 1e-6) * i / 200.0;
        const double r = phi_inverse(v);
        EXPECT_GE(r, prev);
        prev = r;
    }
}

// The variant (2r^2 - 2r + 1)e^{-2r} is a rescaled, shifted copy of phi.
TEST(PhiInverse, ShiftedVariantIsARescaledPhi) {
    for (double r : {-2.0, -0.3, 0.0, 0.5, 1.0, 3.7}) {
        const double variant = (2 * r * r - 2 * r + 1) * std::exp(-2 * r);
        EXPECT_NEAR(variant, -4 * std::exp(-2.0) * phi(r - 1), 1e-12 * std::max(1.0, variant));
    }
    // A profile built on the unshifted variant violates the ODE.
    const auto good = ParabolicProfile::case2(1.0, -1.0, ProfileBranch::Plus);
    const double s = 0.5 * (good.s_range().lo + good.s_range().hi);
    const auto j = good.jet(s);
    EXPECT_LT(std::abs(profile_ode(j.y, j.dx, j.ddx, j.dy, j.ddy)), 1e-10);
    EXPECT_GT(std::abs(profile_ode(j.y + 1, j.dx, j.ddx, j.dy, j.ddy)), 1e-3);
}

TEST(ParabolicCase1, ProfileData) {
    const double a0 = 1.5, a1 = -0.5;
    const auto pr = ParabolicProfile::case1(a0, a1);
    for (double s : {0.1, 0.7, 2.0}) {
        const auto j = pr.jet(s);
        EXPECT_NEAR(j.x, a0 * (2 * s * s + 2 * s + 1) * std::exp(-2 * s) + a1, 1e-14);
        EXPECT_NEAR(j.dx, -4 * a0 * s * s * std::exp(-2 * s), 1e-14);
        EXPECT_EQ(j.y, s);
        EXPECT_NEAR(profile_ode(j.y, j.dx, j.ddx, j.dy, j.ddy), 0.0, 1e-10);
        EXPECT_NEAR(pr.ode_residual(s), 0.0, 1e-10);
    }
    EXPECT_EQ(pr.causal_character(), CausalCharacter::Spacelike);
    EXPECT_EQ(ParabolicProfile::case1(-1.0, 0.0).causal_character(), CausalCharacter::Timelike);
    EXPECT_EQ(code_of([] { (void)ParabolicProfile::case1(0.0, 1.0); }), ErrorCode::InvalidParam);
    EXPECT_EQ(code_of([] { (void)ParabolicProfile::case1(1.0, 0.0, {-1.0, 1.0}); }), ErrorCode::InvalidParam);
}

TEST(ParabolicCase1, SingularLimitAtOrigin) {
    const double a0 = -0.8, a1 = 0.3;
    const auto pr = ParabolicProfile::case1(a0, a1);
    for (double t : {-2.0, 0.0, 1.5}) {
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 1; k <= 6; ++k) {
            const double s = std::pow(10.0, -k);
            const double dev = euclidean_distance(sweep_point(pr, s, t), {a0 + a1, 0.0, 0.0});
            EXPECT_LT(dev, prev);
            prev = dev;
        }
        EXPECT_LT(prev, 1e-5 * (1 + t * t));
    }
}

TEST(ParabolicCase2, ProfileData) {
    const double b0 = 1.0, b1 = -1.0;
    const auto pr = ParabolicProfile::case2(b0, b1, ProfileBranch::Plus);
    EXPECT_EQ(pr.eps(), 1);
    EXPECT_EQ(ParabolicProfile::case2(-1.0, -1.0, ProfileBranch::Minus).eps(), -1);
    const Interval J = pr.s_range();
    for (int i = 1; i < 10; ++i) {
        const double s = J.lo + (J.hi - J.lo) * i / 10.0;
        const auto j = pr.jet(s);
        EXPECT_EQ(j.x, s);
        EXPECT_GT(j.y, 0.0);
        EXPECT_NEAR(phi(j.y), b0 * s + b1, 1e-12);
        EXPECT_NEAR(j.dy, b0 * std::exp(2 * j.y) / (j.y * j.y), 1e-9 * std::max(1.0, std::abs(j.dy)));
        EXPECT_LT(std::abs(pr.ode_residual(s)), 1e-8 * std::max(1.0, j.dy * j.dy));
    }
}

TEST(ParabolicCase2, ExcludesTheZeroOfY) {
    // b0 s + b1 = -1/4 at s0 = 0.75 for b0 = 1, b1 = -1.
    const Interval plus = ParabolicProfile::admissible_interval(1.0, -1.0, ProfileBranch::Plus);
    const Interval minus = ParabolicProfile::admissible_interval(1.0, -1.0, ProfileBranch::Minus);
    EXPECT_DOUBLE_EQ(plus.lo, 0.75);
    EXPECT_DOUBLE_EQ(plus.hi, 1.0);
    EXPECT_DOUBLE_EQ(minus.hi, 0.75);
    EXPECT_EQ(code_of([] { (void)ParabolicProfile::case2(1.0, -1.0, ProfileBranch::Plus, Interval{0.5, 0.9}); }),
              ErrorCode::OutOfDomain);
    EXPECT_EQ(code_of([] { (void)ParabolicProfile::case2(0.0, -1.0, ProfileBranch::Plus); }), ErrorCode::InvalidParam);
    EXPECT_EQ(code_of([] { (void)ParabolicProfile::case2(1.0, -1.0, ProfileBranch::Plus).jet(0.75); }),
              ErrorCode::OutOfDomain);
}

TEST(Sweep, FirstFormAndWeight) {
    const ParabolicProfile profiles[] = {ParabolicProfile::case1(1.0, 0.0), ParabolicProfile::case1(-2.0, 1.0),
                                         ParabolicProfile::case2(1.0, -1.0, ProfileBranch::Plus),
                                         ParabolicProfile::case2(-1.0, -1.0, ProfileBranch::Minus)};
    for (const auto& pr : profiles) {
        const auto patch = sweep_surface(pr);
        const Interval J = pr.s_range();
        const double s = std::isfinite(J.hi) ? 0.5 * (J.lo + J.hi) : (std::isfinite(J.lo) ? J.lo + 0.8 : J.hi - 0.8);
        for (double t : {-1.0, 0.0, 2.0}) {
            const auto j = pr.jet(s);
            const auto ff = fundamental_forms(patch, {s, t});
            EXPECT_NEAR(ff.E, -2 * j.dx * j.dy, 1e-10 * std::max(1.0, std::abs(ff.E)));
            EXPECT_NEAR(ff.F, 0.0, 1e-10 * std::max(1.0, std::abs(ff.E)));
            EXPECT_NEAR(ff.G, j.y * j.y, 1e-12);
            const int eps = j.dx * j.dy > 0 ? 1 : -1;
            EXPECT_EQ(eps, pr.eps());
            EXPECT_NEAR(ff.W, std::sqrt(2 * eps * j.dx / j.dy), 1e-9 * ff.W);
            EXPECT_EQ(ff.disc > 0, pr.causal_character() == CausalCharacter::Spacelike);
            EXPECT_LT(std::abs(soliton_residual(patch, {s, t})), 1e-8);
        }
    }
}

TEST(Sweep, ParabolicInvariance) {
    std::mt19937_64 rng(89);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const auto pr = ParabolicProfile::case1(1.0, 0.5);
    for (int i = 0; i < 200; ++i) {
        const double s = 0.1 + std::abs(u(rng)), t = u(rng), tp = u(rng);
        const auto direct = sweep_point(pr, s, t + tp);
        const auto moved = ParabolicIsometry(tp).apply(sweep_point(pr, s, t));
        EXPECT_LE(euclidean_distance(direct, moved), 1e-12 * std::max(1.0, euclidean_norm(direct)));
    }
}
