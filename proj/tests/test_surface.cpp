#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lightlike/errors.hpp"
#include "lightlike/families.hpp"
#include "lightlike/surface.hpp"

using namespace lightlike;

namespace {

constexpr double kPi = std::numbers::pi;

SurfacePatch affine_plane(double alpha, double beta) {
    auto pos = [alpha, beta](Point2 a) { return LorentzVector{alpha * a.p + beta * a.q, a.p, a.q}; };
    auto jet = [pos, alpha, beta](Point2 a) {
        PatchJet j;
        j.position = pos(a);
        j.dp = {alpha, 1, 0};
        j.dq = {beta, 0, 1};
        return j;
    };
    return SurfacePatch::analytic(pos, jet, DomainSpec::full_plane());
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::InvalidParam;
}

struct Sample {
    GraphSolitonFamily family;
    Point2 at;
};

std::vector<Sample> random_family_points(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> lam(0.5, 2.0);
    std::vector<Sample> out;
    for (int i = 0; i < n; ++i) {
        GraphParams p;
        p.lambda = lam(rng);
        p.z0 = u(rng);
        p.a0 = u(rng);
        p.a1 = (i % 2 ? 1.0 : -1.0) * (0.5 + std::abs(u(rng)));
        p.b1 = 2.0 * u(rng);
        p.b0 = u(rng);
        const double y = u(rng);
        out.push_back({GraphSolitonFamily::make(GraphType::I, p), {y, p.z0 + 3.0 * u(rng)}});
        out.push_back({GraphSolitonFamily::make(GraphType::II, p), {y, 3.0 * u(rng)}});
        out.push_back({GraphSolitonFamily::make(GraphType::III, p), {y, p.z0 + 0.95 * kPi * p.lambda * u(rng)}});
        p.half = i % 2 ? HalfPlaneSide::Plus : HalfPlaneSide::Minus;
        const double off = 0.05 + 2.0 * std::abs(u(rng));
        out.push_back({GraphSolitonFamily::make(GraphType::IV, p), {y, p.z0 + (i % 2 ? off : -off)}});
    }
    return out;
}

} // namespace

TEST(DomainSpec, Membership) {
    const auto strip = DomainSpec::horizontal_strip(-1.0, 2.0);
    EXPECT_TRUE(strip.contains({100.0, 0.0}));
    EXPECT_FALSE(strip.contains({0.0, 2.0}));
    EXPECT_FALSE(strip.contains({0.0, 1.9}, 0.2));
    EXPECT_DOUBLE_EQ(strip.boundary_distance({0.0, 1.5}), 0.5);
    const auto half = DomainSpec::half_plane(1.0, false);
    EXPECT_TRUE(half.contains({0.0, 0.5}));
    EXPECT_FALSE(half.contains({0.0, 1.0}));
    EXPECT_FALSE(half.contains({0.0, 1.5}));
    EXPECT_TRUE(DomainSpec::full_plane().contains({1e9, -1e9}, 1.0));
    EXPECT_TRUE(std::isinf(DomainSpec::full_plane().boundary_distance({0, 0})));
}

TEST(FirstForm, TypeIClosedForm) {
    const double lam = 1.3, z0 = 0.4;
    const auto patch = GraphSolitonFamily::type_i(lam, z0).patch();
    for (double z : {-2.0, 0.0, 0.4, 3.1}) {
        const auto ff = first_form(patch, {0.7, z});
        EXPECT_NEAR(ff.E, 4 * lam * lam, 1e-13);
        EXPECT_NEAR(ff.F, -2 * lam * std::tanh((z - z0) / (2 * lam)), 1e-13);
        EXPECT_EQ(ff.G, 1.0);
        EXPECT_NEAR(ff.disc, ff.E * ff.G - ff.F * ff.F, 1e-13);
    }
}

TEST(FirstForm, TypeIIIAtCenter) {
    const double lam = 0.8;
    const auto ff = first_form(GraphSolitonFamily::type_iii(lam, 0.25).patch(), {0.1, 0.25});
    EXPECT_NEAR(ff.E, -4 * lam * lam, 1e-14);
    EXPECT_NEAR(ff.F, 0.0, 1e-14);
    EXPECT_EQ(ff.G, 1.0);
}

TEST(FirstForm, LightlikeDirectionIsDegenerate) {
    const auto plane = affine_plane(0.0, 0.0); // psi = (0, p, q)
    const FirstForm ff = [&] {
        PatchJet j = plane.jet({0, 0});
        return FirstForm{inner(j.dp, j.dp), inner(j.dp, j.dq), inner(j.dq, j.dq), 0.0};
    }();
    EXPECT_EQ(ff.E, 0.0);
    EXPECT_EQ(ff.F, 0.0);
    EXPECT_EQ(ff.G, 1.0);
    EXPECT_EQ(code_of([&] { (void)first_form(plane, {0.0, 0.0}); }), ErrorCode::DegenerateMetric);
    EXPECT_EQ(code_of([&] { (void)curvatures(plane, {0.0, 0.0}); }), ErrorCode::DegenerateMetric);
}

TEST(UnitNormal, TypeIAtAxis) {
    const double lam = 1.7;
    const auto n = unit_normal(GraphSolitonFamily::type_i(lam, 0.3).patch(), {0.5, 0.3});
    EXPECT_NEAR(n.N.x, lam, 1e-13);
    EXPECT_NEAR(n.N.y, 1 / (2 * lam), 1e-14);
    EXPECT_NEAR(n.N.z, 0.0, 1e-14);
    EXPECT_NEAR(n.W, 2 * lam, 1e-13);
}

TEST(UnitNormal, GraphConventionMatchesClosedForm) {
    for (const auto& s : random_family_points(10, 29)) {
        const auto d = s.family.partials_u(s.at.p, s.at.q);
        const double q = 2 * d.u_y + d.u_z * d.u_z;
        const int eps = q > 0 ? 1 : -1;
        const double W = std::sqrt(eps * q);
        const auto n = unit_normal(s.family.patch(), s.at);
        EXPECT_EQ(n.eps, eps);
        const double tol = 1e-12 * std::max(1.0, std::abs(d.u_z) / W);
        EXPECT_NEAR(n.N.x, -d.u_y / W, tol);
        EXPECT_NEAR(n.N.y, 1 / W, 1e-12);
        EXPECT_NEAR(n.N.z, d.u_z / W, tol);
        EXPECT_NEAR(n.W, W, 1e-12 * W);
    }
}

// Pinned sign relation: disc = -eps W^2 for every graph patch.
TEST(UnitNormal, DiscriminantSignRelationIsFrozen) {
    const auto fi = fundamental_forms(GraphSolitonFamily::type_i(1.0).patch(), {0.0, 0.5});
    EXPECT_GT(fi.disc, 0.0);
    EXPECT_EQ(fi.eps, -1);
    const auto fiii = fundamental_forms(GraphSolitonFamily::type_iii(1.0).patch(), {0.0, 0.5});
    EXPECT_LT(fiii.disc, 0.0);
    EXPECT_EQ(fiii.eps, 1);
    for (const auto& s : random_family_points(25, 31)) {
        const auto ff = fundamental_forms(s.family.patch(), s.at);
        EXPECT_NEAR(ff.disc, -ff.eps * ff.W * ff.W, 1e-10 * std::max(1.0, ff.W * ff.W));
    }
}

TEST(UnitNormal, OrthonormalOnSamples) {
    for (const auto& s : random_family_points(25, 37)) {
        const auto patch = s.family.patch();
        const auto j = patch.jet(s.at);
        const auto n = unit_normal(j);
        const double sc = std::max({1.0, euclidean_norm(n.N) * euclidean_norm(j.dp), euclidean_norm(n.N) * euclidean_norm(j.dq)});
        EXPECT_LT(std::abs(inner(n.N, n.N) - n.eps), 1e-10 * std::max(1.0, euclidean_norm_sq(n.N)));
        EXPECT_LT(std::abs(inner(n.N, j.dp)), 1e-10 * sc);
        EXPECT_LT(std::abs(inner(n.N, j.dq)), 1e-10 * sc);
    }
}

TEST(SecondForm, TypeIClosedForm) {
    const double lam = 0.9, z0 = -0.2;
    const auto patch = GraphSolitonFamily::type_i(lam, z0).patch();
    for (double z : {-1.0, -0.2, 2.5}) {
        const auto sf = second_form(patch, {0.3, z});
        EXPECT_NEAR(sf.e, 0.0, 1e-15);
        EXPECT_NEAR(sf.f, 0.0, 1e-15);
        EXPECT_NEAR(sf.g, -1 / (2 * lam * std::cosh((z - z0) / (2 * lam))), 1e-13);
    }
}

TEST(SecondForm, GraphFormula) {
    for (const auto& s : random_family_points(10, 41)) {
        const auto d = s.family.partials_u(s.at.p, s.at.q);
        const auto n = unit_normal(s.family.patch(), s.at);
        const auto sf = second_form(s.family.patch(), s.at);
        const double tol = 1e-12 * std::max(1.0, std::abs(d.u_zz) / n.W);
        EXPECT_NEAR(sf.e, -d.u_yy / n.W, tol);
        EXPECT_NEAR(sf.f, -d.u_yz / n.W, tol);
        EXPECT_NEAR(sf.g, -d.u_zz / n.W, tol);
    }
}

TEST(AffinePlane, TotallyGeodesicButNotSoliton) {
    const auto plane = affine_plane(0.7, -0.4);
    const auto sf = second_form(plane, {0.2, 0.1});
    EXPECT_EQ(sf.e, 0.0);
    EXPECT_EQ(sf.f, 0.0);
    EXPECT_EQ(sf.g, 0.0);
    const auto a = shape_operator(plane, {0.2, 0.1});
    for (const auto& row : a) {
        for (double v : row) {
            EXPECT_EQ(v, 0.0);
        }
    }
    const auto c = curvatures(plane, {0.2, 0.1});
    EXPECT_EQ(c.H, 0.0);
    EXPECT_EQ(c.K, 0.0);
    const auto n = unit_normal(plane, {0.2, 0.1});
    const double res = soliton_residual(plane, {0.2, 0.1});
    EXPECT_DOUBLE_EQ(res, -inner(kLightlikeX, n.N));
    EXPECT_GT(std::abs(res), 0.1);
}

TEST(ShapeOperator, TypeIPrincipalCurvatures) {
    const double lam = 1.4, z0 = 0.5;
    const auto patch = GraphSolitonFamily::type_i(lam, z0).patch();
    for (double z : {-3.0, 0.0, 0.5, 4.0}) {
        const auto k = principal_curvatures(shape_operator(patch, {0.0, z}));
        ASSERT_TRUE(k.has_value());
        const double expected = -std::cosh((z - z0) / (2 * lam)) / (2 * lam);
        EXPECT_NEAR((*k)[0], expected, 1e-10);
        EXPECT_NEAR((*k)[1], 0.0, 1e-10);
    }
}

TEST(ShapeOperator, TraceMatchesMeanCurvature) {
    for (const auto& s : random_family_points(25, 43)) {
        const auto a = shape_operator(s.family.patch(), s.at);
        const auto c = curvatures(s.family.patch(), s.at);
        EXPECT_NEAR(a[0][0] + a[1][1], c.H, 1e-9 * std::max(1.0, std::abs(c.H)));
        EXPECT_NEAR(a[0][0] * a[1][1] - a[0][1] * a[1][0], c.K, 1e-9);
    }
}

TEST(Curvatures, FlatWithHEqualMinusInverseW) {
    for (const auto& s : random_family_points(50, 47)) {
        const auto ff = fundamental_forms(s.family.patch(), s.at);
        EXPECT_LT(std::abs(ff.K), 1e-8);
        EXPECT_LT(std::abs(ff.H * ff.W + 1.0), 1e-9);
    }
}

TEST(SolitonResidual, VanishesForAllGraphFamilies) {
    for (const auto& s : random_family_points(50, 53)) {
        const auto& p = s.family.params();
        const double scale = std::max({1.0, p.lambda * p.lambda, p.a1 * p.a1, p.b1 * p.b1});
        EXPECT_LT(std::abs(soliton_residual(s.family.patch(), s.at)), 1e-9 * scale)
            << to_string(s.family.type()) << " at (" << s.at.p << ", " << s.at.q << ")";
    }
}

TEST(SolitonResidual, InvariantUnderTranslationAlongDirection) {
    for (const auto& s : random_family_points(10, 59)) {
        const auto patch = s.family.patch();
        for (double shift : {-5.0, 0.5, 12.0}) {
            const auto moved = patch.translated({shift, 0.0, 0.0});
            EXPECT_NEAR(soliton_residual(moved, s.at), soliton_residual(patch, s.at), 1e-14);
        }
    }
}

TEST(NumericPartials, ConstantMap) {
    const auto j = numeric_partials([](Point2) { return LorentzVector{2, -1, 3}; }, DomainSpec::full_plane(), {0.3, 0.4},
                                    1e-3);
    for (const auto& v : {j.dp, j.dq, j.dpp, j.dpq, j.dqq}) {
        EXPECT_EQ(v.x, 0.0);
        EXPECT_EQ(v.y, 0.0);
        EXPECT_EQ(v.z, 0.0);
    }
}

TEST(NumericPartials, StencilMustStayInside) {
    const auto fam = GraphSolitonFamily::type_iii(1.0);
    const auto patch = fam.patch();
    const Point2 near_edge{0.0, kPi - 1e-4};
    EXPECT_EQ(code_of([&] {
                  (void)numeric_partials([&](Point2 a) { return patch.position(a); }, fam.domain(), near_edge, 1e-3);
              }),
              ErrorCode::StencilOutOfDomain);
    EXPECT_EQ(code_of([&] {
                  (void)numeric_partials([&](Point2 a) { return patch.position(a); }, fam.domain(), {0, 0}, 0.0);
              }),
              ErrorCode::InvalidParam);
}

// Two step sizes a decade apart; the central-difference error must drop by about 100.
TEST(NumericPartials, TypeIIFirstPartialIsSecondOrder) {
    const double a1 = 1.5, b1 = 0.7;
    const auto fam = GraphSolitonFamily::type_ii(a1, b1);
    const auto map = [&](Point2 a) { return fam.patch().position(a); };
    const Point2 at{0.3, -0.2};
    const double exact = -2 * a1 * std::exp(-2 * at.p) - b1 * b1 / 2;
    const double e1 = std::abs(numeric_partials(map, fam.domain(), at, 1e-2).dp.x - exact);
    const double e2 = std::abs(numeric_partials(map, fam.domain(), at, 1e-3).dp.x - exact);
    const double slope = std::log10(e1 / e2);
    EXPECT_GT(slope, 1.8);
    EXPECT_LT(slope, 2.2);
}

TEST(NumericPartials, TypeISecondPartialWithinTruncationBound) {
    const double lam = 0.8;
    const auto fam = GraphSolitonFamily::type_i(lam);
    const auto map = [&](Point2 a) { return fam.patch().position(a); };
    for (double h : {1e-2, 1e-3}) {
        for (double z : {-1.0, 0.0, 0.7}) {
            const double w = z / (2 * lam);
            const double exact = 1 / (std::cosh(w) * std::cosh(w));
            const double got = numeric_partials(map, fam.domain(), {0.1, z}, h).dqq.x;
            EXPECT_LT(std::abs(got - exact), 10 * h * h * std::max(1.0, 1 / (lam * lam)));
        }
    }
}

// The default step 1e-4 beats 1e-5 for second partials: at 1e-5 roundoff dominates.
TEST(NumericPartials, DefaultStepScaleIsMeasured) {
    const auto fam = GraphSolitonFamily::type_ii(1.0, 1.0);
    const auto patch = fam.patch();
    const auto map = [&](Point2 a) { return patch.position(a); };
    double err4 = 0.0, err5 = 0.0;
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const Point2 at{u(rng), 2 * u(rng)};
        const double exact = patch.jet(at).dpp.x;
        err4 = std::max(err4, std::abs(numeric_partials(map, fam.domain(), at, 1e-4).dpp.x - exact));
        err5 = std::max(err5, std::abs(numeric_partials(map, fam.domain(), at, 1e-5).dpp.x - exact));
    }
    EXPECT_LT(err4, err5);
    EXPECT_EQ(kDefaultFdScale, 1e-4);
}

TEST(FiniteDifferencePatch, AgreesWithAnalyticGeometry) {
    for (const auto& s : random_family_points(5, 67)) {
        const auto analytic = s.family.patch();
        const auto fd = SurfacePatch::finite_difference([&](Point2 a) { return analytic.position(a); },
                                                        analytic.domain());
        EXPECT_EQ(fd.partials_kind(), PartialsKind::FiniteDifference);
        const auto a = fundamental_forms(analytic, s.at);
        const auto b = fundamental_forms(fd, s.at);
        EXPECT_NEAR(a.H, b.H, 1e-4 * std::max(1.0, std::abs(a.H)));
        EXPECT_NEAR(a.E, b.E, 1e-6 * std::max(1.0, std::abs(a.E)));
    }
}

TEST(Patch, OutOfDomainAndNonFinite) {
    const auto fam = GraphSolitonFamily::type_iv(1.0, 0.0);
    EXPECT_EQ(code_of([&] { (void)fam.patch().jet({0.0, -0.5}); }), ErrorCode::OutOfDomain);
    auto pos = [](Point2) { return LorentzVector{std::numeric_limits<double>::infinity(), 0, 0}; };
    const auto bad = SurfacePatch::finite_difference(pos, DomainSpec::full_plane());
    EXPECT_EQ(code_of([&] { (void)bad.jet({0.0, 0.0}); }), ErrorCode::NonFinite);
}
