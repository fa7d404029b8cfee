#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "piverify/wz_bridge.hpp"

using namespace piv;
using boost::multiprecision::abs;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

static Real tenpow(long e) { return pow(Real(10), e); }

static SeriesPoint headline_pt() {
    return {GaussianRational(Rational(1, 480)), GaussianRational(Rational(8))};
}

// 60-digit reference solution at (1/480, 8), frozen from an independent
// arbitrary-precision resolution of the relation system
static XYPair reference_pair() {
    return {{Real("0.578847182880335695957110387633024523418300650434576432396484"),
             Real("-0.815436042170996511801354111526303905105249697689272486089169")},
            {Real("0.999999977476537560362523809477045364338498368333465665177291"),
             Real("-0.000212242607343503467692731238848249306501332858840895436527203")},
            PairProvenance::manual};
}

TEST_CASE("relations_residual") {
    PrecisionGuard g(120);
    auto ctx = ctx_new(120);
    auto pt = headline_pt();

    // printed 8-digit approximations already satisfy both relations loosely
    XYPair printed{{Real("0.57884718"), Real("-0.81543604")},
                   {Real("0.99999998"), Real("-0.00021224")},
                   PairProvenance::manual};
    auto res8 = relations_residual(printed, pt, ctx);
    CHECK(res8.r1 < tenpow(-6));
    CHECK(res8.r2 < tenpow(-6));

    auto res = relations_residual(reference_pair(), pt, ctx);
    CHECK(res.r1 < tenpow(-58));
    CHECK(res.r2 < tenpow(-58));

    // x = 0 with X = Y solves both relations trivially
    SeriesPoint x0{GaussianRational(Rational(0)), GaussianRational(Rational(8))};
    XYPair diag{{Real("0.73"), Real("0.12")}, {Real("0.73"), Real("0.12")},
                PairProvenance::manual};
    auto rd = relations_residual(diag, x0, ctx);
    CHECK(rd.r1 == 0);

    XYPair degen{{Real(0), Real(1)}, {Real(0), Real(1)}, PairProvenance::manual};
    CHECK_THROWS_AS(relations_residual(degen, pt, ctx), std::domain_error);
}

TEST_CASE("solve_xy finds the reference pair") {
    PrecisionGuard g(120);
    auto ctx = ctx_new(120);
    auto sols = solve_xy(headline_pt(), ctx);
    CHECK(sols.size() >= 8);
    auto ref = reference_pair();
    bool found = false;
    for (const auto& s : sols) {
        auto r = relations_residual(s, headline_pt(), ctx);
        CHECK(r.r1 < tenpow(-100));
        CHECK(r.r2 < tenpow(-100));
        if (abs(s.X - ref.X) < tenpow(-50) && abs(s.Y - ref.Y) < tenpow(-50))
            found = true;
    }
    CHECK(found);
}

TEST_CASE("solve_xy matches the modular pair at (i/289, 14i)") {
    PrecisionGuard g(100);
    auto ctx = ctx_new(100);
    SeriesPoint pt{GaussianRational(Rational(0), Rational(1, 289)),
                   GaussianRational(Rational(0), Rational(14))};
    // independent theta-quotient evaluation at tau = i/sqrt(7)
    Real s7 = sqrt(Real(7));
    UpperHalfPoint tau{Complex(Real(0), 1 / s7)};
    UpperHalfPoint tau7{Complex(Real(0), s7)};
    Complex X = modulus_kprime(tau, ctx).approx;
    Complex Y = modulus_kprime(tau7, ctx).approx;
    auto sols = solve_xy(pt, ctx);
    bool found = false;
    for (const auto& s : sols)
        if (abs(s.X - X) < tenpow(-40) && abs(s.Y - Y) < tenpow(-40)) found = true;
    CHECK(found);
}

TEST_CASE("symmetry_orbit") {
    PrecisionGuard g(120);
    auto ctx = ctx_new(120);

    XYPair unit{{Real(1), Real(0)}, {Real(1), Real(0)}, PairProvenance::manual};
    auto uo = symmetry_orbit(unit, ctx);
    CHECK(uo.size() == 3);   // (1,1), its negation and the twist image (0,0)

    auto orbit = symmetry_orbit(reference_pair(), ctx);
    CHECK(orbit.size() >= 8);
    // every member solves the relations
    for (const auto& m : orbit) {
        auto r = relations_residual(m, headline_pt(), ctx);
        CHECK(r.r1 < tenpow(-40));
        CHECK(r.r2 < tenpow(-40));
    }
    // the twist-related pair (~0.000106121305 i, ~0.51647560 i) appears
    bool twist_found = false;
    for (const auto& m : orbit) {
        if (abs(m.X - Complex(Real(0), Real("0.000106121305"))) < tenpow(-9) &&
            abs(m.Y - Complex(Real(0), Real("0.51647560"))) < tenpow(-7))
            twist_found = true;
    }
    CHECK(twist_found);
}

TEST_CASE("wz_product") {
    PrecisionGuard g(120);
    auto ctx = ctx_new(120);

    XYPair unit{{Real(1), Real(0)}, {Real(1), Real(0)}, PairProvenance::manual};
    auto one = wz_product(unit, ctx);
    CHECK(abs(one.approx - Complex(1)) < tenpow(-50));

    // product formula reproduces the double series at the reference pair
    auto prod = wz_product(reference_pair(), ctx);
    auto dbl = a_double(headline_pt(), ctx);
    CHECK(bounded_eq(prod, dbl, tenpow(-40)) == Verdict::verified);

    // ... but NOT at the twist-related pair (monodromy negative control);
    // its arguments sit on the branch cut, so a side directive is needed
    auto orbit = symmetry_orbit(reference_pair(), ctx);
    bool checked = false;
    for (const auto& m : orbit) {
        if (!(abs(m.X - Complex(Real(0), Real("0.000106121305"))) < tenpow(-9)))
            continue;
        auto wrong = wz_product(m, ctx, CutSide::above);
        CHECK(abs(wrong.approx - dbl.approx) > tenpow(-3));
        checked = true;
    }
    CHECK(checked);
}

TEST_CASE("d_a_dx_hyper") {
    PrecisionGuard g(120);
    auto ctx = ctx_new(120);
    auto pt = headline_pt();
    auto ref = reference_pair();

    // x dA/dx = theta_x A
    auto dadx = d_a_dx_hyper(ref, pt, ctx);
    auto tx = a_theta(pt, EulerVar::x, ctx);
    auto lhs = bv_scale(to_complex(pt.x), dadx);
    CHECK(bounded_eq(lhs, tx, tenpow(-40)) == Verdict::verified);

    // finite difference of the double series along x
    Rational h(1, Int("10000000000000000000000000"));   // 10^-25
    SeriesPoint up{pt.x + GaussianRational(h), pt.y};
    SeriesPoint dn{pt.x - GaussianRational(h), pt.y};
    Complex fd = (a_double(up, ctx).approx - a_double(dn, ctx).approx) /
                 Complex(2 * to_real(h));
    CHECK(abs(dadx.approx - fd) < tenpow(-20));
}

TEST_CASE("certify_path") {
    PrecisionGuard g(100);
    auto ctx = ctx_new(100);
    auto cert = certify_path(reference_pair(), ctx);
    CHECK(cert.certified);
    CHECK(cert.max_ratio < Real(9) / 10);   // the known bound along this path
    CHECK(cert.min_cut_clearance > tenpow(-3));

    // the twist-related pair fails: its endpoint argument lies on the cut
    auto orbit = symmetry_orbit(reference_pair(), ctx);
    for (const auto& m : orbit) {
        if (!(abs(m.X - Complex(Real(0), Real("0.000106121305"))) < tenpow(-9)))
            continue;
        auto bad = certify_path(m, ctx);
        CHECK(!bad.certified);
    }
}
