#include "piverify/modular.hpp"

namespace piv {

using boost::multiprecision::abs;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

namespace {

Complex i_pow(int j) {
    switch (((j % 4) + 4) % 4) {
        case 0: return Complex(1);
        case 1: return imag_unit();
        case 2: return Complex(-1);
        default: return -imag_unit();
    }
}

Complex zeta6(int j) {
    // primitive sixth roots: exp(i pi j / 3)
    Real ang = real_pi() * j / 3;
    return exp(Complex(Real(0), ang));
}

UpperHalfPoint shift(const Complex& tau) { return UpperHalfPoint(tau); }

}  // namespace

Real modular_eq2_residual(const UpperHalfPoint& tau, const PrecisionContext& ctx) {
    auto kp = modulus_kprime(tau, ctx);
    auto k2 = modulus_k(shift(tau.tau * Complex(2)), ctx);
    BoundedValue one{Complex(1), Real(0)};
    auto rhs = bv_div(bv_sub(one, k2), bv_add(one, k2));
    auto diff = bv_sub(kp, rhs);
    return abs(diff.approx) + diff.err;
}

Real modular_eq5_residual(const AlphaBeta& ab, const PrecisionContext& ctx,
                          BranchCertificate* cert) {
    if (ab.degree != 5)
        throw std::invalid_argument("modular_eq5_residual: degree must be 5");
    const Complex &a = ab.alpha, &b = ab.beta;
    Complex one(1);
    Complex r1 = sqrt(a * b);
    Complex r2 = sqrt((one - a) * (one - b));
    Complex w = nth_root(Complex(16) * a * b * (one - a) * (one - b), 6);
    Real best(-1);
    std::vector<int> pick{0, 0, 0};
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2)
            for (int j = 0; j < 6; ++j) {
                Complex lhs = (s1 ? -r1 : r1) + (s2 ? -r2 : r2) +
                              Complex(2) * zeta6(j) * w;
                Real res = abs(lhs - one);
                if (best < 0 || res < best) {
                    best = res;
                    pick = {s1, s2, j};
                }
            }
    if (cert) *cert = {"modular_eq5", pick, best};
    // tolerance inflation for the root evaluations themselves
    (void)ctx;
    return best;
}

BoundedValue multiplier5(const AlphaBeta& ab, const PrecisionContext& ctx,
                         BranchCertificate* cert) {
    if (ab.degree != 5)
        throw std::invalid_argument("multiplier5: degree must be 5");
    const Complex &a = ab.alpha, &b = ab.beta;
    Complex one(1);
    if (abs(a) == 0 || abs(b) == 0 || abs(one - a) == 0 || abs(one - b) == 0)
        throw std::domain_error("multiplier5: alpha, beta must avoid 0 and 1");
    auto fa = hyp_F(a, ctx);
    auto fb = hyp_F(b, ctx);
    auto target = bv_div(fa, fb);
    Complex q1 = nth_root(b / a, 4);
    Complex q2 = nth_root((one - b) / (one - a), 4);
    Complex q3 = nth_root(b * (one - b) / (a * (one - a)), 4);
    Real best(-1);
    Complex bestv;
    std::vector<int> pick{0, 0, 0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int l = 0; l < 4; ++l) {
                Complex v = q1 * i_pow(i) + q2 * i_pow(j) - q3 * i_pow(l);
                Real res = abs(v - target.approx);
                if (best < 0 || res < best) {
                    best = res;
                    bestv = v;
                    pick = {i, j, l};
                }
            }
    if (best > target.err + pow(Real(10), -static_cast<long>(ctx.working_digits) / 2))
        throw std::domain_error(
            "multiplier5: no fourth-root branch matches F(alpha)/F(beta)");
    if (cert) *cert = {"multiplier5", pick, best};
    return {bestv, Real(0)};
}

Complex dbeta_dalpha(const AlphaBeta& ab, const PrecisionContext& ctx) {
    BranchCertificate cert;
    Real res = modular_eq5_residual(ab, ctx, &cert);
    if (res > ctx.target_tolerance)
        throw std::domain_error("dbeta_dalpha: modular equation not satisfied");
    const Complex &a = ab.alpha, &b = ab.beta;
    Complex one(1);
    Complex S1 = sqrt(a * b);
    if (cert.choice[0]) S1 = -S1;
    Complex S2 = sqrt((one - a) * (one - b));
    if (cert.choice[1]) S2 = -S2;
    Complex S3 = zeta6(cert.choice[2]) *
                 nth_root(Complex(16) * a * b * (one - a) * (one - b), 6);
    Complex third = Complex(Real(1) / 3);
    Complex num = S1 / (Complex(2) * a) - S2 / (Complex(2) * (one - a)) +
                  third * S3 * (one / a - one / (one - a));
    Complex den = S1 / (Complex(2) * b) - S2 / (Complex(2) * (one - b)) +
                  third * S3 * (one / b - one / (one - b));
    if (abs(den) < ctx.target_tolerance)
        throw std::domain_error("dbeta_dalpha: vanishing bracket coefficient");
    return -num / den;
}

TMultipliers g_from_beta(const AlphaBeta& ab, const PrecisionContext& ctx) {
    BranchCertificate cert;
    auto M_bv = multiplier5(ab, ctx, &cert);
    Complex M = M_bv.approx;
    const Complex &a = ab.alpha, &b = ab.beta;
    Complex one(1);
    Complex T1 = nth_root(b / a, 4) * i_pow(cert.choice[0]);
    Complex T2 = nth_root((one - b) / (one - a), 4) * i_pow(cert.choice[1]);
    Complex T3 = nth_root(b * (one - b) / (a * (one - a)), 4) * i_pow(cert.choice[2]);
    Complex bp = dbeta_dalpha(ab, ctx);
    Complex quarter = Complex(Real(1) / 4);
    Complex T1p = T1 * (bp / b - one / a) * quarter;
    Complex T2p = T2 * (one / (one - a) - bp / (one - b)) * quarter;
    Complex T3p = T3 * (bp / b - bp / (one - b) - one / a + one / (one - a)) * quarter;
    Complex Mp = T1p + T2p - T3p;
    TMultipliers out;
    out.t = one / M;
    out.t1 = -b * Mp / (M * M * bp);
    out.t2 = b / (a * M * bp);
    return out;
}

Real fg_e2_residual(const Complex& alpha, const UpperHalfPoint& tau,
                    const PrecisionContext& ctx, CutSide side) {
    Complex one(1);
    if (abs(one - alpha) == 0)
        throw std::domain_error("fg_e2_residual: alpha must not be 1");
    auto h = hyp_FG(alpha, ctx, side);
    auto e = e2(tau, ctx);
    auto lhs = bv_mul(h.F, h.G);
    auto f2 = bv_mul(h.F, h.F);
    auto rhs = bv_scale(one / (Complex(6) * (one - alpha)),
                        bv_add(e, bv_scale(Complex(2) * alpha - one, f2)));
    auto diff = bv_sub(lhs, rhs);
    return abs(diff.approx) + diff.err;
}

Complex r_p(int p, const Complex& l, const Complex& k) {
    Complex one(1);
    Complex kp = sqrt(one - k * k);
    Complex lp = sqrt(one - l * l);
    switch (p) {
        case 2:
            return l + kp;
        case 3:
            return one + k * l + kp * lp;
        case 5: {
            Complex u = k * l + kp * lp;
            return (Complex(3) + u) * sqrt((one + u) / Complex(2));
        }
        default:
            throw std::invalid_argument("r_p: p must be 2, 3 or 5");
    }
}

Real e2_inversion_residual(const UpperHalfPoint& tau, const PrecisionContext& ctx) {
    Complex t = tau.tau;
    auto lhs = e2(shift(Complex(-1) / t), ctx);
    auto rhs = bv_scale(t * t, e2(tau, ctx));
    // 6 tau / (pi i) = -6 i tau / pi
    Complex corr = Complex(Real(-6)) * imag_unit() * t / Complex(real_pi());
    auto diff = bv_sub(lhs, bv_add(rhs, BoundedValue{corr, Real(0)}));
    return abs(diff.approx) + diff.err;
}

SingularValueRecord singular_value(unsigned n) {
    if (n != 5) throw std::invalid_argument("singular_value: only n = 5 is tabulated");
    Real s5 = sqrt(Real(5));
    Real k5 = (sqrt(s5 - 1) - sqrt(3 - s5)) / 2;
    Real k5p = (sqrt(s5 - 1) + sqrt(3 - s5)) / 2;
    return {5, k5, k5p, 1 / (2 * k5 * k5p)};
}

E2Chain e2_tau0_chain(const PrecisionContext& outer_ctx) {
    // building blocks are combined through ~10 bounded operations; evaluate
    // them tighter so the propagated bound stays inside the outer tolerance
    PrecisionContext ctx = outer_ctx;
    ctx.target_tolerance = outer_ctx.target_tolerance / 100000;
    Real s5 = sqrt(Real(5));
    Real pi_v = real_pi();
    Complex sg{Real(0), 1 / s5};                      // i / sqrt(5)
    Complex tau0{Real(1) / 2, 3 * s5 / 10};           // 1/2 + (3/10) sqrt(-5)
    UpperHalfPoint u_sg{sg}, u_3sg{Complex(3) * sg}, u_i5{Complex(Real(0), s5)};
    UpperHalfPoint u_t0{tau0}, u_2t0{Complex(2) * tau0};

    auto th3 = [&](const UpperHalfPoint& t) { return theta(3, t, ctx); };
    auto sq = [](const BoundedValue& v) { return bv_mul(v, v); };

    auto t_sg = th3(u_sg), t_3sg = th3(u_3sg), t_i5 = th3(u_i5);
    auto t_t0 = th3(u_t0), t_2t0 = th3(u_2t0);

    // step 1: E2(i/sqrt 5) = 3 sqrt5/pi - c5 theta3^4(sg) via R_5 at sg,
    // with l = k(i sqrt 5) = k_5, k = k(i/sqrt 5) = k'_5 (singular values)
    auto sv = singular_value(5);
    Real kk = sv.k_n * sv.kprime_n;
    Real R5 = (3 + 2 * kk) * sqrt((1 + 2 * kk) / 2);
    auto c5 = bv_scale(Complex(R5 / 2), bv_div(sq(t_i5), sq(t_sg)));

    auto e_sg = e2(u_sg, ctx);
    auto chain_sg = bv_sub(BoundedValue{Complex(3 * s5 / pi_v), Real(0)},
                           bv_mul(c5, sq(sq(t_sg))));
    auto d1 = bv_sub(chain_sg, e_sg);
    if (abs(d1.approx) + d1.err > outer_ctx.target_tolerance)
        throw std::runtime_error("e2_tau0_chain: degree-5 step failed");

    // step 2: degree 3, E2(3 sg) = sqrt5/pi + r2 theta3^4(3 sg) via R_3 at sg
    auto R3 = bv_add(BoundedValue{Complex(1), Real(0)},
                     bv_add(bv_mul(modulus_k(u_sg, ctx), modulus_k(u_3sg, ctx)),
                            bv_mul(modulus_kprime(u_sg, ctx),
                                   modulus_kprime(u_3sg, ctx))));
    auto r2v = bv_scale(Complex(Real(1) / 3),
                        bv_sub(bv_mul(R3, bv_div(sq(t_sg), sq(t_3sg))),
                               bv_mul(c5, bv_div(sq(sq(t_sg)), sq(sq(t_3sg))))));
    auto e_3sg = e2(u_3sg, ctx);
    auto chain_3sg = bv_add(BoundedValue{Complex(s5 / pi_v), Real(0)},
                            bv_mul(r2v, sq(sq(t_3sg))));
    auto d2 = bv_sub(chain_3sg, e_3sg);
    if (abs(d2.approx) + d2.err > outer_ctx.target_tolerance)
        throw std::runtime_error("e2_tau0_chain: degree-3 step failed");

    // step 3: degree 2 at tau_0 (2 tau_0 = 1 + 3 sg, so E2(2 tau_0) = E2(3 sg))
    auto R2 = bv_add(modulus_k(u_2t0, ctx), modulus_kprime(u_t0, ctx));
    auto s2 = bv_div(bv_sub(bv_scale(Complex(2), bv_mul(r2v, sq(sq(t_3sg)))),
                            bv_mul(R2, bv_mul(sq(t_2t0), sq(t_t0)))),
                     sq(sq(t_t0)));

    auto e_t0 = e2(u_t0, ctx);
    auto chain_t0 = bv_add(BoundedValue{Complex(2 * s5 / pi_v), Real(0)},
                           bv_mul(s2, sq(sq(t_t0))));
    auto d3 = bv_sub(chain_t0, e_t0);
    if (abs(d3.approx) + d3.err > outer_ctx.target_tolerance)
        throw std::runtime_error("e2_tau0_chain: degree-2 step failed");

    // pi coefficient read back against the direct q-series value of E2(tau_0)
    auto pi_coeff = bv_scale(Complex(pi_v),
                             bv_sub(e_t0, bv_mul(s2, sq(sq(t_t0)))));
    return {pi_coeff, s2};
}

UpperHalfPoint tau_from_modulus(const Complex& X, const PrecisionContext& ctx,
                                CutSide side) {
    Complex one(1);
    if (abs(X) == 0 || abs(X - one) == 0 || abs(X + one) == 0)
        throw std::domain_error("tau_from_modulus: X must avoid 0 and +-1");
    auto num = hyp_F(X * X, ctx, side);
    auto den = hyp_F(one - X * X, ctx, side);
    Complex tau = imag_unit() * num.approx / den.approx;
    return UpperHalfPoint(tau);
}

std::vector<RadicalCheck> verify_radicals(const PrecisionContext& ctx) {
    Real s5 = sqrt(Real(5));
    Complex i = imag_unit();
    auto p4 = [](const Complex& z) { return pow(z, 4L); };
    auto p8 = [](const Complex& z) { return pow(z, 8L); };

    Complex f1m = sqrt(Complex((7 - 3 * s5) / 4)) - sqrt(Complex((3 - 3 * s5) / 4));
    Complex f2m = sqrt(Complex((3 - s5) / 2)) - sqrt(Complex((1 - s5) / 2));
    Complex f2p = sqrt(Complex((3 - s5) / 2)) + sqrt(Complex((1 - s5) / 2));
    Complex f1p = sqrt(Complex((7 + 3 * s5) / 4)) - sqrt(Complex((3 + 3 * s5) / 4));
    Complex f2pp = sqrt(Complex((3 + s5) / 2)) - sqrt(Complex((1 + s5) / 2));

    Complex X_rad = i * p4(f1m) * p4(f2m);
    Complex Y_rad = i * p4(f1m) * p4(f2p);
    Complex k10_rad = i * p4(f1p) * p4(f2pp);
    Complex XY_rad = -p8(f1m);
    Complex XoY_rad = p8(f2m);

    Complex tau0{Real(1) / 2, 3 * s5 / 10};
    UpperHalfPoint u_t0{tau0}, u_5t0{Complex(5) * tau0}, u_10t0{Complex(10) * tau0};
    Complex X_th = modulus_kprime(u_t0, ctx).approx;
    Complex Y_th = modulus_kprime(u_5t0, ctx).approx;
    Complex k10_th = modulus_k(u_10t0, ctx).approx;

    std::vector<RadicalCheck> out;
    out.push_back({"X radical vs theta", abs(X_rad - X_th)});
    out.push_back({"Y radical vs theta", abs(Y_rad - Y_th)});
    out.push_back({"k(10 tau0) radical vs theta", abs(k10_rad - k10_th)});
    out.push_back({"XY product display", abs(X_rad * Y_rad - XY_rad)});
    out.push_back({"X/Y quotient display", abs(X_rad / Y_rad - XoY_rad)});
    out.push_back({"degree-2 link Y = (1-k10)/(1+k10)",
                   abs(Y_rad - (Complex(1) - k10_rad) / (Complex(1) + k10_rad))});

    // k(10 tau0) = i k_45 / k'_45 (translation by one of k at i sqrt(45))
    UpperHalfPoint u_45{Complex(Real(0), sqrt(Real(45)))};
    Complex k45 = modulus_k(u_45, ctx).approx;
    Complex k45p = modulus_kprime(u_45, ctx).approx;
    out.push_back({"k(10 tau0) = i k45/k45'", abs(k10_th - i * k45 / k45p)});

    // the radical X, Y satisfy the two relations at (1/480, 8)
    Complex x{Real(1) / 480}, y{Real(8)};
    Complex oxy = Complex(1) + X_rad * Y_rad;
    Complex d = X_rad - Y_rad;
    Complex rel1 = Complex(16) * x * y * oxy * oxy + d * d;
    Complex U = d * oxy;
    Complex V = (X_rad + Y_rad) * (Complex(1) - X_rad * Y_rad);
    Complex rel2 = (y + Complex(4) * x) * U * U - y * V * V;
    out.push_back({"WZ relation 1 at (1/480, 8)", abs(rel1)});
    out.push_back({"WZ relation 2 at (1/480, 8)", abs(rel2) / abs(y)});
    return out;
}

}  // namespace piv
