#pragma once

// Modular machinery: modular equations of degree 2 and 5, the degree-5
// multiplier and its derivative along the modular curve, the F*G-E2 identity,
// the multipliers of the second kind R_p, the E2 inversion law, singular
// values, the full E2(tau_0) evaluation chain, modulus inversion, and the
// radical-expression cross-checks.
//
// Root-branch policy: the classical displays assume "appropriate" roots.
// Operations that face a branch ambiguity scan the finite set of principal
// root twists, select the residual-minimizing combination and report it as a
// certificate, so every choice is reproducible.

#include "piverify/precision.hpp"
#include "piverify/special.hpp"

#include <string>
#include <vector>

namespace piv {

struct AlphaBeta {
    Complex alpha;   // k^2(tau)
    Complex beta;    // k^2(p tau)
    int degree = 5;
};

// A recorded root-branch selection: unit indices into the scanned sets.
struct BranchCertificate {
    std::string op;
    std::vector<int> choice;
    Real residual;
};

// |k'(tau) - (1 - k(2 tau)) / (1 + k(2 tau))|
Real modular_eq2_residual(const UpperHalfPoint& tau, const PrecisionContext& ctx);

// |s1 sqrt(a b) + s2 sqrt((1-a)(1-b)) + 2 z6 (16 a b (1-a)(1-b))^{1/6} - 1|
// minimized over the sign/sixth-root twists (s1, s2, z6).
Real modular_eq5_residual(const AlphaBeta& ab, const PrecisionContext& ctx,
                          BranchCertificate* cert = nullptr);

// The degree-5 multiplier F(alpha)/F(beta) as the radical display
//   (b/a)^{1/4} + ((1-b)/(1-a))^{1/4} - (b(1-b)/(a(1-a)))^{1/4},
// fourth-root twists resolved against a direct hypergeometric evaluation.
BoundedValue multiplier5(const AlphaBeta& ab, const PrecisionContext& ctx,
                         BranchCertificate* cert = nullptr);

// d beta / d alpha along the degree-5 modular curve, by implicit
// differentiation of the branch-resolved modular equation.
Complex dbeta_dalpha(const AlphaBeta& ab, const PrecisionContext& ctx);

// Algebraic multipliers t, t1, t2 with F(beta) = t F(alpha) and
// G(beta) = t1 F(alpha) + t2 G(alpha).
struct TMultipliers {
    Complex t, t1, t2;
};
TMultipliers g_from_beta(const AlphaBeta& ab, const PrecisionContext& ctx);

// |F(a)G(a) - (E2(tau) + (2a-1) F(a)^2) / (6(1-a))| at a = k^2(tau).
Real fg_e2_residual(const Complex& alpha, const UpperHalfPoint& tau,
                    const PrecisionContext& ctx, CutSide side = CutSide::none);

// Ramanujan's multipliers of the second kind, l = k(p tau), k = k(tau):
//   R_2 = l + k',  R_3 = 1 + k l + k' l',  R_5 = (3 + kl + k'l') sqrt((1 + kl + k'l')/2)
// with complementary moduli as principal sqrt(1 - .^2).  Each equals
// (p E2(p tau) - E2(tau)) / (theta3^2(p tau) theta3^2(tau)).
Complex r_p(int p, const Complex& l, const Complex& k);

// |E2(-1/tau) - tau^2 E2(tau) - 6 tau/(pi i)|
Real e2_inversion_residual(const UpperHalfPoint& tau, const PrecisionContext& ctx);

struct SingularValueRecord {
    unsigned n;
    Real k_n, kprime_n;
    Real g12_n;   // G_n^12 = 1/(2 k_n k'_n)
};
// Exact-radical singular values; supported n: 5.
SingularValueRecord singular_value(unsigned n);

// The E2(tau_0) evaluation chain at tau_0 = 1/2 + (3/10) sqrt(-5):
// E2(i/sqrt 5) via R_5 and singular values, a degree-3 step via R_3, a
// degree-2 step via R_2, producing E2(tau_0) = pi_coeff/pi + s2 theta3^4(tau_0).
// Every intermediate E2 value is cross-checked against its q-series; a
// sub-step residual above ctx.target_tolerance throws.
struct E2Chain {
    BoundedValue pi_coeff;   // must equal 2 sqrt(5)
    BoundedValue s2;
};
E2Chain e2_tau0_chain(const PrecisionContext& ctx);

// Inversion: tau = i F(X^2) / F(1 - X^2), so that k'(tau)^2 = X^2.
UpperHalfPoint tau_from_modulus(const Complex& X, const PrecisionContext& ctx,
                                CutSide side = CutSide::none);

struct RadicalCheck {
    std::string name;
    Real residual;
};
// Evaluates the closed radical expressions for X = k'(tau_0), Y = k'(5 tau_0),
// k(10 tau_0), the product/quotient displays and the degree-2 link, comparing
// each against theta-quotient evaluations.
std::vector<RadicalCheck> verify_radicals(const PrecisionContext& ctx);

}  // namespace piv
