#pragma once

// Classical special functions: the hypergeometric pair F, G, Legendre
// polynomials, Jacobi theta constants, Dedekind eta, Eisenstein E2 and the
// elliptic moduli.  All series are tail-bounded.
//
// Conventions:
//  - theta exponents use half-squares of the nome q = e^{2 pi i tau}; the
//    theta_2 prefactor is the analytic e^{i pi tau / 4} (no root extraction).
//  - F carries the standard branch cut along [1, inf); boundary values on the
//    cut require an explicit side directive (CutSide::above is the default
//    convention used elsewhere in this project).

#include "piverify/precision.hpp"
#include "piverify/rational.hpp"

#include <optional>

namespace piv {

enum class CutSide { none, above, below };

// tau = a + b * i * sqrt(d), with b > 0 and d square-free.
struct QuadraticIrrational {
    Rational a, b;
    unsigned d;
};

Complex eval_tau(const QuadraticIrrational& q);

struct UpperHalfPoint {
    Complex tau;
    std::optional<QuadraticIrrational> exact;

    UpperHalfPoint(Complex t);                 // validates Im > 0
    UpperHalfPoint(const QuadraticIrrational& q);
};

// F(alpha) = 2F1(1/2,1/2;1;alpha) and G(alpha) = alpha F'(alpha).
// Evaluation strategy: Maclaurin series for |alpha| <= 0.8, logarithmic
// connection at 1-alpha for |1-alpha| <= 0.8, otherwise Taylor-step
// continuation of the hypergeometric ODE along a path avoiding 0, 1 and the
// cut.  Throws std::domain_error for on-cut arguments without a side.
struct HypFG {
    BoundedValue F;
    BoundedValue G;
};
HypFG hyp_FG(const Complex& alpha, const PrecisionContext& ctx,
             CutSide side = CutSide::none);
BoundedValue hyp_F(const Complex& alpha, const PrecisionContext& ctx,
                   CutSide side = CutSide::none);
BoundedValue hyp_G(const Complex& alpha, const PrecisionContext& ctx,
                   CutSide side = CutSide::none);

// Degree-n Legendre polynomial by the three-term recurrence; exact-degree
// evaluation, err 0 within the guard digits.
BoundedValue legendre_P(long n, const Complex& z, const PrecisionContext& ctx);

BoundedValue theta(int kind /* 2, 3 or 4 */, const UpperHalfPoint& tau,
                   const PrecisionContext& ctx);
BoundedValue eta(const UpperHalfPoint& tau, const PrecisionContext& ctx);
BoundedValue e2(const UpperHalfPoint& tau, const PrecisionContext& ctx);

BoundedValue modulus_k(const UpperHalfPoint& tau, const PrecisionContext& ctx);
BoundedValue modulus_kprime(const UpperHalfPoint& tau, const PrecisionContext& ctx);

}  // namespace piv
