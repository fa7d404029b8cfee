#pragma once

// Recognition of high-precision constants as algebraic numbers, and
// certification of values against known integer polynomials.
//
// Method: integer relation detection by lattice reduction over the power
// basis 1, v, v^2, ..., with the real and imaginary parts of the powers
// entering as two jointly scaled constraint rows, so complex inputs yield
// integer (not Gaussian-integer) polynomials directly.

#include "piverify/precision.hpp"
#include "piverify/rational.hpp"

#include <optional>
#include <vector>

namespace piv {

struct IntPolynomial {
    std::vector<Int> coeffs;   // ascending degree; leading coefficient nonzero

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};

// Divides out the content and makes the leading coefficient positive.
IntPolynomial normalize_poly(IntPolynomial p);

// Horner evaluation at a complex point.
Complex poly_eval(const IntPolynomial& p, const Complex& z);
IntPolynomial poly_derivative(const IntPolynomial& p);

struct RecognitionBudget {
    long max_degree = 8;
    long max_coeff_digits = 10;
    Real confidence_margin = Real(20);   // must exceed 10
};

// Returns the lowest-degree primitive integer polynomial within the budget
// that annihilates v beyond the confidence margin, or nullopt.  Requires
// v.err < 10^-(max_degree * max_coeff_digits + confidence_margin).
std::optional<IntPolynomial> recognize_min_poly(const BoundedValue& v,
                                                const RecognitionBudget& budget,
                                                const PrecisionContext& ctx);

// |P(v)| inflated by |P'(v)| * v.err.
Real poly_residual(const IntPolynomial& p, const BoundedValue& v,
                   const PrecisionContext& ctx);

// verified iff |v| + err < tol; refuted iff |v| - err > tol.
Verdict verify_zero(const BoundedValue& v, const Real& tol);

}  // namespace piv
