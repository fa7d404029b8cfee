#pragma once

// Working-precision real/complex arithmetic and tail-bounded series summation.
//
// Reals are dynamic-precision MPFR floats (via boost::multiprecision).  The
// working precision is the process-wide MPFR default; establish it with a
// PrecisionGuard before doing arithmetic.  Complex values are rectangular
// (re, im) pairs at equal precision.

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <functional>
#include <stdexcept>
#include <string>

namespace piv {

using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;
using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

Real real_pi();

// ---------------------------------------------------------------------------
// Complex

struct Complex {
    Real re{}, im{};

    Complex() = default;
    Complex(Real r) : re(std::move(r)) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(int r) : re(r) {}
    Complex(long r) : re(r) {}
    Complex(double r) : re(r) {}

    Complex operator-() const { return {-re, -im}; }
    Complex conj() const { return {re, -im}; }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b);

    Complex& operator+=(const Complex& b) { re += b.re; im += b.im; return *this; }
    Complex& operator-=(const Complex& b) { re -= b.re; im -= b.im; return *this; }
    Complex& operator*=(const Complex& b) { *this = *this * b; return *this; }
    Complex& operator/=(const Complex& b) { *this = *this / b; return *this; }

    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

Real abs(const Complex& z);
Real norm(const Complex& z);        // |z|^2
Complex sqrt(const Complex& z);     // principal branch
Complex exp(const Complex& z);
Complex log(const Complex& z);      // principal branch
Complex pow(const Complex& z, long n);
Complex pow(const Complex& z, const Real& p);   // exp(p log z), principal
Complex nth_root(const Complex& z, int n);      // principal n-th root
Complex imag_unit();

std::string to_string(const Complex& z, unsigned digits = 30);

// ---------------------------------------------------------------------------
// Precision context

struct PrecisionContext {
    unsigned working_digits;   // decimal digits of working precision
    Real target_tolerance;     // absolute error target for final comparisons
};

// digits >= 20; tolerance = 10^(-digits/2), leaving half the digits as
// rounding headroom.
PrecisionContext ctx_new(unsigned digits);

// RAII guard establishing the MPFR working precision for a scope.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits)
        : saved_(Real::default_precision()) {
        Real::default_precision(digits);
    }
    explicit PrecisionGuard(const PrecisionContext& ctx) : PrecisionGuard(ctx.working_digits) {}
    ~PrecisionGuard() { Real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

// ---------------------------------------------------------------------------
// Bounded values

// Approximation together with a rigorous truncation-error bound.
struct BoundedValue {
    Complex approx;
    Real err{};   // upper bound on |approx - exact|, truncation only
};

// First-order error propagation; rounding stays inside the guard digits.
BoundedValue bv_add(const BoundedValue& a, const BoundedValue& b);
BoundedValue bv_sub(const BoundedValue& a, const BoundedValue& b);
BoundedValue bv_mul(const BoundedValue& a, const BoundedValue& b);
BoundedValue bv_div(const BoundedValue& a, const BoundedValue& b);
BoundedValue bv_scale(const Complex& c, const BoundedValue& a);

enum class Verdict { verified, refuted, inconclusive };
const char* verdict_name(Verdict v);

// verified if the values agree within tol even after inflating by both error
// bounds; refuted if they disagree by more than tol plus both bounds.
Verdict bounded_eq(const BoundedValue& a, const BoundedValue& b, const Real& tol);

// ---------------------------------------------------------------------------
// Geometric-tail summation

struct GeometricTailModel {
    Real ratio;        // asymptotic term ratio, in [0,1)
    long onset_index;  // index from which |term_{k+1}/term_k| <= ratio holds

    static GeometricTailModel from_ratio(const Real& r);  // onset 2*ceil(1/(1-r))
};

struct TailModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sums term(0) + term(1) + ... until k >= onset and the geometric tail bound
// |term_k| * ratio/(1-ratio) drops below ctx.target_tolerance/4; that bound
// becomes err.  Throws TailModelError after 10^6 terms.
BoundedValue sum_with_tail(const std::function<Complex(long)>& term,
                           const GeometricTailModel& model,
                           const PrecisionContext& ctx);

}  // namespace piv
