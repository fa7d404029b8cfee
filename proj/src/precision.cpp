#include "piverify/precision.hpp"

#include <sstream>

namespace piv {

Real real_pi() {
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    if (d == 0) throw std::domain_error("Complex division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

Real abs(const Complex& z) {
    using boost::multiprecision::hypot;
    return hypot(z.re, z.im);
}

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Complex sqrt(const Complex& z) {
    using boost::multiprecision::sqrt;
    using boost::multiprecision::abs;
    if (z.im == 0) {
        if (z.re >= 0) return {sqrt(z.re), Real(0)};
        return {Real(0), sqrt(-z.re)};
    }
    Real r = piv::abs(z);
    Real u = sqrt((r + z.re) / 2);
    Real v = sqrt((r - z.re) / 2);
    if (z.im < 0) v = -v;
    return {u, v};
}

Complex exp(const Complex& z) {
    using boost::multiprecision::exp;
    using boost::multiprecision::sin;
    using boost::multiprecision::cos;
    Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

Complex log(const Complex& z) {
    using boost::multiprecision::log;
    using boost::multiprecision::atan2;
    if (z.re == 0 && z.im == 0) throw std::domain_error("log(0)");
    return {log(piv::abs(z)), atan2(z.im, z.re)};
}

Complex pow(const Complex& z, long n) {
    if (n < 0) return Complex(1) / pow(z, -n);
    Complex acc(1), base = z;
    unsigned long e = static_cast<unsigned long>(n);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

Complex pow(const Complex& z, const Real& p) {
    return exp(Complex(p) * log(z));
}

Complex nth_root(const Complex& z, int n) {
    if (z.re == 0 && z.im == 0) return Complex(0);
    return exp(log(z) / Complex(Real(n)));
}

Complex imag_unit() { return {Real(0), Real(1)}; }

std::string to_string(const Complex& z, unsigned digits) {
    std::ostringstream os;
    os << z.re.str(digits) << (z.im < 0 ? " - " : " + ")
       << boost::multiprecision::abs(z.im).str(digits) << "i";
    return os.str();
}

PrecisionContext ctx_new(unsigned digits) {
    if (digits < 20)
        throw std::invalid_argument("ctx_new: need at least 20 digits");
    PrecisionContext ctx;
    ctx.working_digits = digits;
    ctx.target_tolerance = boost::multiprecision::pow(Real(10), -static_cast<long>(digits / 2));
    return ctx;
}

BoundedValue bv_add(const BoundedValue& a, const BoundedValue& b) {
    return {a.approx + b.approx, a.err + b.err};
}

BoundedValue bv_sub(const BoundedValue& a, const BoundedValue& b) {
    return {a.approx - b.approx, a.err + b.err};
}

BoundedValue bv_mul(const BoundedValue& a, const BoundedValue& b) {
    // |ab' - AB| <= |A| eb + |B| ea + ea eb
    Real err = abs(a.approx) * b.err + abs(b.approx) * a.err + a.err * b.err;
    return {a.approx * b.approx, err};
}

BoundedValue bv_div(const BoundedValue& a, const BoundedValue& b) {
    Real bb = abs(b.approx);
    if (bb <= b.err)
        throw std::domain_error("bv_div: denominator not bounded away from zero");
    Complex q = a.approx / b.approx;
    Real err = (a.err + abs(q) * b.err) / (bb - b.err);
    return {q, err};
}

BoundedValue bv_scale(const Complex& c, const BoundedValue& a) {
    return {c * a.approx, abs(c) * a.err};
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::verified: return "verified";
        case Verdict::refuted: return "refuted";
        default: return "inconclusive";
    }
}

Verdict bounded_eq(const BoundedValue& a, const BoundedValue& b, const Real& tol) {
    if (tol <= 0) throw std::invalid_argument("bounded_eq: tol must be positive");
    Real d = abs(a.approx - b.approx);
    if (d + a.err + b.err < tol) return Verdict::verified;
    if (d - a.err - b.err > tol) return Verdict::refuted;
    return Verdict::inconclusive;
}

GeometricTailModel GeometricTailModel::from_ratio(const Real& r) {
    using boost::multiprecision::ceil;
    if (r < 0 || r >= 1)
        throw std::invalid_argument("GeometricTailModel: ratio must be in [0,1)");
    long onset = 2 * static_cast<long>(ceil(1 / (1 - r)));
    return {r, onset};
}

BoundedValue sum_with_tail(const std::function<Complex(long)>& term,
                           const GeometricTailModel& model,
                           const PrecisionContext& ctx) {
    if (model.ratio >= 1)
        throw std::invalid_argument("sum_with_tail: ratio must be < 1");
    constexpr long kMaxTerms = 1000000;
    Real tail_factor = model.ratio / (1 - model.ratio);
    Real threshold = ctx.target_tolerance / 4;
    Complex acc(0);
    for (long k = 0; k < kMaxTerms; ++k) {
        Complex t = term(k);
        acc += t;
        if (k >= model.onset_index) {
            Real tail = abs(t) * tail_factor;
            if (tail < threshold) return {acc, tail};
        }
    }
    throw TailModelError("sum_with_tail: tail bound not reached after 10^6 terms");
}

}  // namespace piv
