#include "piverify/rational.hpp"

namespace piv {

Int binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Int r;
    mpz_bin_uiui(r.backend().data(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return r;
}

Int factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial of negative");
    Int r;
    mpz_fac_ui(r.backend().data(), static_cast<unsigned long>(n));
    return r;
}

GaussianRational gr_pow(const GaussianRational& z, long n) {
    if (n < 0) return GaussianRational(1) / gr_pow(z, -n);
    GaussianRational acc(1), base = z;
    unsigned long e = static_cast<unsigned long>(n);
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Real to_real(const Rational& q) {
    return Real(numerator(q)) / Real(denominator(q));
}

Complex to_complex(const GaussianRational& z) {
    return {to_real(z.re), to_real(z.im)};
}

}  // namespace piv
