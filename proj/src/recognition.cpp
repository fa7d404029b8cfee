#include "piverify/recognition.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace piv {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::log10;
using boost::multiprecision::pow;
using boost::multiprecision::round;

namespace {

Real tenpow(long e) { return pow(Real(10), e); }

Int iround(const Real& x) {
    Real r = round(x);
    return r.convert_to<Int>();
}

using Vec = std::vector<Int>;

// Lenstra-Lenstra-Lovasz reduction with exact integer basis vectors and a
// floating Gram-Schmidt state, incremental updates on size reduction and
// swap, delta = 0.99.  The caller establishes a working precision wide
// enough for the Gram magnitudes.
void lll_reduce(std::vector<Vec>& b) {
    const std::size_t n = b.size();
    if (n < 2) return;
    const std::size_t dim = b[0].size();
    const Real delta = Real(99) / 100;
    const Real half = Real(1) / 2;

    std::vector<std::vector<Real>> mu(n, std::vector<Real>(n, Real(0)));
    std::vector<Real> B(n, Real(0));

    auto gso = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                Int gij = 0;
                for (std::size_t l = 0; l < dim; ++l) gij += b[i][l] * b[j][l];
                Real t(gij);
                for (std::size_t l = 0; l < j; ++l) t -= mu[i][l] * mu[j][l] * B[l];
                if (j < i)
                    mu[i][j] = t / B[j];
                else
                    B[i] = t;
            }
        }
    };
    gso();

    auto red = [&](std::size_t k, std::size_t l) {
        if (abs(mu[k][l]) <= half) return;
        Int q = iround(mu[k][l]);
        Real qr(q);
        for (std::size_t i = 0; i < dim; ++i) b[k][i] -= q * b[l][i];
        for (std::size_t j = 0; j < l; ++j) mu[k][j] -= qr * mu[l][j];
        mu[k][l] -= qr;
    };

    std::size_t k = 1;
    long iters = 0;
    while (k < n) {
        if (++iters > 2000000)
            throw TailModelError("lll_reduce: iteration budget exhausted");
        red(k, k - 1);
        if (B[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            std::swap(b[k], b[k - 1]);
            Real m = mu[k][k - 1];
            Real Bp = B[k] + m * m * B[k - 1];
            mu[k][k - 1] = m * B[k - 1] / Bp;
            B[k] = B[k - 1] * B[k] / Bp;
            B[k - 1] = Bp;
            for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
            for (std::size_t i = k + 1; i < n; ++i) {
                Real t = mu[i][k];
                mu[i][k] = mu[i][k - 1] - m * t;
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
            }
            k = k > 1 ? k - 1 : 1;
        } else {
            for (std::size_t l = k - 1; l-- > 0;) red(k, l);
            ++k;
        }
    }
}

struct Candidate {
    std::vector<Int> coeffs;   // ascending, length d+1, possibly zero-led
    Real residual;
    Int max_abs;
};

}  // namespace

IntPolynomial normalize_poly(IntPolynomial p) {
    while (!p.coeffs.empty() && p.coeffs.back() == 0) p.coeffs.pop_back();
    if (p.coeffs.empty()) throw std::invalid_argument("normalize_poly: zero polynomial");
    Int content = 0;
    for (const Int& c : p.coeffs) content = gcd(content, c);
    if (p.coeffs.back() < 0) content = -content;
    for (Int& c : p.coeffs) c /= content;
    return p;
}

Complex poly_eval(const IntPolynomial& p, const Complex& z) {
    Complex acc(0);
    for (std::size_t i = p.coeffs.size(); i-- > 0;) {
        const Int& c = p.coeffs[i];
        acc = acc * z + Complex(Real(c));
    }
    return acc;
}

IntPolynomial poly_derivative(const IntPolynomial& p) {
    IntPolynomial d;
    for (std::size_t i = 1; i < p.coeffs.size(); ++i) {
        Int c = p.coeffs[i] * static_cast<long>(i);
        d.coeffs.push_back(c);
    }
    if (d.coeffs.empty()) d.coeffs.push_back(Int(0));
    return d;
}

Real poly_residual(const IntPolynomial& p, const BoundedValue& v,
                   const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx.working_digits + 20);
    Real pv = abs(poly_eval(p, v.approx));
    Real dv = abs(poly_eval(poly_derivative(p), v.approx));
    return pv + dv * v.err;
}

Verdict verify_zero(const BoundedValue& v, const Real& tol) {
    Real mag = abs(v.approx);
    if (mag + v.err < tol) return Verdict::verified;
    if (mag - v.err > tol) return Verdict::refuted;
    return Verdict::inconclusive;
}

std::optional<IntPolynomial> recognize_min_poly(const BoundedValue& v,
                                                const RecognitionBudget& budget,
                                                const PrecisionContext& ctx) {
    if (budget.max_degree < 1 || budget.max_coeff_digits < 1)
        throw std::invalid_argument("recognize_min_poly: degenerate budget");
    if (!(budget.confidence_margin > 10))
        throw std::invalid_argument("recognize_min_poly: confidence margin must exceed 10");

    const long margin = budget.confidence_margin.convert_to<long>();

    // Scale exponent: all digits the input is certified to, minus headroom.
    long avail = static_cast<long>(ctx.working_digits) - 10;
    if (v.err > 0) {
        Real l = -log10(v.err);
        avail = std::min(avail, l.convert_to<long>() - 10);
    }
    const long need = budget.max_degree * budget.max_coeff_digits + margin;
    if (avail < need)
        throw std::invalid_argument(
            "recognize_min_poly: certified precision below the budget requirement");
    const long s = avail;

    PrecisionGuard guard(static_cast<unsigned>(2 * s + 120));
    Int scale_i = pow(Int(10), static_cast<unsigned>(s));
    Real scale(scale_i);
    const Real coeff_cap = tenpow(budget.max_coeff_digits);
    const Real accept_res = tenpow(-margin);
    const Real sep = tenpow(margin);

    std::vector<Complex> powers(static_cast<std::size_t>(budget.max_degree) + 1);
    powers[0] = Complex(1);
    for (long j = 1; j <= budget.max_degree; ++j)
        powers[j] = powers[j - 1] * v.approx;

    for (long d = 1; d <= budget.max_degree; ++d) {
        const std::size_t n = static_cast<std::size_t>(d) + 1;
        const std::size_t dim = n + 2;
        std::vector<Vec> basis(n, Vec(dim, Int(0)));
        for (std::size_t j = 0; j < n; ++j) {
            basis[j][j] = 1;
            basis[j][n] = iround(scale * powers[j].re);
            basis[j][n + 1] = iround(scale * powers[j].im);
        }
        lll_reduce(basis);

        std::vector<Candidate> cands;
        for (const auto& vec : basis) {
            Candidate c;
            c.coeffs.assign(vec.begin(), vec.begin() + static_cast<long>(n));
            Complex acc(0);
            c.max_abs = 0;
            bool nonzero = false;
            for (std::size_t j = 0; j < n; ++j) {
                const Int& cj = c.coeffs[j];
                if (cj != 0) nonzero = true;
                if (abs(cj) > c.max_abs) c.max_abs = abs(cj);
                acc += Complex(Real(cj)) * powers[j];
            }
            if (!nonzero) continue;
            c.residual = abs(acc);
            cands.push_back(std::move(c));
        }
        if (cands.size() < 2) continue;
        std::sort(cands.begin(), cands.end(),
                  [](const Candidate& a, const Candidate& b) {
                      return a.residual < b.residual;
                  });
        const Candidate& best = cands[0];
        const Candidate& second = cands[1];

        if (Real(best.max_abs) > coeff_cap) continue;
        if (!(best.residual < accept_res)) continue;
        if (!(second.residual > best.residual * sep)) continue;
        if (best.coeffs.back() == 0) continue;   // a genuinely lower degree
                                                 // would have been found already

        IntPolynomial p{best.coeffs};
        p = normalize_poly(p);
        if (poly_residual(p, v, ctx) >= accept_res) continue;
        return p;
    }
    return std::nullopt;
}

}  // namespace piv
