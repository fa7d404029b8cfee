#include "piverify/special.hpp"

#include <cmath>
#include <vector>

namespace piv {

using boost::multiprecision::abs;
using boost::multiprecision::log;
using boost::multiprecision::sqrt;

Complex eval_tau(const QuadraticIrrational& q) {
    Real root = sqrt(Real(q.d));
    return {to_real(q.a), to_real(q.b) * root};
}

UpperHalfPoint::UpperHalfPoint(Complex t) : tau(std::move(t)) {
    if (tau.im <= 0)
        throw std::domain_error("UpperHalfPoint: Im(tau) must be positive");
}

UpperHalfPoint::UpperHalfPoint(const QuadraticIrrational& q)
    : tau(eval_tau(q)), exact(q) {
    if (tau.im <= 0)
        throw std::domain_error("UpperHalfPoint: Im(tau) must be positive");
}

// ---------------------------------------------------------------------------
// Hypergeometric F and G

namespace {

bool on_cut(const Complex& z) { return z.im == 0 && z.re >= 1; }

struct FPair {
    Complex f, fp;   // F and dF/dalpha
    Real err;
};

// Maclaurin series of F and F' at |z| <= ~0.82.
FPair series_F(const Complex& z, const Real& tol) {
    Real az = abs(z);
    if (az == 0) return {Complex(1), Complex(Real(1) / 4), Real(0)};
    Complex f(0), fp(0);
    Complex zn(1);          // z^n
    Real an(1);             // ((1/2)_n / n!)^2
    Real ratio = az * Real(113) / 100;
    if (ratio >= 1) throw std::domain_error("series_F: |z| too large");
    Real tail_factor = ratio / (1 - ratio);
    long n = 0;
    for (;; ++n) {
        if (n > 200000) throw TailModelError("series_F: no convergence");
        Complex t = Complex(an) * zn;
        f += t;
        if (n >= 1) fp += Complex(an * n) * zn / z;   // n a_n z^{n-1}
        if (n >= 4 && abs(t) * (n + 1) * tail_factor < tol) break;
        Real half_shift = (2 * Real(n) + 1) / (2 * (Real(n) + 1));
        an *= half_shift * half_shift;
        zn *= z;
    }
    // |term| * (n+1) dominates both the F and the F' tails
    Real err = abs(zn) * an * (n + 2) * tail_factor * 4;
    return {f, fp, err};
}

// Connection at u = 1 - z for |u| <= ~0.85:
//   F(z)  = (1/pi) sum a_n (h_n - log u) u^n,
//   F'(z) = (1/pi) sum a_n u^{n-1} (1 - n (h_n - log u)),
// with h_0 = 4 log 2 and h_n = h_{n-1} + 2/n - 4/(2n-1).
FPair log_case_F(const Complex& z, const Real& tol, CutSide side) {
    Complex u = Complex(1) - z;
    Real au = abs(u);
    if (au == 0) throw std::domain_error("hyp_F: logarithmic singularity at 1");
    Complex L;
    if (u.im == 0 && u.re < 0) {
        // z real > 1: boundary value; arg(1 - (x + i0+)) = -pi
        if (side == CutSide::none)
            throw std::domain_error("hyp_F: on the branch cut without a side directive");
        L = {log(-u.re), side == CutSide::above ? -real_pi() : real_pi()};
    } else {
        L = log(u);
    }
    Real ratio = au * Real(115) / 100;
    if (ratio >= 1) throw std::domain_error("log_case_F: |1-z| too large");
    Real tail_factor = ratio / (1 - ratio);
    Real pi_v = real_pi();
    Real an(1), hn = 4 * log(Real(2));
    Complex un(1);   // u^n
    Complex f(0), fpu(0);
    long n = 0;
    for (;; ++n) {
        if (n > 200000) throw TailModelError("log_case_F: no convergence");
        Complex hnL = Complex(hn) - L;
        f += Complex(an) * hnL * un;
        fpu += Complex(an) * un / u * (Complex(1) - Complex(Real(n)) * hnL);
        if (n >= 6 && an * abs(hnL) * abs(un) * (n + 1) * tail_factor < tol) break;
        Real half_shift = (2 * Real(n) + 1) / (2 * (Real(n) + 1));
        an *= half_shift * half_shift;
        hn += Real(2) / (n + 1) - Real(4) / (2 * n + 1);
        un *= u;
    }
    Real err = an * (abs(Complex(hn) - L) + 1) * abs(un) * (n + 2) * tail_factor * 4 / pi_v;
    return {f / Complex(pi_v), fpu / Complex(pi_v), err};
}

Real dist_point_segment(const Complex& p, const Complex& a, const Complex& b) {
    Complex d = b - a;
    Real dd = norm(d);
    if (dd == 0) return abs(p - a);
    Real t = ((p.re - a.re) * d.re + (p.im - a.im) * d.im) / dd;
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    return abs(p - (a + Complex(t) * d));
}

bool path_clear(const std::vector<Complex>& pts) {
    const Real clearance = Real(15) / 100;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        if (dist_point_segment(Complex(0), pts[i], pts[i + 1]) < clearance) return false;
        if (dist_point_segment(Complex(1), pts[i], pts[i + 1]) < clearance) return false;
    }
    return true;
}

// Taylor-step continuation of z(1-z) w'' + (1-2z) w' - w/4 = 0.
FPair continue_F(const Complex& target, const Real& tol, CutSide side) {
    // pick a cut-avoiding polyline from a small-|z| start point to the target
    Real at = abs(target);
    if (at < Real(1) / 2) throw std::logic_error("continue_F: target too close to origin");
    std::vector<Complex> path;
    int sgn = target.im > 0 ? 1 : (target.im < 0 ? -1 : (side == CutSide::below ? -1 : 1));
    {
        Complex start = target * Complex(Real(2) / 5 / at);
        std::vector<Complex> direct{start, target};
        if (path_clear(direct)) {
            path = direct;
        } else {
            Complex w{Real(1), Real(4) / 5 * sgn};
            Complex start2 = w * Complex(Real(2) / 5 / abs(w));
            path = {start2, w, target};
            if (!path_clear(path))
                throw std::domain_error("continue_F: no cut-avoiding path found");
        }
    }
    FPair cur = series_F(path.front(), tol);
    Complex z = path.front();
    for (size_t seg = 1; seg < path.size(); ++seg) {
        bool done = false;
        while (!done) {
            Real radius = abs(z) < abs(z - Complex(1)) ? abs(z) : abs(z - Complex(1));
            Real maxstep = radius * Real(35) / 100;
            Complex d = path[seg] - z;
            Real rem = abs(d);
            if (rem == 0) break;
            done = rem <= maxstep;
            Complex h = done ? d : d * Complex(maxstep / rem);
            // Taylor coefficients at z
            Complex A0 = z * (Complex(1) - z);
            Complex A1 = Complex(1) - Complex(2) * z;   // also B0
            Complex c0 = cur.f, c1 = cur.fp;
            Complex w(0), wp(0);
            Complex hm(1);   // h^m
            Real quarter = Real(1) / 4;
            long m = 0;
            Real last_sz(0);
            for (;; ++m) {
                if (m > 100000) throw TailModelError("continue_F: Taylor series stalled");
                w += c0 * hm;
                if (m >= 1) wp += Complex(Real(m)) * c0 * hm / h;
                Real sz = abs(c0 * hm) * (m + 1);
                if (m >= 8 && sz < tol / 16 && last_sz < tol / 16) break;
                last_sz = sz;
                // c_{m+2} from c_{m+1}, c_m
                Complex num = A1 * Complex(Real(m + 1) * (m + 1)) * c1 +
                              (Complex(-Real(m) * (m - 1)) - Complex(2 * Real(m)) - Complex(quarter)) * c0;
                Complex c2 = -num / (A0 * Complex(Real(m + 1) * (m + 2)));
                c0 = c1;
                c1 = c2;
                hm *= h;
            }
            // step ratio <= 0.35, so a geometric tail with ratio 1/2 dominates
            cur.err += abs(c0 * hm) * (m + 2) * 2 + tol / 8;
            cur.f = w;
            cur.fp = wp;
            z = done ? path[seg] : z + h;
        }
    }
    return cur;
}

}  // namespace

HypFG hyp_FG(const Complex& alpha, const PrecisionContext& ctx, CutSide side) {
    if (on_cut(alpha) && side == CutSide::none)
        throw std::domain_error("hyp_F: argument on the branch cut without a side directive");
    Real tol = ctx.target_tolerance / 4;
    FPair p;
    if (abs(alpha) <= Real(4) / 5) {
        p = series_F(alpha, tol);
    } else if (abs(Complex(1) - alpha) <= Real(4) / 5) {
        p = log_case_F(alpha, tol, side);
    } else {
        p = continue_F(alpha, tol, side);
    }
    HypFG out;
    out.F = {p.f, p.err};
    out.G = {alpha * p.fp, abs(alpha) * p.err * 2};
    return out;
}

BoundedValue hyp_F(const Complex& alpha, const PrecisionContext& ctx, CutSide side) {
    return hyp_FG(alpha, ctx, side).F;
}

BoundedValue hyp_G(const Complex& alpha, const PrecisionContext& ctx, CutSide side) {
    return hyp_FG(alpha, ctx, side).G;
}

BoundedValue legendre_P(long n, const Complex& z, const PrecisionContext&) {
    if (n < 0) throw std::invalid_argument("legendre_P: negative degree");
    Complex pm1(1);
    if (n == 0) return {pm1, Real(0)};
    Complex p = z;
    for (long m = 1; m < n; ++m) {
        Complex next = (Complex(Real(2 * m + 1)) * z * p - Complex(Real(m)) * pm1) /
                       Complex(Real(m + 1));
        pm1 = p;
        p = next;
    }
    return {p, Real(0)};
}

// ---------------------------------------------------------------------------
// Theta constants, eta, E2

namespace {

Complex half_nome(const Complex& tau) {   // p = e^{i pi tau}, |p| < 1
    return exp(imag_unit() * Complex(real_pi()) * tau);
}

}  // namespace

BoundedValue theta(int kind, const UpperHalfPoint& tau, const PrecisionContext& ctx) {
    Complex p = half_nome(tau.tau);
    Real ap = abs(p);
    Real tol = ctx.target_tolerance / 4;
    if (kind == 2) {
        // 2 e^{i pi tau/4} sum_{n>=0} p^{n(n+1)}
        Complex pref = Complex(2) * exp(imag_unit() * Complex(real_pi() / 4) * tau.tau);
        Complex s(1), pw(1);
        long n = 1;
        for (;; ++n) {
            pw *= pow(p, 2 * n);   // p^{n(n+1)} increments by p^{2n}
            s += pw;
            if (abs(pw) * abs(pref) < tol) break;
            if (n > 100000) throw TailModelError("theta2: no convergence");
        }
        Real err = 2 * abs(pref) * abs(pw) * ap / (1 - ap);
        return {pref * s, err};
    }
    if (kind != 3 && kind != 4) throw std::invalid_argument("theta: kind must be 2, 3 or 4");
    Complex s(1), pw(1);
    long n = 1;
    for (;; ++n) {
        pw *= pow(p, 2 * n - 1);   // p^{n^2} increments by p^{2n-1}
        Complex t = Complex(2) * pw;
        if (kind == 4 && (n & 1)) t = -t;
        s += t;
        if (abs(t) < tol) break;
        if (n > 100000) throw TailModelError("theta: no convergence");
    }
    Real err = 4 * abs(pw) * ap / (1 - ap);
    return {s, err};
}

BoundedValue eta(const UpperHalfPoint& tau, const PrecisionContext& ctx) {
    Complex q = exp(imag_unit() * Complex(2 * real_pi()) * tau.tau);
    Real aq = abs(q);
    Real tol = ctx.target_tolerance / 4;
    Complex pref = exp(imag_unit() * Complex(real_pi() / 12) * tau.tau);   // q^{1/24}
    Complex prod(1), qn(1);
    long n = 1;
    for (;; ++n) {
        qn *= q;
        prod *= Complex(1) - qn;
        if (abs(qn) < tol) break;
        if (n > 100000) throw TailModelError("eta: no convergence");
    }
    // |log of the dropped tail| <= 2 |q|^{n+1} / (1 - |q|)
    Complex v = pref * prod;
    Real err = abs(v) * 4 * abs(qn) * aq / (1 - aq);
    return {v, err};
}

BoundedValue e2(const UpperHalfPoint& tau, const PrecisionContext& ctx) {
    // E2 = 24 D(eta)/eta = 1 - 24 sum n q^n/(1-q^n)
    Complex q = exp(imag_unit() * Complex(2 * real_pi()) * tau.tau);
    Real aq = abs(q);
    Real tol = ctx.target_tolerance / 4;
    Complex s(1), qn(1);
    long n = 1;
    for (;; ++n) {
        qn *= q;
        Complex t = Complex(-24 * Real(n)) * qn / (Complex(1) - qn);
        s += t;
        if (abs(t) * (n + 1) < tol) break;
        if (n > 100000) throw TailModelError("e2: no convergence");
    }
    Real err = 48 * (n + 1) * abs(qn) * aq / ((1 - aq) * (1 - aq));
    return {s, err};
}

BoundedValue modulus_k(const UpperHalfPoint& tau, const PrecisionContext& ctx) {
    auto t2 = theta(2, tau, ctx);
    auto t3 = theta(3, tau, ctx);
    auto q = bv_div(t2, t3);
    return bv_mul(q, q);
}

BoundedValue modulus_kprime(const UpperHalfPoint& tau, const PrecisionContext& ctx) {
    auto t4 = theta(4, tau, ctx);
    auto t3 = theta(3, tau, ctx);
    auto q = bv_div(t4, t3);
    return bv_mul(q, q);
}

}  // namespace piv
