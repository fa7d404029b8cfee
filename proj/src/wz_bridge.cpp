#include "piverify/wz_bridge.hpp"

#include <algorithm>

namespace piv {

using boost::multiprecision::abs;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

namespace {

struct RelSystem {
    Complex x, y;

    Complex f1(const Complex& X, const Complex& Y) const {
        Complex oxy = Complex(1) + X * Y;
        Complex d = X - Y;
        return Complex(16) * x * y * oxy * oxy + d * d;
    }
    Complex f2(const Complex& X, const Complex& Y) const {
        Complex U = (X - Y) * (Complex(1) + X * Y);
        Complex V = (X + Y) * (Complex(1) - X * Y);
        return (y + Complex(4) * x) * U * U - y * V * V;
    }
    // partials
    void grads(const Complex& X, const Complex& Y, Complex& f1X, Complex& f1Y,
               Complex& f2X, Complex& f2Y) const {
        Complex oxy = Complex(1) + X * Y;
        Complex d = X - Y;
        f1X = Complex(32) * x * y * Y * oxy + Complex(2) * d;
        f1Y = Complex(32) * x * y * X * oxy - Complex(2) * d;
        Complex U = d * oxy;
        Complex V = (X + Y) * (Complex(1) - X * Y);
        Complex UX = Complex(1) + Complex(2) * X * Y - Y * Y;
        Complex UY = Complex(-1) + X * X - Complex(2) * X * Y;
        Complex VX = Complex(1) - Complex(2) * X * Y - Y * Y;
        Complex VY = Complex(1) - X * X - Complex(2) * X * Y;
        Complex w = y + Complex(4) * x;
        f2X = Complex(2) * w * U * UX - Complex(2) * y * V * VX;
        f2Y = Complex(2) * w * U * UY - Complex(2) * y * V * VY;
    }
    // partials with respect to x at fixed y
    Complex f1x(const Complex& X, const Complex& Y) const {
        Complex oxy = Complex(1) + X * Y;
        return Complex(16) * y * oxy * oxy;
    }
    Complex f2x(const Complex& X, const Complex& Y) const {
        Complex U = (X - Y) * (Complex(1) + X * Y);
        return Complex(4) * U * U;
    }
};

// Solve the 2x2 system J [dX dY]^T = rhs.
void solve2(const Complex& a, const Complex& b, const Complex& c, const Complex& d,
            const Complex& r1, const Complex& r2, Complex& dX, Complex& dY) {
    Complex det = a * d - b * c;
    if (abs(det) == 0) throw std::domain_error("wz-bridge: singular 2x2 system");
    dX = (r1 * d - b * r2) / det;
    dY = (a * r2 - r1 * c) / det;
}

// Determinant by Gaussian elimination with partial pivoting.
Complex det_n(std::vector<std::vector<Complex>> m) {
    size_t n = m.size();
    Complex det(1);
    for (size_t i = 0; i < n; ++i) {
        size_t piv = i;
        for (size_t r = i + 1; r < n; ++r)
            if (abs(m[r][i]) > abs(m[piv][i])) piv = r;
        if (abs(m[piv][i]) == 0) return Complex(0);
        if (piv != i) {
            std::swap(m[piv], m[i]);
            det = -det;
        }
        det *= m[i][i];
        for (size_t r = i + 1; r < n; ++r) {
            Complex f = m[r][i] / m[i][i];
            for (size_t cc = i; cc < n; ++cc) m[r][cc] -= f * m[i][cc];
        }
    }
    return det;
}

// Coefficients in Y of the two cleared relation polynomials at a fixed X.
void poly_coeffs(const RelSystem& sys, const Complex& X, std::vector<Complex>& p1,
                 std::vector<Complex>& p2) {
    Complex xy16 = Complex(16) * sys.x * sys.y;
    p1 = {xy16 + X * X, (xy16 - Complex(2)) * X, xy16 * X * X + Complex(1)};
    // U = X + (X^2-1) Y - X Y^2, V = X + (1-X^2) Y - X Y^2
    std::vector<Complex> U = {X, X * X - Complex(1), -X};
    std::vector<Complex> V = {X, Complex(1) - X * X, -X};
    auto sq = [](const std::vector<Complex>& p) {
        std::vector<Complex> r(2 * p.size() - 1, Complex(0));
        for (size_t i = 0; i < p.size(); ++i)
            for (size_t j = 0; j < p.size(); ++j) r[i + j] += p[i] * p[j];
        return r;
    };
    auto U2 = sq(U), V2 = sq(V);
    Complex w = sys.y + Complex(4) * sys.x;
    p2.assign(5, Complex(0));
    for (size_t i = 0; i < 5; ++i) p2[i] = w * U2[i] - sys.y * V2[i];
}

// Resultant_Y(P1, P2) evaluated at X via the 6x6 Sylvester determinant.
Complex resultant_at(const RelSystem& sys, const Complex& X) {
    std::vector<Complex> p1, p2;
    poly_coeffs(sys, X, p1, p2);
    // Sylvester matrix of p1 (deg 2) and p2 (deg 4): 4 rows of p1, 2 of p2
    std::vector<std::vector<Complex>> m(6, std::vector<Complex>(6, Complex(0)));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c <= 2; ++c) m[r][r + c] = p1[2 - c];
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c <= 4; ++c) m[4 + r][r + c] = p2[4 - c];
    return det_n(std::move(m));
}

std::vector<Complex> durand_kerner(std::vector<Complex> poly, unsigned digits) {
    // normalize, ascending coefficients, leading = last
    while (poly.size() > 1 && abs(poly.back()) == 0) poly.pop_back();
    size_t deg = poly.size() - 1;
    if (deg == 0) return {};
    Complex lc = poly.back();
    for (auto& c : poly) c /= lc;
    std::vector<Complex> z(deg);
    Complex seed{Real(4) / 10, Real(9) / 10};
    Complex acc(1);
    for (size_t k = 0; k < deg; ++k) {
        acc *= seed;
        z[k] = acc;
    }
    Real stop = pow(Real(10), -static_cast<long>(digits) + 8);
    auto eval = [&](const Complex& v) {
        Complex s(0);
        for (size_t i = poly.size(); i-- > 0;) s = s * v + poly[i];
        return s;
    };
    for (int iter = 0; iter < 2000; ++iter) {
        Real worst(0);
        for (size_t k = 0; k < deg; ++k) {
            Complex denom(1);
            for (size_t j = 0; j < deg; ++j)
                if (j != k) denom *= z[k] - z[j];
            if (abs(denom) == 0) continue;
            Complex delta = eval(z[k]) / denom;
            z[k] -= delta;
            Real d = abs(delta);
            if (d > worst) worst = d;
        }
        if (worst < stop) break;
    }
    return z;
}

}  // namespace

RelationResidual relations_residual(const XYPair& pair, const SeriesPoint& pt,
                                    const PrecisionContext&) {
    RelSystem sys{to_complex(pt.x), to_complex(pt.y)};
    if (abs(Complex(1) + pair.X * pair.Y) == 0)
        throw std::domain_error("relations_residual: degenerate pair, 1 + XY = 0");
    Real ay = abs(sys.y);
    if (ay == 0) throw std::domain_error("relations_residual: y must be nonzero");
    return {abs(sys.f1(pair.X, pair.Y)), abs(sys.f2(pair.X, pair.Y)) / ay};
}

std::vector<XYPair> solve_xy(const SeriesPoint& pt, const PrecisionContext& ctx) {
    RelSystem sys{to_complex(pt.x), to_complex(pt.y)};
    if (abs(sys.x) == 0 || abs(sys.y) == 0)
        throw std::domain_error("solve_xy: x and y must be nonzero");

    // sample the resultant on a circle and interpolate by inverse DFT
    constexpr int kSamples = 32;   // resultant degree is at most 16
    Real rho = Real(6) / 5;
    std::vector<Complex> vals(kSamples);
    Real two_pi = 2 * real_pi();
    for (int j = 0; j < kSamples; ++j) {
        Real ang = two_pi * j / kSamples;
        Complex Xj = Complex(rho) * exp(Complex(Real(0), ang));
        vals[j] = resultant_at(sys, Xj);
    }
    std::vector<Complex> coeffs(kSamples);
    for (int m = 0; m < kSamples; ++m) {
        Complex s(0);
        for (int j = 0; j < kSamples; ++j) {
            Real ang = -two_pi * j * m / kSamples;
            s += vals[j] * exp(Complex(Real(0), ang));
        }
        coeffs[m] = s / Complex(Real(kSamples) * pow(rho, m));
    }
    // trim numerically-zero high coefficients
    Real scale(0);
    for (auto& c : coeffs) scale = std::max(scale, abs(c));
    if (scale == 0) throw std::domain_error("solve_xy: identically zero resultant");
    Real trim = scale * pow(Real(10), -static_cast<long>(ctx.working_digits) / 2);
    while (coeffs.size() > 1 && abs(coeffs.back()) < trim) coeffs.pop_back();

    std::vector<Complex> roots = durand_kerner(coeffs, ctx.working_digits);

    Real accept = pow(Real(10), -static_cast<long>(ctx.working_digits) + 10);
    Real dedupe = pow(Real(10), -static_cast<long>(ctx.working_digits) / 4);
    std::vector<XYPair> out;
    for (const Complex& X0 : roots) {
        std::vector<Complex> p1, p2;
        poly_coeffs(sys, X0, p1, p2);
        if (abs(p1[2]) == 0) continue;
        // quadratic in Y
        Complex disc = sqrt(p1[1] * p1[1] - Complex(4) * p1[2] * p1[0]);
        for (int sgn : {1, -1}) {
            Complex Y0 = (-p1[1] + Complex(Real(sgn)) * disc) / (Complex(2) * p1[2]);
            Complex X = X0, Y = Y0;
            bool ok = false;
            for (int it = 0; it < 200; ++it) {
                Complex F1 = sys.f1(X, Y), F2 = sys.f2(X, Y);
                if (abs(F1) + abs(F2) < accept / 100) {
                    ok = true;
                    break;
                }
                Complex a, b, c, d, dX, dY;
                sys.grads(X, Y, a, b, c, d);
                try {
                    solve2(a, b, c, d, F1, F2, dX, dY);
                } catch (const std::domain_error&) {
                    break;
                }
                X -= dX;
                Y -= dY;
                if (abs(dX) + abs(dY) > 100) break;   // diverged
            }
            if (!ok) continue;
            if (abs(Complex(1) + X * Y) < dedupe) continue;
            XYPair cand{X, Y, PairProvenance::solved};
            auto res = relations_residual(cand, pt, ctx);
            if (res.r1 > accept || res.r2 > accept) continue;
            bool dup = false;
            for (const auto& p : out)
                if (abs(p.X - X) < dedupe && abs(p.Y - Y) < dedupe) dup = true;
            if (!dup) out.push_back(cand);
        }
    }
    if (out.empty()) throw std::domain_error("solve_xy: no solutions found");
    return out;
}

std::vector<XYPair> symmetry_orbit(const XYPair& pair, const PrecisionContext& ctx,
                                   bool with_conjugation) {
    Real dedupe = pow(Real(10), -static_cast<long>(ctx.working_digits) / 4);
    std::vector<XYPair> orbit{pair};
    auto seen = [&](const Complex& X, const Complex& Y) {
        for (const auto& p : orbit)
            if (abs(p.X - X) < dedupe && abs(p.Y - Y) < dedupe) return true;
        return false;
    };
    auto push = [&](const Complex& X, const Complex& Y) {
        if (!seen(X, Y)) orbit.push_back({X, Y, pair.provenance});
    };
    for (size_t i = 0; i < orbit.size() && orbit.size() < 256; ++i) {
        Complex X = orbit[i].X, Y = orbit[i].Y;
        push(-X, -Y);
        push(Y, X);
        if (abs(X) > 0 && abs(Y) > 0) push(Complex(1) / X, Complex(1) / Y);
        if (abs(Complex(1) + X) > dedupe && abs(Complex(1) + Y) > dedupe)
            push((Complex(1) - X) / (Complex(1) + X),
                 (Complex(1) - Y) / (Complex(1) + Y));
        if (with_conjugation) push(X.conj(), Y.conj());
    }
    return orbit;
}

BoundedValue wz_product(const XYPair& pair, const PrecisionContext& ctx, CutSide side) {
    Complex alpha = Complex(1) - pair.X * pair.X;
    Complex beta = Complex(1) - pair.Y * pair.Y;
    auto fa = hyp_F(alpha, ctx, side);
    auto fb = hyp_F(beta, ctx, side);
    return bv_scale((Complex(1) + pair.X * pair.Y) / Complex(2), bv_mul(fa, fb));
}

BoundedValue d_a_dx_hyper(const XYPair& pair, const SeriesPoint& pt,
                          const PrecisionContext& ctx, CutSide side) {
    RelSystem sys{to_complex(pt.x), to_complex(pt.y)};
    Complex X = pair.X, Y = pair.Y;
    Complex a, b, c, d;
    sys.grads(X, Y, a, b, c, d);
    Complex dX, dY;
    solve2(a, b, c, d, -sys.f1x(X, Y), -sys.f2x(X, Y), dX, dY);

    Complex alpha = Complex(1) - X * X;
    Complex beta = Complex(1) - Y * Y;
    if (abs(alpha) == 0 || abs(beta) == 0)
        throw std::domain_error("d_a_dx_hyper: argument at the hypergeometric singularity");
    auto ha = hyp_FG(alpha, ctx, side);
    auto hb = hyp_FG(beta, ctx, side);
    Complex oxy = Complex(1) + X * Y;
    // dA/dx = (X'Y + XY')/2 F(a)F(b)
    //         - (1+XY) X X'/a * G(a)F(b) - (1+XY) Y Y'/b * F(a)G(b)
    auto t1 = bv_scale((dX * Y + X * dY) / Complex(2), bv_mul(ha.F, hb.F));
    auto t2 = bv_scale(-(oxy * X * dX) / alpha, bv_mul(ha.G, hb.F));
    auto t3 = bv_scale(-(oxy * Y * dY) / beta, bv_mul(ha.F, hb.G));
    return bv_add(t1, bv_add(t2, t3));
}

PathCertificate certify_path(const XYPair& pair, const PrecisionContext&) {
    constexpr int kGrid = 64;
    Real max_ratio(0);
    Real min_clear(-1);
    bool ok = true;
    auto cut_clear = [](const Complex& z) {
        if (z.re <= 1) return abs(z - Complex(1));
        return abs(z.im);
    };
    for (int j = 1; j <= kGrid; ++j) {
        Real t = Real(j) / kGrid;
        Complex Xt = Complex(1) + Complex(t) * (pair.X - Complex(1));
        Complex Yt = Complex(1) + Complex(t) * (pair.Y - Complex(1));
        Complex oxy = Complex(1) + Xt * Yt;
        Complex diff = Xt - Yt;
        if (abs(oxy) == 0 || abs(diff) == 0) {
            ok = false;
            continue;
        }
        Complex u = diff / (Complex(4) * oxy);
        u = u * u;                      // = -x_t y_t
        Complex V = (Xt + Yt) * (Complex(1) - Xt * Yt) / (diff * oxy);
        Complex v = V * V;              // = 1 + 4 x_t / y_t
        Real r = abs(v - Complex(1));   // |4x/y|
        Real root = sqrt(r) + sqrt(1 + r);
        Real ratio = 16 * abs(u) * root * root;
        if (ratio > max_ratio) max_ratio = ratio;
        Real ca = cut_clear(Complex(1) - Xt * Xt);
        Real cb = cut_clear(Complex(1) - Yt * Yt);
        Real cmin = ca < cb ? ca : cb;
        if (min_clear < 0 || cmin < min_clear) min_clear = cmin;
    }
    Real floor = pow(Real(10), -6);
    return {ok && max_ratio < 1 && min_clear > floor, max_ratio, min_clear};
}

}  // namespace piv
