#pragma once
// Numeric root extraction for the characteristic polynomial det(I - M).
//
// The polynomial arrives with exact integer coefficients in zeta (where
// z = zeta^m). All roots are located simultaneously with the Durand-Kerner
// iteration in complex long double precision; every reported root must pass
// a residual check against the requested tolerance or a ConvergenceError is
// raised. The smallest-modulus root is then re-verified by an independent
// scan of the real interval (0, 1] (the interesting root of these
// polynomials is real and positive; ties in modulus prefer it).

#include <tband/polynomial.hpp>
#include <tband/util.hpp>

#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <vector>

namespace tband {

struct RootInfo {
    std::complex<long double> zeta;  // root of the zeta-polynomial
    long double modulus = 0;
    long double residual = 0;
};

struct GrowthResult {
    // -log2 of the smallest root modulus of det(I - M) in z, or 0 when the
    // characteristic polynomial is constant (no cycles contribute).
    double beta = 0;
    bool has_root = false;
    double z0_modulus = 0;                    // |zeta0|^m
    std::complex<long double> zeta0{0, 0};
    std::vector<RootInfo> roots;              // all zeta-roots
    QuasiPoly characteristic;                 // z-form, rational exponents
    Poly zeta_polynomial;                     // z = zeta^m substituted
    BigInt scale_m = 1;
    std::string cross_check = "not-run";      // real-axis re-verification
};

namespace detail {

inline std::vector<long double> poly_coeffs_ld(const Poly& p) {
    std::vector<long double> c;
    c.reserve(p.c.size());
    for (const auto& k : p.c) c.push_back(k.convert_to<long double>());
    return c;
}

inline std::complex<long double> eval_ld(const std::vector<long double>& c,
                                         std::complex<long double> x) {
    std::complex<long double> acc = 0;
    for (std::size_t i = c.size(); i > 0; --i) acc = acc * x + c[i - 1];
    return acc;
}

inline long double eval_real_ld(const std::vector<long double>& c, long double x) {
    long double acc = 0;
    for (std::size_t i = c.size(); i > 0; --i) acc = acc * x + c[i - 1];
    return acc;
}

}  // namespace detail

// All complex roots of p (degree >= 1) via Durand-Kerner. `tolerance` bounds
// the accepted residual |p(root)| / max|coeff|.
inline std::vector<RootInfo> find_roots(const Poly& p, double tolerance = 1e-12) {
    if (p.is_zero()) throw Error("cannot extract roots of the zero polynomial");
    std::vector<long double> c = detail::poly_coeffs_ld(p);
    // Strip exact zero leading/trailing handled by normalization upstream;
    // factor out roots at zero (zeta = 0 terms) explicitly.
    std::size_t zero_roots = 0;
    while (zero_roots < c.size() && p.c[zero_roots] == 0) ++zero_roots;
    std::vector<long double> cc(c.begin() + static_cast<long>(zero_roots), c.end());

    std::size_t deg = cc.size() - 1;
    std::vector<RootInfo> out;
    for (std::size_t i = 0; i < zero_roots; ++i) out.push_back(RootInfo{{0, 0}, 0, 0});
    if (deg == 0) return out;

    long double scale = 0;
    for (long double k : cc) scale = std::max(scale, std::fabs(k));

    std::vector<std::complex<long double>> x(deg);
    const std::complex<long double> seed(0.4L, 0.9L);
    std::complex<long double> acc(1, 0);
    for (std::size_t i = 0; i < deg; ++i) {
        acc *= seed;
        x[i] = acc;
    }

    const int max_iter = 5000;
    for (int it = 0; it < max_iter; ++it) {
        long double moved = 0;
        for (std::size_t i = 0; i < deg; ++i) {
            std::complex<long double> num = detail::eval_ld(cc, x[i]);
            std::complex<long double> den = cc.back();
            for (std::size_t j = 0; j < deg; ++j)
                if (j != i) den *= x[i] - x[j];
            if (std::abs(den) == 0) {
                // Perturb coincident iterates and continue.
                x[i] += std::complex<long double>(1e-6L * (i + 1), 1e-6L);
                moved = 1;
                continue;
            }
            std::complex<long double> delta = num / den;
            x[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-19L) break;
    }

    bool converged = true;
    for (std::size_t i = 0; i < deg; ++i) {
        long double res = std::abs(detail::eval_ld(cc, x[i])) / scale;
        if (!(res <= static_cast<long double>(tolerance))) converged = false;
        out.push_back(RootInfo{x[i], std::abs(x[i]), res});
    }
    if (!converged) {
        std::ostringstream msg;
        msg << std::scientific << "root finding did not reach residual tolerance " << tolerance
            << " (residuals:";
        for (const auto& r : out) msg << " " << static_cast<double>(r.residual);
        msg << ")";
        throw ConvergenceError(msg.str());
    }
    return out;
}

// Independent check on the real axis: locate the first sign change of p on
// (0, 1] by scan + bisection; falls back to a |p| minimum when the smallest
// root has even multiplicity and p does not change sign.
inline std::optional<long double> first_real_root(const Poly& p) {
    std::vector<long double> c = detail::poly_coeffs_ld(p);
    const int steps = 1 << 14;
    long double prev_x = 1e-9L;
    long double prev_v = detail::eval_real_ld(c, prev_x);
    long double best_x = -1, best_v = -1;
    for (int i = 1; i <= steps; ++i) {
        long double xx = static_cast<long double>(i) / steps;
        long double v = detail::eval_real_ld(c, xx);
        if (v == 0) return xx;
        if ((v < 0) != (prev_v < 0)) {
            long double lo = prev_x, hi = xx;
            for (int k = 0; k < 200; ++k) {
                long double mid = (lo + hi) / 2;
                long double mv = detail::eval_real_ld(c, mid);
                if (mv == 0) return mid;
                if ((mv < 0) == (prev_v < 0))
                    lo = mid;
                else
                    hi = mid;
            }
            return (lo + hi) / 2;
        }
        long double av = std::fabs(v);
        if (best_v < 0 || av < best_v) {
            best_v = av;
            best_x = xx;
        }
        prev_x = xx;
        prev_v = v;
    }
    // No sign change: report the scan minimum only if it is numerically a
    // root (covers even-multiplicity roots).
    long double scale = 0;
    for (long double k : c) scale = std::max(scale, std::fabs(k));
    if (best_v >= 0 && best_v <= 1e-6L * scale) return best_x;
    return std::nullopt;
}

// Smallest-modulus root of the characteristic quasi-polynomial and the
// growth exponent -log2 |z0|. The characteristic must have constant term 1
// (always true for det(I - M) of a 0-free graph).
inline GrowthResult smallest_root(const QuasiPoly& characteristic, double tolerance = 1e-12) {
    GrowthResult g;
    g.characteristic = characteristic;
    g.scale_m = quasi_scale(characteristic);
    g.zeta_polynomial = quasi_to_poly(characteristic, g.scale_m);

    if (g.zeta_polynomial.degree() <= 0) {
        // Constant characteristic: no cycle structure, growth exponent 0.
        g.beta = 0;
        g.has_root = false;
        g.cross_check = "trivial";
        return g;
    }

    g.roots = find_roots(g.zeta_polynomial, tolerance);

    // Pick the smallest modulus; within a relative 1e-9 tie prefer a real
    // positive root (the meaningful one for growth).
    std::size_t pick = 0;
    for (std::size_t i = 1; i < g.roots.size(); ++i)
        if (g.roots[i].modulus < g.roots[pick].modulus) pick = i;
    long double best = g.roots[pick].modulus;
    for (std::size_t i = 0; i < g.roots.size(); ++i) {
        const auto& r = g.roots[i];
        if (r.modulus <= best * (1 + 1e-9L) && r.zeta.real() > 0 &&
            std::fabs(r.zeta.imag()) <= 1e-9L * std::max<long double>(1, r.modulus))
            pick = i;
    }

    g.zeta0 = g.roots[pick].zeta;
    long double zeta_mod = g.roots[pick].modulus;
    if (zeta_mod == 0) throw Error("characteristic polynomial vanishes at z = 0");

    long double m = g.scale_m.convert_to<long double>();
    long double z0 = std::pow(zeta_mod, m);
    g.has_root = true;
    g.z0_modulus = static_cast<double>(z0);
    g.beta = static_cast<double>(-m * std::log2(zeta_mod));
    if (g.beta == 0) g.beta = 0;  // a root at exactly 1 must not report -0

    // Real-axis verification of the chosen modulus.
    bool picked_real = g.zeta0.real() > 0 &&
                       std::fabs(g.zeta0.imag()) <= 1e-9L * std::max<long double>(1, zeta_mod);
    auto real_root = first_real_root(g.zeta_polynomial);
    if (picked_real) {
        if (real_root && std::fabs(*real_root - zeta_mod) <= 1e-8L)
            g.cross_check = "ok";
        else
            g.cross_check = "warning: real-axis scan disagrees with the smallest root";
    } else {
        // Smallest root is complex; any real root must lie at or beyond it.
        if (!real_root || *real_root >= zeta_mod - 1e-8L)
            g.cross_check = "ok (smallest root not on the positive real axis)";
        else
            g.cross_check = "warning: real-axis scan found a smaller root";
    }
    return g;
}

}  // namespace tband
