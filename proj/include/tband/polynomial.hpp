#pragma once
// Exact polynomial arithmetic over the integers, plus "quasi-polynomials"
// whose exponents are nonnegative rationals (these arise as generating
// entries sum z^delay with rational delays). A quasi-polynomial matrix is
// normalized by the least common multiple m of its exponent denominators;
// substituting z = zeta^m turns every entry into an ordinary integer
// polynomial in zeta.
//
// Determinants of I - M are computed by two independent routes: cofactor
// expansion for small matrices and fraction-free (Bareiss) elimination for
// larger ones. Both are exposed so results can be cross-checked.

#include <tband/util.hpp>

#include <complex>
#include <map>
#include <vector>

namespace tband {

// Dense integer polynomial; c[i] is the coefficient of zeta^i. Normalized so
// the leading coefficient is nonzero (the zero polynomial has no terms).
struct Poly {
    std::vector<BigInt> c;

    static Poly zero() { return Poly{}; }
    static Poly constant(const BigInt& k) {
        Poly p;
        if (k != 0) p.c.push_back(k);
        return p;
    }
    static Poly monomial(const BigInt& k, std::size_t deg) {
        Poly p;
        if (k != 0) {
            p.c.assign(deg + 1, BigInt(0));
            p.c[deg] = k;
        }
        return p;
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool operator==(const Poly& o) const { return c == o.c; }
};

inline Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), BigInt(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.normalize();
    return r;
}

inline Poly operator-(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), BigInt(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.normalize();
    return r;
}

inline Poly operator-(const Poly& a) { return Poly::zero() - a; }

inline Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero();
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.normalize();
    return r;
}

// Exact division: requires that b divides a in Z[zeta]; checked at every
// step and at the end (any failure indicates a logic error upstream).
inline Poly divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    if (a.is_zero()) return Poly::zero();
    Poly rem = a;
    if (rem.degree() < b.degree()) throw Error("polynomial division is not exact");
    Poly q;
    q.c.assign(static_cast<std::size_t>(rem.degree() - b.degree()) + 1, BigInt(0));
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        BigInt lead = rem.c.back();
        if (lead % b.c.back() != 0) throw Error("polynomial division is not exact");
        BigInt k = lead / b.c.back();
        std::size_t shift = static_cast<std::size_t>(rem.degree() - b.degree());
        q.c[shift] = k;
        Poly sub = Poly::monomial(k, shift) * b;
        rem = rem - sub;
        if (!rem.is_zero() && rem.degree() >= b.degree() + static_cast<int>(shift))
            throw Error("polynomial division did not reduce the degree");
    }
    if (!rem.is_zero()) throw Error("polynomial division left a remainder");
    q.normalize();
    return q;
}

template <typename C>
inline C poly_eval(const Poly& p, const C& x) {
    C acc = C(0);
    for (std::size_t i = p.c.size(); i > 0; --i)
        acc = acc * x + C(p.c[i - 1].convert_to<long double>());
    return acc;
}

inline std::string poly_string(const Poly& p, const std::string& var = "z") {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        if (p.c[i] == 0) continue;
        BigInt k = p.c[i];
        std::string term;
        BigInt mag = k < 0 ? BigInt(-k) : k;
        if (i == 0)
            term = mag.str();
        else {
            if (mag != 1) term = mag.str() + "*";
            term += var;
            if (i > 1) term += "^" + std::to_string(i);
        }
        if (first) {
            out += (k < 0 ? "-" : "") + term;
            first = false;
        } else {
            out += (k < 0 ? " - " : " + ") + term;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Quasi-polynomials: finitely many terms coeff * z^exponent with exponent a
// nonnegative rational.

struct QuasiPoly {
    std::map<Rat, BigInt> terms;  // exponent -> coefficient, no zero coefficients

    static QuasiPoly zero() { return {}; }
    static QuasiPoly constant(const BigInt& k) {
        QuasiPoly q;
        if (k != 0) q.terms[Rat(0)] = k;
        return q;
    }
    bool is_zero() const { return terms.empty(); }
    bool operator==(const QuasiPoly& o) const { return terms == o.terms; }

    void add_term(const Rat& e, const BigInt& k) {
        auto it = terms.find(e);
        if (it == terms.end()) {
            if (k != 0) terms[e] = k;
        } else {
            it->second += k;
            if (it->second == 0) terms.erase(it);
        }
    }
};

inline QuasiPoly operator*(const QuasiPoly& a, const QuasiPoly& b) {
    QuasiPoly r;
    for (const auto& [ea, ka] : a.terms)
        for (const auto& [eb, kb] : b.terms) r.add_term(ea + eb, ka * kb);
    return r;
}

inline QuasiPoly operator+(const QuasiPoly& a, const QuasiPoly& b) {
    QuasiPoly r = a;
    for (const auto& [e, k] : b.terms) r.add_term(e, k);
    return r;
}

// Least common multiple of the exponent denominators.
inline BigInt quasi_scale(const QuasiPoly& q) {
    std::vector<Rat> es;
    for (const auto& [e, k] : q.terms) es.push_back(e);
    return lcm_denominators(es);
}

// Substitute z = zeta^m; every exponent e becomes the integer e*m.
inline Poly quasi_to_poly(const QuasiPoly& q, const BigInt& m) {
    Poly p;
    for (const auto& [e, k] : q.terms) {
        Rat scaled = e * Rat(m);
        if (denominator(scaled) != 1)
            throw Error("exponent " + rat_string(e) + " is not a multiple of 1/" + m.str());
        std::size_t deg = numerator(scaled).convert_to<std::size_t>();
        if (p.c.size() <= deg) p.c.resize(deg + 1, BigInt(0));
        p.c[deg] += k;
    }
    p.normalize();
    return p;
}

// Inverse of quasi_to_poly: coefficient of zeta^i becomes a z^(i/m) term.
inline QuasiPoly poly_to_quasi(const Poly& p, const BigInt& m) {
    QuasiPoly q;
    for (std::size_t i = 0; i < p.c.size(); ++i)
        if (p.c[i] != 0) q.add_term(Rat(BigInt(i), m), p.c[i]);
    return q;
}

inline std::string quasi_string(const QuasiPoly& q, const std::string& var = "z") {
    if (q.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, k] : q.terms) {
        BigInt mag = k < 0 ? BigInt(-k) : k;
        std::string term;
        if (e == 0)
            term = mag.str();
        else {
            if (mag != 1) term = mag.str() + "*";
            term += var;
            if (e != 1) {
                if (denominator(e) == 1)
                    term += "^" + numerator(e).str();
                else
                    term += "^(" + rat_string(e) + ")";
            }
        }
        if (first) {
            out += (k < 0 ? "-" : "") + term;
            first = false;
        } else {
            out += (k < 0 ? " - " : " + ") + term;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Determinants of matrices of integer polynomials.

using PolyMatrix = std::vector<std::vector<Poly>>;

inline Poly det_cofactor(const PolyMatrix& m) {
    std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw Error("determinant of a non-square matrix");
    if (n == 0) return Poly::constant(1);
    if (n == 1) return m[0][0];
    Poly det;
    // Expand along the first row, skipping zero entries.
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        PolyMatrix minor(n - 1, std::vector<Poly>(n - 1));
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor[r - 1][cc++] = m[r][c];
            }
        }
        Poly term = m[0][j] * det_cofactor(minor);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

inline Poly det_bareiss(const PolyMatrix& m) {
    std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw Error("determinant of a non-square matrix");
    if (n == 0) return Poly::constant(1);
    PolyMatrix b = m;
    int sign = 1;
    Poly prev = Poly::constant(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (b[k][k].is_zero()) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && b[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return Poly::zero();
            std::swap(b[k], b[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly num = b[k][k] * b[i][j] - b[i][k] * b[k][j];
                b[i][j] = divide_exact(num, prev);
            }
            b[i][k] = Poly::zero();
        }
        prev = b[k][k];
    }
    Poly det = b[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

}  // namespace tband
