#pragma once

#include <vector>

#include "holo/mpoly.hpp"

namespace holo {

inline MPoly poly_gcd(const MPoly& a, const MPoly& b);

namespace detail {

// polynomial content of p viewed as univariate in v (a unit-canonical MPoly in the
// remaining variables; rational scalars count as units over Q)
inline MPoly content_wrt(const MPoly& p, Symbol v) {
    MPoly g;
    for (const MPoly& c : p.univar_coeffs(v)) {
        if (c.is_zero()) continue;
        g = poly_gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

// pseudo-remainder of a by b in v: lc(b)^(da-db+1) * a  mod b, exact over the
// coefficient ring; requires deg_v(a) >= deg_v(b) >= 1
inline MPoly prem(const MPoly& a, const MPoly& b, Symbol v) {
    std::vector<MPoly> r = a.univar_coeffs(v);
    std::vector<MPoly> d = b.univar_coeffs(v);
    int db = (int)d.size() - 1;
    int da = (int)r.size() - 1;
    if (da < db) throw DomainError("prem: dividend degree below divisor degree");
    const MPoly& lcb = d[db];
    for (int k = da; k >= db; k--) {
        // r = lcb*r - r[k]*v^(k-db)*b  (top term cancels by construction)
        MPoly top = r[k];
        for (int i = 0; i < (int)r.size(); i++)
            if (i != k) r[i] = r[i] * lcb;
        r[k] = MPoly();
        for (int i = 0; i < db; i++) r[i + k - db] = r[i + k - db] - top * d[i];
    }
    r.resize(db);
    return MPoly::from_univar(r, v);
}

// subresultant polynomial remainder sequence; returns the last nonzero remainder
// (gcd up to content) or the empty poly when the inputs are coprime in v
inline MPoly subresultant_last(MPoly rprev, MPoly rcur, Symbol v) {
    int dprev = rprev.degree(v), dcur = rcur.degree(v);
    int delta = dprev - dcur;
    MPoly beta = MPoly(((delta + 1) % 2 == 0) ? 1 : -1);
    MPoly psi = MPoly(-1);
    while (true) {
        MPoly rem = prem(rprev, rcur, v);
        if (rem.is_zero()) return rcur;
        rem = rem.divexact(beta);
        MPoly gamma = rcur.univar_coeffs(v).back();
        if (delta == 1)
            psi = -gamma;
        else if (delta > 1)
            psi = (-gamma).pow(delta).divexact(psi.pow(delta - 1));
        int dnext = rem.degree(v);
        delta = rcur.degree(v) - dnext;
        beta = -gamma * psi.pow(delta);
        rprev = std::move(rcur);
        rcur = std::move(rem);
        if (dnext == 0) return MPoly();
    }
}

}  // namespace detail

// canonical greatest common divisor (integer-primitive, positive leading
// coefficient); gcd(0,0) = 0
inline MPoly poly_gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    if (a.is_constant() || b.is_constant()) return MPoly(1);
    // recurse over the last variable present
    Symbol v = a.vars().back();
    if (!b.vars().empty() && a.vars().back() < b.vars().back()) v = b.vars().back();
    int da = a.degree(v), db = b.degree(v);
    if (da == 0) return poly_gcd(detail::content_wrt(b, v), a);
    if (db == 0) return poly_gcd(detail::content_wrt(a, v), b);
    MPoly ca = detail::content_wrt(a, v);
    MPoly cb = detail::content_wrt(b, v);
    MPoly c = poly_gcd(ca, cb);
    MPoly pa = a.divexact(ca), pb = b.divexact(cb);
    MPoly last = (da >= db) ? detail::subresultant_last(pa, pb, v)
                            : detail::subresultant_last(pb, pa, v);
    if (last.is_zero()) return c.primitive();
    MPoly lc = detail::content_wrt(last, v);
    return (c * last.divexact(lc)).primitive();
}

inline MPoly poly_lcm(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return MPoly();
    return (a * b).divexact(poly_gcd(a, b)).primitive();
}

inline bool poly_divides(const MPoly& d, const MPoly& p) {
    if (p.is_zero()) return true;
    if (d.is_zero()) return false;
    return p.try_div(d).has_value();
}

// fraction-free determinant (Bareiss)
inline MPoly bareiss_det(std::vector<std::vector<MPoly>> m) {
    size_t s = m.size();
    if (s == 0) return MPoly(1);
    for (auto& row : m)
        if (row.size() != s) throw DomainError("determinant of non-square matrix");
    int sign = 1;
    MPoly prev(1);
    for (size_t k = 0; k + 1 < s; k++) {
        size_t piv = k;
        while (piv < s && m[piv][k].is_zero()) piv++;
        if (piv == s) return MPoly();
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < s; i++)
            for (size_t j = k + 1; j < s; j++)
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).divexact(prev);
        prev = m[k][k];
    }
    return sign > 0 ? m[s - 1][s - 1] : -m[s - 1][s - 1];
}

// resultant of a and b with respect to v via the Sylvester determinant
inline MPoly resultant(const MPoly& a, const MPoly& b, Symbol v) {
    if (a.is_zero() || b.is_zero()) return MPoly();
    int m = a.degree(v), n = b.degree(v);
    if (m == 0) return a.pow(n);
    if (n == 0) return b.pow(m);
    auto ac = a.univar_coeffs(v), bc = b.univar_coeffs(v);
    size_t s = m + n;
    std::vector<std::vector<MPoly>> syl(s, std::vector<MPoly>(s));
    for (int i = 0; i < n; i++)
        for (int j = 0; j <= m; j++) syl[i][i + j] = ac[m - j];
    for (int i = 0; i < m; i++)
        for (int j = 0; j <= n; j++) syl[n + i][i + j] = bc[n - j];
    return bareiss_det(std::move(syl));
}

}  // namespace holo
