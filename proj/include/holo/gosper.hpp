#pragma once

#include "holo/hyperterm.hpp"

namespace holo {

// r(k) = (a(k)/b(k)) * (c(k+1)/c(k)) with gcd(a(k), b(k+j)) = 1 for all j >= 0
struct GosperNormalForm {
    MPoly a, b, c;
};

inline GosperNormalForm gosper_normal_form(const RatFunc& r, Symbol k) {
    GosperNormalForm nf{r.num(), r.den(), MPoly(1)};
    for (long j : dispersion(nf.a, nf.b, k)) {
        if (j == 0) continue;  // canonical input is already reduced
        MPoly g = poly_gcd(nf.a, shift_var(nf.b, k, Rat(j)));
        if (g.total_degree() < 1) continue;
        nf.a = nf.a.divexact(g);
        nf.b = nf.b.divexact(shift_var(g, k, Rat(-j)));
        for (long i = 1; i <= j; i++) nf.c *= shift_var(g, k, Rat(-i));
    }
    return nf;
}

// degree bound for polynomial solutions x of a(k) x(k+1) - b(k-1) x(k) = rhs,
// where rhs has degree rhs_deg; nullopt when no nonnegative bound exists
inline std::optional<long> gosper_degree_bound(const MPoly& a, const MPoly& btilde, long rhs_deg,
                                               Symbol k) {
    long da = a.degree(k), db = btilde.degree(k);
    long m = std::max(da, db);
    auto coeff_at = [&](const MPoly& p, long d) {
        auto cs = p.univar_coeffs(k);
        return (d >= 0 && d < (long)cs.size()) ? cs[d] : MPoly();
    };
    MPoly alpha = coeff_at(a, m), beta = coeff_at(btilde, m);
    long bound;
    if (da != db || alpha != beta) {
        bound = rhs_deg - m;
    } else {
        long d1 = rhs_deg - m + 1;
        long d2 = -1;
        // cancellation case: (B - A)/alpha may point at one extra degree
        MPoly diff = coeff_at(btilde, m - 1) - coeff_at(a, m - 1);
        if (!diff.is_zero()) {
            auto q = diff.try_div(alpha);
            if (q && q->is_constant()) {
                Rat v = q->constant_value();
                if (v.is_integer() && v.sign() >= 0) d2 = (long)v.num().get_si();
            }
        } else {
            d2 = 0;
        }
        bound = std::max(d1, d2);
    }
    if (bound < 0) return std::nullopt;
    return bound;
}

namespace detail {

// coefficient rows (by power of k) of a(k) (k+1)^i - btilde(k) k^i for the
// unknown columns, used by both the plain and the parameterized solver
inline std::vector<std::vector<MPoly>> key_equation_columns(const MPoly& a, const MPoly& btilde,
                                                            long degx, Symbol k, long rows) {
    std::vector<std::vector<MPoly>> cols;
    MPoly K = MPoly::variable(k);
    for (long i = 0; i <= degx; i++) {
        MPoly e = a * (K + MPoly(1)).pow((int)i) - btilde * K.pow((int)i);
        auto cs = e.univar_coeffs(k);
        cs.resize(rows);
        cols.push_back(std::move(cs));
    }
    return cols;
}

}  // namespace detail

// polynomial solution of a(k) x(k+1) - b(k-1) x(k) = rhs, if one exists
inline std::optional<MPoly> gosper_key_equation(const MPoly& a, const MPoly& b, const MPoly& rhs,
                                                Symbol k) {
    MPoly btilde = shift_var(b, k, Rat(-1));
    auto bound = gosper_degree_bound(a, btilde, rhs.degree(k), k);
    if (!bound) return std::nullopt;
    long degx = *bound;
    long rows = std::max((long)std::max(a.degree(k), btilde.degree(k)) + degx + 1,
                         (long)rhs.degree(k) + 1);
    auto cols = detail::key_equation_columns(a, btilde, degx, k, rows);
    Matrix m(rows, degx + 1);
    std::vector<RatFunc> target(rows);
    auto rc = rhs.univar_coeffs(k);
    rc.resize(rows);
    for (long p = 0; p < rows; p++) {
        for (long i = 0; i <= degx; i++) m[p][i] = RatFunc(cols[i][p]);
        target[p] = RatFunc(rc[p]);
    }
    auto sol = solve(m, target);
    if (!sol) return std::nullopt;
    MPoly x;
    MPoly K = MPoly::variable(k);
    for (long i = 0; i <= degx; i++) {
        if ((*sol)[i].is_zero()) continue;
        if (!(*sol)[i].is_polynomial() || (*sol)[i].den().total_degree() > 0)
            throw Error("internal: key equation solution not polynomial");
        MPoly c = (*sol)[i].num() * MPoly((*sol)[i].den().constant_value().inv());
        x += c * K.pow((int)i);
    }
    return x;
}

// rational certificate: G = R * t satisfies G(k+1) - G(k) = t(k)
struct GosperCertificate {
    RatFunc R;
    HyperTerm term;
};

// Gosper's decision procedure for indefinite hypergeometric summation
inline std::optional<GosperCertificate> gosper(const HyperTerm& t, Symbol k) {
    if (t.is_zero()) throw DomainError("gosper: zero term");
    RatFunc r = term_ratio(t, k).ratio;
    GosperNormalForm nf = gosper_normal_form(r, k);
    auto x = gosper_key_equation(nf.a, nf.b, nf.c, k);
    if (!x) return std::nullopt;
    RatFunc R = RatFunc(shift_var(nf.b, k, Rat(-1)) * *x, nf.c);
    return GosperCertificate{R, t};
}

// brute-force variant used as an oracle: searches all degrees up to max_deg
// instead of using the degree bound
inline std::optional<MPoly> gosper_key_equation_bruteforce(const MPoly& a, const MPoly& b,
                                                           const MPoly& rhs, Symbol k,
                                                           long max_deg) {
    MPoly btilde = shift_var(b, k, Rat(-1));
    long rows = std::max((long)std::max(a.degree(k), btilde.degree(k)) + max_deg + 1,
                         (long)rhs.degree(k) + 1);
    auto cols = detail::key_equation_columns(a, btilde, max_deg, k, rows);
    Matrix m(rows, max_deg + 1);
    std::vector<RatFunc> target(rows);
    auto rc = rhs.univar_coeffs(k);
    rc.resize(rows);
    for (long p = 0; p < rows; p++) {
        for (long i = 0; i <= max_deg; i++) m[p][i] = RatFunc(cols[i][p]);
        target[p] = RatFunc(rc[p]);
    }
    auto sol = solve(m, target);
    if (!sol) return std::nullopt;
    MPoly x;
    MPoly K = MPoly::variable(k);
    for (long i = 0; i <= max_deg; i++)
        if (!(*sol)[i].is_zero())
            x += (*sol)[i].num() * MPoly((*sol)[i].den().constant_value().inv()) * K.pow((int)i);
    return x;
}

}  // namespace holo
