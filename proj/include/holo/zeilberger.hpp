#pragma once

#include "holo/gosper.hpp"

namespace holo {

// Creative telescoping output: sum_j sigma_j(n) F(n+j, k) = G(n, k+1) - G(n, k)
// with G = R * F; summing over a finite natural support yields the recurrence
// for s(n) = sum_k F(n, k).
struct ZeilbergerResult {
    AnnihilatorRec recurrence;  // in n, coefficients sigma_0..sigma_J
    RatFunc certificate;        // R(n, k)

    int order() const { return recurrence.order(); }
};

// structural natural-boundary test: the support in k is bounded on both sides
// by reciprocal factorials
inline bool has_natural_boundaries(const HyperTerm& t, Symbol k) {
    bool lower = false, upper = false;
    for (const auto& [f, e] : t.factorials()) {
        if (e >= 0) continue;
        auto it = f.slopes.find(k);
        if (it == f.slopes.end()) continue;
        (it->second > 0 ? lower : upper) = true;
    }
    return lower && upper;
}

inline ZeilbergerResult zeilberger(const HyperTerm& t, Symbol n, Symbol k, int max_order = 6) {
    if (t.is_zero()) throw DomainError("zeilberger: zero term");
    RatFunc rn = term_ratio(t, n).ratio;
    RatFunc rk = term_ratio(t, k).ratio;
    for (int J = 1; J <= max_order; J++) {
        // rho_j = F(n+j,k)/F(n,k); p_j = rho_j over the common denominator q
        std::vector<RatFunc> rho(J + 1);
        rho[0] = RatFunc(1);
        for (int j = 1; j <= J; j++) rho[j] = rho[j - 1] * rn.shift(n, Rat(j - 1));
        RatFunc q = rf_lcm_den(rho);
        std::vector<MPoly> p(J + 1);
        for (int j = 0; j <= J; j++) {
            RatFunc pj = rho[j] * q;
            if (!pj.is_polynomial()) throw Error("internal: common denominator failed");
            p[j] = pj.num() * MPoly(pj.den().constant_value().inv());
        }
        // Gosper normal form of the sigma-free part of the ratio of
        // T(n,k) = sum_j sigma_j F(n+j,k)
        RatFunc rhat = rk * RatFunc(q.num(), shift_var(q.num(), k, Rat(1)));
        GosperNormalForm nf = gosper_normal_form(rhat, k);
        MPoly btilde = shift_var(nf.b, k, Rat(-1));
        long pdeg = 0;
        for (int j = 0; j <= J; j++) pdeg = std::max(pdeg, (long)p[j].degree(k));
        auto bound = gosper_degree_bound(nf.a, btilde, nf.c.degree(k) + pdeg, k);
        // degx = -1 keeps only the sigma columns: a sigma-combination that
        // vanishes identically telescopes with G = 0
        long degx = bound ? *bound : -1;
        long rows = std::max((long)std::max(nf.a.degree(k), btilde.degree(k)) + degx,
                             (long)nf.c.degree(k) + pdeg) +
                    1;
        auto xcols = detail::key_equation_columns(nf.a, btilde, degx, k, rows);
        // unknowns: x_0..x_degx, sigma_0..sigma_J (homogeneous system)
        Matrix m(rows, degx + 1 + J + 1);
        for (long row = 0; row < rows; row++)
            for (long i = 0; i <= degx; i++) m[row][i] = RatFunc(xcols[i][row]);
        for (int j = 0; j <= J; j++) {
            auto cs = (nf.c * p[j]).univar_coeffs(k);
            cs.resize(rows);
            for (long row = 0; row < rows; row++) m[row][degx + 1 + j] = RatFunc(-cs[row]);
        }
        auto basis = nullspace(m);
        const std::vector<RatFunc>* best = nullptr;
        int best_top = -1;
        for (const auto& v : basis) {
            int top = -1;
            for (int j = 0; j <= J; j++)
                if (!v[degx + 1 + j].is_zero()) top = j;
            if (top < 0) continue;  // telescoped without sigma: not a recurrence
            if (!best || top < best_top) {
                best = &v;
                best_top = top;
            }
        }
        if (!best) continue;
        std::vector<MPoly> sigma(best_top + 1);
        for (int j = 0; j <= best_top; j++) {
            const RatFunc& s = (*best)[degx + 1 + j];
            if (!s.is_polynomial()) throw Error("internal: sigma not cleared");
            sigma[j] = s.num() * MPoly(s.den().constant_value().inv());
        }
        MPoly x;
        MPoly K = MPoly::variable(k);
        for (long i = 0; i <= degx; i++) {
            const RatFunc& c = (*best)[i];
            if (c.is_zero()) continue;
            if (!c.is_polynomial()) throw Error("internal: x not cleared");
            x += c.num() * MPoly(c.den().constant_value().inv()) * K.pow((int)i);
        }
        RatFunc cert = RatFunc(btilde * x, nf.c * q.num());
        AnnihilatorRec rec(n, sigma);
        // keep the certificate on the same scale as the normalized recurrence
        RatFunc scale = RatFunc(rec.coeff(best_top)) / RatFunc(sigma[best_top]);
        if (!scale.is_constant()) throw Error("internal: non-constant normalization scale");
        return ZeilbergerResult{std::move(rec), cert * scale};
    }
    throw OrderExceeded("zeilberger: no recurrence of order <= " + std::to_string(max_order));
}

}  // namespace holo
