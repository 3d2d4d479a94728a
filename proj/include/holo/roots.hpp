#pragma once

#include <set>
#include <vector>

#include "holo/polygcd.hpp"

namespace holo {

namespace detail {

// prime factorization by trial division; probable-prime test handles the tail
inline std::vector<std::pair<Int, int>> factorize(Int n) {
    std::vector<std::pair<Int, int>> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    auto strip = [&](const Int& p) {
        int e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            e++;
        }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    for (Int p = 5; p * p <= n && p < 2000000; p += (p % 6 == 5) ? 2 : 4) strip(p);
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 40))
            out.emplace_back(n, 1);
        else
            throw Error("cannot factor integer for divisor enumeration: " + n.get_str());
    }
    return out;
}

inline void enum_divisors(const std::vector<std::pair<Int, int>>& f, size_t i, Int cur,
                          std::vector<Int>& out) {
    if (out.size() > 200000) throw Error("too many divisors to enumerate");
    if (i == f.size()) {
        out.push_back(cur);
        return;
    }
    for (int e = 0; e <= f[i].second; e++) {
        enum_divisors(f, i + 1, cur, out);
        if (e < f[i].second) cur *= f[i].first;
    }
}

// integer coefficient vector (primitive), constant term first
inline std::vector<Int> int_coeffs(const MPoly& p, Symbol v) {
    auto cs = p.univar_coeffs(v);
    Int l(1), g(0);
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        if (!c.is_constant()) throw DomainError("polynomial is not univariate");
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.constant_value().den().get_mpz_t());
    }
    std::vector<Int> out(cs.size());
    for (size_t i = 0; i < cs.size(); i++) {
        Rat c = cs[i].is_zero() ? Rat(0) : cs[i].constant_value();
        out[i] = c.num() * (l / c.den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
    }
    if (g > 1)
        for (auto& c : out) c /= g;
    return out;
}

inline Int eval_int(const std::vector<Int>& c, const Int& x) {
    Int r(0);
    for (int i = (int)c.size() - 1; i >= 0; i--) r = r * x + c[i];
    return r;
}

}  // namespace detail

// exact integer roots of a nonzero univariate polynomial over Q
inline std::set<Int> integer_roots(const MPoly& p, Symbol v) {
    if (p.is_zero()) throw DomainError("integer_roots of zero polynomial");
    for (Symbol s : p.vars())
        if (s != v) throw DomainError("integer_roots requires a univariate polynomial");
    std::set<Int> roots;
    if (p.is_constant()) return roots;
    std::vector<Int> c = detail::int_coeffs(p, v);
    size_t low = 0;
    while (low < c.size() && c[low] == 0) low++;
    if (low > 0) {
        roots.insert(Int(0));
        c.erase(c.begin(), c.begin() + low);
    }
    if (c.size() <= 1) return roots;
    // candidates divide the trailing coefficient; the Cauchy bound prunes
    Int maxc(0);
    for (const auto& x : c) {
        Int a = abs(x);
        if (a > maxc) maxc = a;
    }
    Int lead = abs(c.back());
    Int bound = maxc / lead + 1;
    std::vector<Int> divs;
    detail::enum_divisors(detail::factorize(c[0]), 0, Int(1), divs);
    for (const Int& d : divs) {
        if (d > bound) continue;
        if (detail::eval_int(c, d) == 0) roots.insert(d);
        if (detail::eval_int(c, -d) == 0) roots.insert(-d);
    }
    return roots;
}

// rational roots with multiplicities plus the root-free cofactor
struct LinearFactorization {
    std::vector<std::pair<Rat, int>> roots;  // (root, multiplicity)
    MPoly remainder;                         // no rational roots left (may be constant)
};

inline LinearFactorization factor_rational_roots(const MPoly& p, Symbol v) {
    if (p.is_zero()) throw DomainError("factoring zero polynomial");
    LinearFactorization out;
    std::vector<Int> c = detail::int_coeffs(p, v);
    Rat scale = [&] {
        // p = scale * (primitive integer poly)
        auto cs = p.univar_coeffs(v);
        for (size_t i = 0; i < cs.size(); i++)
            if (c[i] != 0) return cs[i].constant_value() / Rat(c[i]);
        return Rat(1);
    }();
    size_t low = 0;
    while (low < c.size() && c[low] == 0) low++;
    if (low > 0) {
        out.roots.emplace_back(Rat(0), (int)low);
        c.erase(c.begin(), c.begin() + low);
    }
    auto deflate = [&](const Rat& r) {
        // synthetic division by (v - r); exactness is checked by the caller
        std::vector<Int> q(c.size() - 1);
        // multiply through denominators: work over rationals here for simplicity
        std::vector<Rat> rc(c.size());
        for (size_t i = 0; i < c.size(); i++) rc[i] = Rat(c[i]);
        std::vector<Rat> rq(c.size() - 1);
        Rat carry(0);
        for (int i = (int)c.size() - 1; i >= 1; i--) {
            rq[i - 1] = rc[i] + carry;
            carry = rq[i - 1] * r;
        }
        Rat rem = rc[0] + carry;
        if (!rem.is_zero()) return false;
        // renormalize to integers
        Int l(1);
        for (auto& x : rq) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
        std::vector<Int> nq(rq.size());
        for (size_t i = 0; i < rq.size(); i++) nq[i] = rq[i].num() * (l / rq[i].den());
        scale /= Rat(l);
        c = std::move(nq);
        return true;
    };
    while (c.size() > 1) {
        std::vector<Int> ndivs, ddivs;
        detail::enum_divisors(detail::factorize(c[0]), 0, Int(1), ndivs);
        detail::enum_divisors(detail::factorize(c.back()), 0, Int(1), ddivs);
        bool found = false;
        for (const Int& dn : ndivs) {
            for (const Int& dd : ddivs) {
                for (int s : {1, -1}) {
                    Rat cand(s * dn, dd);
                    if (!deflate(cand)) continue;
                    int mult = 1;
                    while (c.size() > 1 && deflate(cand)) mult++;
                    if (!out.roots.empty() && out.roots.back().first == cand)
                        out.roots.back().second += mult;
                    else
                        out.roots.emplace_back(cand, mult);
                    found = true;
                    break;
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    MPoly rem(Rat(0));
    MPoly x = MPoly::variable(v);
    for (int i = (int)c.size() - 1; i >= 0; i--) rem = rem * x + MPoly(Rat(c[i]));
    out.remainder = rem * MPoly(scale);
    return out;
}

namespace detail {

// integer roots in `v` of a polynomial whose other symbols are transcendental:
// j0 qualifies only if every coefficient grouped by the parameter part vanishes
inline std::set<Int> integer_roots_in(const MPoly& p, Symbol v) {
    if (p.is_zero()) throw DomainError("integer_roots of zero polynomial");
    bool pure = true;
    for (Symbol s : p.vars())
        if (s != v) pure = false;
    if (pure) return integer_roots(p, v);
    auto coeffs = p.univar_coeffs(v);
    // build group polynomials q_m(v) = sum of coefficients in place
    std::map<std::string, MPoly> grouped;
    for (size_t d = 0; d < coeffs.size(); d++) {
        if (coeffs[d].is_zero()) continue;
        for (const auto& [m, c] : coeffs[d].terms()) {
            std::string key;
            for (size_t i = 0; i < m.size(); i++)
                if (m[i] != 0)
                    key += coeffs[d].vars()[i].name() + "^" + std::to_string(m[i]) + " ";
            MPoly& q = grouped[key];
            q += MPoly(c) * MPoly::variable(v).pow((int)d);
        }
    }
    std::set<Int> roots;
    bool first = true;
    for (const auto& [key, q] : grouped) {
        if (first) {
            roots = integer_roots(q, v);
            first = false;
        } else {
            std::set<Int> keep;
            for (const Int& r : roots)
                if (q.eval_partial({{v, Rat(r)}}).is_zero()) keep.insert(r);
            roots = std::move(keep);
        }
        if (roots.empty()) break;
    }
    return roots;
}

}  // namespace detail

// all shifts j >= 0 such that gcd(a(v), b(v+j)) is nonconstant; other symbols
// are treated as transcendental parameters
inline std::set<long> dispersion(const MPoly& a, const MPoly& b, Symbol v) {
    if (a.is_zero() || b.is_zero()) throw DomainError("dispersion of zero polynomial");
    std::set<long> out;
    if (a.degree(v) <= 0 || b.degree(v) <= 0) return out;
    Symbol j("~j");
    MPoly bj = b.subst(v, MPoly::variable(v) + MPoly::variable(j));
    MPoly res = resultant(a, bj, v);
    if (res.is_zero()) throw Error("dispersion: resultant vanished identically");
    if (!res.depends_on(j)) return out;
    for (const Int& r : detail::integer_roots_in(res, j))
        if (r >= 0) out.insert(r.get_si());
    return out;
}

}  // namespace holo
