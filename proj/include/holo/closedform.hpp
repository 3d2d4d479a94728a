#pragma once

#include <numeric>
#include "holo/hyperterm.hpp"

namespace holo {

// Closed form of one residue class of a two-term recurrence. Values with
// class index t < start are listed explicitly; from `start` on,
// a(residue + modulus*(start + u)) = term(u), or, when the ratio does not
// factor into admissible linear pieces, the unevaluated product
// lead * prod_{i<u} symbolic_ratio(i).
struct ClosedFormClass {
    long residue = 0;
    long start = 0;
    std::vector<Rat> exceptional;
    std::optional<HyperTerm> term;  // nullopt: symbolic product fallback
    Rat lead;                       // value at u = 0 (fallback only)
    RatFunc symbolic_ratio;         // step ratio in the class index (fallback only)
    Symbol index;

    bool is_symbolic() const { return !term.has_value(); }

    Rat value_at(long t) const {
        if (t < start) {
            if (t < 0 || t >= (long)exceptional.size())
                throw DomainError("closed form: index outside stored range");
            return exceptional[t];
        }
        long u = t - start;
        if (term) return term->eval({{index, Rat(u)}});
        Rat v = lead;
        for (long i = 0; i < u; i++) v *= symbolic_ratio.eval({{index, Rat(i)}});
        return v;
    }
};

struct ClosedForm {
    long modulus = 1;
    std::vector<ClosedFormClass> classes;

    Rat value_at(long n) const {
        long c = n % modulus;
        return classes[c].value_at(n / modulus);
    }
};

namespace detail {

// build the hypergeometric term H(u) with H(u+1)/H(u) = phi(u) and H well
// defined for u >= 0, or nothing when phi does not factor into linear pieces
// clear of the nonnegative integers
inline std::optional<HyperTerm> product_closed_form(const RatFunc& phi, Symbol u) {
    // factor into primitive linear pieces alpha*u + gamma (gamma >= 1)
    auto split = [&](const MPoly& p)
        -> std::optional<std::pair<Rat, std::map<std::pair<long, long>, long>>> {
        LinearFactorization f = factor_rational_roots(p, u);
        if (!f.remainder.is_constant()) return std::nullopt;
        Rat constant = f.remainder.constant_value();
        std::map<std::pair<long, long>, long> pieces;
        for (const auto& [root, mult] : f.roots) {
            long alpha = (long)root.den().get_si();
            long gamma = -(long)root.num().get_si();
            if (gamma < 1) return std::nullopt;  // vanishes or blows up at some u >= 0
            pieces[{alpha, gamma}] += mult;
            constant /= Rat(Int(root.den())).pow(mult);
        }
        return std::make_pair(constant, pieces);
    };
    auto num = split(phi.num());
    auto den = split(phi.den());
    if (!num || !den) return std::nullopt;
    Rat z = num->first / den->first;
    std::map<std::pair<long, long>, long> pieces = num->second;
    for (const auto& [pc, e] : den->second) pieces[pc] -= e;

    HyperTerm h;
    // factorial blocks for slopes >= 2, aligned to runs (alpha*q+1..alpha*q+alpha);
    // run members with gcd(alpha, o) = g > 1 are borrowed as smaller-slope pieces
    while (true) {
        std::pair<long, long> pick{0, 0};
        for (const auto& [pc, e] : pieces)
            if (e != 0 && pc.first >= 2 && pc.first > pick.first) pick = pc;
        if (pick.first == 0) break;
        auto [alpha, gamma] = pick;
        long E = pieces[pick];
        long b = alpha * ((gamma - 1) / alpha);
        for (long o = b + 1; o <= b + alpha; o++) {
            long g = std::gcd(alpha, o);
            if (g == 1) {
                pieces[{alpha, o}] -= E;
                if (pieces[{alpha, o}] != 0) return std::nullopt;  // uneven run
            } else {
                pieces[{alpha / g, o / g}] -= E;
                z /= Rat(g).pow(E);
            }
        }
        h *= HyperTerm::factorial(lin_form({{u, alpha}}, MPoly(Rat(b))), E);
    }
    // slope-1 pieces: prod_{i<u} (i + gamma) = (u + gamma - 1)! / (gamma - 1)!
    for (const auto& [pc, e] : pieces) {
        auto [alpha, gamma] = pc;
        if (e == 0) continue;
        if (alpha != 1) return std::nullopt;
        h *= HyperTerm::factorial(lin_form({{u, 1}}, MPoly(Rat(gamma - 1))), e);
        h = h.scaled(RatFunc(Rat(int_factorial(gamma - 1)).pow(-e)));
    }
    if (!(z == Rat(1))) h *= HyperTerm::geometric(z, {{u, 1}});
    if (h.ratio(u) != phi) throw Error("internal: closed-form ratio mismatch");
    return h;
}

}  // namespace detail

// Solves a recurrence with exactly two nonzero coefficients per residue class
// of the index gap. `initials` must cover the order and all singular indices.
inline ClosedForm solve_two_term(const AnnihilatorRec& R, const std::vector<Rat>& initials,
                                 Symbol u) {
    Symbol n = R.var();
    int lo = -1, hi = -1;
    for (int i = 0; i <= R.order(); i++) {
        if (R.coeff(i).is_zero()) continue;
        if (lo < 0)
            lo = i;
        else if (hi < 0)
            hi = i;
        else
            throw DomainError("solve_two_term: more than two nonzero coefficients");
    }
    if (hi < 0) throw DomainError("solve_two_term: operator has a single term");
    if (R.has_parameters()) throw DomainError("solve_two_term: parameters must be bound");
    long gap = hi - lo;
    const MPoly& qlo = R.coeff(lo);
    const MPoly& qhi = R.coeff(hi);
    // a(s + gap) = phi0(s) a(s) for s >= lo
    RatFunc phi0(-shift_var(qlo, n, Rat(-lo)), shift_var(qhi, n, Rat(-lo)));

    auto roots_of = [&](const MPoly& p) {
        std::set<long> out;
        if (!p.depends_on(n)) return out;
        for (const Int& r : detail::integer_roots_in(p, n))
            if (r >= 0) out.insert((long)r.get_si());
        return out;
    };
    std::set<long> qhi_roots = roots_of(qhi);  // chain link undefined
    std::set<long> qlo_roots = roots_of(qlo);  // chain restarts at zero

    ClosedForm out;
    out.modulus = gap;
    long max_needed = 0;
    std::vector<long> starts(gap);
    for (long c = 0; c < gap; c++) {
        auto breaks_at = [&](long t) {
            long s = c + gap * t;  // relation instance sits at index s - lo
            if (s < lo) return true;
            return qhi_roots.count(s - lo) > 0 || qlo_roots.count(s - lo) > 0;
        };
        long horizon = lo + gap;
        for (long r : qhi_roots) horizon = std::max(horizon, r + lo + gap);
        for (long r : qlo_roots) horizon = std::max(horizon, r + lo + gap);
        long start = 0;
        for (long t = 0; c + gap * t <= horizon; t++)
            if (breaks_at(t)) start = t + 1;
        starts[c] = start;
        max_needed = std::max(max_needed, c + gap * start + 1);
    }
    std::vector<Rat> a = unroll(R, initials, std::max((long)initials.size(), max_needed));

    for (long c = 0; c < gap; c++) {
        ClosedFormClass cls;
        cls.residue = c;
        cls.start = starts[c];
        cls.index = u;
        for (long t = 0; t < cls.start; t++) cls.exceptional.push_back(a[c + gap * t]);
        Rat a0 = a[c + gap * cls.start];
        if (a0.is_zero()) {
            cls.term = HyperTerm(RatFunc(Rat(0)));
            out.classes.push_back(std::move(cls));
            continue;
        }
        // phi in the class index: s = c + gap*(start + u)
        MPoly sub = MPoly(Rat(gap)) * MPoly::variable(u) + MPoly(Rat(c + gap * cls.start));
        RatFunc phi(phi0.num().subst(n, sub), phi0.den().subst(n, sub));
        auto h = detail::product_closed_form(phi, u);
        if (h) {
            Rat h0 = h->eval({{u, Rat(0)}});
            cls.term = h->scaled(RatFunc(a0 / h0));
        } else {
            cls.lead = a0;
            cls.symbolic_ratio = phi;
        }
        out.classes.push_back(std::move(cls));
    }
    return out;
}

}  // namespace holo
