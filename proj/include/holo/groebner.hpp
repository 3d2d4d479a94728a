#pragma once

#include <deque>

#include "holo/budget.hpp"
#include "holo/ore.hpp"

namespace holo {

// Monomial order over a priority list that may mix operator symbols and
// commutative variables; symbols outside the list live in the coefficients.
struct TermOrder {
    enum class Kind { Lex, Block };
    Kind kind = Kind::Lex;
    std::vector<Symbol> priority;
    size_t block_split = 0;  // Block: [0, split) is the elimination block

    static TermOrder lex(std::vector<Symbol> prio) { return TermOrder{Kind::Lex, std::move(prio), 0}; }
    static TermOrder block(std::vector<Symbol> first, const std::vector<Symbol>& rest) {
        TermOrder t;
        t.kind = Kind::Block;
        t.block_split = first.size();
        t.priority = std::move(first);
        t.priority.insert(t.priority.end(), rest.begin(), rest.end());
        return t;
    }

    // -1, 0, 1 comparison of flattened exponent vectors
    int cmp(const std::vector<int>& a, const std::vector<int>& b) const {
        auto lexcmp = [&](size_t lo, size_t hi) {
            for (size_t i = lo; i < hi; i++)
                if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
            return 0;
        };
        if (kind == Kind::Lex) return lexcmp(0, priority.size());
        auto block_cmp = [&](size_t lo, size_t hi) {
            int da = 0, db = 0;
            for (size_t i = lo; i < hi; i++) {
                da += a[i];
                db += b[i];
            }
            if (da != db) return da < db ? -1 : 1;
            return lexcmp(lo, hi);
        };
        int c = block_cmp(0, block_split);
        if (c) return c;
        return block_cmp(block_split, priority.size());
    }
};

namespace detail {

// a term of an operator polynomial flattened against a term order
struct GTerm {
    std::vector<int> exps;  // aligned with order.priority
    MPoly coeff;            // over the unlisted symbols
};

inline std::vector<GTerm> decompose(const OrePoly& p, const TermOrder& ord) {
    const AlgebraPtr& alg = p.algebra();
    std::vector<int> op_slot(alg->size(), -1);
    std::vector<Symbol> comm_syms;
    std::vector<int> comm_slot;
    for (size_t s = 0; s < ord.priority.size(); s++) {
        int oi = alg->index_of(ord.priority[s]);
        if (oi >= 0) {
            op_slot[oi] = (int)s;
        } else {
            comm_syms.push_back(ord.priority[s]);
            comm_slot.push_back((int)s);
        }
    }
    for (size_t i = 0; i < alg->size(); i++) {
        bool listed_op = op_slot[i] >= 0;
        if (!listed_op) continue;
        // a listed operator over an unlisted variable would act on coefficient
        // symbols during reduction; reject the configuration
        Symbol v = alg->ops()[i].var;
        bool var_listed = false;
        for (Symbol s : ord.priority) var_listed = var_listed || s == v;
        if (!var_listed)
            throw DomainError("term order lists operator " + alg->ops()[i].op.name() +
                              " but not its variable " + v.name());
    }
    std::map<std::vector<int>, MPoly> acc;
    for (const auto& [om, coeff] : p.terms()) {
        // split each coefficient monomial into listed exponents and the rest
        for (const auto& [mono, c] : coeff.terms()) {
            std::vector<int> exps(ord.priority.size(), 0);
            for (size_t i = 0; i < alg->size(); i++)
                if (om[i] != 0) {
                    if (op_slot[i] < 0)
                        throw DomainError("operator " + alg->ops()[i].op.name() +
                                          " missing from the term order");
                    exps[op_slot[i]] = om[i];
                }
            MPoly rest(c);
            for (size_t vi = 0; vi < coeff.vars().size(); vi++) {
                if (mono[vi] == 0) continue;
                Symbol v = coeff.vars()[vi];
                bool listed = false;
                for (size_t ci = 0; ci < comm_syms.size(); ci++)
                    if (comm_syms[ci] == v) {
                        exps[comm_slot[ci]] = mono[vi];
                        listed = true;
                        break;
                    }
                if (!listed) rest *= MPoly::variable(v).pow(mono[vi]);
            }
            auto it = acc.find(exps);
            if (it == acc.end())
                acc.emplace(std::move(exps), rest);
            else
                it->second += rest;
        }
    }
    std::vector<GTerm> out;
    for (auto& [e, c] : acc)
        if (!c.is_zero()) out.push_back(GTerm{e, std::move(c)});
    std::sort(out.begin(), out.end(),
              [&](const GTerm& x, const GTerm& y) { return ord.cmp(x.exps, y.exps) > 0; });
    return out;
}

inline OrePoly mono_as_orepoly(const AlgebraPtr& alg, const TermOrder& ord,
                               const std::vector<int>& exps) {
    MPoly coeff(1);
    OpMono om(alg->size(), 0);
    for (size_t s = 0; s < ord.priority.size(); s++) {
        if (exps[s] == 0) continue;
        int oi = alg->index_of(ord.priority[s]);
        if (oi >= 0)
            om[oi] = exps[s];
        else
            coeff *= MPoly::variable(ord.priority[s]).pow(exps[s]);
    }
    OrePoly p(alg);
    p.add_term(om, coeff);
    return p;
}

inline bool divides(const std::vector<int>& a, const std::vector<int>& b) {
    for (size_t i = 0; i < a.size(); i++)
        if (a[i] > b[i]) return false;
    return true;
}

struct GPoly {
    OrePoly p;
    std::vector<GTerm> terms;  // sorted descending

    GPoly(OrePoly poly, const TermOrder& ord) : p(std::move(poly)), terms(decompose(p, ord)) {}
    const GTerm& lead() const { return terms.front(); }
};

}  // namespace detail

struct ReductionTrace {
    MPoly multiplier;               // pseudo-reduction scale applied to the input
    std::vector<OrePoly> cofactors;  // one per basis element: multiplier*p = sum cof_i b_i + rem
};

// left normal form of p modulo basis; pseudo-reduction cross-multiplies by the
// reducer's leading coefficient, so trace.multiplier * p = sum cof_i * b_i + result
inline OrePoly left_reduce(const OrePoly& p, const std::vector<OrePoly>& basis,
                           const TermOrder& ord, Budget* budget = nullptr,
                           ReductionTrace* trace = nullptr) {
    const AlgebraPtr& alg = p.algebra();
    std::vector<detail::GPoly> bs;
    std::vector<size_t> orig;  // position in `basis`
    for (size_t i = 0; i < basis.size(); i++)
        if (!basis[i].is_zero()) {
            bs.emplace_back(basis[i], ord);
            orig.push_back(i);
        }
    if (trace) {
        trace->multiplier = MPoly(1);
        trace->cofactors.assign(basis.size(), OrePoly(alg));
    }
    OrePoly cur = p;
    while (!cur.is_zero()) {
        if (budget) budget->tick();
        auto terms = detail::decompose(cur, ord);
        bool reduced = false;
        for (size_t ti = 0; ti < terms.size() && !reduced; ti++) {
            for (size_t bi = 0; bi < bs.size(); bi++) {
                if (!detail::divides(bs[bi].lead().exps, terms[ti].exps)) continue;
                const detail::GPoly& g = bs[bi];
                std::vector<int> delta(terms[ti].exps.size());
                for (size_t t = 0; t < delta.size(); t++)
                    delta[t] = terms[ti].exps[t] - g.lead().exps[t];
                OrePoly shifted = ore_mul(detail::mono_as_orepoly(alg, ord, delta), g.p);
                auto sterms = detail::decompose(shifted, ord);
                if (sterms.empty() || sterms.front().exps != terms[ti].exps)
                    throw Error("internal: leading monomial mismatch in reduction");
                const MPoly& ch = sterms.front().coeff;
                const MPoly& cp = terms[ti].coeff;
                MPoly common = poly_gcd(ch, cp);
                MPoly mult = ch.divexact(common);  // scale applied to cur
                MPoly cof = cp.divexact(common);   // scale applied to the shifted reducer
                cur = cur.scaled(mult) - shifted.scaled(cof);
                if (trace) {
                    trace->multiplier *= mult;
                    for (auto& c : trace->cofactors) c = c.scaled(mult);
                    trace->cofactors[orig[bi]] +=
                        ore_mul(OrePoly(alg, cof), detail::mono_as_orepoly(alg, ord, delta));
                }
                reduced = true;
                break;
            }
        }
        if (!reduced) break;
    }
    return cur;
}

// reduced left Groebner basis of the generated left ideal
inline std::vector<OrePoly> left_groebner(const std::vector<OrePoly>& gens, const TermOrder& ord,
                                          Budget* budget = nullptr) {
    Budget local;
    if (!budget) budget = &local;
    std::vector<OrePoly> basis;
    for (const auto& g : gens)
        if (!g.is_zero()) basis.push_back(g.unit_normalized());
    if (basis.empty()) throw DomainError("left_groebner: no nonzero generators");
    AlgebraPtr alg = basis.front().algebra();

    auto lead = [&](const OrePoly& p) { return detail::GPoly(p, ord).lead(); };
    std::deque<std::pair<size_t, size_t>> pairs;
    auto push_pairs = [&](size_t j) {
        for (size_t i = 0; i < j; i++) pairs.emplace_back(i, j);
    };
    for (size_t j = 0; j < basis.size(); j++) push_pairs(j);

    while (!pairs.empty()) {
        budget->tick();
        // normal selection: smallest lcm first
        size_t best = 0;
        std::vector<int> best_lcm;
        for (size_t pi = 0; pi < pairs.size(); pi++) {
            auto [i, j] = pairs[pi];
            auto li = lead(basis[i]).exps, lj = lead(basis[j]).exps;
            std::vector<int> l(li.size());
            for (size_t t = 0; t < l.size(); t++) l[t] = std::max(li[t], lj[t]);
            if (pi == 0 || ord.cmp(l, best_lcm) < 0) {
                best = pi;
                best_lcm = l;
            }
        }
        auto [i, j] = pairs[best];
        pairs.erase(pairs.begin() + best);

        auto li = lead(basis[i]), lj = lead(basis[j]);
        std::vector<int> di(best_lcm.size()), dj(best_lcm.size());
        std::vector<int> lcm(best_lcm);
        for (size_t t = 0; t < lcm.size(); t++) {
            lcm[t] = std::max(li.exps[t], lj.exps[t]);
            di[t] = lcm[t] - li.exps[t];
            dj[t] = lcm[t] - lj.exps[t];
        }
        OrePoly u = ore_mul(detail::mono_as_orepoly(alg, ord, di), basis[i]);
        OrePoly v = ore_mul(detail::mono_as_orepoly(alg, ord, dj), basis[j]);
        MPoly cu = detail::decompose(u, ord).front().coeff;
        MPoly cv = detail::decompose(v, ord).front().coeff;
        MPoly l = poly_lcm(cu, cv);
        OrePoly s = u.scaled(l.divexact(cu)) - v.scaled(l.divexact(cv));
        OrePoly rem = left_reduce(s, basis, ord, budget).unit_normalized();
        if (!rem.is_zero()) {
            basis.push_back(rem);
            push_pairs(basis.size() - 1);
        }
    }

    // minimalize and tail-reduce
    std::vector<OrePoly> minimal;
    for (size_t i = 0; i < basis.size(); i++) {
        auto li = detail::GPoly(basis[i], ord).lead().exps;
        bool redundant = false;
        for (size_t j = 0; j < basis.size() && !redundant; j++) {
            if (i == j) continue;
            auto lj = detail::GPoly(basis[j], ord).lead().exps;
            if (detail::divides(lj, li) && (lj != li || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    std::vector<OrePoly> reduced;
    for (size_t i = 0; i < minimal.size(); i++) {
        std::vector<OrePoly> others;
        for (size_t j = 0; j < minimal.size(); j++)
            if (j != i) others.push_back(minimal[j]);
        OrePoly r = left_reduce(minimal[i], others, ord, budget);
        if (!r.is_zero()) reduced.push_back(r.unit_normalized());
    }
    std::sort(reduced.begin(), reduced.end(), [&](const OrePoly& x, const OrePoly& y) {
        return ord.cmp(detail::GPoly(x, ord).lead().exps, detail::GPoly(y, ord).lead().exps) < 0;
    });
    return reduced;
}

inline bool mentions_any(const OrePoly& p, const std::set<std::string>& names) {
    for (const auto& [m, c] : p.terms()) {
        for (size_t i = 0; i < m.size(); i++)
            if (m[i] != 0 && names.count(p.algebra()->ops()[i].op.name())) return true;
        for (Symbol s : c.vars())
            if (names.count(s.name())) return true;
    }
    return false;
}

// elements of a Groebner basis free of the dropped symbols, computed under an
// elimination order with the dropped symbols in front
inline std::vector<OrePoly> eliminate(const std::vector<OrePoly>& gens,
                                      const std::vector<Symbol>& drop,
                                      const std::vector<Symbol>& rest, Budget* budget = nullptr,
                                      TermOrder::Kind kind = TermOrder::Kind::Lex) {
    if (drop.empty()) throw DomainError("eliminate: empty drop set");
    TermOrder ord = kind == TermOrder::Kind::Lex
                        ? TermOrder::lex([&] {
                              std::vector<Symbol> p = drop;
                              p.insert(p.end(), rest.begin(), rest.end());
                              return p;
                          }())
                        : TermOrder::block(drop, rest);
    std::vector<OrePoly> gb = left_groebner(gens, ord, budget);
    std::set<std::string> names;
    for (Symbol s : drop) names.insert(s.name());
    std::vector<OrePoly> out;
    for (const auto& g : gb)
        if (!mentions_any(g, names)) out.push_back(g);
    return out;
}

// recurrence for s(n) = sum_k F(n,k) from the two summand recurrences, by
// eliminating k and substituting K := 1; valid for summands with natural
// boundaries in k
inline AnnihilatorRec sum_recurrence_via_elimination(const AnnihilatorRec& rec_n,
                                                     const AnnihilatorRec& rec_k,
                                                     Budget* budget = nullptr) {
    Symbol n = rec_n.var(), k = rec_k.var();
    Symbol N("N"), K("K");
    AlgebraPtr alg = make_algebra({{N, OpKind::Shift, n}, {K, OpKind::Shift, k}});
    std::vector<OrePoly> gens{orepoly_from_rec(alg, rec_n, N), orepoly_from_rec(alg, rec_k, K)};
    std::vector<OrePoly> free = eliminate(gens, {k}, {n, K, N}, budget);
    if (free.empty()) throw Error("no k-free element found within budget");
    AnnihilatorRec out = orepoly_to_rec(substitute_op_one(free.front(), K), N);
    // remove the full polynomial content that the specialization exposes
    MPoly g;
    for (const auto& c : out.coeffs()) g = poly_gcd(g, c);
    if (g.total_degree() > 0) {
        std::vector<MPoly> cleared;
        for (const auto& c : out.coeffs()) cleared.push_back(c.divexact(g));
        return AnnihilatorRec(n, std::move(cleared));
    }
    return out;
}

}  // namespace holo
