#pragma once

#include "holo/zeilberger.hpp"

namespace holo {

// exact sum over the natural support in `k`, located from the reciprocal
// factorial factors; parameters must be bound to rationals
inline Rat sum_oracle(const HyperTerm& t, Symbol k, const Rat& n_value, Symbol n,
                      const std::map<Symbol, Rat>& bindings = {}) {
    std::map<Symbol, Rat> bound = bindings;
    bound[n] = n_value;
    bool has_lo = false, has_hi = false;
    Rat lo(0), hi(0);
    for (const auto& [f, e] : t.factorials()) {
        if (e >= 0) continue;
        auto it = f.slopes.find(k);
        if (it == f.slopes.end() || it->second == 0) continue;
        long mk = it->second;
        // argument mk*k + rest >= 0 on the support
        Rat rest = f.offset.eval(bound);
        for (const auto& [v, m] : f.slopes) {
            if (v == k) continue;
            auto bv = bound.find(v);
            if (bv == bound.end()) throw DomainError("sum_oracle: unbound variable " + v.name());
            rest += Rat(m) * bv->second;
        }
        Rat edge = -rest / Rat(mk);
        Int bnd;
        if (mk > 0) {
            mpz_cdiv_q(bnd.get_mpz_t(), edge.num().get_mpz_t(), edge.den().get_mpz_t());
            if (!has_lo || Rat(bnd) > lo) lo = Rat(bnd);
            has_lo = true;
        } else {
            mpz_fdiv_q(bnd.get_mpz_t(), edge.num().get_mpz_t(), edge.den().get_mpz_t());
            if (!has_hi || Rat(bnd) < hi) hi = Rat(bnd);
            has_hi = true;
        }
    }
    if (!has_lo || !has_hi) throw DomainError("sum_oracle: unbounded support");
    Rat acc(0);
    for (Int i = lo.num(); Rat(i) <= hi; i += 1) {
        std::map<Symbol, Rat> pt = bound;
        pt[k] = Rat(i);
        acc += t.eval(pt);
    }
    return acc;
}

struct IdentityProof {
    enum class Verdict { Proved, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    std::optional<AnnihilatorRec> common;  // when both sides share the recurrence
    std::optional<ZeilbergerResult> lhs, rhs;
    std::vector<std::pair<long, Rat>> checked;  // (index, shared value)
    std::string note;

    bool proved() const { return verdict == Verdict::Proved; }
};

// proves sum_k lhs(n,k) = sum_k rhs(n,k) by matching the Zeilberger
// recurrences and enough initial values to pin the solution
inline IdentityProof prove_identity(const HyperTerm& lhs, const HyperTerm& rhs, Symbol n, Symbol k,
                                    int max_order = 6) {
    IdentityProof out;
    if (!has_natural_boundaries(lhs, k) || !has_natural_boundaries(rhs, k))
        throw DomainError("prove_identity: summand lacks natural boundaries in the sum variable");
    out.lhs = zeilberger(lhs, n, k, max_order);
    out.rhs = zeilberger(rhs, n, k, max_order);
    if (out.lhs->recurrence != out.rhs->recurrence) {
        out.note = "sides satisfy different canonical recurrences";
        return out;
    }
    out.common = out.lhs->recurrence;
    // initial segment: order plus one slot per nonnegative root of the leading
    // coefficient, and every index a root leaves undetermined
    std::set<long> indices;
    long r = out.common->order();
    std::set<Int> roots = out.common->singular_roots();
    for (long i = 0; i < r + (long)roots.size(); i++) indices.insert(i);
    for (const Int& rt : roots) indices.insert((long)rt.get_si() + r);
    for (long i : indices) {
        Rat a = sum_oracle(lhs, k, Rat(i), n);
        Rat b = sum_oracle(rhs, k, Rat(i), n);
        if (!(a == b)) {
            out.note = "sums differ at index " + std::to_string(i);
            return out;
        }
        out.checked.emplace_back(i, a);
    }
    out.verdict = IdentityProof::Verdict::Proved;
    return out;
}

}  // namespace holo
