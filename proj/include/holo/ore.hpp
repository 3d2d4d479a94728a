#pragma once

#include <memory>

#include "holo/ode.hpp"
#include "holo/rec.hpp"

namespace holo {

enum class OpKind { Shift, Diff };

struct OperatorVar {
    Symbol op;    // the operator symbol (N, K, D, ...)
    OpKind kind;  // shift: Op*v = (v+1)*Op;  diff: Op*v = v*Op + 1
    Symbol var;   // the bound commutative variable

    friend bool operator==(const OperatorVar& a, const OperatorVar& b) {
        return a.op == b.op && a.kind == b.kind && a.var == b.var;
    }
};

// The operator symbols and their commutation rules; all other pairs commute.
class OreAlgebra {
  public:
    explicit OreAlgebra(std::vector<OperatorVar> ops) : ops_(std::move(ops)) {
        for (size_t i = 0; i < ops_.size(); i++)
            for (size_t j = i + 1; j < ops_.size(); j++) {
                if (ops_[i].op == ops_[j].op) throw DomainError("duplicate operator symbol");
                if (ops_[i].var == ops_[j].var)
                    throw DomainError("two operators bound to one variable");
            }
    }

    const std::vector<OperatorVar>& ops() const { return ops_; }
    size_t size() const { return ops_.size(); }

    int index_of(Symbol op) const {
        for (size_t i = 0; i < ops_.size(); i++)
            if (ops_[i].op == op) return (int)i;
        return -1;
    }
    bool is_op(Symbol s) const { return index_of(s) >= 0; }

    friend bool operator==(const OreAlgebra& a, const OreAlgebra& b) { return a.ops_ == b.ops_; }

  private:
    std::vector<OperatorVar> ops_;
};

using AlgebraPtr = std::shared_ptr<const OreAlgebra>;
using OpMono = std::vector<int>;

inline AlgebraPtr make_algebra(std::vector<OperatorVar> ops) {
    return std::make_shared<OreAlgebra>(std::move(ops));
}

// Operator polynomial in normal form: commutative coefficients written to the
// left of operator monomials.
class OrePoly {
  public:
    explicit OrePoly(AlgebraPtr alg) : alg_(std::move(alg)) {}
    OrePoly(AlgebraPtr alg, const MPoly& scalar) : alg_(std::move(alg)) {
        if (!scalar.is_zero()) set_term(OpMono(alg_->size(), 0), scalar);
    }

    static OrePoly generator(AlgebraPtr alg, Symbol op) {
        int i = alg->index_of(op);
        if (i < 0) throw DomainError("unknown operator symbol " + op.name());
        OrePoly p(alg);
        OpMono m(alg->size(), 0);
        m[i] = 1;
        p.set_term(m, MPoly(1));
        return p;
    }

    const AlgebraPtr& algebra() const { return alg_; }
    const std::map<OpMono, MPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend bool operator==(const OrePoly& a, const OrePoly& b) {
        return *a.alg_ == *b.alg_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const OrePoly& a, const OrePoly& b) { return !(a == b); }

    OrePoly operator-() const {
        OrePoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    friend OrePoly operator+(const OrePoly& a, const OrePoly& b) {
        a.check_same(b);
        OrePoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend OrePoly operator-(const OrePoly& a, const OrePoly& b) { return a + (-b); }
    OrePoly& operator+=(const OrePoly& o) { return *this = *this + o; }
    OrePoly& operator-=(const OrePoly& o) { return *this = *this - o; }

    // left multiplication by a commutative polynomial
    OrePoly scaled(const MPoly& c) const {
        OrePoly r(alg_);
        if (c.is_zero()) return r;
        for (const auto& [m, x] : terms_) r.add_term(m, c * x);
        return r;
    }

    // full rational content of the coefficient list, removed with a canonical
    // sign so bases print deterministically
    OrePoly unit_normalized() const {
        if (terms_.empty()) return *this;
        Rat content(0);
        for (const auto& [m, c] : terms_) content = rat_gcd(content, c.content());
        if (terms_.rbegin()->second.lead_coeff().sign() < 0) content = -content;
        return scaled(MPoly(content.inv()));
    }

    void add_term(const OpMono& m, const MPoly& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            check_coeff(c);
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!out.empty()) out += " + ";
            const MPoly& c = it->second;
            std::string mono = mono_str(it->first);
            if (mono.empty()) {
                out += c.terms().size() > 1 ? "(" + c.str() + ")" : c.str();
            } else {
                if (c.is_one()) {
                    out += mono;
                } else if (c.terms().size() > 1 || c.lead_coeff().sign() < 0) {
                    out += "(" + c.str() + ")*" + mono;
                } else {
                    out += c.str() + "*" + mono;
                }
            }
        }
        return out;
    }
    friend std::ostream& operator<<(std::ostream& os, const OrePoly& p) { return os << p.str(); }

  private:
    void set_term(const OpMono& m, const MPoly& c) {
        check_coeff(c);
        terms_.emplace(m, c);
    }
    void check_coeff(const MPoly& c) const {
        for (Symbol s : c.vars())
            if (alg_->is_op(s))
                throw DomainError("operator symbol inside a commutative coefficient");
    }
    void check_same(const OrePoly& o) const {
        if (!(*alg_ == *o.alg_)) throw DomainError("operator polynomials over different algebras");
    }
    std::string mono_str(const OpMono& m) const {
        std::string out;
        for (size_t i = 0; i < m.size(); i++) {
            if (m[i] == 0) continue;
            if (!out.empty()) out += "*";
            out += alg_->ops()[i].op.name();
            if (m[i] != 1) out += "^" + std::to_string(m[i]);
        }
        return out;
    }

    AlgebraPtr alg_;
    std::map<OpMono, MPoly> terms_;
};

// product in normal form, applying the commutation rules
inline OrePoly ore_mul(const OrePoly& a, const OrePoly& b) {
    if (!(*a.algebra() == *b.algebra()))
        throw DomainError("operator polynomials over different algebras");
    const AlgebraPtr& alg = a.algebra();
    OrePoly out(alg);
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            // push the operator monomial ma through the coefficient cb
            std::map<OpMono, MPoly> acc{{OpMono(alg->size(), 0), cb}};
            for (size_t i = 0; i < alg->size(); i++) {
                int e = ma[i];
                if (e == 0) continue;
                const OperatorVar& ov = alg->ops()[i];
                std::map<OpMono, MPoly> next;
                for (const auto& [m, c] : acc) {
                    if (ov.kind == OpKind::Shift) {
                        OpMono nm = m;
                        nm[i] += e;
                        MPoly shifted = shift_var(c, ov.var, Rat(e));
                        auto it = next.find(nm);
                        if (it == next.end())
                            next.emplace(nm, shifted);
                        else
                            it->second += shifted;
                    } else {
                        // D^e c = sum_t C(e,t) c^(t) D^(e-t)
                        MPoly deriv = c;
                        for (int t = 0; t <= e; t++) {
                            if (t > 0) deriv = deriv.derivative(ov.var);
                            if (deriv.is_zero()) break;
                            OpMono nm = m;
                            nm[i] += e - t;
                            MPoly contrib = MPoly(Rat(int_binomial(e, t))) * deriv;
                            auto it = next.find(nm);
                            if (it == next.end())
                                next.emplace(nm, contrib);
                            else
                                it->second += contrib;
                        }
                    }
                }
                acc = std::move(next);
            }
            for (const auto& [m, c] : acc) {
                OpMono full = m;
                for (size_t i = 0; i < alg->size(); i++) full[i] += mb[i];
                out.add_term(full, ca * c);
            }
        }
    }
    return out;
}

inline OrePoly ore_pow(const OrePoly& p, int e) {
    if (e < 0) throw DomainError("negative operator power");
    OrePoly r(p.algebra(), MPoly(1));
    for (int i = 0; i < e; i++) r = ore_mul(r, p);
    return r;
}

// substitute 1 for an operator symbol (e.g. K := 1 after elimination)
inline OrePoly substitute_op_one(const OrePoly& p, Symbol op) {
    int idx = p.algebra()->index_of(op);
    if (idx < 0) throw DomainError("unknown operator symbol " + op.name());
    OrePoly out(p.algebra());
    for (const auto& [m, c] : p.terms()) {
        OpMono nm = m;
        nm[idx] = 0;
        out.add_term(nm, c);
    }
    return out;
}

// recurrence operator as an Ore polynomial in the given shift symbol
inline OrePoly orepoly_from_rec(const AlgebraPtr& alg, const AnnihilatorRec& rec, Symbol op) {
    int idx = alg->index_of(op);
    if (idx < 0 || alg->ops()[idx].kind != OpKind::Shift || !(alg->ops()[idx].var == rec.var()))
        throw DomainError("operator symbol does not match the recurrence variable");
    OrePoly out(alg);
    for (int i = 0; i <= rec.order(); i++) {
        if (rec.coeff(i).is_zero()) continue;
        OpMono m(alg->size(), 0);
        m[idx] = i;
        out.add_term(m, rec.coeff(i));
    }
    return out;
}

inline OrePoly orepoly_from_ode(const AlgebraPtr& alg, const AnnihilatorODE& ode, Symbol op) {
    int idx = alg->index_of(op);
    if (idx < 0 || alg->ops()[idx].kind != OpKind::Diff || !(alg->ops()[idx].var == ode.var()))
        throw DomainError("operator symbol does not match the differential variable");
    if (!ode.homogeneous()) throw DomainError("inhomogeneous equation has no operator form");
    OrePoly out(alg);
    for (int i = 0; i <= ode.order(); i++) {
        if (ode.coeff(i).is_zero()) continue;
        OpMono m(alg->size(), 0);
        m[idx] = i;
        out.add_term(m, ode.coeff(i));
    }
    return out;
}

// collapse a single-shift operator polynomial back into a recurrence
inline AnnihilatorRec orepoly_to_rec(const OrePoly& p, Symbol op) {
    int idx = p.algebra()->index_of(op);
    if (idx < 0) throw DomainError("unknown operator symbol");
    Symbol var = p.algebra()->ops()[idx].var;
    int order = 0;
    for (const auto& [m, c] : p.terms()) {
        for (size_t i = 0; i < m.size(); i++)
            if ((int)i != idx && m[i] != 0)
                throw DomainError("operator polynomial involves other operators");
        order = std::max(order, m[idx]);
    }
    std::vector<MPoly> coeffs(order + 1);
    for (const auto& [m, c] : p.terms()) coeffs[m[idx]] = c;
    return AnnihilatorRec(var, std::move(coeffs));
}

// exact application to a value grid: all operators must be shifts
inline Rat apply_to_grid(const OrePoly& p,
                         const std::function<Rat(const std::map<Symbol, long>&)>& value,
                         const std::map<Symbol, long>& point,
                         const std::map<Symbol, Rat>& bindings = {}) {
    const AlgebraPtr& alg = p.algebra();
    Rat acc(0);
    for (const auto& [m, c] : p.terms()) {
        std::map<Symbol, long> shifted = point;
        for (size_t i = 0; i < m.size(); i++) {
            if (m[i] == 0) continue;
            if (alg->ops()[i].kind != OpKind::Shift)
                throw DomainError("grid application needs shift operators only");
            shifted[alg->ops()[i].var] += m[i];
        }
        std::map<Symbol, Rat> pt = bindings;
        for (const auto& [v, x] : point) pt[v] = Rat(x);
        acc += c.eval(pt) * value(shifted);
    }
    return acc;
}

// exact application to a family of polynomials indexed by one shift variable,
// with derivatives taken in the family's own variable
inline MPoly apply_to_poly_family(const OrePoly& p, const std::vector<MPoly>& family, long index,
                                  const std::map<Symbol, Rat>& bindings = {}) {
    const AlgebraPtr& alg = p.algebra();
    MPoly acc;
    for (const auto& [m, c] : p.terms()) {
        // shifts locate the family member, derivatives act on it
        long at = index;
        for (size_t i = 0; i < m.size(); i++)
            if (m[i] != 0 && alg->ops()[i].kind == OpKind::Shift) at += m[i];
        if (at < 0 || at >= (long)family.size())
            throw DomainError("family application out of range");
        MPoly val = family[at];
        for (size_t i = 0; i < m.size(); i++)
            if (m[i] != 0 && alg->ops()[i].kind == OpKind::Diff)
                for (int t = 0; t < m[i]; t++) val = val.derivative(alg->ops()[i].var);
        // bind the shift index variables; the family variable stays symbolic
        std::map<Symbol, Rat> pt = bindings;
        for (size_t i = 0; i < alg->size(); i++)
            if (alg->ops()[i].kind == OpKind::Shift) pt[alg->ops()[i].var] = Rat(index);
        acc += c.eval_partial(pt) * val;
    }
    return acc;
}

}  // namespace holo
