#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "holo/errors.hpp"
#include "holo/rat.hpp"
#include "holo/symbol.hpp"

namespace holo {

using Mono = std::vector<int>;

inline int mono_total_degree(const Mono& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

// graded lex; ties broken lexicographically with the first variable most significant
struct GrlexLess {
    bool operator()(const Mono& a, const Mono& b) const {
        int da = mono_total_degree(a), db = mono_total_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

// Sparse multivariate polynomial over Q. Variable list is sorted by symbol
// order and trimmed to the variables actually present, so equal polynomials
// have identical representations.
class MPoly {
  public:
    using TermMap = std::map<Mono, Rat, GrlexLess>;

    MPoly() = default;
    MPoly(const Rat& c) {  // NOLINT: implicit constant
        if (!c.is_zero()) terms_[Mono{}] = c;
    }
    MPoly(int c) : MPoly(Rat(c)) {}  // NOLINT
    static MPoly variable(Symbol s) {
        MPoly p;
        p.vars_ = {s};
        p.terms_[Mono{1}] = Rat(1);
        return p;
    }
    static MPoly from_terms(std::vector<Symbol> vars, TermMap terms) {
        MPoly p;
        p.vars_ = std::move(vars);
        p.terms_ = std::move(terms);
        p.trim();
        return p;
    }

    const std::vector<Symbol>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
    Rat constant_value() const {
        if (terms_.empty()) return Rat(0);
        if (!is_constant()) throw DomainError("polynomial is not constant");
        return terms_.begin()->second;
    }
    bool is_one() const { return is_constant() && constant_value().is_one(); }

    bool depends_on(Symbol s) const {
        return std::find(vars_.begin(), vars_.end(), s) != vars_.end();
    }

    int total_degree() const {
        if (terms_.empty()) return -1;
        return mono_total_degree(terms_.rbegin()->first);
    }

    int degree(Symbol s) const {
        int i = var_index(s);
        if (i < 0) return terms_.empty() ? -1 : 0;
        int d = terms_.empty() ? -1 : 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m[i]);
        return d;
    }

    // leading coefficient in graded lex over the own variable list
    Rat lead_coeff() const {
        if (terms_.empty()) return Rat(0);
        return terms_.rbegin()->second;
    }
    const Mono& lead_mono() const { return terms_.rbegin()->first; }

    friend bool operator==(const MPoly& a, const MPoly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        auto [av, bv, vars] = aligned(a, b);
        MPoly r;
        r.vars_ = vars;
        r.terms_ = std::move(av);
        for (auto& [m, c] : bv) {
            auto it = r.terms_.find(m);
            if (it == r.terms_.end()) {
                r.terms_.emplace(m, c);
            } else {
                it->second += c;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
        r.trim();
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        if (a.is_zero() || b.is_zero()) return MPoly();
        auto [av, bv, vars] = aligned(a, b);
        MPoly r;
        r.vars_ = vars;
        size_t n = vars.size();
        for (const auto& [ma, ca] : av) {
            for (const auto& [mb, cb] : bv) {
                Mono m(n, 0);
                for (size_t i = 0; i < n; i++) m[i] = ma[i] + mb[i];
                auto it = r.terms_.find(m);
                if (it == r.terms_.end()) {
                    Rat c = ca * cb;
                    if (!c.is_zero()) r.terms_.emplace(std::move(m), c);
                } else {
                    it->second += ca * cb;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        }
        r.trim();
        return r;
    }

    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly pow(int e) const {
        if (e < 0) throw DomainError("negative polynomial power");
        MPoly r(1), base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            base = (e >>= 1) ? base * base : base;
        }
        return r;
    }

    // exact division; nullopt when not divisible
    std::optional<MPoly> try_div(const MPoly& d) const {
        if (d.is_zero()) throw DomainError("division by zero polynomial");
        if (is_zero()) return MPoly();
        if (d.is_constant()) {
            MPoly r = *this;
            Rat inv = d.constant_value().inv();
            for (auto& [m, c] : r.terms_) c *= inv;
            return r;
        }
        auto [av, dv, vars] = aligned(*this, d);
        size_t n = vars.size();
        TermMap rem = std::move(av);
        const Mono& dl = dv.rbegin()->first;
        Rat dlc = dv.rbegin()->second;
        TermMap quot;
        while (!rem.empty()) {
            const Mono& rl = rem.rbegin()->first;
            Mono q(n, 0);
            bool ok = true;
            for (size_t i = 0; i < n; i++) {
                q[i] = rl[i] - dl[i];
                if (q[i] < 0) { ok = false; break; }
            }
            if (!ok) return std::nullopt;
            Rat qc = rem.rbegin()->second / dlc;
            quot.emplace(q, qc);
            // rem -= qc * q * d
            for (const auto& [m, c] : dv) {
                Mono t(n, 0);
                for (size_t i = 0; i < n; i++) t[i] = m[i] + q[i];
                auto it = rem.find(t);
                Rat delta = qc * c;
                if (it == rem.end()) {
                    if (!delta.is_zero()) rem.emplace(std::move(t), -delta);
                } else {
                    it->second -= delta;
                    if (it->second.is_zero()) rem.erase(it);
                }
            }
        }
        return MPoly::from_terms(vars, std::move(quot));
    }

    MPoly divexact(const MPoly& d) const {
        auto q = try_div(d);
        if (!q) throw DomainError("inexact polynomial division");
        return *q;
    }

    MPoly derivative(Symbol s) const {
        int i = var_index(s);
        if (i < 0) return MPoly();
        MPoly r;
        r.vars_ = vars_;
        for (const auto& [m, c] : terms_) {
            if (m[i] == 0) continue;
            Mono t = m;
            t[i]--;
            r.terms_[t] = c * Rat(m[i]);
        }
        r.trim();
        return r;
    }

    // substitute a polynomial for a variable
    MPoly subst(Symbol s, const MPoly& val) const {
        int i = var_index(s);
        if (i < 0) return *this;
        auto coeffs = univar_coeffs(s);
        MPoly r;
        for (int d = (int)coeffs.size() - 1; d >= 0; d--) r = r * val + coeffs[d];
        return r;
    }

    // partial evaluation at rational points
    MPoly eval_partial(const std::map<Symbol, Rat>& vals) const {
        MPoly r = *this;
        for (const auto& [s, v] : vals)
            if (r.depends_on(s)) r = r.subst(s, MPoly(v));
        return r;
    }

    Rat eval(const std::map<Symbol, Rat>& vals) const {
        MPoly r = eval_partial(vals);
        if (!r.is_constant()) throw DomainError("evaluation left free variables");
        return r.constant_value();
    }

    // dense coefficient list of this viewed as univariate in s (constant term first)
    std::vector<MPoly> univar_coeffs(Symbol s) const {
        int i = var_index(s);
        if (i < 0) return {*this};
        int deg = degree(s);
        std::vector<Symbol> rest = vars_;
        rest.erase(rest.begin() + i);
        std::vector<TermMap> parts(deg + 1);
        for (const auto& [m, c] : terms_) {
            Mono t = m;
            t.erase(t.begin() + i);
            parts[m[i]].emplace(std::move(t), c);
        }
        std::vector<MPoly> out;
        out.reserve(deg + 1);
        for (auto& p : parts) out.push_back(MPoly::from_terms(rest, std::move(p)));
        return out;
    }

    static MPoly from_univar(const std::vector<MPoly>& coeffs, Symbol s) {
        MPoly x = variable(s), r;
        for (int d = (int)coeffs.size() - 1; d >= 0; d--) r = r * x + coeffs[d];
        return r;
    }

    // rational content: gcd of coefficients, signed by the leading term
    Rat content() const {
        Rat g(0);
        for (const auto& [m, c] : terms_) g = rat_gcd(g, c);
        if (!g.is_zero() && lead_coeff().sign() < 0) g = -g;
        return g;
    }

    // divide by content: integer-primitive with positive leading coefficient
    MPoly primitive() const {
        if (is_zero()) return *this;
        Rat ct = content();
        MPoly r = *this;
        Rat inv = ct.inv();
        for (auto& [m, c] : r.terms_) c *= inv;
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            Rat c = it->second;
            if (first) {
                if (c.sign() < 0) { os << "-"; c = -c; }
            } else {
                os << (c.sign() < 0 ? " - " : " + ");
                if (c.sign() < 0) c = -c;
            }
            first = false;
            std::string mono = mono_str(it->first);
            if (mono.empty()) {
                os << c;
            } else {
                if (!c.is_one()) os << c << "*";
                os << mono;
            }
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.str(); }

  private:
    int var_index(Symbol s) const {
        for (size_t i = 0; i < vars_.size(); i++)
            if (vars_[i] == s) return (int)i;
        return -1;
    }

    std::string mono_str(const Mono& m) const {
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < m.size(); i++) {
            if (m[i] == 0) continue;
            if (!first) os << "*";
            first = false;
            os << vars_[i].name();
            if (m[i] != 1) os << "^" << m[i];
        }
        return os.str();
    }

    // drop variables with zero exponent everywhere
    void trim() {
        if (vars_.empty()) return;
        std::vector<bool> used(vars_.size(), false);
        for (const auto& [m, c] : terms_)
            for (size_t i = 0; i < m.size(); i++)
                if (m[i] != 0) used[i] = true;
        bool all = true;
        for (bool u : used) all = all && u;
        if (all && !terms_.empty()) return;
        std::vector<Symbol> nv;
        for (size_t i = 0; i < vars_.size(); i++)
            if (used[i]) nv.push_back(vars_[i]);
        TermMap nt;
        for (const auto& [m, c] : terms_) {
            Mono t;
            t.reserve(nv.size());
            for (size_t i = 0; i < m.size(); i++)
                if (used[i]) t.push_back(m[i]);
            nt.emplace(std::move(t), c);
        }
        vars_ = std::move(nv);
        terms_ = std::move(nt);
    }

    // remap both polynomials onto the union variable list
    static std::tuple<TermMap, TermMap, std::vector<Symbol>> aligned(const MPoly& a, const MPoly& b) {
        if (a.vars_ == b.vars_) return {a.terms_, b.terms_, a.vars_};
        std::vector<Symbol> vars;
        std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(),
                       std::back_inserter(vars));
        return {remap(a, vars), remap(b, vars), vars};
    }

    static TermMap remap(const MPoly& p, const std::vector<Symbol>& vars) {
        std::vector<int> pos(p.vars_.size());
        for (size_t i = 0; i < p.vars_.size(); i++) {
            auto it = std::find(vars.begin(), vars.end(), p.vars_[i]);
            pos[i] = (int)(it - vars.begin());
        }
        TermMap out;
        for (const auto& [m, c] : p.terms_) {
            Mono t(vars.size(), 0);
            for (size_t i = 0; i < m.size(); i++) t[pos[i]] = m[i];
            out.emplace(std::move(t), c);
        }
        return out;
    }

    std::vector<Symbol> vars_;
    TermMap terms_;
};

// var + c as a polynomial
inline MPoly linear(Symbol s, const Rat& c) { return MPoly::variable(s) + MPoly(c); }

// total order on polynomials for canonical sorting (vars, then terms)
inline int poly_cmp(const MPoly& a, const MPoly& b) {
    if (a.vars() != b.vars()) {
        for (size_t i = 0; i < std::min(a.vars().size(), b.vars().size()); i++) {
            if (a.vars()[i] < b.vars()[i]) return -1;
            if (b.vars()[i] < a.vars()[i]) return 1;
        }
        return a.vars().size() < b.vars().size() ? -1 : 1;
    }
    auto ia = a.terms().begin(), ib = b.terms().begin();
    GrlexLess less;
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
        if (less(ia->first, ib->first)) return -1;
        if (less(ib->first, ia->first)) return 1;
        if (ia->second < ib->second) return -1;
        if (ib->second < ia->second) return 1;
    }
    if (ia != a.terms().end()) return 1;
    if (ib != b.terms().end()) return -1;
    return 0;
}

// substitute s -> s + delta
inline MPoly shift_var(const MPoly& p, Symbol s, const Rat& delta) {
    if (!p.depends_on(s)) return p;
    return p.subst(s, linear(s, delta));
}

}  // namespace holo
