#pragma once

#include <cctype>
#include <functional>
#include <optional>

#include "holo/linalg.hpp"
#include "holo/roots.hpp"

namespace holo {

// Homogeneous linear recurrence operator sum_i q_i(var) * a(var+i) with
// polynomial coefficients; symbols other than var act as parameters.
// Canonical: q_r != 0, coefficient list has rational content 1 and the
// leading coefficient is positive under graded lex.
class AnnihilatorRec {
  public:
    AnnihilatorRec(Symbol var, std::vector<MPoly> coeffs) : var_(var), coeffs_(std::move(coeffs)) {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
        if (coeffs_.empty()) throw DomainError("zero recurrence operator");
        normalize();
    }

    Symbol var() const { return var_; }
    int order() const { return (int)coeffs_.size() - 1; }
    const std::vector<MPoly>& coeffs() const { return coeffs_; }
    const MPoly& coeff(int i) const { return coeffs_[i]; }
    const MPoly& leading() const { return coeffs_.back(); }

    bool has_parameters() const {
        for (const auto& c : coeffs_)
            for (Symbol s : c.vars())
                if (s != var_) return true;
        return false;
    }

    friend bool operator==(const AnnihilatorRec& a, const AnnihilatorRec& b) {
        return a.var_ == b.var_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const AnnihilatorRec& a, const AnnihilatorRec& b) { return !(a == b); }

    // nonnegative integer roots of the leading coefficient: the recurrence does
    // not determine a(root + order)
    std::set<Int> singular_roots() const {
        MPoly lead = leading();
        if (!lead.depends_on(var_)) {
            if (lead.vars().empty()) return {};
            throw DomainError("leading coefficient has unbound parameters");
        }
        std::set<Int> out;
        for (const Int& r : detail::integer_roots_in(lead, var_))
            if (r >= 0) out.insert(r);
        return out;
    }

    // exact left application to a sequence segment starting at index `base`
    Rat apply_at(const std::vector<Rat>& seq, long base, long n,
                 const std::map<Symbol, Rat>& params = {}) const {
        Rat acc(0);
        for (int i = 0; i <= order(); i++) {
            long idx = n + i - base;
            if (idx < 0 || idx >= (long)seq.size()) throw DomainError("sequence range too short");
            std::map<Symbol, Rat> pt = params;
            pt[var_] = Rat(n);
            acc += coeffs_[i].eval(pt) * seq[idx];
        }
        return acc;
    }

    // debug form: coefficients attached to powers of the upshift operator,
    // written with the capitalized variable name
    std::string str() const {
        std::string op = var_.name();
        if (!op.empty()) op[0] = (char)std::toupper((unsigned char)op[0]);
        std::string out;
        for (int i = order(); i >= 0; i--) {
            if (coeffs_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + coeffs_[i].str() + ")";
            if (i > 0) out += "*" + op + (i > 1 ? "^" + std::to_string(i) : "");
        }
        return out.empty() ? "0" : out;
    }

    friend std::ostream& operator<<(std::ostream& os, const AnnihilatorRec& r) {
        return os << r.str();
    }

  private:
    void normalize() {
        Rat content(0);
        for (const auto& c : coeffs_) content = rat_gcd(content, c.content());
        if (coeffs_.back().lead_coeff().sign() < 0) content = -content;
        if (!content.is_one() && !content.is_zero()) {
            MPoly inv{content.inv()};
            for (auto& c : coeffs_) c *= inv;
        }
    }

    Symbol var_;
    std::vector<MPoly> coeffs_;
};

// exact values a_0..a_{count-1}; `initials` must cover the order and every
// index the leading coefficient zeroes out
inline std::vector<Rat> unroll(const AnnihilatorRec& rec, const std::vector<Rat>& initials,
                               long count, const std::map<Symbol, Rat>& params = {}) {
    std::vector<Rat> a = initials;
    int r = rec.order();
    for (long m = (long)a.size(); m < count; m++) {
        long s = m - r;
        if (s < 0)
            throw SingularIndexError("insufficient initial values: index " + std::to_string(m) +
                                         " not determined by the recurrence",
                                     m);
        std::map<Symbol, Rat> pt = params;
        pt[rec.var()] = Rat(s);
        Rat lead = rec.leading().eval(pt);
        if (lead.is_zero())
            throw SingularIndexError("singular leading coefficient at index " + std::to_string(m) +
                                         ", value not determined",
                                     m);
        Rat acc(0);
        for (int i = 0; i < r; i++) acc += rec.coeff(i).eval(pt) * a[s + i];
        a.push_back(-acc / lead);
    }
    a.resize(count);
    return a;
}

namespace detail {

// ansatz search shared by all closure operations: iterates of a cyclic vector
// in a finite-dimensional module over the rational-function field
struct ClosureEngine {
    size_t dim;
    std::vector<RatFunc> state;
    std::function<std::vector<RatFunc>(const std::vector<RatFunc>&)> step;

    // first linear dependence among iterates; limited to `max_order` steps
    std::optional<std::vector<RatFunc>> find(int max_order, std::optional<int> force_order = {}) {
        std::vector<std::vector<RatFunc>> iterates{state};
        std::vector<RatFunc> cur = state;
        for (int s = 1; s <= max_order; s++) {
            cur = step(cur);
            iterates.push_back(cur);
            if (force_order && s != *force_order) continue;
            Matrix m(dim, s + 1);
            for (size_t i = 0; i < dim; i++)
                for (int j = 0; j <= s; j++) m[i][j] = iterates[j][i];
            auto ns = nullspace(m);
            if (!ns.empty()) return ns.front();
            if (force_order) return std::nullopt;
        }
        return std::nullopt;
    }
};

inline std::vector<RatFunc> rec_reduction_row(const AnnihilatorRec& rec) {
    std::vector<RatFunc> row(rec.order());
    RatFunc lead{rec.leading()};
    for (int i = 0; i < rec.order(); i++) row[i] = RatFunc(-rec.coeff(i)) / lead;
    return row;
}

inline std::vector<MPoly> clear_operator(const std::vector<RatFunc>& cs) {
    std::vector<RatFunc> v = normalize_vector(cs);
    std::vector<MPoly> out(v.size());
    for (size_t i = 0; i < v.size(); i++) {
        if (!v[i].is_polynomial()) throw Error("internal: operator clearing failed");
        out[i] = v[i].num() * MPoly(v[i].den().constant_value().inv());
    }
    return out;
}

}  // namespace detail

// minimal-order operator annihilating a + b for all solutions a of A, b of B
inline AnnihilatorRec rec_sum(const AnnihilatorRec& A, const AnnihilatorRec& B,
                              std::optional<int> force_order = {}) {
    if (A.var() != B.var()) throw DomainError("rec_sum: different recurrence variables");
    Symbol n = A.var();
    size_t ra = A.order(), rb = B.order();
    auto rowA = detail::rec_reduction_row(A);
    auto rowB = detail::rec_reduction_row(B);
    detail::ClosureEngine eng;
    eng.dim = ra + rb;
    eng.state.assign(eng.dim, RatFunc());
    eng.state[0] = RatFunc(1);
    eng.state[ra] = RatFunc(1);
    eng.step = [=](const std::vector<RatFunc>& u) {
        std::vector<RatFunc> v(ra + rb);
        auto shift_part = [&](size_t off, size_t r, const std::vector<RatFunc>& row) {
            RatFunc top = u[off + r - 1].shift(n, Rat(1));
            for (size_t i = 1; i < r; i++) v[off + i] = u[off + i - 1].shift(n, Rat(1));
            for (size_t i = 0; i < r; i++)
                if (!top.is_zero()) v[off + i] += top * row[i];
        };
        shift_part(0, ra, rowA);
        shift_part(ra, rb, rowB);
        return v;
    };
    auto c = eng.find((int)(ra + rb), force_order);
    if (!c) throw Error("rec_sum: no annihilator within the closure bound");
    return AnnihilatorRec(n, detail::clear_operator(*c));
}

// minimal-order operator annihilating a * b
inline AnnihilatorRec rec_product(const AnnihilatorRec& A, const AnnihilatorRec& B,
                                  std::optional<int> force_order = {}) {
    if (A.var() != B.var()) throw DomainError("rec_product: different recurrence variables");
    Symbol n = A.var();
    size_t ra = A.order(), rb = B.order();
    auto rowA = detail::rec_reduction_row(A);
    auto rowB = detail::rec_reduction_row(B);
    detail::ClosureEngine eng;
    eng.dim = ra * rb;
    eng.state.assign(eng.dim, RatFunc());
    eng.state[0] = RatFunc(1);
    eng.step = [=](const std::vector<RatFunc>& u) {
        std::vector<RatFunc> v(ra * rb);
        for (size_t i = 0; i < ra; i++) {
            for (size_t j = 0; j < rb; j++) {
                RatFunc c = u[i * rb + j];
                if (c.is_zero()) continue;
                c = c.shift(n, Rat(1));
                // a_{n+i} b_{n+j} shifts to a_{n+i+1} b_{n+j+1}; overflow reduces
                std::vector<std::pair<size_t, RatFunc>> av, bv;
                if (i + 1 < ra) {
                    av.emplace_back(i + 1, RatFunc(1));
                } else {
                    for (size_t p = 0; p < ra; p++)
                        if (!rowA[p].is_zero()) av.emplace_back(p, rowA[p]);
                }
                if (j + 1 < rb) {
                    bv.emplace_back(j + 1, RatFunc(1));
                } else {
                    for (size_t q = 0; q < rb; q++)
                        if (!rowB[q].is_zero()) bv.emplace_back(q, rowB[q]);
                }
                for (const auto& [p, ac] : av)
                    for (const auto& [q, bc] : bv) v[p * rb + q] += c * ac * bc;
            }
        }
        return v;
    };
    auto c = eng.find((int)(ra * rb), force_order);
    if (!c) throw Error("rec_product: no annihilator within the closure bound");
    return AnnihilatorRec(n, detail::clear_operator(*c));
}

}  // namespace holo
