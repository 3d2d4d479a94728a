#pragma once

#include "holo/rec.hpp"

namespace holo {

// Linear differential operator sum_i p_i(var) f^(i), optionally with an
// inhomogeneous part: sum_i p_i f^(i) + inhom = 0. Closure operations demand
// inhom = 0. Canonical normalization matches AnnihilatorRec (rational unit).
class AnnihilatorODE {
  public:
    AnnihilatorODE(Symbol var, std::vector<MPoly> coeffs, MPoly inhom = MPoly())
        : var_(var), coeffs_(std::move(coeffs)), inhom_(std::move(inhom)) {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
        if (coeffs_.empty()) throw DomainError("zero differential operator");
        normalize();
    }

    Symbol var() const { return var_; }
    int order() const { return (int)coeffs_.size() - 1; }
    const std::vector<MPoly>& coeffs() const { return coeffs_; }
    const MPoly& coeff(int i) const { return coeffs_[i]; }
    const MPoly& leading() const { return coeffs_.back(); }
    const MPoly& inhom() const { return inhom_; }
    bool homogeneous() const { return inhom_.is_zero(); }

    friend bool operator==(const AnnihilatorODE& a, const AnnihilatorODE& b) {
        return a.var_ == b.var_ && a.coeffs_ == b.coeffs_ && a.inhom_ == b.inhom_;
    }
    friend bool operator!=(const AnnihilatorODE& a, const AnnihilatorODE& b) { return !(a == b); }

    // apply to a truncated power series; the result is exact up to
    // x^(len - order - 1) and is returned truncated there
    std::vector<Rat> apply_series(const std::vector<Rat>& series,
                                  const std::map<Symbol, Rat>& params = {}) const {
        long len = (long)series.size();
        long outlen = len - order();
        if (outlen <= 0) throw DomainError("series too short for operator order");
        std::vector<Rat> out(outlen, Rat(0));
        for (int i = 0; i <= order(); i++) {
            if (coeffs_[i].is_zero()) continue;
            // i-th derivative of the series
            std::vector<Rat> d(len - i);
            for (long m = 0; m + i < len; m++) {
                Rat c = series[m + i];
                for (int t = 0; t < i; t++) c *= Rat(m + i - t);
                d[m] = c;
            }
            auto xc = coeffs_[i].univar_coeffs(var_);
            for (size_t j = 0; j < xc.size(); j++) {
                if (xc[j].is_zero()) continue;
                Rat cj = xc[j].eval(params);
                for (long m = 0; m < outlen; m++) {
                    long src = m - (long)j;
                    if (src >= 0 && src < (long)d.size()) out[m] += cj * d[src];
                }
            }
        }
        if (!inhom_.is_zero()) {
            auto xc = inhom_.univar_coeffs(var_);
            for (size_t j = 0; j < xc.size() && (long)j < outlen; j++)
                out[j] += xc[j].eval(params);
        }
        return out;
    }

    std::string str() const {
        std::string out;
        for (int i = order(); i >= 0; i--) {
            if (coeffs_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + coeffs_[i].str() + ")";
            if (i > 0) out += "*D" + (i > 1 ? "^" + std::to_string(i) : "");
        }
        if (!inhom_.is_zero()) out += " + [" + inhom_.str() + "]";
        return out.empty() ? "0" : out;
    }
    friend std::ostream& operator<<(std::ostream& os, const AnnihilatorODE& a) {
        return os << a.str();
    }

  private:
    void normalize() {
        Rat content(0);
        for (const auto& c : coeffs_) content = rat_gcd(content, c.content());
        content = rat_gcd(content, inhom_.content());
        if (coeffs_.back().lead_coeff().sign() < 0) content = -content;
        if (!content.is_one() && !content.is_zero()) {
            MPoly inv{content.inv()};
            for (auto& c : coeffs_) c *= inv;
            inhom_ *= inv;
        }
    }

    Symbol var_;
    std::vector<MPoly> coeffs_;
    MPoly inhom_;
};

struct InitialValuesODE {
    Rat point;                // expansion point; conversions assume 0
    std::vector<Rat> values;  // f(0), f'(0), ...

    InitialValuesODE(std::vector<Rat> v) : point(0), values(std::move(v)) {}  // NOLINT
};

namespace detail {

inline void require_homogeneous(const AnnihilatorODE& a, const char* who) {
    if (!a.homogeneous()) throw DomainError(std::string(who) + ": operator must be homogeneous");
}

inline std::vector<RatFunc> ode_reduction_row(const AnnihilatorODE& a) {
    std::vector<RatFunc> row(a.order());
    RatFunc lead{a.leading()};
    for (int i = 0; i < a.order(); i++) row[i] = RatFunc(-a.coeff(i)) / lead;
    return row;
}

}  // namespace detail

// minimal-order operator annihilating f + g for all f in ker A, g in ker B
inline AnnihilatorODE ode_sum(const AnnihilatorODE& A, const AnnihilatorODE& B,
                              std::optional<int> force_order = {}) {
    if (A.var() != B.var()) throw DomainError("ode_sum: different variables");
    detail::require_homogeneous(A, "ode_sum");
    detail::require_homogeneous(B, "ode_sum");
    Symbol x = A.var();
    size_t ra = A.order(), rb = B.order();
    auto rowA = detail::ode_reduction_row(A);
    auto rowB = detail::ode_reduction_row(B);
    detail::ClosureEngine eng;
    eng.dim = ra + rb;
    eng.state.assign(eng.dim, RatFunc());
    eng.state[0] = RatFunc(1);
    eng.state[ra] = RatFunc(1);
    eng.step = [=](const std::vector<RatFunc>& u) {
        std::vector<RatFunc> v(ra + rb);
        auto diff_part = [&](size_t off, size_t r, const std::vector<RatFunc>& row) {
            for (size_t i = 0; i < r; i++) {
                v[off + i] = u[off + i].derivative(x);
                if (i > 0) v[off + i] += u[off + i - 1];
            }
            const RatFunc& top = u[off + r - 1];
            if (!top.is_zero())
                for (size_t i = 0; i < r; i++) v[off + i] += top * row[i];
        };
        diff_part(0, ra, rowA);
        diff_part(ra, rb, rowB);
        return v;
    };
    auto c = eng.find((int)(ra + rb), force_order);
    if (!c) throw Error("ode_sum: no annihilator within the closure bound");
    return AnnihilatorODE(x, detail::clear_operator(*c));
}

// minimal-order operator annihilating f * g
inline AnnihilatorODE ode_product(const AnnihilatorODE& A, const AnnihilatorODE& B,
                                  std::optional<int> force_order = {}) {
    if (A.var() != B.var()) throw DomainError("ode_product: different variables");
    detail::require_homogeneous(A, "ode_product");
    detail::require_homogeneous(B, "ode_product");
    Symbol x = A.var();
    size_t ra = A.order(), rb = B.order();
    auto rowA = detail::ode_reduction_row(A);
    auto rowB = detail::ode_reduction_row(B);
    detail::ClosureEngine eng;
    eng.dim = ra * rb;
    eng.state.assign(eng.dim, RatFunc());
    eng.state[0] = RatFunc(1);
    eng.step = [=](const std::vector<RatFunc>& u) {
        std::vector<RatFunc> v(ra * rb);
        for (size_t i = 0; i < ra; i++)
            for (size_t j = 0; j < rb; j++) {
                const RatFunc& c = u[i * rb + j];
                if (c.is_zero()) continue;
                v[i * rb + j] += c.derivative(x);
                // (f_i g_j)' adds f_{i+1} g_j and f_i g_{j+1}, with overflow reduced
                if (i + 1 < ra) {
                    v[(i + 1) * rb + j] += c;
                } else {
                    for (size_t p = 0; p < ra; p++)
                        if (!rowA[p].is_zero()) v[p * rb + j] += c * rowA[p];
                }
                if (j + 1 < rb) {
                    v[i * rb + j + 1] += c;
                } else {
                    for (size_t q = 0; q < rb; q++)
                        if (!rowB[q].is_zero()) v[i * rb + q] += c * rowB[q];
                }
            }
        return v;
    };
    auto c = eng.find((int)(ra * rb), force_order);
    if (!c) throw Error("ode_product: no annihilator within the closure bound");
    return AnnihilatorODE(x, detail::clear_operator(*c));
}

// operator annihilating f(r(x)) for rational nonconstant r
inline AnnihilatorODE ode_substitute(const AnnihilatorODE& A, const RatFunc& r,
                                     std::optional<int> force_order = {}) {
    detail::require_homogeneous(A, "ode_substitute");
    if (r.is_constant()) throw DomainError("ode_substitute: substitution must be nonconstant");
    Symbol x = A.var();
    size_t ra = A.order();
    RatFunc rd = r.derivative(x);
    // reduction row evaluated at the inner function
    std::vector<RatFunc> row(ra);
    RatFunc lead = RatFunc(A.leading()).subst(x, r);
    for (size_t i = 0; i < ra; i++) row[i] = -RatFunc(A.coeff((int)i)).subst(x, r) / lead;
    detail::ClosureEngine eng;
    eng.dim = ra;
    eng.state.assign(eng.dim, RatFunc());
    eng.state[0] = RatFunc(1);
    eng.step = [=](const std::vector<RatFunc>& u) {
        std::vector<RatFunc> v(ra);
        for (size_t i = 0; i < ra; i++) {
            v[i] = u[i].derivative(x);
            if (i > 0) v[i] += rd * u[i - 1];
        }
        const RatFunc& top = u[ra - 1];
        if (!top.is_zero())
            for (size_t i = 0; i < ra; i++) v[i] += rd * top * row[i];
        return v;
    };
    auto c = eng.find((int)ra, force_order);
    if (!c) throw Error("ode_substitute: no annihilator within the closure bound");
    return AnnihilatorODE(x, detail::clear_operator(*c));
}

namespace detail {

// falling-factorial polynomial t (t-1) ... (t-i+1)
inline MPoly falling(const MPoly& t, int i) {
    MPoly p(1);
    for (int l = 0; l < i; l++) p *= t - MPoly(l);
    return p;
}

}  // namespace detail

// recurrence satisfied by the Taylor coefficients at 0, together with the
// first index it is valid from (inhomogeneous parts only constrain the low
// indices); shift exponents are rebased so the lowest one is 0
inline std::pair<AnnihilatorRec, long> ode_to_rec_tail(const AnnihilatorODE& A, Symbol n) {
    Symbol x = A.var();
    MPoly nv = MPoly::variable(n);
    std::map<int, MPoly> q;  // shift d -> Q_d(n)
    for (int i = 0; i <= A.order(); i++) {
        if (A.coeff(i).is_zero()) continue;
        auto xc = A.coeff(i).univar_coeffs(x);
        for (int j = 0; j < (int)xc.size(); j++) {
            if (xc[j].is_zero()) continue;
            int d = i - j;
            q[d] += xc[j] * detail::falling(nv + MPoly(d), i);
        }
    }
    for (auto it = q.begin(); it != q.end();)
        it = it->second.is_zero() ? q.erase(it) : std::next(it);
    if (q.empty()) throw Error("internal: empty coefficient recurrence");
    int dmin = q.begin()->first, dmax = q.rbegin()->first;
    std::vector<MPoly> coeffs(dmax - dmin + 1);
    for (const auto& [d, p] : q) coeffs[d - dmin] = shift_var(p, n, Rat(-dmin));
    long first_valid = A.homogeneous() ? 0 : std::max(0L, (long)A.inhom().degree(x) + 1 + dmin);
    return {AnnihilatorRec(n, std::move(coeffs)), first_valid};
}

// homogeneous case: the coefficient recurrence holds for every index
inline AnnihilatorRec ode_to_rec(const AnnihilatorODE& A, Symbol n) {
    detail::require_homogeneous(A, "ode_to_rec");
    return ode_to_rec_tail(A, n).first;
}

// differential equation for the generating function sum a_n x^n of a solution
// of R with the given initial values; boundary terms feed the inhomogeneity
inline AnnihilatorODE rec_to_ode(const AnnihilatorRec& R, const std::vector<Rat>& initials,
                                 Symbol x) {
    Symbol n = R.var();
    if ((long)initials.size() < R.order())
        throw DomainError("rec_to_ode: need at least `order` initial values");
    // Laurent assembly: derivative order -> (x power -> coefficient)
    std::map<int, std::map<int, MPoly>> op;
    std::map<int, MPoly> inhom;
    auto add = [](std::map<int, MPoly>& m, int p, const MPoly& c) {
        m[p] += c;
        if (m[p].is_zero()) m.erase(p);
    };
    for (int s = 0; s <= R.order(); s++) {
        if (R.coeff(s).is_zero()) continue;
        auto nc = R.coeff(s).univar_coeffs(n);
        for (int t = 0; t < (int)nc.size(); t++) {
            if (nc[t].is_zero()) continue;
            // theta^t [ x^{-s} (f - P_s) ],  theta = x d/dx
            std::map<int, std::map<int, MPoly>> e;  // deriv -> laurent
            std::map<int, MPoly> g;
            e[0][-s] = MPoly(1);
            for (int m = 0; m < s; m++)
                if (!initials[m].is_zero()) g[m - s] = MPoly(-initials[m]);
            for (int step = 0; step < t; step++) {
                std::map<int, std::map<int, MPoly>> ne;
                std::map<int, MPoly> ng;
                for (const auto& [i, lau] : e)
                    for (const auto& [p, c] : lau) {
                        if (p != 0) add(ne[i], p, MPoly(p) * c);  // x * d/dx of x^p
                        add(ne[i + 1], p + 1, c);                 // raises derivative order
                    }
                for (const auto& [p, c] : g)
                    if (p != 0) add(ng, p, MPoly(p) * c);
                e = std::move(ne);
                g = std::move(ng);
            }
            for (const auto& [i, lau] : e)
                for (const auto& [p, c] : lau) add(op[i], p, nc[t] * c);
            for (const auto& [p, c] : g) add(inhom, p, nc[t] * c);
        }
    }
    int minpow = 0;
    for (const auto& [i, lau] : op)
        if (!lau.empty()) minpow = std::min(minpow, lau.begin()->first);
    if (!inhom.empty()) minpow = std::min(minpow, inhom.begin()->first);
    int maxorder = op.empty() ? 0 : op.rbegin()->first;
    std::vector<MPoly> coeffs(maxorder + 1);
    MPoly X = MPoly::variable(x);
    for (const auto& [i, lau] : op)
        for (const auto& [p, c] : lau) coeffs[i] += c * X.pow(p - minpow);
    MPoly h;
    for (const auto& [p, c] : inhom) h += c * X.pow(p - minpow);
    return AnnihilatorODE(x, std::move(coeffs), std::move(h));
}

// clears the inhomogeneity, raising the order by one when inhom != 0
inline AnnihilatorODE homogenize(const AnnihilatorODE& A) {
    if (A.homogeneous()) return A;
    Symbol x = A.var();
    const MPoly& h = A.inhom();
    MPoly hd = h.derivative(x);
    std::vector<MPoly> out(A.order() + 2);
    for (int i = 0; i <= A.order(); i++) {
        // h * (p_{i-1} + p_i') - h' * p_i, shifted into place
        out[i] += h * A.coeff(i).derivative(x) - hd * A.coeff(i);
        out[i + 1] += h * A.coeff(i);
    }
    return AnnihilatorODE(x, std::move(out));
}

// exact Taylor coefficients at 0 via the coefficient recurrence; the
// recurrence identity holds at every integer shift (with a_m = 0 for m < 0),
// so the scan starts below zero to pick up the low-index constraints
inline std::vector<Rat> taylor_coeffs(const AnnihilatorODE& A, const InitialValuesODE& iv,
                                      long count) {
    detail::require_homogeneous(A, "taylor_coeffs");
    if (!(iv.point == Rat(0))) throw DomainError("taylor_coeffs: expansion point must be 0");
    if ((long)iv.values.size() < A.order())
        throw DomainError("taylor_coeffs: need at least `order` derivatives at 0");
    if (count <= 0) return {};
    std::vector<Rat> a(iv.values.size());
    Rat fact(1);
    for (size_t i = 0; i < iv.values.size(); i++) {
        if (i > 0) fact *= Rat((long)i);
        a[i] = iv.values[i] / fact;
    }
    Symbol n("~n");
    AnnihilatorRec rec = ode_to_rec(A, n);
    long r = rec.order();
    long known = (long)a.size();
    a.resize(std::max<long>(count, known), Rat(0));
    auto at = [&](long i) { return i < 0 ? Rat(0) : a[i]; };
    for (long s = -r; s + r < count; s++) {
        long top = s + r;
        std::map<Symbol, Rat> pt{{rec.var(), Rat(s)}};
        Rat lead = rec.leading().eval(pt);
        if (lead.is_zero()) {
            if (top >= known)
                throw SingularIndexError(
                    "insufficient initial values: coefficient index " + std::to_string(top) +
                        " is not determined",
                    top);
            continue;
        }
        Rat acc(0);
        for (long i = 0; i < r; i++) acc += rec.coeff((int)i).eval(pt) * at(s + i);
        Rat val = -acc / lead;
        if (top < known) {
            if (!(a[top] == val))
                throw DomainError("initial values are inconsistent with the equation at index " +
                                  std::to_string(top));
        } else {
            a[top] = val;
            known = top + 1;
        }
    }
    a.resize(count);
    return a;
}

}  // namespace holo
