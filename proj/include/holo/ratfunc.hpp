#pragma once

#include "holo/polygcd.hpp"

namespace holo {

// Rational function in canonical form: gcd(num, den) = 1 and den is
// integer-primitive with positive leading coefficient.
class RatFunc {
  public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(const Rat& c) : num_(c), den_(1) {}  // NOLINT
    RatFunc(int c) : num_(Rat(c)), den_(1) {}    // NOLINT
    RatFunc(const MPoly& p) : num_(p), den_(1) {}  // NOLINT
    RatFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

    static RatFunc variable(Symbol s) { return RatFunc(MPoly::variable(s)); }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat constant_value() const { return num_.constant_value() / den_.constant_value(); }
    bool depends_on(Symbol s) const { return num_.depends_on(s) || den_.depends_on(s); }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw DomainError("division by zero rational function");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc inv() const {
        if (is_zero()) throw DomainError("inverse of zero rational function");
        return RatFunc(den_, num_);
    }

    RatFunc pow(int e) const {
        if (e < 0) return inv().pow(-e);
        return RatFunc(num_.pow(e), den_.pow(e));
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc derivative(Symbol s) const {
        return RatFunc(num_.derivative(s) * den_ - num_ * den_.derivative(s), den_ * den_);
    }

    RatFunc subst(Symbol s, const RatFunc& val) const {
        if (!depends_on(s)) return *this;
        // evaluate num and den as polynomials in s at the rational function
        auto eval_poly = [&](const MPoly& p) {
            auto cs = p.univar_coeffs(s);
            RatFunc r;
            for (int d = (int)cs.size() - 1; d >= 0; d--) r = r * val + RatFunc(cs[d]);
            return r;
        };
        RatFunc d = eval_poly(den_);
        if (d.is_zero()) throw DomainError("substitution makes denominator vanish");
        return eval_poly(num_) / d;
    }

    RatFunc shift(Symbol s, const Rat& delta) const {
        if (!depends_on(s)) return *this;
        return RatFunc(shift_var(num_, s, delta), shift_var(den_, s, delta));
    }

    // exact evaluation; error on a denominator zero
    Rat eval(const std::map<Symbol, Rat>& vals) const {
        Rat d = den_.eval(vals);
        if (d.is_zero()) throw DomainError("rational function pole at evaluation point");
        return num_.eval(vals) / d;
    }

    RatFunc eval_partial(const std::map<Symbol, Rat>& vals) const {
        MPoly d = den_.eval_partial(vals);
        if (d.is_zero()) throw DomainError("rational function pole at evaluation point");
        return RatFunc(num_.eval_partial(vals), d);
    }

    std::string str() const {
        if (den_.is_one()) return num_.str();
        std::string n = num_.terms().size() > 1 ? "(" + num_.str() + ")" : num_.str();
        std::string d = den_.terms().size() > 1 || den_.total_degree() > 0
                            ? "(" + den_.str() + ")"
                            : den_.str();
        return n + "/" + d;
    }
    friend std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.str(); }

  private:
    void reduce() {
        if (den_.is_zero()) throw DomainError("zero denominator");
        if (num_.is_zero()) {
            den_ = MPoly(1);
            return;
        }
        MPoly g = poly_gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_.divexact(g);
            den_ = den_.divexact(g);
        }
        Rat c = den_.content();
        if (!c.is_one()) {
            Rat inv = c.inv();
            num_ = MPoly(inv) * num_;
            den_ = MPoly(inv) * den_;
        }
    }

    MPoly num_, den_;
};

inline RatFunc rf_lcm_den(const std::vector<RatFunc>& fs) {
    MPoly l(1);
    for (const auto& f : fs)
        if (!f.is_zero()) l = poly_lcm(l, f.den());
    return RatFunc(l);
}

}  // namespace holo
