#pragma once

#include <variant>

#include "holo/rec.hpp"

namespace holo {

// Linear form  sum_i m_i * v_i + offset  with integer slopes m_i over the
// declared discrete variables; the offset may involve parameter symbols with
// rational coefficients but no discrete variables.
struct LinForm {
    std::map<Symbol, long> slopes;
    MPoly offset;

    MPoly poly() const {
        MPoly p = offset;
        for (const auto& [v, m] : slopes)
            if (m != 0) p += MPoly(Rat(m)) * MPoly::variable(v);
        return p;
    }

    // integer constant part of the offset
    Rat const_part() const {
        for (const auto& [mono, c] : offset.terms())
            if (mono_total_degree(mono) == 0) return c;
        return Rat(0);
    }

    friend bool operator==(const LinForm& a, const LinForm& b) {
        return a.slopes == b.slopes && a.offset == b.offset;
    }
    friend bool operator<(const LinForm& a, const LinForm& b) {
        if (a.slopes != b.slopes) return a.slopes < b.slopes;
        return poly_cmp(a.offset, b.offset) < 0;
    }
};

inline LinForm lin_form(std::initializer_list<std::pair<Symbol, long>> slopes, MPoly offset = {}) {
    LinForm f;
    for (auto& [v, m] : slopes)
        if (m != 0) f.slopes[v] = m;
    f.offset = std::move(offset);
    return f;
}

// geometric factor base^(linear form over the discrete variables)
struct GeomFactor {
    std::variant<Rat, Symbol> base;
    std::map<Symbol, long> slopes;

    friend bool operator==(const GeomFactor& a, const GeomFactor& b) {
        return a.base == b.base && a.slopes == b.slopes;
    }
    friend bool operator<(const GeomFactor& a, const GeomFactor& b) {
        if (a.base.index() != b.base.index()) return a.base.index() < b.base.index();
        if (std::holds_alternative<Rat>(a.base)) {
            const Rat &x = std::get<Rat>(a.base), &y = std::get<Rat>(b.base);
            if (x != y) return x < y;
        } else {
            const Symbol &x = std::get<Symbol>(a.base), &y = std::get<Symbol>(b.base);
            if (x != y) return x < y;
        }
        return a.slopes < b.slopes;
    }
};

// Canonical product of a rational function, factorial powers of linear forms
// (offset constant part normalized to zero), and geometric factors. Reciprocal
// factorials at negative integer arguments make the term vanish; a plain
// factorial at a negative argument is undefined.
class HyperTerm {
  public:
    HyperTerm() : rational_(RatFunc(1)) {}
    explicit HyperTerm(RatFunc r) : rational_(std::move(r)) {}

    static HyperTerm constant(const Rat& c) { return HyperTerm(RatFunc(c)); }

    static HyperTerm factorial(const LinForm& form, long exp = 1) {
        HyperTerm t;
        t.mul_factorial(form, exp);
        return t;
    }

    // binomial(a, b) = a! / (b! (a-b)!)
    static HyperTerm binomial(const LinForm& a, const LinForm& b) {
        LinForm amb;
        amb.offset = a.offset - b.offset;
        amb.slopes = a.slopes;
        for (const auto& [v, m] : b.slopes) {
            amb.slopes[v] -= m;
            if (amb.slopes[v] == 0) amb.slopes.erase(v);
        }
        HyperTerm t;
        t.mul_factorial(a, 1);
        t.mul_factorial(b, -1);
        t.mul_factorial(amb, -1);
        return t;
    }

    static HyperTerm geometric(std::variant<Rat, Symbol> base, std::map<Symbol, long> slopes) {
        HyperTerm t;
        t.mul_geometric(std::move(base), std::move(slopes));
        return t;
    }

    const RatFunc& rational() const { return rational_; }
    const std::map<LinForm, long>& factorials() const { return facts_; }
    const std::vector<GeomFactor>& geometrics() const { return geoms_; }

    bool is_zero() const { return rational_.is_zero(); }

    friend bool operator==(const HyperTerm& a, const HyperTerm& b) {
        return a.rational_ == b.rational_ && a.facts_ == b.facts_ && a.geoms_ == b.geoms_;
    }
    friend bool operator!=(const HyperTerm& a, const HyperTerm& b) { return !(a == b); }

    HyperTerm& operator*=(const HyperTerm& o) {
        rational_ *= o.rational_;
        for (const auto& [f, e] : o.facts_) mul_factorial_canonical(f, e);
        for (const auto& g : o.geoms_) mul_geometric(g.base, g.slopes);
        return *this;
    }
    friend HyperTerm operator*(HyperTerm a, const HyperTerm& b) { return a *= b; }

    HyperTerm pow(long e) const {
        HyperTerm t;
        t.rational_ = rational_.pow((int)e);
        for (const auto& [f, x] : facts_)
            if (x * e != 0) t.facts_[f] = x * e;
        for (const auto& g : geoms_) {
            GeomFactor ng = g;
            for (auto& [v, m] : ng.slopes) m *= e;
            t.mul_geometric(ng.base, ng.slopes);
        }
        return t;
    }
    HyperTerm inverse() const { return pow(-1); }

    HyperTerm scaled(const RatFunc& r) const {
        HyperTerm t = *this;
        t.rational_ *= r;
        return t;
    }

    // t(var+1) / t(var) as a rational function
    RatFunc ratio(Symbol var) const {
        RatFunc r = rational_.shift(var, Rat(1)) / rational_;
        for (const auto& [f, e] : facts_) {
            auto it = f.slopes.find(var);
            if (it == f.slopes.end()) continue;
            long m = it->second;
            MPoly L = f.poly();
            MPoly prod(1);
            if (m > 0)
                for (long i = 1; i <= m; i++) prod *= L + MPoly(Rat(i));
            else
                for (long i = m + 1; i <= 0; i++) prod *= L + MPoly(Rat(i));
            r *= RatFunc(prod).pow((int)(m > 0 ? e : -e));
        }
        for (const auto& g : geoms_) {
            auto it = g.slopes.find(var);
            if (it == g.slopes.end()) continue;
            long m = it->second;
            if (std::holds_alternative<Rat>(g.base))
                r *= RatFunc(std::get<Rat>(g.base).pow(m));
            else
                r *= RatFunc(MPoly::variable(std::get<Symbol>(g.base))).pow((int)m);
        }
        return r;
    }

    bool depends_on(Symbol var) const {
        if (rational_.depends_on(var)) return true;
        for (const auto& [f, e] : facts_)
            if (f.slopes.count(var) || f.offset.depends_on(var)) return true;
        for (const auto& g : geoms_)
            if (g.slopes.count(var)) return true;
        return false;
    }

    // exact value; `point` binds the discrete variables, `bindings` the
    // parameter symbols appearing in offsets, bases, or the rational part
    Rat eval(const std::map<Symbol, Rat>& point, const std::map<Symbol, Rat>& bindings = {}) const {
        std::map<Symbol, Rat> all = bindings;
        for (const auto& [v, x] : point) all[v] = x;
        // factorial factors first: they decide support
        Rat value(1);
        bool zero = false;
        for (const auto& [f, e] : facts_) {
            Rat arg = f.offset.eval(all);
            for (const auto& [v, m] : f.slopes) {
                auto it = all.find(v);
                if (it == all.end()) throw DomainError("unbound variable in factorial argument");
                arg += Rat(m) * it->second;
            }
            if (!arg.is_integer()) throw DomainError("factorial of non-integer argument");
            Int ia = arg.num();
            if (ia < 0) {
                if (e > 0) throw DomainError("factorial at negative integer argument");
                zero = true;
                continue;
            }
            if (!ia.fits_slong_p()) throw Error("factorial argument too large");
            value *= Rat(int_factorial(ia.get_si())).pow(e);
        }
        if (zero) return Rat(0);
        value *= rational_.eval(all);
        for (const auto& g : geoms_) {
            long exp = 0;
            for (const auto& [v, m] : g.slopes) {
                auto it = all.find(v);
                if (it == all.end() || !it->second.is_integer())
                    throw DomainError("geometric exponent not an integer");
                exp += m * it->second.num().get_si();
            }
            Rat base = std::holds_alternative<Rat>(g.base)
                           ? std::get<Rat>(g.base)
                           : [&] {
                                 auto it = all.find(std::get<Symbol>(g.base));
                                 if (it == all.end())
                                     throw DomainError("unbound geometric base parameter");
                                 return it->second;
                             }();
            value *= base.pow(exp);
        }
        return value;
    }

    // true when every factorial argument is a nonnegative integer (term inside
    // its natural support and well defined)
    bool defined_and_nonzero_support(const std::map<Symbol, Rat>& point,
                                     const std::map<Symbol, Rat>& bindings = {}) const {
        std::map<Symbol, Rat> all = bindings;
        for (const auto& [v, x] : point) all[v] = x;
        for (const auto& [f, e] : facts_) {
            Rat arg = f.offset.eval(all);
            for (const auto& [v, m] : f.slopes) arg += Rat(m) * all.at(v);
            if (!arg.is_integer() || arg.num() < 0) return false;
        }
        return true;
    }

  private:
    void mul_factorial(const LinForm& raw, long exp) {
        if (exp == 0) return;
        for (const auto& [v, m] : raw.slopes)
            if (raw.offset.depends_on(v))
                throw DomainError("factorial offset must not contain discrete variables");
        // normalize the integer constant of the offset to zero:
        // (L0 + c)! = L0! * (L0+1)...(L0+c)  for integer c
        Rat c = raw.const_part();
        if (!c.is_integer()) throw DomainError("factorial offset constant must be an integer");
        long c0 = (long)c.num().get_si();
        LinForm f = raw;
        f.offset -= MPoly(c);
        MPoly base = f.poly();
        MPoly corr(1);
        for (long i = 1; i <= std::abs(c0); i++) corr *= base + MPoly(Rat(c0 > 0 ? i : 1 - i));
        if (c0 > 0)
            rational_ *= RatFunc(corr).pow((int)exp);
        else if (c0 < 0)
            rational_ *= RatFunc(corr).pow(-(int)exp);
        mul_factorial_canonical(f, exp);
    }

    void mul_factorial_canonical(const LinForm& f, long exp) {
        if (f.slopes.empty() && f.offset.is_zero()) return;  // 0! = 1
        auto it = facts_.find(f);
        if (it == facts_.end()) {
            facts_.emplace(f, exp);
        } else {
            it->second += exp;
            if (it->second == 0) facts_.erase(it);
        }
    }

    void mul_geometric(std::variant<Rat, Symbol> base, std::map<Symbol, long> slopes) {
        for (auto it = slopes.begin(); it != slopes.end();)
            it = (it->second == 0) ? slopes.erase(it) : std::next(it);
        if (slopes.empty()) return;
        if (std::holds_alternative<Rat>(base)) {
            const Rat& b = std::get<Rat>(base);
            if (b.is_zero()) throw DomainError("geometric factor with base 0");
            if (b.is_one()) return;
            if (b == Rat(-1)) {
                // fold (-1)^L parity; keep as geometric factor
            }
        }
        for (auto& g : geoms_) {
            if (g.base == base) {
                for (const auto& [v, m] : slopes) {
                    g.slopes[v] += m;
                    if (g.slopes[v] == 0) g.slopes.erase(v);
                }
                std::erase_if(geoms_, [](const GeomFactor& x) { return x.slopes.empty(); });
                return;
            }
        }
        geoms_.push_back(GeomFactor{std::move(base), std::move(slopes)});
        std::sort(geoms_.begin(), geoms_.end());
    }

    RatFunc rational_;
    std::map<LinForm, long> facts_;
    std::vector<GeomFactor> geoms_;
};

struct TermRatio {
    Symbol var;
    RatFunc ratio;
};

inline TermRatio term_ratio(const HyperTerm& t, Symbol var) {
    RatFunc r = t.ratio(var);
    if (r.is_zero()) throw DomainError("term ratio vanishes: term is not hypergeometric");
    return TermRatio{var, r};
}

// first-order recurrence den(var) F(var+1) - num(var) F(var) = 0
inline AnnihilatorRec term_to_rec(const HyperTerm& t, Symbol var) {
    RatFunc r = term_ratio(t, var).ratio;
    return AnnihilatorRec(var, {-r.num(), r.den()});
}

// sum/product tree over hypergeometric terms
class TermExpr {
  public:
    TermExpr(HyperTerm t) : kind_(Kind::Leaf), leaf_(std::move(t)) {}  // NOLINT
    static TermExpr sum(std::vector<TermExpr> children) {
        return TermExpr(Kind::Sum, std::move(children));
    }
    static TermExpr product(std::vector<TermExpr> children) {
        return TermExpr(Kind::Prod, std::move(children));
    }

    bool is_leaf() const { return kind_ == Kind::Leaf; }
    bool is_sum() const { return kind_ == Kind::Sum; }
    const HyperTerm& leaf() const { return leaf_; }
    const std::vector<TermExpr>& children() const { return children_; }

    Rat eval(const std::map<Symbol, Rat>& point, const std::map<Symbol, Rat>& bindings = {}) const {
        switch (kind_) {
            case Kind::Leaf:
                return leaf_.eval(point, bindings);
            case Kind::Sum: {
                Rat acc(0);
                for (const auto& c : children_) acc += c.eval(point, bindings);
                return acc;
            }
            default: {
                Rat acc(1);
                for (const auto& c : children_) acc *= c.eval(point, bindings);
                return acc;
            }
        }
    }

  private:
    enum class Kind { Leaf, Sum, Prod };
    TermExpr(Kind k, std::vector<TermExpr> ch) : kind_(k), leaf_(), children_(std::move(ch)) {
        if (children_.empty()) throw DomainError("empty term expression node");
    }

    Kind kind_;
    HyperTerm leaf_;
    std::vector<TermExpr> children_;
};

// holonomic recurrence in var for a sum/product tree of hypergeometric terms;
// the other discrete variable rides along as a transcendental parameter
inline AnnihilatorRec mixed_rec(const TermExpr& e, Symbol var) {
    if (e.is_leaf()) return term_to_rec(e.leaf(), var);
    std::optional<AnnihilatorRec> acc;
    for (const auto& c : e.children()) {
        AnnihilatorRec r = mixed_rec(c, var);
        if (!acc)
            acc = r;
        else
            acc = e.is_sum() ? rec_sum(*acc, r) : rec_product(*acc, r);
    }
    return *acc;
}

}  // namespace holo
