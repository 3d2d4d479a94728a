#include <catch2/catch_amalgamated.hpp>

#include "holo/linalg.hpp"
#include "holo/roots.hpp"

using namespace holo;

namespace {

// small deterministic generator for property tests
struct Rng {
    unsigned long s = 0x9e3779b97f4a7c15UL;
    unsigned long next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long range(long lo, long hi) { return lo + (long)(next() % (unsigned long)(hi - lo + 1)); }
    Rat rat() {
        long n = range(-6, 6), d = range(1, 4);
        return Rat(n, d);
    }
    MPoly poly(const std::vector<Symbol>& vars, int maxdeg, int terms) {
        MPoly p;
        for (int t = 0; t < terms; t++) {
            MPoly m(rat());
            for (Symbol v : vars) m *= MPoly::variable(v).pow((int)range(0, maxdeg));
            p += m;
        }
        return p;
    }
};

bool same_up_to_unit(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.primitive() == b.primitive() || a.primitive() == (-b).primitive();
}

std::set<long> brute_dispersion(const MPoly& a, const MPoly& b, Symbol v, long bound) {
    std::set<long> out;
    for (long j = 0; j <= bound; j++) {
        MPoly bj = shift_var(b, v, Rat(j));
        if (poly_gcd(a, bj).total_degree() > 0) out.insert(j);
    }
    return out;
}

}  // namespace

TEST_CASE("rational arithmetic basics") {
    Rat a(1, 3), b(2, 5);
    CHECK(a + b == Rat(11, 15));
    CHECK(a * b == Rat(2, 15));
    CHECK((a / b) == Rat(5, 6));
    CHECK(Rat(4, -6) == Rat(-2, 3));
    CHECK(Rat(-2, 3).den() == 3);
    CHECK(Rat(2, 3).pow(-2) == Rat(9, 4));
    CHECK(rat_gcd(Rat(4, 3), Rat(6, 5)) == Rat(2, 15));
}

TEST_CASE("mpoly arithmetic and canonical form") {
    Symbol x("x"), n("n"), k("k");
    MPoly X = MPoly::variable(x);
    MPoly p = (X + 1) * (X - 1);
    CHECK(p == X * X - MPoly(1));
    CHECK(p.degree(x) == 2);
    CHECK((p - p).is_zero());
    CHECK(p.derivative(x) == MPoly(2) * X);

    MPoly q = MPoly::variable(n) + MPoly::variable(k);
    CHECK(q.subst(n, MPoly(Rat(2))) == MPoly::variable(k) + MPoly(2));
    CHECK(shift_var(q, k, Rat(1)) == q + MPoly(1));

    // exact division round trip
    MPoly prod = p * q;
    CHECK(prod.divexact(q) == p);
    CHECK_FALSE((prod + MPoly(1)).try_div(q).has_value());

    // content and primitive part
    MPoly c = MPoly(Rat(4, 3)) * X + MPoly(Rat(2, 3));
    CHECK(c.content() == Rat(2, 3));
    CHECK(c.primitive() == MPoly(2) * X + MPoly(1));
    // canonical sign: positive leading coefficient either way
    CHECK((-c).primitive() == MPoly(2) * X + MPoly(1));
}

TEST_CASE("poly_gcd examples") {
    Symbol x("x"), n("n"), k("k");
    MPoly X = MPoly::variable(x), N = MPoly::variable(n), K = MPoly::variable(k);

    CHECK(poly_gcd(X * X - MPoly(1), X - MPoly(1)) == X - MPoly(1));
    CHECK(poly_gcd(N * N + N, N + MPoly(1)) == N + MPoly(1));
    CHECK(poly_gcd((N - K) * (N + MPoly(1)), (N + MPoly(1)).pow(2)) == N + MPoly(1));
    CHECK(poly_gcd(MPoly(), MPoly()).is_zero());
    CHECK(poly_gcd(MPoly(6), MPoly(4)) == MPoly(1));
}

TEST_CASE("poly_gcd properties") {
    Symbol n("n"), k("k");
    Rng rng;
    for (int iter = 0; iter < 40; iter++) {
        MPoly a = rng.poly({n, k}, 2, 3);
        MPoly b = rng.poly({n, k}, 2, 3);
        MPoly c = rng.poly({n, k}, 1, 2);
        MPoly g = poly_gcd(a, b);
        if (!g.is_zero()) {
            CHECK(poly_divides(g, a));
            CHECK(poly_divides(g, b));
        }
        if (!a.is_zero() && !b.is_zero() && !c.is_zero()) {
            MPoly lhs = poly_gcd(a * c, b * c);
            MPoly rhs = poly_gcd(a, b) * c;
            CHECK(same_up_to_unit(lhs, rhs.primitive()));
        }
    }
}

TEST_CASE("resultant basics") {
    Symbol x("x");
    MPoly X = MPoly::variable(x);
    // res(x^2-1, x-1) = 0 (shared root)
    CHECK(resultant(X * X - MPoly(1), X - MPoly(1), x).is_zero());
    // res(x-2, x-3) = constant (2-3 style product over roots)
    MPoly r = resultant(X - MPoly(2), X - MPoly(3), x);
    CHECK(r.is_constant());
    CHECK_FALSE(r.is_zero());
}

TEST_CASE("integer_roots examples") {
    Symbol n("n");
    MPoly N = MPoly::variable(n);
    CHECK(integer_roots(N * N - MPoly(1), n) == std::set<Int>{Int(-1), Int(1)});
    CHECK(integer_roots((N + MPoly(1)) * (MPoly(2) * N + MPoly(1)), n) == std::set<Int>{Int(-1)});
    MPoly p = (N - MPoly(1)) * (N - MPoly(2)) * (N - MPoly(3));
    CHECK(integer_roots(p, n) == std::set<Int>{Int(1), Int(2), Int(3)});
    CHECK(integer_roots(MPoly(5), n).empty());
    CHECK_THROWS_AS(integer_roots(MPoly(), n), DomainError);
    // rational coefficients and a root at zero
    MPoly q = MPoly(Rat(1, 2)) * N * N - MPoly(Rat(3, 2)) * N;
    CHECK(integer_roots(q, n) == std::set<Int>{Int(0), Int(3)});
}

TEST_CASE("factor_rational_roots") {
    Symbol t("t");
    MPoly T = MPoly::variable(t);
    MPoly p = (MPoly(2) * T + MPoly(1)) * (T - MPoly(3)).pow(2) * MPoly(Rat(5, 7));
    auto f = factor_rational_roots(p, t);
    REQUIRE(f.roots.size() == 2);
    bool has_half = false, has_three = false;
    for (auto& [r, m] : f.roots) {
        if (r == Rat(-1, 2)) { has_half = true; CHECK(m == 1); }
        if (r == Rat(3)) { has_three = true; CHECK(m == 2); }
    }
    CHECK(has_half);
    CHECK(has_three);
    CHECK(f.remainder.is_constant());
    // reconstruct
    MPoly rec = f.remainder;
    for (auto& [r, m] : f.roots) rec *= (T - MPoly(r)).pow(m);
    CHECK(rec == p);
}

TEST_CASE("dispersion examples") {
    Symbol k("k");
    MPoly K = MPoly::variable(k);
    CHECK(dispersion(K, K, k) == std::set<long>{0});
    CHECK(dispersion(K, K - MPoly(3), k) == std::set<long>{3});
    CHECK(dispersion(K * (K - MPoly(2)), K - MPoly(5), k) == std::set<long>{3, 5});
    CHECK_THROWS_AS(dispersion(MPoly(), K, k), DomainError);
}

TEST_CASE("dispersion with parameters") {
    Symbol k("k"), n("n");
    MPoly K = MPoly::variable(k), N = MPoly::variable(n);
    // k-n and k+1: no integer shift aligns them when n is transcendental
    CHECK(dispersion(N - K, K + MPoly(1), k).empty());
    // both factors align at parameter-independent shifts
    CHECK(dispersion(K * (K + N), (K - MPoly(2)) * (K + N - MPoly(5)), k) ==
          std::set<long>{2, 5});
}

TEST_CASE("dispersion equals brute force on small inputs") {
    Symbol k("k");
    Rng rng;
    int done = 0;
    while (done < 25) {
        MPoly a = rng.poly({k}, 4, 3);
        MPoly b = rng.poly({k}, 4, 3);
        if (a.is_zero() || b.is_zero()) continue;
        done++;
        CHECK(dispersion(a, b, k) == brute_dispersion(a, b, k, 25));
    }
}

TEST_CASE("ratfunc canonical form and arithmetic") {
    Symbol x("x");
    MPoly X = MPoly::variable(x);
    RatFunc f(X * X - MPoly(1), X - MPoly(1));
    CHECK(f == RatFunc(X + MPoly(1)));
    RatFunc g(MPoly(1), X);
    CHECK((f * g) == RatFunc(X + MPoly(1), X));
    CHECK((g - g).is_zero());
    CHECK(g.pow(-2) == RatFunc(X * X));
    // canonical denominator is primitive with positive lead
    RatFunc h(X, -MPoly(2) * X + MPoly(2));
    CHECK(h.den().lead_coeff().sign() > 0);
    CHECK(h.den().content() == Rat(1));
}

TEST_CASE("ratfunc arithmetic agrees with rational arithmetic at sample points") {
    Symbol n("n"), k("k");
    Rng rng;
    int done = 0;
    while (done < 30) {
        MPoly a = rng.poly({n, k}, 2, 3), b = rng.poly({n, k}, 2, 2);
        MPoly c = rng.poly({n, k}, 2, 2), d = rng.poly({n, k}, 1, 2);
        if (b.is_zero() || d.is_zero()) continue;
        RatFunc f(a, b), g(c, d);
        std::map<Symbol, Rat> pt{{n, rng.rat()}, {k, rng.rat()}};
        try {
            Rat fv = f.eval(pt), gv = g.eval(pt);
            CHECK((f + g).eval(pt) == fv + gv);
            CHECK((f * g).eval(pt) == fv * gv);
            if (!gv.is_zero()) CHECK((f / g).eval(pt) == fv / gv);
            done++;
        } catch (const DomainError&) {
            // sample hit a pole; draw again
        }
    }
}

TEST_CASE("nullspace examples") {
    Symbol n("n");
    Matrix id(2, 2);
    id[0][0] = RatFunc(1);
    id[1][1] = RatFunc(1);
    CHECK(nullspace(id).empty());

    Matrix row(1, 2);
    row[0][0] = RatFunc(1);
    row[0][1] = RatFunc(1);
    auto ns = nullspace(row);
    REQUIRE(ns.size() == 1);
    CHECK(ns[0][0] * row[0][1] - ns[0][1] * row[0][0] == RatFunc(MPoly(2)) * ns[0][0] * RatFunc(1));
    CHECK(ns[0][0] == -ns[0][1]);

    Matrix m(1, 2);
    m[0][0] = RatFunc(MPoly::variable(n));
    m[0][1] = RatFunc(MPoly::variable(n) * MPoly::variable(n));
    auto ns2 = nullspace(m);
    REQUIRE(ns2.size() == 1);
    // basis vector proportional to (n, -1)
    CHECK((ns2[0][0] * RatFunc(-1) / ns2[0][1]) == RatFunc(MPoly::variable(n)));
}

TEST_CASE("nullspace properties on random matrices") {
    Symbol n("n"), x("x");
    Rng rng;
    for (int iter = 0; iter < 20; iter++) {
        size_t r = (size_t)rng.range(1, 4), c = (size_t)rng.range(1, 5);
        Matrix m(r, c);
        for (size_t i = 0; i < r; i++)
            for (size_t j = 0; j < c; j++) {
                MPoly den = rng.poly({n}, 1, 1);
                m[i][j] = RatFunc(rng.poly({n, x}, 2, 2), den.is_zero() ? MPoly(1) : den);
            }
        auto ns = nullspace(m);
        // m*v = 0 exactly for every basis vector
        for (const auto& v : ns) {
            for (size_t i = 0; i < r; i++) {
                RatFunc acc;
                for (size_t j = 0; j < c; j++) acc += m[i][j] * v[j];
                CHECK(acc.is_zero());
            }
        }
        // dimension count: cols - rank, with rank stable under column reversal
        Matrix rev(r, c);
        for (size_t i = 0; i < r; i++)
            for (size_t j = 0; j < c; j++) rev[i][j] = m[i][c - 1 - j];
        CHECK(rank(m) == rank(rev));
        CHECK(ns.size() == c - rank(m));
    }
}

TEST_CASE("solve linear systems") {
    Symbol n("n");
    MPoly N = MPoly::variable(n);
    // [1 n; 0 1] x = [n^2+1; n]  =>  x = (1, n)
    Matrix a(2, 2);
    a[0][0] = RatFunc(1);
    a[0][1] = RatFunc(N);
    a[1][1] = RatFunc(1);
    auto x = solve(a, {RatFunc(N * N + MPoly(1)), RatFunc(N)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == RatFunc(1));
    CHECK((*x)[1] == RatFunc(N));

    // inconsistent system
    Matrix b(2, 1);
    b[0][0] = RatFunc(1);
    b[1][0] = RatFunc(1);
    CHECK_FALSE(solve(b, {RatFunc(1), RatFunc(2)}).has_value());
}
