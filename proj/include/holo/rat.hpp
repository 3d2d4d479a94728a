#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <sstream>
#include <string>

namespace holo {

using Int = mpz_class;

// Exact rational, always canonical: gcd(|num|, den) = 1, den >= 1.
class Rat {
  public:
    Rat() : v_(0) {}
    Rat(int n) : v_(n) {}                // NOLINT: implicit by design
    Rat(long n) : v_((long)n) {}         // NOLINT
    Rat(const Int& n) : v_(n) {}         // NOLINT
    Rat(const Int& n, const Int& d) : v_(n, d) { v_.canonicalize(); }
    Rat(long n, long d) : v_((long)n, (long)d) { v_.canonicalize(); }
    explicit Rat(const std::string& s) : v_(s) { v_.canonicalize(); }

    Int num() const { return v_.get_num(); }
    Int den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) { v_ /= o.v_; return *this; }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    Rat inv() const { return Rat(mpq_class(1 / v_)); }

    // a^e for integer e (e < 0 inverts; 0^0 = 1)
    Rat pow(long e) const {
        if (e == 0) return Rat(1);
        mpq_class base = e < 0 ? mpq_class(1 / v_) : v_;
        unsigned long k = e < 0 ? -(unsigned long)e : (unsigned long)e;
        mpq_class r;
        mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), k);
        mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), k);
        r.canonicalize();
        return Rat(r);
    }

    std::string str() const {
        std::ostringstream os;
        os << v_;
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.v_; }

    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    const mpq_class& raw() const { return v_; }

  private:
    mpq_class v_;
};

inline Rat rat_gcd(const Rat& a, const Rat& b) {
    // gcd on Q used for content: gcd of numerators over lcm of denominators
    if (a.is_zero()) return Rat(b.is_zero() ? Int(0) : abs(b.num()), b.is_zero() ? Int(1) : b.den());
    if (b.is_zero()) return Rat(abs(a.num()), a.den());
    Int gn, ld;
    mpz_gcd(gn.get_mpz_t(), a.num().get_mpz_t(), b.num().get_mpz_t());
    mpz_lcm(ld.get_mpz_t(), a.den().get_mpz_t(), b.den().get_mpz_t());
    return Rat(gn, ld);
}

inline Int int_factorial(long n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), (unsigned long)n);
    return f;
}

inline Int int_binomial(long n, long k) {
    if (k < 0 || k > n || n < 0) return Int(0);
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), (unsigned long)n, (unsigned long)k);
    return b;
}

}  // namespace holo
