#pragma once

#include "qska/mpoly.hpp"

#include <map>
#include <string>

namespace qska {

// Normalized rational function: num/den with gcd(num, den) trivial, den an
// integer-primitive polynomial with positive leading coefficient.  Equal
// fractions therefore have identical representations and operator== is
// mathematical equality.
class RatF {
public:
    RatF() : num_(), den_(MPoly::constant(1)) {}
    RatF(MPoly n, MPoly d); // normalizes; throws DivisionByZero on d == 0
    static RatF of(MPoly n);
    static RatF constant(const Rat& c) { return of(MPoly::constant(c)); }
    static RatF constant(long n, long d = 1) { return of(MPoly::constant(rat(n, d))); }
    static RatF sym(Sym s, std::int64_t e = 1) { return of(MPoly::sym(s, e)); }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat constant_value() const; // requires is_constant
    bool depends_on(Sym s) const { return num_.depends_on(s) || den_.depends_on(s); }

    RatF operator-() const;
    RatF operator+(const RatF& o) const;
    RatF operator-(const RatF& o) const;
    RatF operator*(const RatF& o) const;
    RatF operator/(const RatF& o) const;
    RatF& operator+=(const RatF& o) { return *this = *this + o; }
    RatF& operator-=(const RatF& o) { return *this = *this - o; }
    RatF& operator*=(const RatF& o) { return *this = *this * o; }
    RatF& operator/=(const RatF& o) { return *this = *this / o; }
    RatF inv() const;
    RatF pow(std::int64_t e) const; // any sign

    friend bool operator==(const RatF& a, const RatF& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatF& a, const RatF& b) { return !(a == b); }

    // Substitute var -> val.  Monomial-shaped values (single-term num and
    // den) take a gcd-free fast path; general values go through fraction
    // arithmetic.
    RatF subst(Sym var, const RatF& val) const;

    Rat specialize(const std::map<Sym, Rat>& a) const;      // PoleAtPoint on zero den
    std::uint64_t eval_mod(const std::map<Sym, std::uint64_t>& p) const;

    std::string text() const; // "num / den", both canonical
    static RatF parse(std::string_view text);

private:
    MPoly num_, den_;
    struct raw_t {};
    RatF(MPoly n, MPoly d, raw_t) : num_(std::move(n)), den_(std::move(d)) {}
    static RatF raw(MPoly n, MPoly d) { return RatF(std::move(n), std::move(d), raw_t{}); }
};

inline RatF operator+(const RatF& a, long b) { return a + RatF::constant(b); }
inline RatF operator-(const RatF& a, long b) { return a - RatF::constant(b); }
inline RatF operator+(long a, const RatF& b) { return RatF::constant(a) + b; }
inline RatF operator-(long a, const RatF& b) { return RatF::constant(a) - b; }
inline RatF operator*(long a, const RatF& b) { return RatF::constant(a) * b; }
inline RatF operator*(const RatF& a, long b) { return a * RatF::constant(b); }
inline RatF operator/(long a, const RatF& b) { return RatF::constant(a) / b; }
inline RatF operator/(const RatF& a, long b) { return a / RatF::constant(b); }
inline RatF operator*(const Rat& a, const RatF& b) { return RatF::constant(a) * b; }

} // namespace qska
