#pragma once

#include "qska/rational.hpp"
#include "qska/symbol.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qska {

// Monomial: sparse exponent vector, entries sorted by symbol id, exponents
// strictly positive.  The empty monomial is 1.
class Mono {
public:
    using Entry = std::pair<Sym, std::int64_t>;

    Mono() = default;
    explicit Mono(Sym s, std::int64_t e = 1);
    static Mono of(std::vector<Entry> entries); // normalizes: sorts, drops zeros

    const std::vector<Entry>& entries() const { return v_; }
    bool is_one() const { return v_.empty(); }
    std::int64_t total_degree() const;
    std::int64_t degree_in(Sym s) const;
    bool contains(Sym s) const { return degree_in(s) != 0; }

    Mono operator*(const Mono& o) const;
    Mono pow(std::int64_t e) const;
    bool divides(const Mono& o) const;    // this | o
    Mono divide(const Mono& o) const;     // o / this (requires divides)
    static Mono gcd(const Mono& a, const Mono& b);

    // Graded lexicographic: higher total degree first, ties broken by the
    // exponent vector on interning-ordered symbols (earlier symbol with a
    // larger exponent wins).  Returns <0, 0, >0.
    static int cmp(const Mono& a, const Mono& b);

    friend bool operator==(const Mono& a, const Mono& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Mono& a, const Mono& b) { return !(a == b); }

private:
    std::vector<Entry> v_;
};

// Multivariate polynomial with rational coefficients.  Terms are kept in
// strictly descending graded-lex order with nonzero coefficients; this is
// the canonical form used for serialization and comparison.
class MPoly {
public:
    using Term = std::pair<Mono, Rat>;

    MPoly() = default;                       // zero
    static MPoly constant(const Rat& c);
    static MPoly constant(long n, long d = 1) { return constant(rat(n, d)); }
    static MPoly sym(Sym s, std::int64_t e = 1);
    static MPoly term(const Rat& c, Mono m);
    static MPoly from_terms(std::vector<Term> terms); // normalizes

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first.is_one()); }
    bool is_one() const;
    // Constant term value (zero polynomial -> 0).
    Rat constant_value() const;
    const Term& leading() const { return t_.front(); } // requires nonzero
    std::int64_t total_degree() const;                 // zero -> -1
    std::int64_t degree_in(Sym s) const;               // zero -> -1
    std::int64_t low_degree_in(Sym s) const;           // smallest exponent of s; zero -> 0
    bool depends_on(Sym s) const;
    std::vector<Sym> support() const;                  // symbols appearing, ascending

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator*(const Rat& c) const;
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    MPoly pow(std::int64_t e) const; // e >= 0

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    // Rational content: c such that *this = c * pp with pp having coprime
    // integer coefficients and positive leading coefficient.  Zero -> 0.
    Rat content() const;
    MPoly primitive_part() const; // *this / content(); zero -> zero

    // View as a univariate polynomial in s: index = exponent, values s-free.
    std::vector<MPoly> coeffs_in(Sym s) const;
    static MPoly assemble(Sym s, const std::vector<MPoly>& coeffs);
    // Coefficient of s^k (s-free).
    MPoly coeff_of(Sym s, std::int64_t k) const;

    // Exact division: returns o such that *this == d * o, or nullopt.
    // max_steps > 0 bounds the elimination loop (used when merely probing
    // divisibility); exceeding it counts as "not divisible".
    std::optional<MPoly> divide_exact(const MPoly& d, long max_steps = -1) const;

    // Total evaluation; throws MissingSymbol if the support is not covered.
    Rat specialize(const std::map<Sym, Rat>& assignment) const;
    // Partial evaluation: substitutes only the symbols present in the map.
    MPoly specialize_partial(const std::map<Sym, Rat>& assignment) const;
    // Evaluation mod the probe prime.
    std::uint64_t eval_mod(const std::map<Sym, std::uint64_t>& point) const;

    // Substitute var -> coef * mono (exponents may make this non-polynomial
    // only through the caller's bookkeeping; here mono must be z-positive).
    MPoly subst_monomial(Sym var, const Rat& coef, const Mono& mono) const;

    std::string text() const;                  // canonical, e.g. "3/2*s^2*z^1 + -1/1"
    static MPoly parse(std::string_view text); // accepts canonical and relaxed forms

    // GCD of the primitive parts; result is integer-primitive with positive
    // leading coefficient ("1" for coprime inputs).  gcd(0, b) = pp(b).
    static MPoly gcd(const MPoly& a, const MPoly& b);

private:
    std::vector<Term> t_;
    void normalize(); // sort + combine + drop zeros
};

} // namespace qska
