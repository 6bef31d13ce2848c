#pragma once

#include "qska/ratf.hpp"

#include <map>
#include <string>
#include <vector>

namespace qska {

// Core symbols of the engine, interned once.  q = s^2 keeps half-integer
// powers of q polynomial; t plays the role of the spectral parameter power
// q^nu; a,b,c,d are grid parameters with quartic roots ra..rd.
struct Core {
    static Sym s();
    static Sym z();
    static Sym t();
    static Sym a();
    static Sym b();
    static Sym c();
    static Sym d();
    static Sym e();
};

// q^(k/2) = s^k as a rational function (any integer k).
RatF spow(std::int64_t k);
// q^k = s^(2k).
inline RatF qpow(std::int64_t k) { return spow(2 * k); }
// z^k (any sign).
RatF zpow(std::int64_t k);
// chi_n(z) = z^n + z^(-n) as a rational function; chi_0 = 2.
RatF chi_ratf(int n);

// Symmetric Laurent polynomial in z, stored by chi-degree.  chi_0 = 2, so
// the coefficient of the constant *function* 1 is twice the stored degree-0
// entry; both accessors are provided to keep the factor-of-two explicit.
class SymPoly {
public:
    SymPoly() = default;
    static SymPoly chi(int n); // chi_n itself
    static SymPoly from_coeffs(std::map<int, RatF> coeffs);

    const std::map<int, RatF>& coeffs() const { return c_; }
    RatF chi_coeff(int n) const;  // coefficient of chi_n (chi_0 = 2 convention)
    RatF unit_coeff(int n) const; // n = 0 gives the coefficient of 1, i.e. 2*chi_coeff(0)
    int degree() const;           // zero -> -1
    bool is_zero() const { return c_.empty(); }

    SymPoly operator+(const SymPoly& o) const;
    SymPoly operator-(const SymPoly& o) const;
    SymPoly operator*(const RatF& scalar) const; // scalar must be z-free
    SymPoly operator-() const;

    RatF to_ratf() const;

    friend bool operator==(const SymPoly& a, const SymPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const SymPoly& a, const SymPoly& b) { return !(a == b); }

    std::string text() const; // one "n: num / den" line per degree

private:
    std::map<int, RatF> c_; // degree -> coefficient, no zeros, z-free
};

// Expand a symmetric Laurent polynomial into the chi basis.  Throws
// NotLaurent if f has a non-monomial denominator in z, NotSymmetric if it
// is not invariant under z -> 1/z.
SymPoly chi_expand(const RatF& f);

class QOp;

// Apply an operator to a symmetric Laurent polynomial and expand the image
// in the chi basis.  Equivalent to chi_expand(op.apply(f.to_ratf())) but
// works degree-by-degree in the grid variable, so z never enters a gcd;
// this is the fast path used by eigenvalue and matrix computations.
// Throws NotLaurent / NotSymmetric exactly as chi_expand would.
SymPoly apply_sym(const QOp& op, const SymPoly& f);

// q-difference operator in normal form: a finite sum of coefficient
// functions times integer powers of the basic shift z -> qz.  Stored as
// shift -> coefficient with zero coefficients dropped, so equality of
// operators is structural equality (sound and complete on this class).
class QOp {
public:
    QOp() = default; // zero operator
    static QOp identity_op();
    static QOp shift_op(int k, RatF coeff = RatF::constant(1));
    static QOp from_terms(std::vector<std::pair<int, RatF>> terms);

    const std::map<int, RatF>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    RatF coeff(int k) const; // zero if absent

    QOp operator+(const QOp& o) const;
    QOp operator-(const QOp& o) const;
    QOp operator-() const;
    QOp scaled(const RatF& f) const;    // left multiplication by f(z)
    QOp operator*(const QOp& o) const;  // composition, this after o
    QOp& operator+=(const QOp& o) { return *this = *this + o; }
    QOp& operator-=(const QOp& o) { return *this = *this - o; }

    RatF apply(const RatF& f) const;

    friend bool operator==(const QOp& a, const QOp& b) { return a.t_ == b.t_; }
    friend bool operator!=(const QOp& a, const QOp& b) { return !(a == b); }

    std::string json() const; // {"terms":[{"shift":k,"num":...,"den":...}]}, shifts ascending
    static QOp from_json(std::string_view text);

private:
    std::map<int, RatF> t_;
    void prune();
};

QOp compose(const QOp& a, const QOp& b);
QOp commutator(const QOp& a, const QOp& b);   // ab - ba
QOp q_commutator(const QOp& a, const QOp& b); // q^(1/2) ab - q^(-1/2) ba

// f(z) -> f(q^k z) on rational functions.
RatF shift_arg(const RatF& f, int k);
// f(z) -> f(1/z).
RatF mirror(const RatF& f);

// Exact operator equality; the probe (seeded random evaluation mod a large
// prime) can certify inequality early, but equality is always decided on
// the canonical forms.
bool op_equal(const QOp& a, const QOp& b, std::uint64_t probe_seed = 0);

struct DegreeRow {
    int n;               // input chi-degree
    int out_degree;      // degree of the image (-1 for zero)
    bool parity_changed; // no output component of the input's parity
};
// Applies the operator to chi_0..chi_{n_max} and tabulates image degrees.
std::vector<DegreeRow> degree_profile(const QOp& op, int n_max);

} // namespace qska
