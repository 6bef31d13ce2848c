#pragma once

#include "qska/catalog.hpp"
#include "qska/qop.hpp"

#include <string>
#include <vector>

namespace qska {

// (x; Q)_n = prod_{j<n} (1 - x Q^j), exact.
RatF q_pochhammer(const RatF& x, const RatF& base, int n);

// Orthogonal polynomial of degree n on the grid in x = z + 1/z, built from
// the terminating basic hypergeometric sum in base q^r with the standard
// normalization.  Throws NormalizationVanishes when the normalizing
// prefactor degenerates at the supplied parameter values.
SymPoly aw_polynomial(int n, const catalog::AWParams& p);

// Same polynomial scaled to leading chi coefficient 1.  Computed from the
// generic-parameter polynomial and specialized afterwards, so it survives
// parameter values where the standard normalization vanishes (as long as
// the monic coefficients themselves stay finite).
SymPoly aw_polynomial_monic(int n, const catalog::AWParams& p);

struct EigenResult {
    bool is_eigen = false;
    RatF eigenvalue;
    SymPoly residual; // image - eigenvalue * input; zero iff is_eigen
};
// Decides exactly whether op fixes the line through f; f must be nonzero.
EigenResult eigencheck(const QOp& op, const SymPoly& f);

struct PropResult {
    bool proportional = false;
    RatF scalar;
    SymPoly residual; // image - scalar * g; zero iff proportional
};
// Decides exactly whether op maps f onto the line through g; g must be
// nonzero.  The throwing variant raises NotProportional on failure.
PropResult proportionality_check(const QOp& op, const SymPoly& f, const SymPoly& g);
RatF require_proportional(const QOp& op, const SymPoly& f, const SymPoly& g);

// Matrix of an operator on the invariant span of {1, chi_1, ..., chi_{N-1}},
// exact entries, column j = image of the j-th basis element.
class RepMatrix {
public:
    explicit RepMatrix(int n); // zero matrix
    static RepMatrix identity(int n);
    static RepMatrix scalar(int n, const RatF& c);

    int dim() const { return n_; }
    const RatF& at(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }
    RatF& at(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }

    RepMatrix operator+(const RepMatrix& o) const;
    RepMatrix operator-(const RepMatrix& o) const;
    RepMatrix operator*(const RepMatrix& o) const;
    RepMatrix scaled(const RatF& c) const;
    friend bool operator==(const RepMatrix& a, const RepMatrix& b) {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }
    friend bool operator!=(const RepMatrix& a, const RepMatrix& b) { return !(a == b); }

    bool is_zero() const;
    std::string text() const; // one row per line, entries " | "-separated

private:
    int n_;
    std::vector<RatF> e_;
};

// Throws NotInvariant (with the chi_N leakage coefficient as witness) when
// the span is not stable under op.
RepMatrix matrix_rep(const QOp& op, int n);

} // namespace qska
