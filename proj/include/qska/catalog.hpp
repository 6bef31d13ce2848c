#pragma once

#include "qska/qop.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qska::catalog {

// Every constructor returns a fresh operator over the engine's standard
// symbols (q = s^2, grid variable z).  Parameters are passed as rational
// functions so the same builders serve both the generic-symbol identities
// and specialized instances.

// Basic shifts: Tplus f(z) = f(qz), Tminus f(z) = f(z/q).
QOp Tplus();
QOp Tminus();
QOp Id();

// Three-generator divided-difference family.
QOp Y();
QOp U();
QOp V();

// Multiplication by x = z + 1/z.
QOp Xop();

// Contracted quadruple (pure shift realization); t carries the spectral
// power (t = q^nu).
QOp hatA(const RatF& t);
QOp hatB(const RatF& t);
QOp hatC();
QOp hatD(const RatF& t);

// Four-generator divided-difference realization.
QOp A(const RatF& t);
QOp B(const RatF& t);
QOp C();
QOp D(const RatF& t);

// General linear combination alpha*Y + beta*U + gamma*V.
QOp M(const RatF& alpha, const RatF& beta, const RatF& gamma);

// Coefficient function gamma*(1-az)(1-bz)/(1-z^2) of the T+ part of M.
RatF F_coeff(const RatF& a, const RatF& b, const RatF& gamma);

struct AWParams {
    RatF a, b, c, d;
    int r = 1; // base exponent: the operator lives in base q^r
    static AWParams generic(int r);
};

// A^{(r)}(z) = (1-az)(1-bz)(1-cz)(1-dz) / ((1-z^2)(1-q^r z^2)).
RatF aw_coefficient(const AWParams& p);
// The Askey-Wilson operator A(z) T_+^r - [A(z)+A(1/z)] I + A(1/z) T_-^r.
QOp AW(const AWParams& p);
// Eigenvalue on degree-n polynomials: q^-rn (1-q^rn)(1-abcd q^{r(n-1)}).
RatF aw_eigenvalue(const AWParams& p, int n);

// Three-generator quadratic presentation built on the symmetric special case:
// K0 = AW(a, b, q^(1/2), -q^(1/2); base q) + (1-ab), K1 = x, K2 = [K0,K1]_q.
QOp K0(const RatF& a, const RatF& b);
QOp K1();
QOp K2(const RatF& a, const RatF& b);

// Contiguity operator: only the first two parameters enter the coefficients;
// the full quadruple is kept by callers for bookkeeping of the action.
QOp mu(const RatF& a, const RatF& b);
// Lowering shift operator (equals Y).
QOp tau();
// Raising shift operator with all four grid parameters.
QOp tau_star(const RatF& a, const RatF& b, const RatF& c, const RatF& d);

// Degree-graded basis of first-order operators on the grid: lowering L,
// stabilizing M1, M2, raising R1, R2.
QOp L();
QOp M1();
QOp M2();
QOp R1();
QOp R2();

// Name -> builder registry for the CLI (generic symbols everywhere).
const std::vector<std::string>& names();
bool has(const std::string& name);
QOp by_name(const std::string& name); // throws ParseError on unknown names

} // namespace qska::catalog
