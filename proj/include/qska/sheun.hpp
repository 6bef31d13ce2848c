#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qska/qop.hpp"

// First-order degree-preserving operators on the symmetric Laurent basis
// ("big q-Heun" layer): the five-parameter raising family S = A1(z) T+ +
// A2(z) T-, its five distinguished unit-parameter members L, M1, M2, R1, R2,
// quadratic combinations of those members, and a rewriting calculus that
// normalizes any (at most) quadratic word into a fixed 15-word basis.

namespace qska::sheun {

// Parameters of the degree constraints imposed on S: S.1 must equal
// a00 + a01*chi1 and S.chi1 must equal a10 + a11*chi1 + a12*chi2.
struct SHeunParams {
    RatF a00, a01, a10, a11, a12;

    // All five parameters as free symbols.
    static SHeunParams symbolic();
};

struct RaisingSolution {
    RatF A1;  // coefficient of T+
    RatF A2;  // coefficient of T-; always equals A1 with z -> 1/z
};

// Solves the two degree constraints exactly for A1 and A2.  The system is
// the pair of linear conditions obtained by matching the images of 1 and
// chi1; the solution is unique and A2 is the mirror of A1.
RaisingSolution solve_raising(const SHeunParams& p);

// The operator A1 T+ + A2 T- built from solve_raising.
QOp make_sheun(const SHeunParams& p);

// Checks that the two defining constraints already force degree preservation
// in every higher degree: for 2 <= n <= n_max the image S.chi_n must be a
// symmetric Laurent polynomial of chi-degree at most n + 1.  Returns false
// if any image breaks symmetry or exceeds the degree bound.  A non-Laurent
// image indicates a corrupted operator and throws NotLaurent.
bool verify_no_new_constraints(const QOp& S, int n_max);
bool verify_no_new_constraints(int n_max);  // symbolic-parameter S

// ---------------------------------------------------------------------------
// Quadratic combinations.

// Coefficients of the nine-term quadratic combination
//   alpha1 L^2 + alpha2 L M2 + alpha3 M1^2 + alpha4 M1 M2 + alpha5 M2 L
//   + alpha6 M2^2 + beta1 M1 R1 + beta2 R1 M1 + beta3 R2 M2.
struct QHawParams {
    RatF alpha1, alpha2, alpha3, alpha4, alpha5, alpha6;
    RatF beta1, beta2, beta3;

    static QHawParams symbolic();  // all nine as free symbols
};

QOp build_qhaw(const QHawParams& p);

// Shape data of a three-shift operator A1 T+^2 + A0 I + A2 T-^2 whose
// raising coefficient is a degree-six polynomial over z(1-z^2)(1-q^2 z^2)
// and whose zero-shift part differs from -(A1 + A1(1/z)) by an affine
// polynomial p1(x) = p1_const + p1_x * x.
struct HeunData {
    std::array<RatF, 7> r;  // numerator coefficients r0..r6 (normalized)
    RatF p1_const;
    RatF p1_x;
};

// Extracts HeunData from an operator, checking every shape condition:
// shifts within {-2, 0, +2}, mirror symmetry of the outer coefficients,
// polynomial numerator of degree at most six, affine zero-shift remainder.
// Violations throw NotHeunShape naming the failed condition.
HeunData extract_heun_data(const QOp& op);

// ---------------------------------------------------------------------------
// Words in the five generators and their normalization.

enum class Gen : std::uint8_t { L, M1, M2, R1, R2 };

const char* gen_name(Gen g);
QOp gen_op(Gen g);

// Expression tree over the generators: scalars (z-free rational functions),
// sums, and binary-or-longer products.  Parsed from and printed as
// s-expressions, e.g. (+ (* 2 L M1) (* {1/1*s^2 / 1/1} R2 M2) -1).
// Scalar literals are integers, integer fractions (3/4), or arbitrary
// canonical rational-function text wrapped in braces.
struct OpWord {
    enum class Kind : std::uint8_t { Scalar, Generator, Sum, Product };

    Kind kind = Kind::Scalar;
    RatF scalar;                // Kind::Scalar
    Gen gen = Gen::L;           // Kind::Generator
    std::vector<OpWord> kids;   // Kind::Sum / Kind::Product

    static OpWord constant(RatF c);
    static OpWord generator(Gen g);
    static OpWord sum(std::vector<OpWord> kids);
    static OpWord product(std::vector<OpWord> kids);
};

OpWord word_parse(std::string_view text);
std::string word_text(const OpWord& w);

// Realizes a word as an explicit operator.
QOp realize(const OpWord& w);

// Fixed normalization basis, in the canonical order used everywhere:
// nine quadratic words, the five generators, and the empty word.
inline constexpr int kBasisSize = 15;
extern const std::array<const char*, kBasisSize> kBasisNames;

struct Coordinates {
    std::array<RatF, kBasisSize> c{};

    QOp realize() const;
    std::string text() const;  // one "name: value" line per basis word
};

// Rewrites a word with at most quadratic generator degree into the fixed
// basis.  Deterministic and confluent on words: every reducible two-letter
// word has exactly one rewrite rule and rules never overlap, so words that
// expand to the same noncommutative polynomial receive identical
// coordinates no matter how they were parenthesized or distributed.  (The
// realized operators satisfy one extra linear relation tying the empty
// word to quadratic basis words, so distinct coordinate vectors can still
// realize equal operators; coordinates are canonical for words, not for
// operators.)  Words of generator degree three or more, and quadratic
// residues outside the span of the rules, throw NotReducible naming the
// stuck subterm.  The result is cross-checked against the direct
// realization of the input.
Coordinates reduce_quadratic(const OpWord& w);

// ---------------------------------------------------------------------------
// Factorized quadratic combinations.

struct FactorInput {
    std::array<RatF, 3> xi;   // left factor:  xi1 L + xi2 M1 + xi3 M2
    std::array<RatF, 5> eta;  // right factor: eta1 L + eta2 M1 + eta3 M2
                              //             + eta4 R1 + eta5 R2
    RatF kappa;               // additive constant
};

struct FactorResult {
    QHawParams params;  // quadratic-basis coordinates of the product
    RatF constant;      // coordinate of the empty word (includes kappa)
    QOp op;             // the realized operator
    HeunData heun;      // its extracted shape data
};

// Expands (xi . gens)(eta . gens) + kappa, normalizes it into the quadratic
// basis, and extracts its Heun shape data.
FactorResult factor_expand(const FactorInput& in);

// Best-effort inverse of factor_expand: attempts to recover a rank-one
// factorization of the given quadratic coordinates by alternating exact
// linear solves from a few deterministic starting points.  Not guaranteed
// to succeed even when a factorization exists; a returned value is always
// verified to reproduce the input coordinates exactly.
std::optional<FactorInput> try_factor(const QHawParams& p, const RatF& constant);

}  // namespace qska::sheun
