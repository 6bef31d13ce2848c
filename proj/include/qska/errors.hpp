#pragma once

#include <stdexcept>
#include <string>

namespace qska {

// All engine errors derive from Error so callers can catch the library
// failures separately from std ones.  Each concrete type corresponds to a
// distinct failure mode of the exact layer and carries a human-readable
// message; a few carry extra structured data used by the CLI to print
// witnesses.

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& msg = "division by zero rational function")
        : Error(msg) {}
};

// A denominator became identically zero while building an expression.
struct DenominatorVanishes : Error {
    explicit DenominatorVanishes(const std::string& msg) : Error(msg) {}
};

// A point evaluation hit a zero denominator.
struct PoleAtPoint : Error {
    explicit PoleAtPoint(const std::string& msg) : Error(msg) {}
};

// specialize() was asked to evaluate a symbol the assignment does not cover.
struct MissingSymbol : Error {
    explicit MissingSymbol(const std::string& sym)
        : Error("no value supplied for symbol '" + sym + "'"), symbol(sym) {}
    std::string symbol;
};

struct SingularSystem : Error {
    explicit SingularSystem(const std::string& msg) : Error(msg) {}
};

// chi expansion failures: the function is not Laurent in z, or not
// invariant under z -> 1/z.
struct NotLaurent : Error {
    explicit NotLaurent(const std::string& msg) : Error(msg) {}
};

struct NotSymmetric : Error {
    explicit NotSymmetric(const std::string& msg) : Error(msg) {}
};

// Basis polynomial normalization vanished at the requested parameter values.
struct NormalizationVanishes : Error {
    explicit NormalizationVanishes(const std::string& msg) : Error(msg) {}
};

// An image expected to be a scalar multiple of a reference polynomial is
// not; carries the residual to witness the failure.
struct NotProportional : Error {
    NotProportional(const std::string& msg, std::string residual_text)
        : Error(msg), residual(std::move(residual_text)) {}
    std::string residual;
};

// matrix_rep: the operator leaks outside the requested finite span.
// Carries the generator degree at which it leaked and the offending
// coefficient, serialized, so callers can print a witness.
struct NotInvariant : Error {
    NotInvariant(const std::string& msg, int degree, std::string leak)
        : Error(msg), basis_degree(degree), leak_coefficient(std::move(leak)) {}
    int basis_degree;
    std::string leak_coefficient;
};

// Second-order normal form extraction failed (wrong shift support, degree
// bound exceeded, or the zero-shift part is not affine in x).
struct NotHeunShape : Error {
    explicit NotHeunShape(const std::string& msg) : Error(msg) {}
};

// Word rewriting got stuck on a term outside the reducible set.
struct NotReducible : Error {
    NotReducible(const std::string& msg, std::string stuck_word)
        : Error(msg), stuck(std::move(stuck_word)) {}
    std::string stuck;
};

struct UnknownIdentity : Error {
    explicit UnknownIdentity(const std::string& id)
        : Error("unknown identity id '" + id + "'") {}
};

// Malformed textual input (canonical polynomial text, operator JSON, words).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

} // namespace qska
