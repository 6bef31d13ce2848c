#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace qska {

using Int = mpz_class;
using Rat = mpq_class; // always kept canonicalized (gmp invariant)

// Text form is always "numerator/denominator", including "/1", so that the
// canonical polynomial format never depends on gmp's printing shortcuts.
std::string rat_to_text(const Rat& r);

// Accepts "n", "-n", "n/d" with optional leading sign; throws ParseError.
Rat rat_from_text(std::string_view text);

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Evaluation modulo a prime (for randomized equality probes).  The modulus
// fits in 61 bits so products fit in __int128.
constexpr std::uint64_t kProbePrime = (std::uint64_t(1) << 61) - 1;

std::uint64_t mod_p(const Int& v);
std::uint64_t mod_p(const Rat& v); // throws PoleAtPoint if denominator = 0 mod p

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kProbePrime);
}
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp);
std::uint64_t inv_mod(std::uint64_t a);

} // namespace qska
