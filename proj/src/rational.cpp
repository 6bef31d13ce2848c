#include "qska/rational.hpp"

#include "qska/errors.hpp"

namespace qska {

std::string rat_to_text(const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_from_text(std::string_view text) {
    std::string s(text);
    // strip whitespace
    std::string clean;
    clean.reserve(s.size());
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) clean.push_back(c);
    if (clean.empty()) throw ParseError("empty rational literal");
    for (size_t i = 0; i < clean.size(); ++i) {
        char c = clean[i];
        if (isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+') continue;
        throw ParseError("bad character in rational literal: '" + clean + "'");
    }
    try {
        Rat r(clean);
        if (r.get_den() == 0) throw ParseError("zero denominator in rational literal: '" + clean + "'");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational literal: '" + clean + "'");
    }
}

std::uint64_t mod_p(const Int& v) {
    mpz_class m = v % mpz_class(static_cast<unsigned long>(kProbePrime));
    if (m < 0) m += mpz_class(static_cast<unsigned long>(kProbePrime));
    return m.get_ui();
}

std::uint64_t mod_p(const Rat& v) {
    std::uint64_t den = mod_p(Int(v.get_den()));
    if (den == 0) throw PoleAtPoint("denominator vanishes mod probe prime");
    return mul_mod(mod_p(Int(v.get_num())), inv_mod(den));
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    base %= kProbePrime;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base);
        base = mul_mod(base, base);
        exp >>= 1;
    }
    return r;
}

std::uint64_t inv_mod(std::uint64_t a) {
    // prime modulus: a^(p-2)
    return pow_mod(a, kProbePrime - 2);
}

} // namespace qska
