#include "qska/ratf.hpp"

#include "qska/errors.hpp"

namespace qska {

RatF::RatF(MPoly n, MPoly d) {
    if (d.is_zero()) throw DivisionByZero();
    if (n.is_zero()) {
        num_ = MPoly{};
        den_ = MPoly::constant(1);
        return;
    }
    Rat cn = n.content(), cd = d.content();
    MPoly np = n.primitive_part(), dp = d.primitive_part();
    MPoly g = MPoly::gcd(np, dp);
    if (!g.is_one()) {
        np = *np.divide_exact(g);
        dp = *dp.divide_exact(g);
    }
    num_ = np * (cn / cd);
    den_ = std::move(dp);
}

RatF RatF::of(MPoly n) {
    RatF r;
    r.num_ = std::move(n);
    return r;
}

Rat RatF::constant_value() const {
    return num_.constant_value() / den_.constant_value();
}

RatF RatF::operator-() const { return raw(-num_, den_); }

RatF RatF::operator+(const RatF& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) {
        MPoly t = num_ + o.num_;
        if (t.is_zero()) return RatF{};
        if (den_.is_one()) return raw(std::move(t), den_);
        MPoly h = MPoly::gcd(t, den_);
        if (h.is_one()) return raw(std::move(t), den_);
        return raw(*t.divide_exact(h), *den_.divide_exact(h));
    }
    if (den_.is_one() || o.den_.is_one()) {
        // polynomial + fraction stays reduced over the fraction's denominator
        return raw(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    MPoly g0 = MPoly::gcd(den_, o.den_);
    if (g0.is_one()) {
        // coprime denominators: the sum is already reduced
        return raw(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    MPoly bp = *den_.divide_exact(g0);
    MPoly dp = *o.den_.divide_exact(g0);
    MPoly t = num_ * dp + o.num_ * bp;
    if (t.is_zero()) return RatF{};
    MPoly h = MPoly::gcd(t, g0);
    if (h.is_one()) return raw(std::move(t), bp * o.den_);
    return raw(*t.divide_exact(h), bp * *o.den_.divide_exact(h));
}

RatF RatF::operator-(const RatF& o) const { return *this + (-o); }

RatF RatF::operator*(const RatF& o) const {
    if (is_zero() || o.is_zero()) return RatF{};
    if (is_one()) return o;
    if (o.is_one()) return *this;
    MPoly n1 = num_, d2 = o.den_;
    MPoly g1 = MPoly::gcd(n1, d2);
    if (!g1.is_one()) {
        n1 = *n1.divide_exact(g1);
        d2 = *d2.divide_exact(g1);
    }
    MPoly n2 = o.num_, d1 = den_;
    MPoly g2 = MPoly::gcd(n2, d1);
    if (!g2.is_one()) {
        n2 = *n2.divide_exact(g2);
        d1 = *d1.divide_exact(g2);
    }
    // cross-reduced product of reduced fractions is reduced (Gauss)
    return raw(n1 * n2, d1 * d2);
}

RatF RatF::inv() const {
    if (is_zero()) throw DivisionByZero("inverse of the zero rational function");
    Rat c = num_.content();
    MPoly p = num_.primitive_part();
    return raw(den_ * (1 / c), std::move(p));
}

RatF RatF::operator/(const RatF& o) const { return *this * o.inv(); }

RatF RatF::pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    RatF r = RatF::constant(1);
    RatF base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

RatF RatF::subst(Sym var, const RatF& val) const {
    if (!depends_on(var)) return *this;
    bool monomial = val.num_.terms().size() == 1 && val.den_.terms().size() == 1;
    if (monomial) {
        const auto& [nm, nc] = val.num_.leading();
        const auto& [dm, dc] = val.den_.leading();
        Rat coef = nc / dc;
        // var -> coef * nm / dm: clear dm by scaling with dm^(max exponent)
        auto apply = [&](const MPoly& p) -> std::pair<MPoly, MPoly> {
            std::int64_t e_max = p.degree_in(var);
            if (e_max <= 0) return {p, MPoly::constant(1)};
            std::vector<MPoly::Term> out;
            for (auto& [m, c] : p.terms()) {
                std::int64_t e = m.degree_in(var);
                std::vector<Mono::Entry> rest;
                for (auto& en : m.entries())
                    if (en.first != var) rest.push_back(en);
                Rat v = c;
                for (std::int64_t k = 0; k < e; ++k) v *= coef;
                Mono mo = Mono::of(std::move(rest)) * nm.pow(e) * dm.pow(e_max - e);
                out.push_back({std::move(mo), v});
            }
            return {MPoly::from_terms(std::move(out)),
                    MPoly::term(rat(1), dm.pow(e_max))};
        };
        auto [n, nden] = apply(num_);
        auto [d, dden] = apply(den_);
        return RatF(n * dden, d * nden);
    }
    auto eval_poly = [&](const MPoly& p) -> RatF {
        std::vector<MPoly> cs = p.coeffs_in(var);
        RatF acc; // Horner
        for (size_t k = cs.size(); k-- > 0;)
            acc = acc * val + RatF::of(cs[k]);
        return acc;
    };
    RatF n = eval_poly(num_);
    RatF d = eval_poly(den_);
    if (d.is_zero()) throw DenominatorVanishes("denominator vanishes under substitution of '" +
                                               var.name() + "'");
    return n / d;
}

Rat RatF::specialize(const std::map<Sym, Rat>& a) const {
    Rat d = den_.specialize(a);
    if (d == 0) throw PoleAtPoint("denominator vanishes at the evaluation point");
    return num_.specialize(a) / d;
}

std::uint64_t RatF::eval_mod(const std::map<Sym, std::uint64_t>& p) const {
    std::uint64_t d = den_.eval_mod(p);
    if (d == 0) throw PoleAtPoint("denominator vanishes at the probe point");
    return mul_mod(num_.eval_mod(p), inv_mod(d));
}

std::string RatF::text() const { return num_.text() + " / " + den_.text(); }

RatF RatF::parse(std::string_view text) {
    // the separator " / " cannot occur inside canonical polynomial text
    size_t pos = std::string_view::npos;
    for (size_t i = 0; i + 2 < text.size(); ++i) {
        if (text[i] == ' ' && text[i + 1] == '/' && text[i + 2] == ' ') {
            if (pos != std::string_view::npos)
                throw ParseError("multiple ' / ' separators in rational function text");
            pos = i;
        }
    }
    if (pos == std::string_view::npos) return RatF::of(MPoly::parse(text));
    return RatF(MPoly::parse(text.substr(0, pos)), MPoly::parse(text.substr(pos + 3)));
}

} // namespace qska
