#include "qska/qop.hpp"

#include "qska/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace qska {

Sym Core::s() { return Sym::intern("s"); }
Sym Core::z() { return Sym::intern("z"); }
Sym Core::t() { return Sym::intern("t"); }
Sym Core::a() { return Sym::intern("a"); }
Sym Core::b() { return Sym::intern("b"); }
Sym Core::c() { return Sym::intern("c"); }
Sym Core::d() { return Sym::intern("d"); }
Sym Core::e() { return Sym::intern("e"); }

RatF spow(std::int64_t k) {
    if (k >= 0) return RatF::of(MPoly::sym(Core::s(), k));
    return RatF(MPoly::constant(1), MPoly::sym(Core::s(), -k));
}

RatF zpow(std::int64_t k) {
    if (k >= 0) return RatF::of(MPoly::sym(Core::z(), k));
    return RatF(MPoly::constant(1), MPoly::sym(Core::z(), -k));
}

RatF chi_ratf(int n) {
    if (n < 0) n = -n;
    if (n == 0) return RatF::constant(2);
    // (z^(2n) + 1) / z^n
    return RatF(MPoly::sym(Core::z(), 2 * n) + MPoly::constant(1),
                MPoly::sym(Core::z(), n));
}

// ------------------------------------------------------------- SymPoly ----

SymPoly SymPoly::chi(int n) {
    SymPoly p;
    p.c_.emplace(std::abs(n), RatF::constant(1));
    return p;
}

SymPoly SymPoly::from_coeffs(std::map<int, RatF> coeffs) {
    SymPoly p;
    for (auto& [n, c] : coeffs) {
        if (n < 0) throw ParseError("negative chi degree");
        if (!c.is_zero()) p.c_.emplace(n, std::move(c));
    }
    return p;
}

RatF SymPoly::chi_coeff(int n) const {
    auto it = c_.find(std::abs(n));
    return it == c_.end() ? RatF{} : it->second;
}

RatF SymPoly::unit_coeff(int n) const {
    RatF c = chi_coeff(n);
    return n == 0 ? c * 2 : c;
}

int SymPoly::degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }

SymPoly SymPoly::operator+(const SymPoly& o) const {
    SymPoly r = *this;
    for (auto& [n, c] : o.c_) {
        auto it = r.c_.find(n);
        if (it == r.c_.end()) {
            r.c_.emplace(n, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) r.c_.erase(it);
        }
    }
    return r;
}

SymPoly SymPoly::operator-() const {
    SymPoly r = *this;
    for (auto& [n, c] : r.c_) c = -c;
    return r;
}

SymPoly SymPoly::operator-(const SymPoly& o) const { return *this + (-o); }

SymPoly SymPoly::operator*(const RatF& scalar) const {
    if (scalar.depends_on(Core::z()))
        throw ParseError("chi coefficients must be z-free");
    SymPoly r;
    if (scalar.is_zero()) return r;
    for (auto& [n, c] : c_) r.c_.emplace(n, c * scalar);
    return r;
}

RatF SymPoly::to_ratf() const {
    RatF f;
    for (auto& [n, c] : c_) f += c * chi_ratf(n);
    return f;
}

std::string SymPoly::text() const {
    if (c_.empty()) return "0: " + RatF{}.text();
    std::string out;
    for (auto& [n, c] : c_) {
        if (!out.empty()) out += "\n";
        out += std::to_string(n) + ": " + c.text();
    }
    return out;
}

SymPoly chi_expand(const RatF& f) {
    Sym z = Core::z();
    if (f.is_zero()) return SymPoly{};
    const MPoly& den = f.den();
    // Laurent in z <=> the canonical denominator is z^k times a z-free part,
    // i.e. every denominator term has one and the same z-exponent.
    std::int64_t k = den.terms().front().first.degree_in(z);
    for (auto& [m, c] : den.terms()) {
        if (m.degree_in(z) != k)
            throw NotLaurent("denominator is not a monomial in z: " + den.text());
    }
    MPoly den_zfree = den.coeff_of(z, k); // den / z^k
    // Laurent coefficient of z^(e-k) is num_coeff(e) / den_zfree.
    std::map<std::int64_t, RatF> laurent;
    for (std::int64_t e = f.num().low_degree_in(z); e <= f.num().degree_in(z); ++e) {
        MPoly ce = f.num().coeff_of(z, e);
        if (ce.is_zero()) continue;
        laurent.emplace(e - k, RatF(std::move(ce), den_zfree));
    }
    std::map<int, RatF> out;
    for (auto& [n, c] : laurent) {
        if (n < 0) continue;
        auto neg = laurent.find(-n);
        RatF cn = neg == laurent.end() ? RatF{} : neg->second;
        if (n == 0) {
            out.emplace(0, c / 2);
        } else {
            if (c != cn)
                throw NotSymmetric("coefficients of z^" + std::to_string(n) + " and z^-" +
                                   std::to_string(n) + " differ: " + c.text() + " vs " +
                                   cn.text());
            out.emplace(static_cast<int>(n), c);
        }
    }
    // negative degrees must be matched by positive ones
    for (auto& [n, c] : laurent) {
        if (n >= 0) continue;
        if (!laurent.count(-n))
            throw NotSymmetric("unmatched coefficient of z^" + std::to_string(n) + ": " +
                               c.text());
    }
    return SymPoly::from_coeffs(std::move(out));
}

// ------------------------------------------------------------- apply_sym --

namespace {

// Laurent polynomial in z: exponent -> z-free coefficient.  All arithmetic
// on this form touches only the parameter symbols, never z.
using LZ = std::map<std::int64_t, RatF>;

LZ lz_of_mpoly(const MPoly& p) {
    Sym z = Core::z();
    std::map<std::int64_t, std::vector<MPoly::Term>> buckets;
    for (const auto& [m, c] : p.terms()) {
        std::int64_t e = m.degree_in(z);
        std::vector<Mono::Entry> rest;
        for (const auto& en : m.entries())
            if (en.first != z) rest.push_back(en);
        buckets[e].push_back({Mono::of(std::move(rest)), c});
    }
    LZ out;
    for (auto& [e, ts] : buckets) out.emplace(e, RatF::of(MPoly::from_terms(std::move(ts))));
    return out;
}

void lz_add_scaled(LZ& acc, const LZ& f, const RatF& c, std::int64_t shift) {
    if (c.is_zero()) return;
    for (const auto& [e, v] : f) {
        RatF w = v * c;
        if (w.is_zero()) continue;
        auto it = acc.find(e + shift);
        if (it == acc.end()) {
            acc.emplace(e + shift, std::move(w));
        } else {
            it->second += w;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
}

LZ lz_mul(const LZ& a, const LZ& b) {
    LZ r;
    for (const auto& [e, c] : a) lz_add_scaled(r, b, c, e);
    return r;
}

// f(q^k z): the coefficient of z^e picks up q^(ke).
LZ lz_shift_arg(const LZ& f, int k) {
    if (k == 0) return f;
    LZ r;
    for (const auto& [e, c] : f) r.emplace(e, c * spow(2 * std::int64_t(k) * e));
    return r;
}

// Exact Laurent division n / d; throws NotLaurent when the remainder is
// nonzero (the image left the Laurent polynomial ring).
LZ lz_div_exact(LZ n, const LZ& d) {
    if (d.empty()) throw DivisionByZero("operator denominator vanished");
    if (n.empty()) return {};
    std::int64_t qmin = n.begin()->first - d.begin()->first;
    std::int64_t dtop = d.rbegin()->first;
    const RatF& dlead = d.rbegin()->second;
    LZ q;
    while (!n.empty()) {
        std::int64_t off = n.rbegin()->first - dtop;
        if (off < qmin)
            throw NotLaurent("image is not a Laurent polynomial in z");
        RatF f = n.rbegin()->second / dlead;
        lz_add_scaled(n, d, -f, off);
        q.emplace(off, std::move(f));
    }
    return q;
}

SymPoly lz_to_sympoly(const LZ& f) {
    std::map<int, RatF> out;
    for (const auto& [e, c] : f) {
        if (e > 0) {
            auto neg = f.find(-e);
            RatF cn = neg == f.end() ? RatF{} : neg->second;
            if (c != cn)
                throw NotSymmetric("coefficients of z^" + std::to_string(e) + " and z^-" +
                                   std::to_string(e) + " differ: " + c.text() + " vs " +
                                   cn.text());
            out.emplace(static_cast<int>(e), c);
        } else if (e == 0) {
            out.emplace(0, c / 2);
        } else if (!f.count(-e)) {
            throw NotSymmetric("unmatched coefficient of z^" + std::to_string(e) + ": " +
                               c.text());
        }
    }
    return SymPoly::from_coeffs(std::move(out));
}

LZ lz_of_sympoly(const SymPoly& f) {
    LZ r;
    for (const auto& [n, c] : f.coeffs()) {
        if (n == 0) {
            r[0] = c * 2;
        } else {
            r[n] = c;
            r[-n] = c;
        }
    }
    return r;
}

} // namespace

SymPoly apply_sym(const QOp& op, const SymPoly& f) {
    if (op.is_zero() || f.is_zero()) return SymPoly{};
    LZ fl = lz_of_sympoly(f);
    struct Part {
        LZ num, den;
    };
    std::vector<Part> parts;
    for (const auto& [k, c] : op.terms())
        parts.push_back({lz_mul(lz_of_mpoly(c.num()), lz_shift_arg(fl, k)), lz_of_mpoly(c.den())});
    // numerator over the common denominator prod(den_j)
    LZ num, den{{0, RatF::constant(1)}};
    for (size_t i = 0; i < parts.size(); ++i) {
        LZ cof = parts[i].num;
        for (size_t j = 0; j < parts.size(); ++j)
            if (j != i) cof = lz_mul(cof, parts[j].den);
        lz_add_scaled(num, cof, RatF::constant(1), 0);
        den = lz_mul(den, parts[i].den);
    }
    return lz_to_sympoly(lz_div_exact(std::move(num), den));
}

// ----------------------------------------------------------------- QOp ----

void QOp::prune() {
    std::erase_if(t_, [](const auto& kv) { return kv.second.is_zero(); });
}

QOp QOp::identity_op() { return shift_op(0); }

QOp QOp::shift_op(int k, RatF coeff) {
    QOp op;
    if (!coeff.is_zero()) op.t_.emplace(k, std::move(coeff));
    return op;
}

QOp QOp::from_terms(std::vector<std::pair<int, RatF>> terms) {
    QOp op;
    for (auto& [k, c] : terms) {
        auto it = op.t_.find(k);
        if (it == op.t_.end())
            op.t_.emplace(k, std::move(c));
        else
            it->second += c;
    }
    op.prune();
    return op;
}

RatF QOp::coeff(int k) const {
    auto it = t_.find(k);
    return it == t_.end() ? RatF{} : it->second;
}

QOp QOp::operator+(const QOp& o) const {
    QOp r = *this;
    for (auto& [k, c] : o.t_) {
        auto it = r.t_.find(k);
        if (it == r.t_.end()) {
            r.t_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) r.t_.erase(it);
        }
    }
    return r;
}

QOp QOp::operator-() const {
    QOp r = *this;
    for (auto& [k, c] : r.t_) c = -c;
    return r;
}

QOp QOp::operator-(const QOp& o) const { return *this + (-o); }

QOp QOp::scaled(const RatF& f) const {
    QOp r;
    if (f.is_zero()) return r;
    for (auto& [k, c] : t_) r.t_.emplace(k, c * f);
    return r;
}

RatF shift_arg(const RatF& f, int k) {
    if (k == 0) return f;
    return f.subst(Core::z(), zpow(1) * spow(2 * k));
}

RatF mirror(const RatF& f) { return f.subst(Core::z(), zpow(-1)); }

QOp compose(const QOp& a, const QOp& b) {
    QOp r;
    for (auto& [j, f] : a.terms()) {
        for (auto& [k, g] : b.terms()) {
            RatF c = f * shift_arg(g, j);
            if (c.is_zero()) continue;
            r += QOp::shift_op(j + k, std::move(c));
        }
    }
    return r;
}

QOp QOp::operator*(const QOp& o) const { return compose(*this, o); }

RatF QOp::apply(const RatF& f) const {
    RatF r;
    for (auto& [k, c] : t_) r += c * shift_arg(f, k);
    return r;
}

QOp commutator(const QOp& a, const QOp& b) { return compose(a, b) - compose(b, a); }

QOp q_commutator(const QOp& a, const QOp& b) {
    return compose(a, b).scaled(spow(1)) - compose(b, a).scaled(spow(-1));
}

std::string QOp::json() const {
    nlohmann::ordered_json j;
    j["terms"] = nlohmann::ordered_json::array();
    for (auto& [k, c] : t_) {
        nlohmann::ordered_json term;
        term["shift"] = k;
        term["num"] = c.num().text();
        term["den"] = c.den().text();
        j["terms"].push_back(std::move(term));
    }
    return j.dump();
}

QOp QOp::from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bad operator JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw ParseError("operator JSON must be an object with a 'terms' array");
    std::vector<std::pair<int, RatF>> terms;
    for (auto& term : j["terms"]) {
        if (!term.contains("shift") || !term["shift"].is_number_integer())
            throw ParseError("operator term needs an integer 'shift'");
        if (!term.contains("num") || !term.contains("den"))
            throw ParseError("operator term needs 'num' and 'den' polynomial strings");
        terms.emplace_back(term["shift"].get<int>(),
                           RatF(MPoly::parse(term["num"].get<std::string>()),
                                MPoly::parse(term["den"].get<std::string>())));
    }
    return from_terms(std::move(terms));
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

bool op_equal(const QOp& a, const QOp& b, std::uint64_t probe_seed) {
    // A seeded evaluation modulo a large prime can certify inequality
    // cheaply; when the probe cannot separate the operators (or lands on a
    // pole), the canonical coefficient forms decide exactly.
    std::set<Sym> syms;
    auto collect = [&syms](const QOp& op) {
        for (const auto& [k, f] : op.terms()) {
            for (Sym s : f.num().support()) syms.insert(s);
            for (Sym s : f.den().support()) syms.insert(s);
        }
    };
    collect(a);
    collect(b);
    std::uint64_t state = probe_seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL;
    std::map<Sym, std::uint64_t> point;
    for (Sym s : syms) point[s] = splitmix64(state) % (kProbePrime - 2) + 2;
    std::set<int> shifts;
    for (const auto& [k, f] : a.terms()) shifts.insert(k);
    for (const auto& [k, f] : b.terms()) shifts.insert(k);
    for (int k : shifts) {
        try {
            if (a.coeff(k).eval_mod(point) != b.coeff(k).eval_mod(point)) return false;
        } catch (const PoleAtPoint&) {
            break; // probe point unusable; fall through to the exact check
        }
    }
    return a == b;
}

std::vector<DegreeRow> degree_profile(const QOp& op, int n_max) {
    std::vector<DegreeRow> rows;
    rows.reserve(static_cast<size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        SymPoly image = apply_sym(op, SymPoly::chi(n));
        bool changed = true;
        for (auto& [m, c] : image.coeffs()) {
            if ((m & 1) == (n & 1)) {
                changed = false;
                break;
            }
        }
        rows.push_back({n, image.degree(), changed});
    }
    return rows;
}

} // namespace qska
