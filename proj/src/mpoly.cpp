#include "qska/mpoly.hpp"

#include "qska/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace qska {

// ---------------------------------------------------------------- Mono ----

Mono::Mono(Sym s, std::int64_t e) {
    if (e != 0) v_.push_back({s, e});
}

Mono Mono::of(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    Mono m;
    for (auto& [s, e] : entries) {
        if (e == 0) continue;
        if (!m.v_.empty() && m.v_.back().first == s)
            m.v_.back().second += e;
        else
            m.v_.push_back({s, e});
    }
    std::erase_if(m.v_, [](const Entry& en) { return en.second == 0; });
    return m;
}

std::int64_t Mono::total_degree() const {
    std::int64_t d = 0;
    for (auto& [s, e] : v_) d += e;
    return d;
}

std::int64_t Mono::degree_in(Sym s) const {
    for (auto& [sy, e] : v_)
        if (sy == s) return e;
    return 0;
}

Mono Mono::operator*(const Mono& o) const {
    Mono r;
    r.v_.reserve(v_.size() + o.v_.size());
    size_t i = 0, j = 0;
    while (i < v_.size() && j < o.v_.size()) {
        if (v_[i].first == o.v_[j].first) {
            std::int64_t e = v_[i].second + o.v_[j].second;
            if (e != 0) r.v_.push_back({v_[i].first, e});
            ++i, ++j;
        } else if (v_[i].first < o.v_[j].first) {
            r.v_.push_back(v_[i++]);
        } else {
            r.v_.push_back(o.v_[j++]);
        }
    }
    for (; i < v_.size(); ++i) r.v_.push_back(v_[i]);
    for (; j < o.v_.size(); ++j) r.v_.push_back(o.v_[j]);
    return r;
}

Mono Mono::pow(std::int64_t e) const {
    Mono r;
    if (e == 0) return r;
    r.v_ = v_;
    for (auto& [s, x] : r.v_) x *= e;
    return r;
}

bool Mono::divides(const Mono& o) const {
    size_t j = 0;
    for (auto& [s, e] : v_) {
        while (j < o.v_.size() && o.v_[j].first < s) ++j;
        if (j >= o.v_.size() || o.v_[j].first != s || o.v_[j].second < e) return false;
    }
    return true;
}

Mono Mono::divide(const Mono& o) const {
    // o / *this
    Mono r;
    size_t i = 0;
    for (auto& [s, e] : o.v_) {
        std::int64_t sub = 0;
        while (i < v_.size() && v_[i].first < s) ++i;
        if (i < v_.size() && v_[i].first == s) sub = v_[i].second;
        if (e - sub != 0) r.v_.push_back({s, e - sub});
    }
    return r;
}

Mono Mono::gcd(const Mono& a, const Mono& b) {
    Mono r;
    size_t i = 0, j = 0;
    while (i < a.v_.size() && j < b.v_.size()) {
        if (a.v_[i].first == b.v_[j].first) {
            r.v_.push_back({a.v_[i].first, std::min(a.v_[i].second, b.v_[j].second)});
            ++i, ++j;
        } else if (a.v_[i].first < b.v_[j].first) {
            ++i;
        } else {
            ++j;
        }
    }
    return r;
}

int Mono::cmp(const Mono& a, const Mono& b) {
    std::int64_t ta = a.total_degree(), tb = b.total_degree();
    if (ta != tb) return ta < tb ? -1 : 1;
    size_t i = 0, j = 0;
    while (i < a.v_.size() && j < b.v_.size()) {
        if (a.v_[i].first == b.v_[j].first) {
            if (a.v_[i].second != b.v_[j].second)
                return a.v_[i].second < b.v_[j].second ? -1 : 1;
            ++i, ++j;
        } else if (a.v_[i].first < b.v_[j].first) {
            return 1; // a carries an earlier symbol with positive exponent
        } else {
            return -1;
        }
    }
    if (i < a.v_.size()) return 1;
    if (j < b.v_.size()) return -1;
    return 0;
}

namespace {
struct MonoGreater {
    bool operator()(const Mono& a, const Mono& b) const { return Mono::cmp(a, b) > 0; }
};
} // namespace

// --------------------------------------------------------------- MPoly ----

void MPoly::normalize() {
    std::sort(t_.begin(), t_.end(), [](const Term& a, const Term& b) {
        return Mono::cmp(a.first, b.first) > 0;
    });
    std::vector<Term> out;
    out.reserve(t_.size());
    for (auto& term : t_) {
        if (!out.empty() && out.back().first == term.first)
            out.back().second += term.second;
        else
            out.push_back(std::move(term));
    }
    std::erase_if(out, [](const Term& t) { return t.second == 0; });
    t_ = std::move(out);
}

MPoly MPoly::constant(const Rat& c) {
    MPoly p;
    if (c != 0) p.t_.push_back({Mono(), c});
    return p;
}

MPoly MPoly::sym(Sym s, std::int64_t e) {
    if (e < 0) throw ParseError("negative exponent in polynomial monomial");
    MPoly p;
    p.t_.push_back({Mono(s, e), rat(1)});
    return p;
}

MPoly MPoly::term(const Rat& c, Mono m) {
    MPoly p;
    if (c != 0) p.t_.push_back({std::move(m), c});
    return p;
}

MPoly MPoly::from_terms(std::vector<Term> terms) {
    MPoly p;
    p.t_ = std::move(terms);
    p.normalize();
    return p;
}

bool MPoly::is_one() const {
    return t_.size() == 1 && t_[0].first.is_one() && t_[0].second == 1;
}

Rat MPoly::constant_value() const {
    for (auto& [m, c] : t_)
        if (m.is_one()) return c;
    return rat(0);
}

std::int64_t MPoly::total_degree() const {
    if (t_.empty()) return -1;
    return t_.front().first.total_degree(); // graded order: leading term is maximal
}

std::int64_t MPoly::degree_in(Sym s) const {
    if (t_.empty()) return -1;
    std::int64_t d = 0;
    for (auto& [m, c] : t_) d = std::max(d, m.degree_in(s));
    return d;
}

std::int64_t MPoly::low_degree_in(Sym s) const {
    if (t_.empty()) return 0;
    std::int64_t d = INT64_MAX;
    for (auto& [m, c] : t_) d = std::min(d, m.degree_in(s));
    return d;
}

bool MPoly::depends_on(Sym s) const {
    for (auto& [m, c] : t_)
        if (m.contains(s)) return true;
    return false;
}

std::vector<Sym> MPoly::support() const {
    std::vector<Sym> out;
    for (auto& [m, c] : t_)
        for (auto& [s, e] : m.entries()) out.push_back(s);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r;
    r.t_.reserve(t_.size() + o.t_.size());
    size_t i = 0, j = 0;
    while (i < t_.size() && j < o.t_.size()) {
        int c = Mono::cmp(t_[i].first, o.t_[j].first);
        if (c == 0) {
            Rat sum = t_[i].second + o.t_[j].second;
            if (sum != 0) r.t_.push_back({t_[i].first, std::move(sum)});
            ++i, ++j;
        } else if (c > 0) {
            r.t_.push_back(t_[i++]);
        } else {
            r.t_.push_back(o.t_[j++]);
        }
    }
    for (; i < t_.size(); ++i) r.t_.push_back(t_[i]);
    for (; j < o.t_.size(); ++j) r.t_.push_back(o.t_[j]);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
    if (t_.empty() || o.t_.empty()) return {};
    // single-term fast paths keep compositions cheap
    if (t_.size() == 1) {
        MPoly r = o;
        for (auto& [m, c] : r.t_) {
            m = m * t_[0].first;
            c *= t_[0].second;
        }
        return r; // multiplying by a monomial preserves strict term order
    }
    if (o.t_.size() == 1) return o * *this;
    std::map<Mono, Rat, MonoGreater> acc;
    for (auto& [ma, ca] : t_)
        for (auto& [mb, cb] : o.t_) {
            Mono m = ma * mb;
            auto [it, fresh] = acc.try_emplace(std::move(m), ca * cb);
            if (!fresh) it->second += ca * cb;
        }
    MPoly r;
    r.t_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) r.t_.push_back({m, c});
    return r;
}

MPoly MPoly::operator*(const Rat& c) const {
    if (c == 0) return {};
    MPoly r = *this;
    for (auto& [m, co] : r.t_) co *= c;
    return r;
}

MPoly MPoly::pow(std::int64_t e) const {
    if (e < 0) throw ParseError("negative power of a polynomial");
    MPoly r = constant(1);
    MPoly base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

Rat MPoly::content() const {
    if (t_.empty()) return rat(0);
    Int g = 0, l = 1;
    for (auto& [m, c] : t_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rat r(g, l);
    r.canonicalize();
    if (t_.front().second < 0) r = -r;
    return r;
}

MPoly MPoly::primitive_part() const {
    if (t_.empty()) return {};
    Rat c = content();
    MPoly r = *this;
    for (auto& [m, co] : r.t_) co /= c;
    return r;
}

std::vector<MPoly> MPoly::coeffs_in(Sym s) const {
    std::vector<MPoly> out(static_cast<size_t>(std::max<std::int64_t>(degree_in(s), 0)) + 1);
    for (auto& [m, c] : t_) {
        std::int64_t e = m.degree_in(s);
        std::vector<Mono::Entry> rest;
        for (auto& en : m.entries())
            if (en.first != s) rest.push_back(en);
        out[static_cast<size_t>(e)].t_.push_back({Mono::of(std::move(rest)), c});
    }
    for (auto& p : out) p.normalize();
    return out;
}

MPoly MPoly::assemble(Sym s, const std::vector<MPoly>& coeffs) {
    MPoly r;
    for (size_t k = 0; k < coeffs.size(); ++k)
        r += coeffs[k] * MPoly::sym(s, static_cast<std::int64_t>(k));
    return r;
}

MPoly MPoly::coeff_of(Sym s, std::int64_t k) const {
    MPoly r;
    for (auto& [m, c] : t_) {
        if (m.degree_in(s) != k) continue;
        std::vector<Mono::Entry> rest;
        for (auto& en : m.entries())
            if (en.first != s) rest.push_back(en);
        r.t_.push_back({Mono::of(std::move(rest)), c});
    }
    r.normalize();
    return r;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& d, long max_steps) const {
    if (d.is_zero()) return std::nullopt;
    if (is_zero()) return MPoly{};
    if (d.t_.size() == 1) {
        const auto& [dm, dc] = d.t_[0];
        MPoly q;
        q.t_.reserve(t_.size());
        for (auto& [m, c] : t_) {
            if (!dm.divides(m)) return std::nullopt;
            q.t_.push_back({dm.divide(m), c / dc});
        }
        return q;
    }
    MPoly r = *this, q;
    const Mono& dm = d.leading().first;
    const Rat& dc = d.leading().second;
    long steps = 0;
    while (!r.is_zero()) {
        if (max_steps >= 0 && ++steps > max_steps) return std::nullopt;
        const Mono& rm = r.leading().first;
        if (!dm.divides(rm)) return std::nullopt;
        MPoly t = MPoly::term(r.leading().second / dc, dm.divide(rm));
        q += t;
        r -= t * d;
    }
    return q;
}

Rat MPoly::specialize(const std::map<Sym, Rat>& assignment) const {
    Rat total = 0;
    for (auto& [m, c] : t_) {
        Rat v = c;
        for (auto& [s, e] : m.entries()) {
            auto it = assignment.find(s);
            if (it == assignment.end()) throw MissingSymbol(s.name());
            Rat p = 1;
            Rat base = it->second;
            for (std::int64_t k = 0; k < e; ++k) p *= base;
            v *= p;
        }
        total += v;
    }
    return total;
}

MPoly MPoly::specialize_partial(const std::map<Sym, Rat>& assignment) const {
    std::vector<Term> out;
    out.reserve(t_.size());
    for (auto& [m, c] : t_) {
        Rat v = c;
        std::vector<Mono::Entry> rest;
        for (auto& [s, e] : m.entries()) {
            auto it = assignment.find(s);
            if (it == assignment.end()) {
                rest.push_back({s, e});
                continue;
            }
            Rat p = 1;
            for (std::int64_t k = 0; k < e; ++k) p *= it->second;
            v *= p;
        }
        out.push_back({Mono::of(std::move(rest)), v});
    }
    return from_terms(std::move(out));
}

std::uint64_t MPoly::eval_mod(const std::map<Sym, std::uint64_t>& point) const {
    std::uint64_t total = 0;
    for (auto& [m, c] : t_) {
        std::uint64_t v = mod_p(c);
        for (auto& [s, e] : m.entries()) {
            auto it = point.find(s);
            if (it == point.end()) throw MissingSymbol(s.name());
            v = mul_mod(v, pow_mod(it->second, static_cast<std::uint64_t>(e)));
        }
        total = (total + v) % kProbePrime;
    }
    return total;
}

MPoly MPoly::subst_monomial(Sym var, const Rat& coef, const Mono& mono) const {
    std::vector<Term> out;
    out.reserve(t_.size());
    for (auto& [m, c] : t_) {
        std::int64_t e = m.degree_in(var);
        if (e == 0) {
            out.push_back({m, c});
            continue;
        }
        std::vector<Mono::Entry> rest;
        for (auto& en : m.entries())
            if (en.first != var) rest.push_back(en);
        Rat v = c;
        Rat p = 1;
        for (std::int64_t k = 0; k < e; ++k) p *= coef;
        v *= p;
        out.push_back({Mono::of(std::move(rest)) * mono.pow(e), v});
    }
    return from_terms(std::move(out));
}

// ---------------------------------------------------------- text format ---

std::string MPoly::text() const {
    if (t_.empty()) return "0/1";
    std::string out;
    bool first = true;
    for (auto& [m, c] : t_) {
        if (!first) out += " + ";
        first = false;
        out += rat_to_text(c);
        for (auto& [s, e] : m.entries()) {
            out += "*";
            out += s.name();
            out += "^";
            out += std::to_string(e);
        }
    }
    return out;
}

namespace {

struct Lexer {
    std::string_view s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    char take() {
        skip_ws();
        return s[i++];
    }
    std::string ident() {
        skip_ws();
        size_t b = i;
        while (i < s.size() &&
               (isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        if (b == i) throw ParseError("expected identifier in polynomial text");
        return std::string(s.substr(b, i - b));
    }
    Int integer() {
        skip_ws();
        size_t b = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (b == i || (i - b == 1 && !isdigit(static_cast<unsigned char>(s[b]))))
            throw ParseError("expected integer in polynomial text");
        return Int(std::string(s.substr(b, i - b)));
    }
};

} // namespace

MPoly MPoly::parse(std::string_view text) {
    Lexer lx{text};
    std::vector<Term> terms;
    if (lx.done()) throw ParseError("empty polynomial text");
    while (!lx.done()) {
        int sign = 1;
        while (lx.peek() == '+' || lx.peek() == '-') {
            if (lx.take() == '-') sign = -sign;
        }
        Rat coef = rat(sign);
        std::vector<Mono::Entry> exps;
        bool any = false;
        for (;;) {
            char c = lx.peek();
            if (isdigit(static_cast<unsigned char>(c))) {
                Int num = lx.integer();
                Int den = 1;
                if (lx.peek() == '/') {
                    lx.take();
                    den = lx.integer();
                    if (den == 0) throw ParseError("zero denominator in coefficient");
                }
                Rat r(num, den);
                r.canonicalize();
                coef *= r;
                any = true;
            } else if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string name = lx.ident();
                std::int64_t e = 1;
                if (lx.peek() == '^') {
                    lx.take();
                    Int ei = lx.integer();
                    if (ei < 0) throw ParseError("negative exponent in polynomial text");
                    e = ei.get_si();
                }
                exps.push_back({Sym::intern(name), e});
                any = true;
            } else {
                throw ParseError("unexpected character in polynomial text: '" +
                                 std::string(1, c) + "'");
            }
            if (lx.peek() == '*') {
                lx.take();
                continue;
            }
            break;
        }
        if (!any) throw ParseError("empty term in polynomial text");
        terms.push_back({Mono::of(std::move(exps)), coef});
        if (lx.done()) break;
        char c = lx.peek();
        if (c != '+' && c != '-')
            throw ParseError("expected '+' between polynomial terms");
    }
    return from_terms(std::move(terms));
}

} // namespace qska
