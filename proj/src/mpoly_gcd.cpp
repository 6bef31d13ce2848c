#include "qska/errors.hpp"
#include "qska/mpoly.hpp"

#include <algorithm>
#include <cassert>

// Multivariate gcd over Q via the subresultant polynomial remainder
// sequence: strip rational and monomial content, pick a main variable of
// minimal degree, recurse on the coefficient contents, then run Brown's
// subresultant PRS on the primitive parts.  Inputs of the sizes produced by
// operator composition (a handful of variables, low per-variable degree)
// stay comfortably small under this scheme.

namespace qska {

namespace {

// polynomial in x, dense coefficient vector, entries x-free, trimmed
using XPoly = std::vector<MPoly>;

int deg(const XPoly& p) { return static_cast<int>(p.size()) - 1; }

void trim(XPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

XPoly to_x(const MPoly& p, Sym x) {
    XPoly r = p.coeffs_in(x);
    trim(r);
    return r;
}

MPoly from_x(const XPoly& p, Sym x) { return MPoly::assemble(x, p); }

XPoly mul_coeff(const XPoly& p, const MPoly& c) {
    XPoly r = p;
    for (auto& e : r) e *= c;
    trim(r);
    return r;
}

XPoly div_coeff(const XPoly& p, const MPoly& c) {
    XPoly r = p;
    for (auto& e : r) {
        auto q = e.divide_exact(c);
        assert(q && "subresultant invariant violated: inexact division");
        e = std::move(*q);
    }
    return r;
}

XPoly sub(const XPoly& a, const XPoly& b) {
    XPoly r = a;
    if (b.size() > r.size()) r.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

// Pseudo-remainder: returns lc(b)^(deg a - deg b + 1) * a  mod  b.
XPoly prem(XPoly a, const XPoly& b) {
    const MPoly& lb = b.back();
    int delta = deg(a) - deg(b);
    int steps = 0;
    while (!a.empty() && deg(a) >= deg(b)) {
        int shift = deg(a) - deg(b);
        MPoly la = a.back();
        // a = lb*a - la * x^shift * b
        XPoly scaled(static_cast<size_t>(shift), MPoly{});
        for (const auto& c : b) scaled.push_back(c * la);
        a = sub(mul_coeff(a, lb), scaled);
        ++steps;
    }
    // pad the scaling so the total factor is exactly lb^(delta+1)
    for (; steps < delta + 1; ++steps) a = mul_coeff(a, lb);
    return a;
}

// content of p wrt x: gcd of the x-free coefficients
MPoly content_x(const XPoly& p) {
    MPoly g;
    // start from the shortest coefficient; stop once the gcd hits 1
    std::vector<const MPoly*> cs;
    for (auto& c : p)
        if (!c.is_zero()) cs.push_back(&c);
    std::sort(cs.begin(), cs.end(),
              [](const MPoly* a, const MPoly* b) { return a->terms().size() < b->terms().size(); });
    for (const MPoly* c : cs) {
        g = MPoly::gcd(g, *c);
        if (g.is_one()) break;
    }
    return g;
}

// common monomial factor of all terms
Mono mono_content(const MPoly& p) {
    Mono m = p.terms().front().first;
    for (auto& [mo, c] : p.terms()) {
        m = Mono::gcd(m, mo);
        if (m.is_one()) break;
    }
    return m;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Dense univariate image of p in x with every other variable evaluated at
// `point`, coefficients mod the probe prime.  Index = exponent of x.
std::vector<std::uint64_t> image_mod(const MPoly& p, Sym x,
                                     const std::map<Sym, std::uint64_t>& point) {
    std::vector<std::uint64_t> img(static_cast<size_t>(p.degree_in(x)) + 1, 0);
    for (const auto& [mono, coeff] : p.terms()) {
        std::uint64_t v = mod_p(coeff);
        std::int64_t xe = 0;
        for (const auto& [s, e] : mono.entries()) {
            if (s == x)
                xe = e;
            else
                v = mul_mod(v, pow_mod(point.at(s), static_cast<std::uint64_t>(e)));
        }
        img[static_cast<size_t>(xe)] = (img[static_cast<size_t>(xe)] + v) % kProbePrime;
    }
    while (!img.empty() && img.back() == 0) img.pop_back();
    return img;
}

// Degree of gcd of two univariate polynomials mod the probe prime.
int gcd_degree_mod(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        // reduce a mod b (b made monic on the fly)
        std::uint64_t li = inv_mod(b.back());
        while (a.size() >= b.size()) {
            std::uint64_t f = mul_mod(a.back(), li);
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) {
                std::uint64_t s = mul_mod(f, b[i]);
                a[off + i] = (a[off + i] + kProbePrime - s) % kProbePrime;
            }
            while (!a.empty() && a.back() == 0) a.pop_back();
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

} // namespace

MPoly MPoly::gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    MPoly A = a.primitive_part();
    MPoly B = b.primitive_part();
    if (A.is_constant() || B.is_constant()) return MPoly::constant(1);
    if (A == B) return A;

    // split off the common monomial factor
    Mono ma = mono_content(A), mb = mono_content(B);
    Mono mg = Mono::gcd(ma, mb);
    if (!ma.is_one()) A = *A.divide_exact(MPoly::term(rat(1), ma));
    if (!mb.is_one()) B = *B.divide_exact(MPoly::term(rat(1), mb));
    MPoly mono_part = MPoly::term(rat(1), mg);
    if (A.is_constant() || B.is_constant()) return mono_part;

    // main variable: common variable minimizing the smaller degree
    std::vector<Sym> sa = A.support(), sb = B.support();
    std::vector<Sym> common;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                          std::back_inserter(common));
    if (common.empty()) return mono_part;
    Sym x = common.front();
    std::int64_t best = INT64_MAX;
    for (Sym s : common) {
        std::int64_t d = std::min(A.degree_in(s), B.degree_in(s));
        if (d < best) {
            best = d;
            x = s;
        }
    }

    // one of them divides the other?  cheap and frequent for our inputs
    const long probe_cap = 512;
    if (A.divide_exact(B, probe_cap)) return mono_part * B;
    if (B.divide_exact(A, probe_cap)) return mono_part * A;

    // Modular probe: evaluate every variable but x at a fixed pseudo-random
    // point and take the univariate gcd mod p.  When both images keep full
    // degree, the image of the true gcd also keeps full degree, so an image
    // gcd of degree zero *proves* the gcd is x-free and the subresultant
    // sequence can be skipped: only coefficient content can be shared.
    {
        std::uint64_t state = 0x7a11f0d3c5b92e47ULL;
        bool x_free = false;
        for (int attempt = 0; attempt < 2 && !x_free; ++attempt) {
            std::map<Sym, std::uint64_t> point;
            for (Sym s : sa)
                if (s != x) point[s] = splitmix64(state) % (kProbePrime - 2) + 2;
            for (Sym s : sb)
                if (s != x && !point.count(s)) point[s] = splitmix64(state) % (kProbePrime - 2) + 2;
            try {
                auto ia = image_mod(A, x, point);
                auto ib = image_mod(B, x, point);
                if (static_cast<std::int64_t>(ia.size()) - 1 != A.degree_in(x) ||
                    static_cast<std::int64_t>(ib.size()) - 1 != B.degree_in(x))
                    continue; // leading coefficient vanished: probe inconclusive
                if (gcd_degree_mod(std::move(ia), std::move(ib)) == 0) x_free = true;
            } catch (const PoleAtPoint&) {
                continue; // coefficient denominator hit the prime: retry
            }
        }
        if (x_free) {
            XPoly Ax = to_x(A, x), Bx = to_x(B, x);
            return mono_part * MPoly::gcd(content_x(Ax), content_x(Bx));
        }
    }

    XPoly Ax = to_x(A, x), Bx = to_x(B, x);
    MPoly ca = content_x(Ax), cb = content_x(Bx);
    MPoly c = MPoly::gcd(ca, cb);
    if (!ca.is_one()) Ax = div_coeff(Ax, ca);
    if (!cb.is_one()) Bx = div_coeff(Bx, cb);
    if (deg(Ax) < deg(Bx)) std::swap(Ax, Bx);

    // Brown's subresultant PRS
    MPoly g = MPoly::constant(1), h = MPoly::constant(1);
    for (;;) {
        int d = deg(Ax) - deg(Bx);
        XPoly R = prem(Ax, Bx);
        if (R.empty()) break;
        if (deg(R) == 0) {
            // gcd is free of x
            return mono_part * c;
        }
        Ax = std::move(Bx);
        MPoly divisor = g * h.pow(d);
        Bx = div_coeff(R, divisor);
        g = Ax.empty() ? MPoly::constant(1) : Ax.back();
        if (d > 0) {
            auto hq = g.pow(d).divide_exact(h.pow(d - 1));
            assert(hq && "subresultant h-update failed");
            h = std::move(*hq);
        }
    }
    // primitive part of the last nonzero remainder wrt x
    MPoly cg = content_x(Bx);
    XPoly G = cg.is_one() ? Bx : div_coeff(Bx, cg);
    return mono_part * (c * from_x(G, x)).primitive_part();
}

} // namespace qska
