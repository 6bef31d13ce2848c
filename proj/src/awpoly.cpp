#include "qska/awpoly.hpp"

#include "qska/errors.hpp"

#include <map>

namespace qska {

RatF q_pochhammer(const RatF& x, const RatF& base, int n) {
    RatF acc = RatF::constant(1);
    RatF power = RatF::constant(1);
    for (int j = 0; j < n; ++j) {
        acc = acc * (1 - x * power);
        power = power * base;
    }
    return acc;
}

SymPoly aw_polynomial(int n, const catalog::AWParams& p) {
    if (n < 0) throw Error("polynomial degree must be non-negative");
    const RatF base = qpow(p.r);

    const RatF pre_ab = q_pochhammer(p.a * p.b, base, n);
    const RatF pre_ac = q_pochhammer(p.a * p.c, base, n);
    const RatF pre_ad = q_pochhammer(p.a * p.d, base, n);
    if (p.a.is_zero() || pre_ab.is_zero() || pre_ac.is_zero() || pre_ad.is_zero())
        throw NormalizationVanishes(
            "normalizing prefactor vanishes at these parameter values (degree " +
            std::to_string(n) + ")");

    // Terminating basic series, walked term by term.  The grid variable only
    // ever appears through the symmetric factor (1 - a q^k z)(1 - a q^k / z),
    // so the partial products are kept as Laurent coefficient maps and the
    // rational-function work stays inside the parameter symbols.
    const RatF top1 = qpow(-static_cast<std::int64_t>(n) * p.r);   // q^(-rn)
    const RatF top2 = p.a * p.b * p.c * p.d * qpow((n - 1) * p.r); // abcd q^(r(n-1))
    RatF scalar = pre_ab * pre_ac * pre_ad * p.a.pow(-n);          // degree-0 term
    std::map<std::int64_t, RatF> zpart{{0, RatF::constant(1)}};    // (az,a/z;q^r)_k
    std::map<std::int64_t, RatF> total;
    RatF power = RatF::constant(1); // base^k
    for (int k = 0;; ++k) {
        for (const auto& [e, c] : zpart) {
            RatF w = c * scalar;
            if (w.is_zero()) continue;
            auto it = total.find(e);
            if (it == total.end()) {
                total.emplace(e, std::move(w));
            } else {
                it->second += w;
                if (it->second.is_zero()) total.erase(it);
            }
        }
        if (k == n) break;
        // ratio of consecutive series terms
        scalar = scalar * ((1 - top1 * power) * (1 - top2 * power) * base) /
                 ((1 - p.a * p.b * power) * (1 - p.a * p.c * power) * (1 - p.a * p.d * power) *
                  (1 - base * power));
        // multiply the z-part by (1 - a q^k z)(1 - a q^k / z)
        const RatF g = p.a * power;
        std::map<std::int64_t, RatF> next;
        for (const auto& [e, c] : zpart) {
            for (const auto& [off, fc] : {std::pair<std::int64_t, RatF>{0, 1 + g * g},
                                          {1, -g},
                                          {-1, -g}}) {
                RatF w = c * fc;
                if (w.is_zero()) continue;
                auto it = next.find(e + off);
                if (it == next.end()) {
                    next.emplace(e + off, std::move(w));
                } else {
                    it->second += w;
                    if (it->second.is_zero()) next.erase(it);
                }
            }
        }
        zpart = std::move(next);
        power = power * base;
    }
    std::map<int, RatF> out;
    for (const auto& [e, c] : total) {
        if (e > 0)
            out.emplace(static_cast<int>(e), c);
        else if (e == 0)
            out.emplace(0, c / 2);
    }
    return SymPoly::from_coeffs(std::move(out));
}

SymPoly aw_polynomial_monic(int n, const catalog::AWParams& p) {
    const catalog::AWParams gen = catalog::AWParams::generic(p.r);
    SymPoly generic = aw_polynomial(n, gen);
    const RatF lead = n == 0 ? generic.unit_coeff(0) : generic.chi_coeff(n);
    if (lead.is_zero()) throw NormalizationVanishes("generic leading coefficient is zero");

    const bool already_generic = p.a == gen.a && p.b == gen.b && p.c == gen.c && p.d == gen.d;
    std::map<int, RatF> out;
    for (const auto& [m, coeff] : generic.coeffs()) {
        RatF v = coeff / lead;
        if (!already_generic) {
            try {
                v = v.subst(Core::a(), p.a)
                        .subst(Core::b(), p.b)
                        .subst(Core::c(), p.c)
                        .subst(Core::d(), p.d);
            } catch (const DenominatorVanishes&) {
                throw NormalizationVanishes(
                    "monic coefficient has a pole at these parameter values (degree " +
                    std::to_string(n) + ")");
            }
        }
        if (!v.is_zero()) out.emplace(m, std::move(v));
    }
    return SymPoly::from_coeffs(std::move(out));
}

namespace {

// Scalar sigma matched at the top degree of the reference polynomial; the
// caller decides what a nonzero residual means.
RatF matched_scalar(const SymPoly& image, const SymPoly& ref) {
    const int d = ref.degree();
    const RatF ref_top = d == 0 ? ref.unit_coeff(0) : ref.chi_coeff(d);
    const RatF img_top = d == 0 ? image.unit_coeff(0) : image.chi_coeff(d);
    return img_top / ref_top;
}

} // namespace

EigenResult eigencheck(const QOp& op, const SymPoly& f) {
    if (f.is_zero()) throw Error("eigencheck needs a nonzero polynomial");
    const SymPoly image = apply_sym(op, f);
    EigenResult r;
    r.eigenvalue = image.is_zero() ? RatF() : matched_scalar(image, f);
    r.residual = image - f * r.eigenvalue;
    r.is_eigen = r.residual.is_zero();
    return r;
}

PropResult proportionality_check(const QOp& op, const SymPoly& f, const SymPoly& g) {
    if (g.is_zero()) throw Error("proportionality reference must be nonzero");
    const SymPoly image = apply_sym(op, f);
    PropResult r;
    r.scalar = image.is_zero() ? RatF() : matched_scalar(image, g);
    r.residual = image - g * r.scalar;
    r.proportional = r.residual.is_zero();
    return r;
}

RatF require_proportional(const QOp& op, const SymPoly& f, const SymPoly& g) {
    PropResult r = proportionality_check(op, f, g);
    if (!r.proportional)
        throw NotProportional("image is not proportional to the reference", r.residual.text());
    return r.scalar;
}

RepMatrix::RepMatrix(int n) : n_(n), e_(static_cast<size_t>(n) * n) {
    if (n <= 0) throw Error("matrix dimension must be positive");
}

RepMatrix RepMatrix::identity(int n) { return scalar(n, RatF::constant(1)); }

RepMatrix RepMatrix::scalar(int n, const RatF& c) {
    RepMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = c;
    return m;
}

RepMatrix RepMatrix::operator+(const RepMatrix& o) const {
    if (n_ != o.n_) throw Error("matrix dimension mismatch");
    RepMatrix m(n_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] + o.e_[i];
    return m;
}

RepMatrix RepMatrix::operator-(const RepMatrix& o) const {
    if (n_ != o.n_) throw Error("matrix dimension mismatch");
    RepMatrix m(n_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] - o.e_[i];
    return m;
}

RepMatrix RepMatrix::operator*(const RepMatrix& o) const {
    if (n_ != o.n_) throw Error("matrix dimension mismatch");
    RepMatrix m(n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < n_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                m.at(i, j) = m.at(i, j) + at(i, k) * o.at(k, j);
            }
        }
    return m;
}

RepMatrix RepMatrix::scaled(const RatF& c) const {
    RepMatrix m(n_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] * c;
    return m;
}

bool RepMatrix::is_zero() const {
    for (const auto& v : e_)
        if (!v.is_zero()) return false;
    return true;
}

std::string RepMatrix::text() const {
    std::string out;
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            if (j) out += " | ";
            out += at(i, j).text();
        }
        out += '\n';
    }
    return out;
}

RepMatrix matrix_rep(const QOp& op, int n) {
    RepMatrix m(n);
    for (int j = 0; j < n; ++j) {
        const SymPoly basis_j =
            j == 0 ? SymPoly::from_coeffs({{0, RatF::constant(1, 2)}}) : SymPoly::chi(j);
        const SymPoly image = apply_sym(op, basis_j);
        if (image.degree() >= n) {
            throw NotInvariant("operator leaks outside the dimension-" + std::to_string(n) +
                                   " span at basis degree " + std::to_string(j),
                               j, image.chi_coeff(image.degree()).text());
        }
        for (int i = 0; i < n; ++i) {
            const RatF c = i == 0 ? image.unit_coeff(0) : image.chi_coeff(i);
            if (!c.is_zero()) m.at(i, j) = c;
        }
    }
    return m;
}

} // namespace qska
