#include "qska/catalog.hpp"

#include "qska/errors.hpp"

#include <utility>

namespace qska::catalog {

namespace {

RatF zsym() { return RatF::sym(Core::z()); }

// z - 1/z, the denominator shared by the divided-difference operators.
RatF vden() { return zsym() - zpow(-1); }

// q - 1/q.
RatF qdiff() { return qpow(1) - qpow(-1); }

// All two-term operators in the catalog are covariant under z -> 1/z: the
// coefficient of the down-shift is the mirror image of the coefficient of
// the up-shift (the sign carried by z - 1/z flips automatically).
QOp mirror_pair(int k, const RatF& cplus) {
    return QOp::from_terms({{k, cplus}, {-k, mirror(cplus)}});
}

} // namespace

QOp Tplus() { return QOp::shift_op(1); }
QOp Tminus() { return QOp::shift_op(-1); }
QOp Id() { return QOp::identity_op(); }

QOp Y() { return mirror_pair(1, vden().inv()); }
QOp U() { return mirror_pair(1, zsym() / vden()); }
QOp V() { return mirror_pair(1, -zpow(-1) / vden()); }

QOp Xop() { return QOp::shift_op(0, zsym() + zpow(-1)); }

QOp hatA(const RatF& t) { return QOp::shift_op(1, t.inv()); }

QOp hatB(const RatF& t) {
    const RatF pre = zsym() / (2 * qdiff());
    return QOp::from_terms({{-1, pre * t.pow(2)}, {1, -pre * t.pow(-2)}});
}

QOp hatC() {
    const RatF pre = 2 / (qdiff() * zsym());
    return QOp::from_terms({{1, pre}, {-1, -pre}});
}

QOp hatD(const RatF& t) { return QOp::shift_op(-1, t); }

QOp A(const RatF& t) { return U().scaled(t.inv()); }

QOp B(const RatF& t) {
    const RatF cplus = -(t.pow(2) * zpow(-2) + t.pow(-2) * zpow(2) + qpow(1) + qpow(-1)) /
                       (2 * qdiff() * vden());
    return mirror_pair(1, cplus);
}

QOp C() { return Y().scaled(2 / qdiff()); }

QOp D(const RatF& t) { return V().scaled(t); }

QOp M(const RatF& alpha, const RatF& beta, const RatF& gamma) {
    return Y().scaled(alpha) + U().scaled(beta) + V().scaled(gamma);
}

RatF F_coeff(const RatF& a, const RatF& b, const RatF& gamma) {
    const RatF z = zsym();
    return gamma * (1 - a * z) * (1 - b * z) / (1 - z * z);
}

AWParams AWParams::generic(int r) {
    return AWParams{RatF::sym(Core::a()), RatF::sym(Core::b()), RatF::sym(Core::c()),
                    RatF::sym(Core::d()), r};
}

RatF aw_coefficient(const AWParams& p) {
    const RatF z = zsym();
    const RatF z2 = z * z;
    return (1 - p.a * z) * (1 - p.b * z) * (1 - p.c * z) * (1 - p.d * z) /
           ((1 - z2) * (1 - qpow(p.r) * z2));
}

QOp AW(const AWParams& p) {
    const RatF coeff = aw_coefficient(p);
    return mirror_pair(p.r, coeff) + QOp::shift_op(0, -(coeff + mirror(coeff)));
}

RatF aw_eigenvalue(const AWParams& p, int n) {
    const std::int64_t r = p.r;
    return qpow(-r * n) * (1 - qpow(r * n)) * (1 - p.a * p.b * p.c * p.d * qpow(r * (n - 1)));
}

QOp K0(const RatF& a, const RatF& b) {
    const AWParams p{a, b, spow(1), -spow(1), 1};
    return AW(p) + QOp::shift_op(0, 1 - a * b);
}

QOp K1() { return Xop(); }

QOp K2(const RatF& a, const RatF& b) { return q_commutator(K0(a, b), K1()); }

QOp mu(const RatF& a, const RatF& b) {
    const RatF z = zsym();
    const RatF cplus = -zpow(-1) * (1 - a * qpow(-1) * z) * (1 - b * qpow(-1) * z) / vden();
    return mirror_pair(1, cplus);
}

QOp tau() { return Y(); }

QOp tau_star(const RatF& a, const RatF& b, const RatF& c, const RatF& d) {
    const RatF z = zsym();
    const RatF cplus =
        qpow(-1) * zpow(-2) * (1 - a * z) * (1 - b * z) * (1 - c * z) * (1 - d * z) / vden();
    return mirror_pair(1, cplus);
}

QOp L() { return Y().scaled(qdiff().inv()); }

QOp M1() {
    const RatF cplus = -(qpow(-1) * zsym() + qpow(1) * zpow(-1)) / (qdiff() * vden());
    return mirror_pair(1, cplus);
}

QOp M2() { return L().scaled(zsym() + zpow(-1)); }

QOp R1() { return M1().scaled(zsym() + zpow(-1)); }

QOp R2() {
    const RatF x = zsym() + zpow(-1);
    const RatF cplus = (-qpow(2) * x * zpow(-1) / vden() - zpow(-1)) / qdiff();
    return mirror_pair(1, cplus);
}

namespace {

struct Entry {
    const char* name;
    QOp (*build)();
};

RatF gen_t() { return RatF::sym(Core::t()); }
RatF gen_a() { return RatF::sym(Core::a()); }
RatF gen_b() { return RatF::sym(Core::b()); }
RatF gen_c() { return RatF::sym(Core::c()); }
RatF gen_d() { return RatF::sym(Core::d()); }

const Entry kEntries[] = {
    {"Tplus", [] { return Tplus(); }},
    {"Tminus", [] { return Tminus(); }},
    {"I", [] { return Id(); }},
    {"Y", [] { return Y(); }},
    {"U", [] { return U(); }},
    {"V", [] { return V(); }},
    {"x", [] { return Xop(); }},
    {"L", [] { return L(); }},
    {"M1", [] { return M1(); }},
    {"M2", [] { return M2(); }},
    {"R1", [] { return R1(); }},
    {"R2", [] { return R2(); }},
    {"hatA", [] { return hatA(gen_t()); }},
    {"hatB", [] { return hatB(gen_t()); }},
    {"hatC", [] { return hatC(); }},
    {"hatD", [] { return hatD(gen_t()); }},
    {"A", [] { return A(gen_t()); }},
    {"B", [] { return B(gen_t()); }},
    {"C", [] { return C(); }},
    {"D", [] { return D(gen_t()); }},
    {"AW1", [] { return AW(AWParams::generic(1)); }},
    {"AW2", [] { return AW(AWParams::generic(2)); }},
    {"mu", [] { return mu(gen_a(), gen_b()); }},
    {"tau", [] { return tau(); }},
    {"tau_star", [] { return tau_star(gen_a(), gen_b(), gen_c(), gen_d()); }},
    {"K0", [] { return K0(gen_a(), gen_b()); }},
    {"K1", [] { return K1(); }},
    {"K2", [] { return K2(gen_a(), gen_b()); }},
};

} // namespace

const std::vector<std::string>& names() {
    static const std::vector<std::string> all = [] {
        std::vector<std::string> v;
        for (const auto& e : kEntries) v.emplace_back(e.name);
        return v;
    }();
    return all;
}

bool has(const std::string& name) {
    for (const auto& e : kEntries)
        if (name == e.name) return true;
    return false;
}

QOp by_name(const std::string& name) {
    for (const auto& e : kEntries)
        if (name == e.name) return e.build();
    throw ParseError("unknown operator name: " + name);
}

} // namespace qska::catalog
