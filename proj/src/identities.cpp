#include "qska/identities.hpp"

#include "qska/awpoly.hpp"
#include "qska/catalog.hpp"
#include "qska/errors.hpp"
#include "qska/qop.hpp"
#include "qska/ratf.hpp"
#include "qska/sheun.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string_view>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace qska::identities {

namespace {

using nlohmann::ordered_json;

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Parameter environment.  In the symbolic run every named parameter is the
// corresponding free symbol; in a probe round each one is replaced by a
// seeded random rational, while s and z always stay symbolic so that the
// probe still decides operator equality exactly.
struct Env {
    bool symbolic = true;
    std::uint64_t state = 0;
    bool specialized_any = false;
    std::map<std::string, RatF, std::less<>> cache;

    RatF p(const std::string& name) {
        const auto it = cache.find(name);
        if (it != cache.end()) return it->second;
        RatF v;
        if (symbolic) {
            v = RatF::sym(Sym::intern(name));
        } else {
            specialized_any = true;
            const std::uint64_t r = splitmix64(state);
            const long num = 2 + static_cast<long>(r % 8);
            long den = 2 + static_cast<long>((r >> 8) % 8);
            if (num == den) den = den == 9 ? 2 : den + 1;
            v = RatF::constant(num, den);
        }
        cache.emplace(name, v);
        return v;
    }
};

struct Outcome {
    Status status = Status::kPass;
    std::string witness;
};

// --- witnesses -------------------------------------------------------------
//
// Every failing relation carries a serialized residual; before it is
// reported, the residual is re-read from its own serialization and added
// back to the right-hand side, which must restore equality.

std::string operator_witness(const std::string& label, const QOp& lhs, const QOp& rhs) {
    const QOp residual = lhs - rhs;
    const std::string serialized = residual.json();
    const QOp back = QOp::from_json(serialized);
    if (!op_equal(rhs + back, lhs))
        throw Error("residual witness failed the add-back check: " + label);
    ordered_json w;
    w["relation"] = label;
    w["residual"] = ordered_json::parse(serialized);
    return w.dump();
}

std::string scalar_witness(const std::string& label, const RatF& lhs, const RatF& rhs) {
    const RatF residual = lhs - rhs;
    const RatF back = RatF::parse(residual.text());
    if (!(rhs + back == lhs))
        throw Error("residual witness failed the add-back check: " + label);
    ordered_json w;
    w["relation"] = label;
    w["residual"] = residual.text();
    return w.dump();
}

RepMatrix parse_matrix(const std::string& text, int dim) {
    RepMatrix m(dim);
    std::istringstream in(text);
    std::string line;
    for (int i = 0; i < dim; ++i) {
        if (!std::getline(in, line)) throw ParseError("matrix text has too few rows");
        size_t start = 0;
        for (int j = 0; j < dim; ++j) {
            size_t end = line.find(" | ", start);
            if (end == std::string::npos) end = line.size();
            m.at(i, j) = RatF::parse(std::string_view(line).substr(start, end - start));
            start = end == line.size() ? end : end + 3;
        }
    }
    return m;
}

std::string matrix_witness(const std::string& label, const RepMatrix& lhs, const RepMatrix& rhs) {
    const RepMatrix residual = lhs - rhs;
    const RepMatrix back = parse_matrix(residual.text(), residual.dim());
    if (!(rhs + back == lhs))
        throw Error("residual witness failed the add-back check: " + label);
    ordered_json w;
    w["relation"] = label;
    w["residual"] = residual.text();
    return w.dump();
}

// --- relation drivers ------------------------------------------------------

using OpRel = std::tuple<std::string, QOp, QOp>;
using ScalarRel = std::tuple<std::string, RatF, RatF>;
using MatRel = std::tuple<std::string, RepMatrix, RepMatrix>;

Outcome check_ops(const std::vector<OpRel>& rels) {
    for (const auto& [label, lhs, rhs] : rels)
        if (!op_equal(lhs, rhs)) return {Status::kFail, operator_witness(label, lhs, rhs)};
    return {};
}

Outcome check_scalars(const std::vector<ScalarRel>& rels) {
    for (const auto& [label, lhs, rhs] : rels)
        if (!(lhs == rhs)) return {Status::kFail, scalar_witness(label, lhs, rhs)};
    return {};
}

Outcome check_mats(const std::vector<MatRel>& rels) {
    for (const auto& [label, lhs, rhs] : rels)
        if (!(lhs == rhs)) return {Status::kFail, matrix_witness(label, lhs, rhs)};
    return {};
}

// For a relation whose published scalar factor is suspect: proportionality
// is decided first; if the mechanically computed factor differs from the
// published one while proportionality holds, the case is flagged and the
// report carries both values.
Outcome check_proportional(const std::string& label, const QOp& lhs, const QOp& base,
                           const RatF& printed) {
    if (base.is_zero())
        return {Status::kFail, operator_witness(label, lhs, base.scaled(printed))};
    const auto& [k0, c0] = *base.terms().begin();
    const RatF sigma = lhs.coeff(k0) / c0;
    if (!op_equal(lhs, base.scaled(sigma)))
        return {Status::kFail, operator_witness(label, lhs, base.scaled(printed))};
    if (sigma == printed) return {};
    ordered_json w;
    w["relation"] = label;
    w["printed"] = printed.text();
    w["computed"] = sigma.text();
    return {Status::kFlagged, w.dump()};
}

// Combines sub-relation outcomes for a case with several proportionality
// checks: any failure wins; otherwise every flagged sub-relation's
// printed/computed pair is kept in the witness.
Outcome merge_outcomes(const std::vector<Outcome>& parts) {
    std::vector<const Outcome*> flagged;
    for (const auto& part : parts) {
        if (part.status == Status::kFail) return part;
        if (part.status == Status::kFlagged) flagged.push_back(&part);
    }
    if (flagged.empty()) return {};
    if (flagged.size() == 1) return *flagged.front();
    ordered_json all = ordered_json::array();
    for (const Outcome* part : flagged) all.push_back(ordered_json::parse(part->witness));
    return {Status::kFlagged, all.dump()};
}

// --- shared shorthands -----------------------------------------------------

RatF one() { return RatF::constant(1); }
RatF kq() { return qpow(1) - qpow(-1); }       // q - 1/q
RatF kplus() { return qpow(1) + qpow(-1); }    // q + 1/q
QOp zero_op() { return QOp::from_terms({}); }

// --- cases -----------------------------------------------------------------

Outcome uq_rel(Env& env) {
    const RatF t = env.p("t");
    const QOp A = catalog::hatA(t);
    const QOp B = catalog::hatB(t);
    const QOp C = catalog::hatC();
    const QOp D = catalog::hatD(t);
    const RatF q = qpow(1);
    return check_ops({
        {"ladder-commutator", commutator(B, C), (A * A - D * D).scaled(kq().inv())},
        {"diagonal-commute", commutator(A, D), zero_op()},
        {"weight-exchange-ab", A * B, (B * A).scaled(q)},
        {"weight-exchange-bd", B * D, (D * B).scaled(q)},
        {"weight-exchange-ca", C * A, (A * C).scaled(q)},
        {"weight-exchange-dc", D * C, (C * D).scaled(q)},
    });
}

Outcome ska3_rel(Env&) {
    const QOp Y = catalog::Y();
    const QOp U = catalog::U();
    const QOp V = catalog::V();
    const RatF q = qpow(1);
    return check_ops({
        {"vy-exchange", V * Y - (Y * V).scaled(q), zero_op()},
        {"yu-exchange", Y * U - (U * Y).scaled(q), zero_op()},
        {"uv-commutator", commutator(U, V), (Y * Y).scaled(kq())},
    });
}

Outcome ska3_cas(Env&) {
    const QOp Y = catalog::Y();
    return check_ops({
        {"quadratic-casimir-is-one", catalog::U() * catalog::V() + (Y * Y).scaled(qpow(-1)),
         QOp::identity_op()},
    });
}

Outcome m_diag(Env& env) {
    const RatF a = env.p("a");
    const RatF b = env.p("b");
    const RatF g = env.p("gamma");
    const QOp M = catalog::M(g * (a + b), -g * a * b, g);
    const RatF F = catalog::F_coeff(a, b, g);
    const catalog::AWParams p{a, b, spow(1), -spow(1), 1};
    return check_ops({
        {"combination-as-shift-pair", M, QOp::from_terms({{1, F}, {-1, mirror(F)}})},
        {"combination-as-grid-operator", M,
         (catalog::AW(p) + QOp::shift_op(0, 1 - a * b)).scaled(g)},
    });
}

Outcome aw3_params(Env& env) {
    const RatF a = env.p("a");
    const RatF b = env.p("b");
    const QOp K0 = catalog::K0(a, b);
    const QOp K1 = catalog::K1();
    const QOp K2 = catalog::K2(a, b);
    const RatF nu1 = -a * b * kq().pow(2);
    const RatF rho1 = (1 - qpow(-1)) * (a + b) * (a * b + qpow(1));
    // Each closure relation is decided as a proportionality against the
    // published remainder, so a factor discrepancy in a published scalar is
    // flagged with both values rather than reported as a bare failure.
    return merge_outcomes({
        check_proportional("closure-on-grid-generator", q_commutator(K1, K2), K0, one()),
        check_proportional("closure-on-multiplication",
                           q_commutator(K2, K0) - K1.scaled(nu1),
                           QOp::shift_op(0, one()), rho1),
    });
}

struct FGData {
    RatF F, G, Gup, Gdn, Gamma, gz;
    RatF a, b, c, d;
};

FGData make_fg(Env& env) {
    FGData r;
    r.a = env.p("a");
    r.b = env.p("b");
    r.c = env.p("c");
    r.d = env.p("d");
    const RatF g = env.p("gamma");
    const RatF ze = env.p("zeta");
    r.F = catalog::F_coeff(r.a, r.b, g);
    r.G = catalog::F_coeff(r.c * qpow(-1), r.d * qpow(-1), ze);
    r.Gup = shift_arg(r.G, 1);
    r.Gdn = shift_arg(r.G, -1);
    r.gz = g * ze;
    r.Gamma = r.gz * (r.a * r.b * r.c * r.d * qpow(-2) - r.a * r.b - r.c * r.d * qpow(-2) + 1);
    return r;
}

Outcome fg_identity(Env& env) {
    const FGData fg = make_fg(env);
    const RatF lhs = fg.F * mirror(fg.Gdn) + mirror(fg.F) * fg.Gdn;
    const RatF rhs = -(fg.F * fg.Gup) - mirror(fg.F) * mirror(fg.Gup) + fg.Gamma;
    return check_scalars({{"cross-shift-balance", lhs, rhs}});
}

Outcome gamma_const(Env& env) {
    const FGData fg = make_fg(env);
    const RatF four_sum =
        fg.F * mirror(fg.Gdn) + mirror(fg.F) * fg.Gdn + fg.F * fg.Gup + mirror(fg.F) * mirror(fg.Gup);
    const catalog::AWParams p{fg.a, fg.b, fg.c, fg.d, 2};
    return check_scalars({
        {"four-product-sum-is-constant", four_sum, fg.Gamma},
        {"up-product-is-grid-coefficient", fg.F * fg.Gup, fg.gz * catalog::aw_coefficient(p)},
    });
}

struct FactOps {
    QOp first, second;       // the two factors in original order
    QOp bar_first, bar_second;  // the exchanged-parameter pair
    RatF a, b, c, d;
};

FactOps make_fact(Env& env) {
    FactOps r;
    r.a = env.p("a");
    r.b = env.p("b");
    r.c = env.p("c");
    r.d = env.p("d");
    r.first = catalog::M(r.a + r.b, -r.a * r.b, one());
    r.second = catalog::M(qpow(-1) * (r.c + r.d), -qpow(-2) * r.c * r.d, one());
    r.bar_first = catalog::M(r.c + r.d, -r.c * r.d, one());
    r.bar_second = catalog::M(qpow(-1) * (r.a + r.b), -qpow(-2) * r.a * r.b, one());
    return r;
}

Outcome fact1(Env& env) {
    const FactOps f = make_fact(env);
    const catalog::AWParams p{f.a, f.b, f.c, f.d, 2};
    const RatF cst = f.a * f.b * f.c * f.d * qpow(-2) - f.a * f.b - f.c * f.d * qpow(-2) + 1;
    return check_ops({
        {"grid-factorization", f.first * f.second, catalog::AW(p) + QOp::shift_op(0, cst)},
    });
}

Outcome fact2(Env& env) {
    const FactOps f = make_fact(env);
    const catalog::AWParams p{f.a, f.b, f.c, f.d, 2};
    const RatF cst = f.a * f.b * f.c * f.d * qpow(-2) - f.a * f.b * qpow(-2) - f.c * f.d + 1;
    return check_ops({
        {"exchanged-grid-factorization", f.bar_first * f.bar_second,
         catalog::AW(p) + QOp::shift_op(0, cst)},
    });
}

Outcome diff_abcd(Env& env) {
    const FactOps f = make_fact(env);
    const RatF cst = (-f.a * f.b + f.c * f.d) * (1 - qpow(-2));
    return check_ops({
        {"factorization-difference", f.first * f.second - f.bar_first * f.bar_second,
         QOp::shift_op(0, cst)},
    });
}

Outcome awop_quad(Env& env) {
    const RatF al = env.p("alpha");
    const RatF be = env.p("beta");
    const RatF ga = env.p("gamma");
    const RatF de = env.p("delta");
    const RatF ep = env.p("eps");
    const RatF ze = env.p("zeta");
    const QOp Y = catalog::Y();
    const QOp U = catalog::U();
    const QOp V = catalog::V();
    const QOp lhs = catalog::M(al, be, ga) * catalog::M(de, ep, ze);
    const QOp rhs = (U * U).scaled(be * ep) + (V * V).scaled(ga * ze)
                  + (Y * Y).scaled(al * de - be * ze * qpow(-1) - ga * ep * qpow(1))
                  + (U * Y).scaled(al * ep * qpow(1) + be * de)
                  + (V * Y).scaled(al * ze * qpow(-1) + ga * de)
                  + QOp::shift_op(0, be * ze + ga * ep);
    return check_ops({{"general-quadratic-expansion", lhs, rhs}});
}

std::vector<OpRel> sklyanin_relations(const QOp& A, const QOp& B, const QOp& C, const QOp& D,
                                      const std::string& suffix) {
    const RatF q = qpow(1);
    const QOp mixed_rhs = (D * C - C * A).scaled(-(qpow(2) - qpow(-2)) / 4);
    return {
        {"dc-exchange" + suffix, D * C, (C * D).scaled(q)},
        {"ca-exchange" + suffix, C * A, (A * C).scaled(q)},
        {"ad-commutator" + suffix, commutator(A, D), (C * C).scaled(kq().pow(3) / 4)},
        {"bc-commutator" + suffix, commutator(B, C), (A * A - D * D).scaled(kq().inv())},
        {"ab-mixed-exchange" + suffix, A * B - (B * A).scaled(q), mixed_rhs},
        {"db-mixed-exchange" + suffix, (D * B).scaled(q) - B * D, mixed_rhs},
    };
}

Outcome dsa_rel(Env& env) {
    const RatF t = env.p("t");
    return check_ops(
        sklyanin_relations(catalog::A(t), catalog::B(t), catalog::C(), catalog::D(t), ""));
}

Outcome dsa_cas(Env& env) {
    const RatF t = env.p("t");
    const QOp A = catalog::A(t);
    const QOp B = catalog::B(t);
    const QOp C = catalog::C();
    const QOp D = catalog::D(t);
    const RatF q = qpow(1);
    const RatF qi = qpow(-1);
    const QOp omega0 = A * D + (C * C).scaled(kq().pow(2) / (q * 4));
    const QOp omega1 = (A * A).scaled(qi / kq().pow(2)) + (D * D).scaled(q / kq().pow(2)) + B * C
                     + (C * C).scaled(kplus() / 4);
    const RatF value1 = (q * t.pow(2) + qi * t.pow(-2)) / kq().pow(2);
    return check_ops({
        {"casimir-zero-is-one", omega0, QOp::identity_op()},
        {"casimir-one-value", omega1, QOp::shift_op(0, value1)},
    });
}

Outcome uv_cas(Env&) {
    const QOp Y = catalog::Y();
    const QOp U = catalog::U();
    const QOp V = catalog::V();
    const QOp I = QOp::identity_op();
    return check_ops({
        {"uv-reduction", U * V, I - (Y * Y).scaled(qpow(-1))},
        {"vu-reduction", V * U, I - (Y * Y).scaled(qpow(1))},
    });
}

Outcome b_expr(Env& env) {
    const RatF t = env.p("t");
    const QOp x = catalog::Xop();
    const QOp Y = catalog::Y();
    const QOp U = catalog::U();
    const QOp V = catalog::V();
    // The published equation, cleared of its overall 1/(2(q-1/q)) prefactor,
    // asserts that the weighted bracket combination W equals 2(q-1/q)B +
    // (q+1/q)Y on the nose; the scalar between the two sides is computed and
    // compared against the published value 1.
    const QOp W = ((x * U).scaled(qpow(-1)) - U * x).scaled(t.pow(-2))
                + ((x * V).scaled(qpow(1)) - V * x).scaled(t.pow(2));
    const QOp remainder = catalog::B(t).scaled(2 * kq()) + Y.scaled(kplus());
    return check_proportional("bracket-combination-vs-remainder", W, remainder, one());
}

Outcome x_comm(Env&) {
    const QOp x = catalog::Xop();
    const QOp Y = catalog::Y();
    const QOp U = catalog::U();
    const QOp V = catalog::V();
    const RatF q = qpow(1);
    return check_ops({
        {"ux-commutation", U * x - (x * U).scaled(q), Y.scaled(-kq())},
        {"xv-commutation", x * V - (V * x).scaled(q), Y.scaled(q * kq())},
    });
}

Outcome x_cleared(Env& env) {
    const RatF t = env.p("t");
    const QOp x = catalog::Xop();
    const QOp lhs = x * (catalog::V() - catalog::U().scaled(t.pow(-4)));
    const QOp rhs = (catalog::B(t).scaled(RatF::constant(2))
                   + catalog::Y().scaled(kplus() / kq() + t.pow(2) - t.pow(-2)))
                        .scaled(t.pow(-2));
    return check_ops({{"inverted-midpoint-cleared", lhs, rhs}});
}

Outcome mu_as_m(Env& env) {
    const RatF a = env.p("a");
    const RatF b = env.p("b");
    const RatF c = env.p("c");
    const RatF d = env.p("d");
    return check_ops({
        {"contiguity-as-combination", catalog::mu(a, b),
         catalog::M(qpow(-1) * (a + b), -qpow(-2) * a * b, one())},
        {"shifted-contiguity-as-combination", catalog::mu(c * qpow(1), d * qpow(1)),
         catalog::M(c + d, -c * d, one())},
    });
}

// Quartic-root parameter pack: a = ra^4 etc., with P the product of the
// roots, so that fourth roots of abcd are polynomial.  The truncation
// relation fixes t^{-2} = (abcd)^{1/2}, i.e. t = 1/P on the positive branch.
struct Roots {
    RatF a, b, c, d, P, t;
};

Roots make_roots(Env& env) {
    const RatF ra = env.p("ra");
    const RatF rb = env.p("rb");
    const RatF rc = env.p("rc");
    const RatF rd = env.p("rd");
    Roots r;
    r.a = ra.pow(4);
    r.b = rb.pow(4);
    r.c = rc.pow(4);
    r.d = rd.pow(4);
    r.P = ra * rb * rc * rd;
    r.t = r.P.inv();
    return r;
}

Outcome taustar_abcd(Env& env) {
    const Roots r = make_roots(env);
    const RatF e1 = r.a + r.b + r.c + r.d;
    const RatF e2 = r.a * r.b + r.a * r.c + r.a * r.d + r.b * r.c + r.b * r.d + r.c * r.d;
    const RatF e3 = r.a * r.b * r.c + r.a * r.b * r.d + r.a * r.c * r.d + r.b * r.c * r.d;
    const QOp rhs = (catalog::A(r.t).scaled(-e3 * r.P.inv())
                   + catalog::B(r.t).scaled(-2 * kq() * r.P.pow(2))
                   + catalog::C().scaled((kq() / 2) * (e2 - kplus() * r.P.pow(2)))
                   + catalog::D(r.t).scaled(e1 * r.P))
                        .scaled(qpow(-1));
    return check_ops({
        {"lowering-as-sklyanin-combination", catalog::tau_star(r.a, r.b, r.c, r.d), rhs},
    });
}

Outcome skrel(Env& env) {
    const RatF a = env.p("a");
    const RatF b = env.p("b");
    const RatF c = env.p("c");
    const RatF d = env.p("d");
    const RatF e = env.p("e");
    const RatF q = qpow(1);
    const RatF qi = qpow(-1);
    const QOp lhs = catalog::tau_star(a, b, c * e, d * e.inv())
                  * catalog::tau_star(q * a, q * b, qi * c, qi * d);
    const QOp rhs = catalog::tau_star(a, b, c, d)
                  * catalog::tau_star(q * a, q * b, qi * c * e, qi * d * e.inv());
    return check_ops({{"parameter-exchange-braid", lhs, rhs}});
}

struct RealizedABCD {
    QOp A, B, C, D;
};

RealizedABCD realize_at(const RatF& t) {
    return {catalog::A(t), catalog::B(t), catalog::C(), catalog::D(t)};
}

Outcome rels02(Env& env) {
    const Roots r = make_roots(env);
    const auto [A, B, C, D] = realize_at(r.t);
    const RatF q = qpow(1);
    const RatF qi = qpow(-1);
    const RatF ab = r.a * r.b;
    const RatF cd = r.c * r.d;
    const RatF sum2 = (r.a + r.b).pow(2) * qpow(2);
    const RatF cross = r.b * r.b * cd + r.a * r.a * cd - r.a * r.a * r.b * r.b * qpow(2);
    const QOp bracket_sq = A * A - D * D - (B * C - C * B).scaled(kq());
    const QOp ab_mixed = A * B - (B * A).scaled(q);
    const QOp bd_mixed = B * D - (D * B).scaled(q);
    const QOp ad_reduced = commutator(A, D) - (C * C).scaled(kq().pow(3) / 4);
    const QOp lhs =
        bracket_sq.scaled(r.P.pow(3) * kq() * (r.a + r.b))
        + ab_mixed.scaled(-2 * r.P.pow(2) * kq() * ab)
        + bd_mixed.scaled(-2 * r.P.pow(4) * kq() * qi)
        + ad_reduced.scaled(r.P * (r.a + r.b) * (q * ab - qi * cd))
        + (C * D).scaled(-r.P.pow(2) * (kq() / 2)
                         * ((sum2 - ab - cd) * qi + r.P.pow(2) * (1 + qpow(-2))))
        + (D * C).scaled(r.P.pow(2) * (kq() / 2)
                         * ((sum2 - ab * qpow(4) - cd) * qpow(-2) + r.P.pow(2) * (1 + qpow(-2)) * q))
        + (A * C).scaled(-(kq() / 2)
                         * (ab * kplus() * r.P.pow(2) + (r.P.pow(4) * (2 - qpow(-2)) + cross)))
        + (C * A).scaled(-(kq() / 2)
                         * (-ab * q * kplus() * r.P.pow(2)
                            - qi * (r.P.pow(4) * (2 - qpow(2)) + cross)));
    return check_ops({{"packaged-exchange-combination", lhs, zero_op()}});
}

Outcome rels03(Env& env) {
    const Roots r = make_roots(env);
    const auto [A, B, C, D] = realize_at(r.t);
    const RatF q = qpow(1);
    const RatF qi = qpow(-1);
    const RatF ab = r.a * r.b;
    const RatF cd = r.c * r.d;
    const RatF sum2 = (r.a + r.b).pow(2) * qpow(2);
    const QOp bracket_sq = A * A - D * D - (B * C - C * B).scaled(kq());
    const QOp ab_mixed = A * B - (B * A).scaled(q);
    const QOp bd_mixed = B * D - (D * B).scaled(q);
    const QOp ad_reduced = commutator(A, D) - (C * C).scaled(kq().pow(3) / 4);
    const QOp lhs =
        bracket_sq.scaled(r.P.pow(2) * kq() * (r.a + r.b))
        + ab_mixed.scaled(-2 * r.P * kq() * ab)
        + ad_reduced.scaled((r.a + r.b) * (q * ab - qi * cd))
        + bd_mixed.scaled(-2 * r.P.pow(3) * kq() * qi)
        + (C * D).scaled(-r.P * (kq() / 2) * ((sum2 - ab - cd) * qi + r.P.pow(2) * (1 + qpow(-2))))
        + (D * C).scaled(r.P * (kq() / 2)
                         * ((sum2 - ab * qpow(4) - cd) * qpow(-2) + r.P.pow(2) * (1 + qpow(-2)) * q))
        + (C * A).scaled((kq() * (qpow(2) - qpow(-2)) / 2) * (r.P * ab - qi * r.P.pow(3)));
    return check_ops({{"packaged-exchange-combination", lhs, zero_op()}});
}

Outcome sheun_map(Env&) {
    const RatF z = RatF::constant(0);
    const QOp L = sheun::make_sheun({z, z, one(), z, z});
    const QOp M1 = sheun::make_sheun({one(), z, z, z, z});
    const QOp M2 = sheun::make_sheun({z, z, z, one(), z});
    return check_ops({
        {"difference-part", catalog::Y(), L.scaled(kq())},
        {"up-combination", catalog::U(), M1 + M2.scaled(qpow(1))},
        {"down-combination", catalog::V(), M1 + M2.scaled(qpow(-1))},
    });
}

Outcome b_sheun(Env& env) {
    const RatF t = env.p("t");
    const RatF cl = kplus() * ((t.pow(2) - t.pow(-2)) - kq()) / (kq() * 2);
    const RatF cr1 = qpow(1) * t.pow(-2) / 2;
    const RatF cr2 = (t.pow(2) * qpow(-1) - qpow(1) * t.pow(-2)) / (kq() * 2);
    const QOp rhs = catalog::L().scaled(cl) + catalog::R1().scaled(cr1) + catalog::R2().scaled(cr2);
    return check_ops({{"midpoint-generator-in-raising-basis", catalog::B(t), rhs}});
}

Outcome x_sheun(Env&) {
    const QOp M1 = catalog::M1();
    const QOp M2 = catalog::M2();
    const QOp R2 = catalog::R2();
    const QOp rhs = (((M2 * R2).scaled(qpow(1)) - R2 * M2).scaled(1 + qpow(-4))
                   + ((M1 * R2).scaled(qpow(1)) - R2 * M1).scaled(qpow(-3) * 2))
                        .scaled((qpow(2) - qpow(-2)).inv());
    return check_ops({{"multiplication-from-raising-pairs", catalog::Xop(), rhs}});
}

Outcome appendix_case(int k, Env&) {
    const QOp L = catalog::L();
    const QOp M1 = catalog::M1();
    const QOp M2 = catalog::M2();
    const QOp R1 = catalog::R1();
    const QOp R2 = catalog::R2();
    const QOp I = QOp::identity_op();
    const RatF q = qpow(1);
    const RatF qi = qpow(-1);
    const RatF kp = kplus();
    switch (k) {
        case 1:
            return check_proportional("commutator-proportional-to-square", commutator(M1, M2),
                                      L * L, kp.pow(2));
        case 2:
            return check_ops({{"m1l-exchange", M1 * L - (L * M1).scaled(kp), L * M2}});
        case 3:
            return check_ops({{"lm1-anticommutator", L * M1 + M2 * L, zero_op()}});
        case 4:
            return check_ops(
                {{"quadratic-unit", M1 * M1 + M2 * M2 + (M2 * M1).scaled(kp), I}});
        case 5:
            return check_ops({{"lr1-complement", L * R1, I - M2 * M2}});
        case 6:
            return check_ops({{"r1l-complement", R1 * L, I - M1 * M1}});
        case 7:
            return check_ops({{"lr2-expansion", L * R2,
                               (L * L).scaled(RatF::constant(-2)) + (M2 * M2).scaled(qi) + M1 * M2
                                   + QOp::shift_op(0, q)}});
        case 8:
            return check_ops({{"r2l-expansion", R2 * L,
                               (L * L).scaled(RatF::constant(-2)) + (M2 * M2).scaled(q)
                                   + (M2 * M1).scaled(qpow(2))}});
        case 9:
            return check_ops({{"r1m2-anticommutator", R1 * M2 + M1 * R1, zero_op()}});
        case 10:
            return check_ops({{"m1r2-exchange", M1 * R2 + R2 * M2,
                               (M2 * L).scaled(kp * 2) - (L * M2).scaled(kp.pow(2))}});
        case 11:
            return check_ops({{"r1m1-weighted-exchange", (R1 * M1).scaled(q) - M1 * R1,
                               R2 * M1 + (L * M1).scaled(qpow(2) + qpow(-2))}});
        case 12:
            return check_ops({{"r1m1-twisted-exchange", R1 * M1 - (M1 * R1).scaled(kp),
                               M2 * R1 - (M2 * L).scaled(kp * kq().pow(2))}});
        case 13:
            return check_ops({{"m2r2-exchange", M2 * R2 - (R2 * M2).scaled(kp),
                               R2 * M1 + (M1 * L).scaled(kp * 2)
                                   - (L * M1).scaled(qpow(-2) * 2 + 1 + qpow(4))}});
        case 14:
            return check_ops({{"raising-square-reduction",
                               R2 * R2 - (R2 * R1).scaled(q) + (R1 * R2).scaled(qi),
                               (M1 * M2).scaled(kp.pow(2) * -2) + (M2 * M2).scaled(-kp.pow(3))
                                   + (L * L).scaled(
                                         ((qpow(2) + qpow(-2)) - (qpow(2) - qpow(-2)).pow(2)) * 2)}});
        default:
            throw Error("appendix relation index out of range");
    }
}

sheun::QHawParams qhaw_params(Env& env, bool with_beta) {
    const RatF z = RatF::constant(0);
    return {env.p("alpha1"), env.p("alpha2"), env.p("alpha3"),
            env.p("alpha4"), env.p("alpha5"), env.p("alpha6"),
            with_beta ? env.p("beta1") : z,
            with_beta ? env.p("beta2") : z,
            with_beta ? env.p("beta3") : z};
}

Outcome qhaw_rk(Env& env) {
    const sheun::QHawParams hp = qhaw_params(env, true);
    const sheun::HeunData hd = sheun::extract_heun_data(sheun::build_qhaw(hp));
    const RatF q = qpow(1);
    const std::array<RatF, 7> printed = {
        hp.beta2 * qpow(4) - hp.beta3 * qpow(4) + hp.beta1 * qpow(3) + hp.beta3 * qpow(2),
        hp.alpha3 * qpow(4) - hp.alpha4 * qpow(3) + hp.alpha6 * qpow(2),
        -hp.beta3 * qpow(6) + hp.beta1 * qpow(5) + hp.beta2 * qpow(4) * 2
            + (hp.alpha5 + hp.beta1) * qpow(3) + (hp.alpha2 + hp.beta2 - hp.beta3) * qpow(2)
            + hp.beta1 * q,
        -hp.alpha4 * qpow(5) + (hp.alpha3 + hp.alpha6) * qpow(4) + hp.alpha1 * qpow(3)
            + (hp.alpha3 + hp.alpha6) * qpow(2) - hp.alpha4 * q,
        -hp.beta3 * qpow(6) + hp.beta1 * qpow(5) + (hp.alpha2 + hp.beta2 - hp.beta3) * qpow(4)
            + (hp.alpha5 + hp.beta1) * qpow(3) + hp.beta2 * qpow(2) * 2 + hp.beta1 * q,
        hp.alpha6 * qpow(4) - hp.alpha4 * qpow(3) + hp.alpha3 * qpow(2),
        hp.beta1 * qpow(3) + hp.beta2 * qpow(2),
    };
    std::vector<ScalarRel> rels;
    for (int k = 0; k < 7; ++k)
        rels.emplace_back("numerator-coefficient-z" + std::to_string(k),
                          hd.r[static_cast<size_t>(k)], printed[static_cast<size_t>(k)]);
    rels.emplace_back("affine-term-constant", hd.p1_const, hp.alpha3);
    rels.emplace_back("affine-term-slope", hd.p1_x, hp.beta2);
    return check_scalars(rels);
}

Outcome qhaw_aw_limit(Env& env) {
    const QOp op = sheun::build_qhaw(qhaw_params(env, false));
    for (const DegreeRow& row : degree_profile(op, 8)) {
        if (row.out_degree > row.n) {
            ordered_json w;
            w["relation"] = "degree-stabilization";
            w["input_degree"] = row.n;
            w["output_degree"] = row.out_degree;
            return {Status::kFail, w.dump()};
        }
    }
    return {};
}

Outcome rep_finite(Env&) {
    const RatF q = qpow(1);
    const RatF qi = qpow(-1);
    for (int n = 2; n <= 4; ++n) {
        const RatF t = spow(n - 1);
        const auto [A, B, C, D] = realize_at(t);
        RepMatrix mA(n), mB(n), mC(n), mD(n);
        try {
            mA = matrix_rep(A, n);
            mB = matrix_rep(B, n);
            mC = matrix_rep(C, n);
            mD = matrix_rep(D, n);
        } catch (const NotInvariant& e) {
            ordered_json w;
            w["relation"] = "matrix-embedding-dim" + std::to_string(n);
            w["basis_degree"] = e.basis_degree;
            w["leak"] = e.leak_coefficient;
            return {Status::kFail, w.dump()};
        }
        const std::string suffix = "-dim" + std::to_string(n);
        const RepMatrix mixed_rhs = (mD * mC - mC * mA).scaled(-(qpow(2) - qpow(-2)) / 4);
        const Outcome out = check_mats({
            {"dc-exchange" + suffix, mD * mC, (mC * mD).scaled(q)},
            {"ca-exchange" + suffix, mC * mA, (mA * mC).scaled(q)},
            {"ad-commutator" + suffix, mA * mD - mD * mA, (mC * mC).scaled(kq().pow(3) / 4)},
            {"bc-commutator" + suffix, mB * mC - mC * mB,
             (mA * mA - mD * mD).scaled(kq().inv())},
            {"ab-mixed-exchange" + suffix, mA * mB - (mB * mA).scaled(q), mixed_rhs},
            {"db-mixed-exchange" + suffix, (mD * mB).scaled(q) - mB * mD, mixed_rhs},
            {"casimir-zero" + suffix, mA * mD + (mC * mC).scaled(kq().pow(2) / (q * 4)),
             RepMatrix::identity(n)},
            {"casimir-one" + suffix,
             (mA * mA).scaled(qi / kq().pow(2)) + (mD * mD).scaled(q / kq().pow(2)) + mB * mC
                 + (mC * mC).scaled(kplus() / 4),
             RepMatrix::scalar(n, (q * t.pow(2) + qi * t.pow(-2)) / kq().pow(2))},
        });
        if (out.status != Status::kPass) return out;
    }
    return {};
}

// --- registry ----------------------------------------------------------------

struct CaseDef {
    std::string id;
    std::function<Outcome(Env&)> fn;
};

const std::vector<CaseDef>& registry() {
    static const std::vector<CaseDef> defs = [] {
        std::vector<CaseDef> v = {
            {"UQ_REL", uq_rel},
            {"SKA3_REL", ska3_rel},
            {"SKA3_CAS", ska3_cas},
            {"M_DIAG", m_diag},
            {"AW3_PARAMS", aw3_params},
            {"FG_IDENTITY", fg_identity},
            {"GAMMA", gamma_const},
            {"FACT1", fact1},
            {"FACT2", fact2},
            {"DIFF_ABCD", diff_abcd},
            {"AWOP_QUAD", awop_quad},
            {"DSA_REL", dsa_rel},
            {"DSA_CAS", dsa_cas},
            {"UV_CAS", uv_cas},
            {"B_EXPR", b_expr},
            {"X_COMM", x_comm},
            {"X_CLEARED", x_cleared},
            {"MU_AS_M", mu_as_m},
            {"TAUSTAR_ABCD", taustar_abcd},
            {"SKREL", skrel},
            {"RELS02", rels02},
            {"RELS03", rels03},
            {"SHEUN_MAP", sheun_map},
            {"B_SHEUN", b_sheun},
            {"X_SHEUN", x_sheun},
        };
        for (int k = 1; k <= 14; ++k) {
            std::string id = "APPENDIX_" + std::string(k < 10 ? "0" : "") + std::to_string(k);
            v.push_back({std::move(id), [k](Env& env) { return appendix_case(k, env); }});
        }
        v.push_back({"QHAW_RK", qhaw_rk});
        v.push_back({"QHAW_AW_LIMIT", qhaw_aw_limit});
        v.push_back({"REP_FINITE", rep_finite});
        return v;
    }();
    return defs;
}

const CaseDef* find_case(const std::string& id) {
    for (const CaseDef& def : registry())
        if (id == def.id) return &def;
    return nullptr;
}

Entry run_case(const CaseDef& def, const Options& opt) {
    Entry entry;
    entry.id = def.id;
    const auto t0 = std::chrono::steady_clock::now();
    std::optional<Outcome> final_outcome;
    if (opt.fast) {
        // Probe rounds: every free parameter becomes a seeded random
        // rational.  Outcomes are advisory (the symbolic run decides), with
        // one exception: a round that consumed no parameters *was* the
        // symbolic run, so its outcome is final.
        for (int round = 0; round < 3 && !final_outcome; ++round) {
            Env env;
            env.symbolic = false;
            env.state = opt.seed ^ fnv1a(def.id)
                ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(round + 1));
            try {
                const Outcome out = def.fn(env);
                if (!env.specialized_any) final_outcome = out;
            } catch (const DenominatorVanishes&) {
            } catch (const DivisionByZero&) {
            } catch (const PoleAtPoint&) {
            } catch (const NormalizationVanishes&) {
            } catch (const SingularSystem&) {
                // A degenerate specialization says nothing about the
                // identity; skip the round.
            }
        }
    }
    if (!final_outcome) {
        Env env;
        try {
            final_outcome = def.fn(env);
        } catch (const Error& e) {
            ordered_json w;
            w["relation"] = "construction";
            w["error"] = e.what();
            final_outcome = Outcome{Status::kFail, w.dump()};
        }
    }
    entry.status = final_outcome->status;
    entry.witness = final_outcome->witness;
    if (opt.timings) {
        entry.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    }
    return entry;
}

std::string join_ids(const std::vector<std::string>& ids) {
    std::string out;
    for (const std::string& id : ids) {
        if (!out.empty()) out += ",";
        out += id;
    }
    return out;
}

}  // namespace

const char* status_name(Status s) {
    switch (s) {
        case Status::kPass: return "pass";
        case Status::kFail: return "fail";
        case Status::kFlagged: return "flagged";
    }
    return "fail";
}

const std::vector<std::string>& all_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const CaseDef& def : registry()) v.emplace_back(def.id);
        return v;
    }();
    return ids;
}

bool is_registered(const std::string& id) { return find_case(id) != nullptr; }

std::string Report::json() const {
    ordered_json j;
    j["suite"] = suite;
    j["seed"] = seed;
    ordered_json rows = ordered_json::array();
    for (const Entry& e : results) {
        ordered_json row;
        row["id"] = e.id;
        row["status"] = status_name(e.status);
        row["witness"] = e.witness;
        row["ms"] = e.ms;
        rows.push_back(std::move(row));
    }
    j["results"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string Report::text() const {
    std::ostringstream out;
    for (const Entry& e : results) {
        std::string status = status_name(e.status);
        status.resize(8, ' ');
        out << status << e.id;
        if (!e.witness.empty()) out << "  " << e.witness;
        if (e.ms > 0) out << "  (" << e.ms << " ms)";
        out << "\n";
    }
    return out.str();
}

int Report::exit_code() const {
    bool flagged = false;
    for (const Entry& e : results) {
        if (e.status == Status::kFail) return 1;
        if (e.status == Status::kFlagged) flagged = true;
    }
    return flagged ? 3 : 0;
}

Report run_suite(const std::vector<std::string>& ids, const Options& opt,
                 const std::string& suite_label) {
    std::vector<const CaseDef*> cases;
    cases.reserve(ids.size());
    for (const std::string& id : ids) {
        const CaseDef* def = find_case(id);
        if (def == nullptr) throw UnknownIdentity(id);
        cases.push_back(def);
    }
    Report report;
    report.suite = suite_label.empty() ? join_ids(ids) : suite_label;
    report.seed = opt.seed;
    report.results.resize(cases.size());

    const size_t jobs = std::min(cases.size(), static_cast<size_t>(std::max(1, opt.jobs)));
    if (jobs <= 1) {
        for (size_t i = 0; i < cases.size(); ++i) report.results[i] = run_case(*cases[i], opt);
        return report;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= cases.size()) break;
            try {
                report.results[i] = run_case(*cases[i], opt);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return report;
}

Report run_all(const Options& opt) { return run_suite(all_ids(), opt, "all"); }

Entry run_one(const std::string& id, const Options& opt) {
    return run_suite({id}, opt, id).results.front();
}

}  // namespace qska::identities
