#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qska/awpoly.hpp"
#include "qska/catalog.hpp"
#include "qska/errors.hpp"
#include "qska/qop.hpp"

using namespace qska;

namespace {

RatF sym_a() { return RatF::sym(Core::a()); }
RatF sym_b() { return RatF::sym(Core::b()); }
RatF sym_c() { return RatF::sym(Core::c()); }
RatF sym_d() { return RatF::sym(Core::d()); }
RatF abcd() { return sym_a() * sym_b() * sym_c() * sym_d(); }

// t at the truncation point for an N-dimensional representation:
// t = q^nu with N = 2 nu + 1, i.e. t = s^(N-1).
RatF trunc_t(int n) { return spow(n - 1); }

RepMatrix rep_of(const QOp& op, int n) { return matrix_rep(op, n); }

} // namespace

TEST_CASE("q-Pochhammer") {
    const RatF x = sym_a();
    const RatF base = qpow(1);
    CHECK(q_pochhammer(x, base, 0) == RatF::constant(1));
    CHECK(q_pochhammer(x, base, 1) == 1 - x);
    CHECK(q_pochhammer(x, base, 3) == (1 - x) * (1 - x * qpow(1)) * (1 - x * qpow(2)));
}

TEST_CASE("degree 0 is the constant function 1") {
    for (int r : {1, 2}) {
        SymPoly p0 = aw_polynomial(0, catalog::AWParams::generic(r));
        CHECK(p0.degree() == 0);
        CHECK(p0.unit_coeff(0) == RatF::constant(1));
    }
}

TEST_CASE("degree 1 matches the hand-expanded two-term sum") {
    // p_1 = a^-1 [ (1-ab)(1-ac)(1-ad) - (1-abcd)(1 - a x + a^2) ]
    //     = (1 - abcd) x + (e3 - e1),  independent of the base.
    const RatF e1 = sym_a() + sym_b() + sym_c() + sym_d();
    const RatF e3 = sym_a() * sym_b() * sym_c() + sym_a() * sym_b() * sym_d() +
                    sym_a() * sym_c() * sym_d() + sym_b() * sym_c() * sym_d();
    SymPoly want = SymPoly::from_coeffs({{1, 1 - abcd()}, {0, (e3 - e1) / 2}});
    for (int r : {1, 2}) CHECK(aw_polynomial(1, catalog::AWParams::generic(r)) == want);
}

TEST_CASE("symmetry and exact degree up to 6") {
    catalog::AWParams p = catalog::AWParams::generic(1);
    for (int n = 0; n <= 6; ++n) {
        SymPoly pn = aw_polynomial(n, p);
        CHECK(pn.degree() == n);
        CHECK(!pn.chi_coeff(n).is_zero());
        RatF f = pn.to_ratf();
        CHECK(mirror(f) == f);
    }
}

TEST_CASE("eigenvalues of the grid operator, both bases, n <= 5") {
    for (int r : {1, 2}) {
        catalog::AWParams p = catalog::AWParams::generic(r);
        QOp op = catalog::AW(p);
        for (int n = 0; n <= 5; ++n) {
            auto er = eigencheck(op, aw_polynomial(n, p));
            REQUIRE(er.is_eigen);
            CHECK(er.eigenvalue == catalog::aw_eigenvalue(p, n));
            CHECK(er.residual.is_zero());
        }
    }
    // the n = 0 eigenvalue is 0 and the n = 3, base q^2 value matches the
    // displayed formula q^-6 (1-q^6)(1-abcd q^4)
    catalog::AWParams p2 = catalog::AWParams::generic(2);
    CHECK(catalog::aw_eigenvalue(p2, 0).is_zero());
    CHECK(catalog::aw_eigenvalue(p2, 3) ==
          qpow(-6) * (1 - qpow(6)) * (1 - abcd() * qpow(4)));
}

TEST_CASE("factorized product is diagonal on the basis, n <= 5") {
    catalog::AWParams p = catalog::AWParams::generic(2);
    QOp fact = catalog::M(sym_a() + sym_b(), -(sym_a() * sym_b()), RatF::constant(1)) *
               catalog::M((sym_c() + sym_d()) * qpow(-1), -(sym_c() * sym_d()) * qpow(-2),
                          RatF::constant(1));
    for (int n = 0; n <= 5; ++n) {
        auto er = eigencheck(fact, aw_polynomial(n, p));
        REQUIRE(er.is_eigen);
        RatF rho = qpow(-2 * n) * (1 - sym_a() * sym_b() * qpow(2 * n)) *
                   (1 - sym_c() * sym_d() * qpow(2 * n - 2));
        CHECK(er.eigenvalue == rho);
    }
}

TEST_CASE("composite of the two contiguity operators is diagonal, n <= 5") {
    catalog::AWParams p = catalog::AWParams::generic(2);
    QOp km = catalog::mu(sym_c() * qpow(1), sym_d() * qpow(1)) * catalog::mu(sym_a(), sym_b());
    for (int n = 0; n <= 5; ++n) {
        auto er = eigencheck(km, aw_polynomial(n, p));
        REQUIRE(er.is_eigen);
        RatF rho_bar = qpow(-2 * n) * (1 - sym_c() * sym_d() * qpow(2 * n)) *
                       (1 - sym_a() * sym_b() * qpow(2 * n - 2));
        CHECK(er.eigenvalue == rho_bar);
    }
}

TEST_CASE("contiguity relations with the printed scalars, n = 1..4") {
    catalog::AWParams p = catalog::AWParams::generic(2);
    catalog::AWParams p_shifted{sym_a() * qpow(-1), sym_b() * qpow(-1), sym_c() * qpow(1),
                                sym_d() * qpow(1), 2};
    for (int n = 1; n <= 4; ++n) {
        SymPoly pn = aw_polynomial(n, p);
        SymPoly pn_shifted = aw_polynomial(n, p_shifted);

        auto c1 = proportionality_check(catalog::mu(sym_a(), sym_b()), pn, pn_shifted);
        REQUIRE(c1.proportional);
        CHECK(c1.scalar == qpow(-n) * (1 - sym_a() * sym_b() * qpow(2 * n - 2)));

        auto c2 = proportionality_check(catalog::mu(sym_c() * qpow(1), sym_d() * qpow(1)),
                                        pn_shifted, pn);
        REQUIRE(c2.proportional);
        CHECK(c2.scalar == qpow(-n) * (1 - sym_c() * sym_d() * qpow(2 * n)));
    }
}

TEST_CASE("shift relations with the printed scalars, n = 1..4") {
    catalog::AWParams p = catalog::AWParams::generic(2);
    catalog::AWParams p_up{sym_a() * qpow(1), sym_b() * qpow(1), sym_c() * qpow(1),
                           sym_d() * qpow(1), 2};
    for (int n = 1; n <= 4; ++n) {
        SymPoly pn = aw_polynomial(n, p);
        SymPoly pm = aw_polynomial(n - 1, p_up);

        auto dn = proportionality_check(catalog::tau(), pn, pm);
        REQUIRE(dn.proportional);
        CHECK(dn.scalar == qpow(n) * (1 - qpow(-2 * n)) * (1 - abcd() * qpow(2 * n - 2)));

        auto up = proportionality_check(catalog::tau_star(sym_a(), sym_b(), sym_c(), sym_d()),
                                        pm, pn);
        REQUIRE(up.proportional);
        CHECK(up.scalar == -qpow(-n));
    }
}

TEST_CASE("require_proportional throws with a residual witness") {
    // Y chi_2 is proportional to chi_1, not to chi_2.
    CHECK_THROWS_AS(require_proportional(catalog::Y(), SymPoly::chi(2), SymPoly::chi(2)),
                    NotProportional);
    RatF sigma = require_proportional(catalog::Y(), SymPoly::chi(2), SymPoly::chi(1));
    CHECK(sigma == qpow(2) - qpow(-2));
}

TEST_CASE("normalization degenerates at ab = 1 and the monic variant survives") {
    catalog::AWParams p{RatF::constant(2), RatF::constant(1, 2), RatF::constant(3),
                        RatF::constant(5), 1};
    CHECK_THROWS_AS(aw_polynomial(1, p), NormalizationVanishes);
    SymPoly monic = aw_polynomial_monic(1, p);
    CHECK(monic.chi_coeff(1) == RatF::constant(1));
    // (1-abcd) x + (e3 - e1), normalized by 1-abcd = -14
    // e3 = abc+abd+acd+bcd = 3+5+30+7.5 = 45.5, e1 = 2+.5+3+5 = 10.5; ratio -5/2
    CHECK(monic.unit_coeff(0) == RatF::constant(-5, 2));
}

TEST_CASE("monic variant agrees with the normalized one at generic parameters") {
    catalog::AWParams p = catalog::AWParams::generic(1);
    for (int n = 1; n <= 3; ++n) {
        SymPoly full = aw_polynomial(n, p);
        SymPoly monic = aw_polynomial_monic(n, p);
        CHECK(monic.chi_coeff(n) == RatF::constant(1));
        CHECK(full == monic * full.chi_coeff(n));
    }
}

TEST_CASE("RepMatrix arithmetic") {
    RepMatrix id = RepMatrix::identity(2);
    RepMatrix two = RepMatrix::scalar(2, RatF::constant(2));
    CHECK(id + id == two);
    CHECK(two - id == id);
    CHECK(id * two == two);
    CHECK(id.scaled(RatF::constant(2)) == two);
    CHECK((id - id).is_zero());
    CHECK(RepMatrix(2).is_zero());
}

TEST_CASE("two-dimensional representation matrices") {
    const RatF t = trunc_t(2); // t = s
    RepMatrix a = rep_of(catalog::A(t), 2);
    RepMatrix b = rep_of(catalog::B(t), 2);
    RepMatrix c = rep_of(catalog::C(), 2);
    RepMatrix d = rep_of(catalog::D(t), 2);

    CHECK(a.at(0, 0) == spow(-1));
    CHECK(a.at(1, 1) == spow(1));
    CHECK(a.at(0, 1).is_zero());
    CHECK(a.at(1, 0).is_zero());

    CHECK(b.at(1, 0) == RatF::constant(1, 2));
    CHECK(b.at(0, 0).is_zero());
    CHECK(b.at(0, 1).is_zero());
    CHECK(b.at(1, 1).is_zero());

    CHECK(c.at(0, 1) == RatF::constant(2));
    CHECK(c.at(0, 0).is_zero());
    CHECK(c.at(1, 0).is_zero());
    CHECK(c.at(1, 1).is_zero());

    CHECK(d.at(0, 0) == spow(1));
    CHECK(d.at(1, 1) == spow(-1));
}

TEST_CASE("lowering generator is strictly one-sided triangular at N = 3") {
    RepMatrix c = rep_of(catalog::C(), 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j <= i; ++j) CHECK(c.at(i, j).is_zero());
    CHECK(!c.at(0, 1).is_zero());
}

TEST_CASE("matrix_rep is an algebra homomorphism on the generators, N = 2..4") {
    for (int n : {2, 3, 4}) {
        const RatF t = trunc_t(n);
        std::vector<QOp> gens = {catalog::A(t), catalog::B(t), catalog::C(), catalog::D(t)};
        std::vector<RepMatrix> mats;
        for (const auto& g : gens) mats.push_back(rep_of(g, n));
        for (size_t i = 0; i < gens.size(); ++i)
            for (size_t j = 0; j < gens.size(); ++j)
                CHECK(rep_of(gens[i] * gens[j], n) == mats[i] * mats[j]);
    }
}

TEST_CASE("quadratic relations hold matrix-exactly, N = 2..4") {
    const RatF kq = qpow(1) - qpow(-1);
    const RatF kp = qpow(1) + qpow(-1);
    for (int n : {2, 3, 4}) {
        const RatF t = trunc_t(n);
        RepMatrix a = rep_of(catalog::A(t), n);
        RepMatrix b = rep_of(catalog::B(t), n);
        RepMatrix c = rep_of(catalog::C(), n);
        RepMatrix d = rep_of(catalog::D(t), n);

        CHECK(d * c == (c * d).scaled(qpow(1)));
        CHECK(c * a == (a * c).scaled(qpow(1)));
        CHECK(a * d - d * a == (c * c).scaled(kq * kq * kq / 4));
        CHECK(b * c - c * b == (a * a - d * d).scaled(1 / kq));
        RepMatrix mixed_rhs = (d * c - c * a).scaled(-(qpow(2) - qpow(-2)) / 4);
        CHECK(a * b - (b * a).scaled(qpow(1)) == mixed_rhs);
        CHECK((d * b).scaled(qpow(1)) - b * d == mixed_rhs);

        // Casimir values: AD + kq^2/(4q) C^2 = I and
        // (q^-1 A^2 + q D^2)/kq^2 + BC + kp/4 C^2 = (q t^2 + q^-1 t^-2)/kq^2 I
        CHECK(a * d + (c * c).scaled(kq * kq / (4 * qpow(1))) == RepMatrix::identity(n));
        RepMatrix om1 = (a * a).scaled(qpow(-1) / (kq * kq)) +
                        (d * d).scaled(qpow(1) / (kq * kq)) + b * c +
                        (c * c).scaled(kp / 4);
        RatF om1_val = (qpow(1) * t * t + qpow(-1) / (t * t)) / (kq * kq);
        CHECK(om1 == RepMatrix::scalar(n, om1_val));
    }
}

TEST_CASE("raising leakage vanishes exactly at the truncation point") {
    for (int n : {2, 3, 4}) {
        CHECK(rep_of(catalog::B(trunc_t(n)), n).dim() == n);
    }
}

TEST_CASE("generic spectral parameter leaks (negative control)") {
    const RatF t = RatF::sym(Core::t());
    try {
        matrix_rep(catalog::B(t), 3);
        FAIL("expected NotInvariant");
    } catch (const NotInvariant& e) {
        CHECK(e.basis_degree == 2);
        RatF leak = RatF::parse(e.leak_coefficient);
        CHECK(!leak.is_zero());
        // the leak closes exactly at t^4 = q^4, the truncation point
        CHECK(leak.subst(Core::t(), spow(2)).is_zero());
    }
}

TEST_CASE("matrix_rep rejects non-invariant spans") {
    // T_+ maps chi_1 to q z + (q z)^-1 which is not symmetric: NotSymmetric
    CHECK_THROWS_AS(matrix_rep(catalog::Tplus(), 2), NotSymmetric);
    // R1 raises every degree: leaks at the top basis element
    CHECK_THROWS_AS(matrix_rep(catalog::R1(), 3), NotInvariant);
}
