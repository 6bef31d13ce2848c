// Acceptance gate: one PASS/FAIL line per criterion, exit 1 if any fail.
// Every check is exact; a criterion passes only when each of its assertions
// holds symbolically (no tolerances).  Failures carry a short diagnostic so
// the offending assertion can be found without rerunning under a debugger.

#include "qska/awpoly.hpp"
#include "qska/catalog.hpp"
#include "qska/errors.hpp"
#include "qska/identities.hpp"
#include "qska/qop.hpp"
#include "qska/sheun.hpp"

#include "json.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef QSKA_CLI_PATH
#error "QSKA_CLI_PATH must point at the CLI binary"
#endif

using namespace qska;

namespace {

struct CheckFailure {
    std::string what;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw CheckFailure{what};
}

RatF sym_a() { return RatF::sym(Core::a()); }
RatF sym_b() { return RatF::sym(Core::b()); }
RatF sym_c() { return RatF::sym(Core::c()); }
RatF sym_d() { return RatF::sym(Core::d()); }
RatF abcd() { return sym_a() * sym_b() * sym_c() * sym_d(); }

// ---------------------------------------------------------------------------
// 1. Identity suite: every registered case must pass.  Flagged entries
//    (proportionality holds, displayed scalar differs) are tolerated only
//    when the witness records both scalars.  Any fail fails the criterion.

std::string criterion_identities() {
    identities::Options opt;
    opt.seed = 42;
    identities::Report rep = identities::run_all(opt);

    int pass = 0, flagged = 0, fail = 0;
    std::vector<std::string> failing, flags;
    for (const auto& e : rep.results) {
        switch (e.status) {
            case identities::Status::kPass:
                ++pass;
                break;
            case identities::Status::kFlagged: {
                ++flagged;
                flags.push_back(e.id);
                // both scalars must be recorded, else the flag is not
                // acceptable and counts as a failure of the criterion
                auto doc = nlohmann::json::parse(e.witness);
                auto has_both = [](const nlohmann::json& w) {
                    return w.contains("printed") && w.contains("computed");
                };
                bool recorded = doc.is_array()
                                    ? [&] {
                                          for (const auto& w : doc)
                                              if (!has_both(w)) return false;
                                          return !doc.empty();
                                      }()
                                    : has_both(doc);
                require(recorded, "flagged entry " + e.id + " lacks the scalar pair");
                break;
            }
            case identities::Status::kFail:
                ++fail;
                failing.push_back(e.id);
                break;
        }
    }

    std::ostringstream detail;
    detail << pass << " pass, " << flagged << " flagged";
    if (!flags.empty()) {
        detail << " [";
        for (size_t i = 0; i < flags.size(); ++i) detail << (i ? ", " : "") << flags[i];
        detail << "; both scalars recorded]";
    }
    detail << ", " << fail << " fail";
    if (!failing.empty()) {
        detail << " [";
        for (size_t i = 0; i < failing.size(); ++i) detail << (i ? ", " : "") << failing[i];
        detail << "]";
    }
    require(fail == 0, "identity suite: " + detail.str());
    return "identity suite: " + detail.str();
}

// ---------------------------------------------------------------------------
// 2. Eigenvalue reproduction, n = 0..5, generic symbolic parameters: the
//    grid operator, the factorized product, and the composite of the two
//    contiguity operators are all diagonal with the displayed eigenvalues.

std::string criterion_eigenvalues() {
    catalog::AWParams p1 = catalog::AWParams::generic(1);
    QOp grid = catalog::AW(p1);
    for (int n = 0; n <= 5; ++n) {
        auto er = eigencheck(grid, aw_polynomial(n, p1));
        require(er.is_eigen, "grid operator not diagonal at degree " + std::to_string(n));
        RatF lam = qpow(-n) * (1 - qpow(n)) * (1 - abcd() * qpow(n - 1));
        require(er.eigenvalue == catalog::aw_eigenvalue(p1, n) && er.eigenvalue == lam,
                "grid eigenvalue mismatch at degree " + std::to_string(n));
    }

    catalog::AWParams p2 = catalog::AWParams::generic(2);
    QOp fact = catalog::M(sym_a() + sym_b(), -(sym_a() * sym_b()), RatF::constant(1)) *
               catalog::M((sym_c() + sym_d()) * qpow(-1), -(sym_c() * sym_d()) * qpow(-2),
                          RatF::constant(1));
    for (int n = 0; n <= 5; ++n) {
        auto er = eigencheck(fact, aw_polynomial(n, p2));
        require(er.is_eigen, "factorized product not diagonal at degree " + std::to_string(n));
        RatF rho = qpow(-2 * n) * (1 - sym_a() * sym_b() * qpow(2 * n)) *
                   (1 - sym_c() * sym_d() * qpow(2 * n - 2));
        require(er.eigenvalue == rho,
                "factorized eigenvalue mismatch at degree " + std::to_string(n));
    }

    QOp km = catalog::mu(sym_c() * qpow(1), sym_d() * qpow(1)) * catalog::mu(sym_a(), sym_b());
    for (int n = 0; n <= 5; ++n) {
        auto er = eigencheck(km, aw_polynomial(n, p2));
        require(er.is_eigen, "contiguity composite not diagonal at degree " + std::to_string(n));
        RatF rho_bar = qpow(-2 * n) * (1 - sym_c() * sym_d() * qpow(2 * n)) *
                       (1 - sym_a() * sym_b() * qpow(2 * n - 2));
        require(er.eigenvalue == rho_bar,
                "composite eigenvalue mismatch at degree " + std::to_string(n));
    }
    return "grid / factorized / composite eigenvalues exact for n = 0..5";
}

// ---------------------------------------------------------------------------
// 3. Contiguity and shift relations, n = 1..4, with the displayed scalar
//    factors, all exact.

std::string criterion_contiguity() {
    catalog::AWParams p = catalog::AWParams::generic(2);
    catalog::AWParams p_shifted{sym_a() * qpow(-1), sym_b() * qpow(-1), sym_c() * qpow(1),
                                sym_d() * qpow(1), 2};
    catalog::AWParams p_up{sym_a() * qpow(1), sym_b() * qpow(1), sym_c() * qpow(1),
                           sym_d() * qpow(1), 2};
    for (int n = 1; n <= 4; ++n) {
        SymPoly pn = aw_polynomial(n, p);
        SymPoly pn_shifted = aw_polynomial(n, p_shifted);
        SymPoly pm = aw_polynomial(n - 1, p_up);

        auto c1 = proportionality_check(catalog::mu(sym_a(), sym_b()), pn, pn_shifted);
        require(c1.proportional && c1.scalar == qpow(-n) * (1 - sym_a() * sym_b() * qpow(2 * n - 2)),
                "first contiguity scalar mismatch at degree " + std::to_string(n));

        auto c2 = proportionality_check(catalog::mu(sym_c() * qpow(1), sym_d() * qpow(1)),
                                        pn_shifted, pn);
        require(c2.proportional && c2.scalar == qpow(-n) * (1 - sym_c() * sym_d() * qpow(2 * n)),
                "second contiguity scalar mismatch at degree " + std::to_string(n));

        auto dn = proportionality_check(catalog::tau(), pn, pm);
        require(dn.proportional &&
                    dn.scalar == qpow(n) * (1 - qpow(-2 * n)) * (1 - abcd() * qpow(2 * n - 2)),
                "lowering shift scalar mismatch at degree " + std::to_string(n));

        auto up = proportionality_check(catalog::tau_star(sym_a(), sym_b(), sym_c(), sym_d()),
                                        pm, pn);
        require(up.proportional && up.scalar == -qpow(-n),
                "raising shift scalar mismatch at degree " + std::to_string(n));
    }
    return "contiguity and shift scalars exact for n = 1..4";
}

// ---------------------------------------------------------------------------
// 4. First-order family: the raising solution matches the displayed
//    degree-four numerator, the two defining constraints impose nothing new
//    up to degree 10, the five unit-parameter members come out exactly, and
//    the degree profiles behave as advertised for n <= 8.

std::string criterion_first_order() {
    sheun::SHeunParams sp = sheun::SHeunParams::symbolic();
    sheun::RaisingSolution sol = sheun::solve_raising(sp);
    const RatF z = RatF::sym(Core::z());
    const RatF q = qpow(1);
    RatF pi4 = (sp.a12 * q - sp.a01) * z.pow(4) + (q * sp.a11 - sp.a00) * z.pow(3) -
               ((1 + qpow(2)) * sp.a01 - q * sp.a10) * z.pow(2) +
               q * (sp.a11 - q * sp.a00) * z + q * (sp.a12 - q * sp.a01);
    require(sol.A1 == pi4 / (z * (1 - z * z) * (1 - qpow(2))),
            "raising coefficient differs from the displayed numerator");
    require(sol.A2 == mirror(sol.A1), "lowering coefficient is not the mirror");

    require(sheun::verify_no_new_constraints(10), "a higher degree imposes a new constraint");

    auto unit = [](int which, const RatF& value) {
        sheun::SHeunParams u{RatF(), RatF(), RatF(), RatF(), RatF()};
        RatF* fields[5] = {&u.a00, &u.a01, &u.a10, &u.a11, &u.a12};
        *fields[which] = value;
        return u;
    };
    require(op_equal(sheun::make_sheun(unit(2, RatF::constant(1))), catalog::L()),
            "lowering unit member mismatch");
    require(op_equal(sheun::make_sheun(unit(0, RatF::constant(1))), catalog::M1()),
            "first stabilizing unit member mismatch");
    require(op_equal(sheun::make_sheun(unit(3, RatF::constant(1))), catalog::M2()),
            "second stabilizing unit member mismatch");
    require(op_equal(sheun::make_sheun(unit(1, RatF::constant(1))), catalog::R1()),
            "first raising unit member mismatch");
    sheun::SHeunParams r2 = unit(1, qpow(1));
    r2.a12 = RatF::constant(1);
    require(op_equal(sheun::make_sheun(r2), catalog::R2()),
            "second raising unit member mismatch");

    for (const auto& row : degree_profile(catalog::L(), 8))
        require(row.out_degree == row.n - 1, "lowering profile broken at " + std::to_string(row.n));
    for (const auto& row : degree_profile(catalog::M1(), 8))
        require(row.out_degree == row.n, "M1 profile broken at " + std::to_string(row.n));
    for (const auto& row : degree_profile(catalog::M2(), 8))
        require(row.out_degree == (row.n == 0 ? -1 : row.n),
                "M2 profile broken at " + std::to_string(row.n));
    for (const char* name : {"R1", "R2"})
        for (const auto& row : degree_profile(catalog::by_name(name), 8))
            require(row.out_degree == row.n + 1,
                    std::string(name) + " profile broken at " + std::to_string(row.n));
    return "raising solution, constraint sweep to 10, five unit members, profiles to 8";
}

// ---------------------------------------------------------------------------
// 5. Second-order family: the extracted numerator coefficients and the
//    affine zero-shift remainder match the displayed formulas with fully
//    symbolic coefficients; dropping the raising terms stabilizes degrees
//    up to 8; 50 seeded factorized instances respect the raising bound.

std::string criterion_second_order() {
    sheun::QHawParams p = sheun::QHawParams::symbolic();
    sheun::HeunData hd = sheun::extract_heun_data(sheun::build_qhaw(p));
    const RatF q = qpow(1);
    const std::array<RatF, 7> want = {
        p.beta2 * qpow(4) - p.beta3 * qpow(4) + p.beta1 * qpow(3) + p.beta3 * qpow(2),
        p.alpha3 * qpow(4) - p.alpha4 * qpow(3) + p.alpha6 * qpow(2),
        -p.beta3 * qpow(6) + p.beta1 * qpow(5) + 2 * p.beta2 * qpow(4) +
            (p.alpha5 + p.beta1) * qpow(3) + (p.alpha2 + p.beta2 - p.beta3) * qpow(2) +
            p.beta1 * q,
        -p.alpha4 * qpow(5) + (p.alpha3 + p.alpha6) * qpow(4) + p.alpha1 * qpow(3) +
            (p.alpha3 + p.alpha6) * qpow(2) - p.alpha4 * q,
        -p.beta3 * qpow(6) + p.beta1 * qpow(5) + (p.alpha2 + p.beta2 - p.beta3) * qpow(4) +
            (p.alpha5 + p.beta1) * qpow(3) + 2 * p.beta2 * qpow(2) + p.beta1 * q,
        p.alpha6 * qpow(4) - p.alpha4 * qpow(3) + p.alpha3 * qpow(2),
        p.beta1 * qpow(3) + p.beta2 * qpow(2),
    };
    for (size_t k = 0; k < want.size(); ++k)
        require(hd.r[k] == want[k], "numerator coefficient r" + std::to_string(k) + " mismatch");
    require(hd.p1_const == p.alpha3 && hd.p1_x == p.beta2,
            "affine zero-shift remainder mismatch");

    sheun::QHawParams stab = sheun::QHawParams::symbolic();
    stab.beta1 = stab.beta2 = stab.beta3 = RatF();
    for (const auto& row : degree_profile(sheun::build_qhaw(stab), 8))
        require(row.out_degree <= row.n,
                "raising-free combination grows degree at " + std::to_string(row.n));

    std::mt19937_64 rng(77);
    auto random_scalar = [&rng] {
        std::uniform_int_distribution<int> num(-4, 4);
        std::uniform_int_distribution<int> den(1, 3);
        int n = num(rng);
        return RatF::constant(n == 0 ? 1 : n, den(rng));
    };
    for (int i = 0; i < 50; ++i) {
        sheun::FactorInput in;
        for (auto& v : in.xi) v = random_scalar();
        for (auto& v : in.eta) v = random_scalar();
        in.kappa = random_scalar();
        sheun::FactorResult res = sheun::factor_expand(in);
        for (const auto& row : degree_profile(res.op, 6))
            require(row.out_degree <= row.n + 1,
                    "factorized instance " + std::to_string(i) + " exceeds the raising bound");
    }
    return "numerator formulas, stabilized profile to 8, 50 factorized instances bounded";
}

// ---------------------------------------------------------------------------
// 6. Finite-dimensional representations: at the truncation point t = s^(N-1)
//    the four generators restrict to N x N matrices satisfying the quadratic
//    relations and both central elements exactly, for N = 2, 3, 4; with
//    generic t the raising generator leaks (negative control).

std::string criterion_representations() {
    const RatF kq = qpow(1) - qpow(-1);
    const RatF kp = qpow(1) + qpow(-1);
    for (int n : {2, 3, 4}) {
        const RatF t = spow(n - 1);
        RepMatrix a = matrix_rep(catalog::A(t), n);
        RepMatrix b = matrix_rep(catalog::B(t), n);
        RepMatrix c = matrix_rep(catalog::C(), n);
        RepMatrix d = matrix_rep(catalog::D(t), n);
        const std::string at = " at N = " + std::to_string(n);

        require(d * c == (c * d).scaled(qpow(1)), "DC exchange fails" + at);
        require(c * a == (a * c).scaled(qpow(1)), "CA exchange fails" + at);
        require(a * d - d * a == (c * c).scaled(kq * kq * kq / 4), "[A,D] relation fails" + at);
        require(b * c - c * b == (a * a - d * d).scaled(1 / kq), "[B,C] relation fails" + at);
        RepMatrix mixed_rhs = (d * c - c * a).scaled(-(qpow(2) - qpow(-2)) / 4);
        require(a * b - (b * a).scaled(qpow(1)) == mixed_rhs, "AB relation fails" + at);
        require((d * b).scaled(qpow(1)) - b * d == mixed_rhs, "DB relation fails" + at);

        require(a * d + (c * c).scaled(kq * kq / (4 * qpow(1))) == RepMatrix::identity(n),
                "first central element is not the identity" + at);
        RepMatrix om1 = (a * a).scaled(qpow(-1) / (kq * kq)) +
                        (d * d).scaled(qpow(1) / (kq * kq)) + b * c + (c * c).scaled(kp / 4);
        RatF om1_val = (qpow(1) * t * t + qpow(-1) / (t * t)) / (kq * kq);
        require(om1 == RepMatrix::scalar(n, om1_val),
                "second central element is not the displayed scalar" + at);
    }

    bool leaked = false;
    try {
        matrix_rep(catalog::B(RatF::sym(Core::t())), 3);
    } catch (const NotInvariant& e) {
        RatF leak = RatF::parse(e.leak_coefficient);
        leaked = !leak.is_zero() && leak.subst(Core::t(), spow(2)).is_zero();
    }
    require(leaked, "generic spectral parameter did not leak with a vanishing-at-truncation witness");
    return "relations and central elements exact for N = 2..4; generic t leaks";
}

// ---------------------------------------------------------------------------
// 7. Rewriter soundness: 100 seeded words of generator degree <= 2 (with at
//    most one raising factor per product) normalize to coordinates whose
//    realization equals the direct realization, exactly.

std::string criterion_rewriter() {
    using sheun::Gen;
    using sheun::OpWord;
    std::mt19937_64 rng(2024);
    auto random_scalar = [&rng] {
        std::uniform_int_distribution<int> num(-4, 4);
        std::uniform_int_distribution<int> den(1, 3);
        int n = num(rng);
        return RatF::constant(n == 0 ? 1 : n, den(rng));
    };
    auto random_word = [&] {
        std::uniform_int_distribution<int> nterms(1, 4);
        std::uniform_int_distribution<int> kind(0, 2);
        std::uniform_int_distribution<int> any(0, 4);
        std::uniform_int_distribution<int> stab(0, 2);
        auto gen_of = [](int i) { return static_cast<Gen>(i); };
        std::vector<OpWord> terms;
        int n = nterms(rng);
        for (int i = 0; i < n; ++i) {
            OpWord scalar = OpWord::constant(random_scalar());
            switch (kind(rng)) {
                case 0:
                    terms.push_back(scalar);
                    break;
                case 1:
                    terms.push_back(OpWord::product({scalar, OpWord::generator(gen_of(any(rng)))}));
                    break;
                default: {
                    int g1 = any(rng);
                    int g2 = (g1 >= 3) ? stab(rng) : any(rng);
                    terms.push_back(OpWord::product({scalar, OpWord::generator(gen_of(g1)),
                                                     OpWord::generator(gen_of(g2))}));
                    break;
                }
            }
        }
        return terms.size() == 1 ? terms.front() : OpWord::sum(std::move(terms));
    };
    for (int i = 0; i < 100; ++i) {
        OpWord w = random_word();
        sheun::Coordinates c = sheun::reduce_quadratic(w);
        require(op_equal(c.realize(), sheun::realize(w)),
                "coordinates of word " + std::to_string(i) + " realize a different operator");
    }
    return "100 seeded quadratic words normalize soundly";
}

// ---------------------------------------------------------------------------
// 8. Determinism: two CLI runs of the full suite with a fixed seed produce
//    byte-identical JSON reports.

struct CliRun {
    int exit_code;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    std::string cmd = std::string("'") + QSKA_CLI_PATH + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw CheckFailure{"could not spawn the CLI"};
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string criterion_determinism() {
    const std::string args = "verify --suite all --format json --seed 42";
    CliRun first = run_cli(args);
    CliRun second = run_cli(args);
    require(!first.out.empty(), "empty report");
    require(first.out == second.out, "reports differ between runs");
    require(first.exit_code == second.exit_code, "exit codes differ between runs");
    return "two seeded full-suite reports are byte-identical";
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<std::string()> run;
    };
    const std::vector<Criterion> criteria = {
        {"criterion-1", criterion_identities},
        {"criterion-2", criterion_eigenvalues},
        {"criterion-3", criterion_contiguity},
        {"criterion-4", criterion_first_order},
        {"criterion-5", criterion_second_order},
        {"criterion-6", criterion_representations},
        {"criterion-7", criterion_rewriter},
        {"criterion-8", criterion_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::string line;
        try {
            std::string detail = c.run();
            line = std::string("PASS ") + c.name + ": " + detail;
        } catch (const CheckFailure& f) {
            ++failures;
            line = std::string("FAIL ") + c.name + ": " + f.what;
        } catch (const std::exception& e) {
            ++failures;
            line = std::string("FAIL ") + c.name + ": unexpected exception: " + e.what();
        }
        std::printf("%s\n", line.c_str());
        std::fflush(stdout);
    }
    if (failures > 0) std::printf("acceptance: %d of 8 criteria failed\n", failures);
    else std::printf("acceptance: all 8 criteria passed\n");
    return failures > 0 ? 1 : 0;
}
