// Command-line front end: verification suites, operator evaluation,
// finite-dimensional representation checks, and the Heun-type builders.
// Every path is a thin shell over the library; no algebra lives here.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qska/awpoly.hpp"
#include "qska/catalog.hpp"
#include "qska/errors.hpp"
#include "qska/identities.hpp"
#include "qska/qop.hpp"
#include "qska/sheun.hpp"

namespace {

using namespace qska;

constexpr int kUsageError = 2;

// "a=1/2,b=2,alpha=1/1*s^2" -> symbol substitutions.  Values are parsed with
// the canonical rational-function reader, so plain integers, fractions, and
// full canonical text are all accepted.
std::map<Sym, RatF> parse_assignments(const std::string& csv) {
    std::map<Sym, RatF> out;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t end = csv.find(',', pos);
        if (end == std::string::npos) end = csv.size();
        std::string item = csv.substr(pos, end - pos);
        pos = end + 1;
        if (item.empty()) continue;
        size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw ParseError("parameter assignment must look like name=value: " + item);
        std::string name = item.substr(0, eq);
        out[Sym::intern(name)] = RatF::parse(item.substr(eq + 1));
    }
    return out;
}

QOp substitute(QOp op, const std::map<Sym, RatF>& assign) {
    if (assign.empty()) return op;
    std::vector<std::pair<int, RatF>> terms;
    for (const auto& [k, c] : op.terms()) {
        RatF v = c;
        for (const auto& [s, val] : assign) v = v.subst(s, val);
        terms.emplace_back(k, std::move(v));
    }
    return QOp::from_terms(std::move(terms));
}

// Operand of `op equal`: either a catalog name or file:PATH holding the JSON
// serialization of an operator.
QOp load_operand(const std::string& spec, const std::map<Sym, RatF>& assign) {
    if (spec.rfind("file:", 0) == 0) {
        std::ifstream in(spec.substr(5));
        if (!in) throw ParseError("cannot open operator file: " + spec.substr(5));
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return substitute(QOp::from_json(text), assign);
    }
    return substitute(catalog::by_name(spec), assign);
}

int parse_chi_degree(const std::string& spec) {
    if (spec.rfind("chi:", 0) != 0)
        throw ParseError("operand must have the form chi:N: " + spec);
    size_t used = 0;
    int n = std::stoi(spec.substr(4), &used);
    if (used != spec.size() - 4 || n < 0)
        throw ParseError("operand must have the form chi:N with N >= 0: " + spec);
    return n;
}

std::vector<RatF> parse_value_list(const std::string& csv, size_t expected,
                                   const char* what, const char* const* generic_names) {
    std::vector<RatF> out;
    if (csv == "generic") {
        for (size_t i = 0; i < expected; ++i)
            out.push_back(RatF::sym(Sym::intern(generic_names[i])));
        return out;
    }
    size_t pos = 0;
    while (pos <= csv.size() && out.size() < expected + 1) {
        size_t end = csv.find(',', pos);
        if (end == std::string::npos) end = csv.size();
        out.push_back(RatF::parse(csv.substr(pos, end - pos)));
        if (end == csv.size()) break;
        pos = end + 1;
    }
    if (out.size() != expected)
        throw ParseError(std::string(what) + " needs exactly " + std::to_string(expected) +
                         " comma-separated values");
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + out_path);
    out << text;
}

// ---------------------------------------------------------------- verify --

struct VerifyArgs {
    std::vector<std::string> suites{"all"};
    identities::Options opt;
    std::string format = "text";
    std::string out_path;
};

int cmd_verify(const VerifyArgs& a) {
    std::vector<std::string> ids;
    bool all = false;
    for (const std::string& s : a.suites) {
        size_t pos = 0;
        while (pos <= s.size()) {
            size_t end = s.find(',', pos);
            if (end == std::string::npos) end = s.size();
            std::string id = s.substr(pos, end - pos);
            if (id == "all") {
                all = true;
            } else if (!id.empty()) {
                if (!identities::is_registered(id)) {
                    std::fprintf(stderr, "unknown identity id: %s\n", id.c_str());
                    return kUsageError;
                }
                ids.push_back(id);
            }
            if (end == s.size()) break;
            pos = end + 1;
        }
    }
    if (all && !ids.empty()) {
        std::fprintf(stderr, "--suite all cannot be combined with explicit ids\n");
        return kUsageError;
    }
    const identities::Report report =
        all || ids.empty() ? identities::run_all(a.opt) : identities::run_suite(ids, a.opt);
    emit(a.format == "json" ? report.json() : report.text(), a.out_path);
    return report.exit_code();
}

// -------------------------------------------------------------------- op --

int cmd_op_list() {
    for (const std::string& n : catalog::names()) std::printf("%s\n", n.c_str());
    return 0;
}

int cmd_op_apply(const std::string& name, const std::string& to, const std::string& params) {
    const QOp op = substitute(catalog::by_name(name), parse_assignments(params));
    const SymPoly image = apply_sym(op, SymPoly::chi(parse_chi_degree(to)));
    std::printf("%s\n", image.to_ratf().text().c_str());
    return 0;
}

int cmd_op_compose(const std::string& names_csv, const std::string& params,
                   const std::string& format) {
    const auto assign = parse_assignments(params);
    std::vector<QOp> ops;
    size_t pos = 0;
    while (pos <= names_csv.size()) {
        size_t end = names_csv.find(',', pos);
        if (end == std::string::npos) end = names_csv.size();
        std::string name = names_csv.substr(pos, end - pos);
        if (!name.empty()) ops.push_back(substitute(catalog::by_name(name), assign));
        if (end == names_csv.size()) break;
        pos = end + 1;
    }
    if (ops.empty()) throw ParseError("--names needs at least one operator name");
    QOp result = ops.front();
    for (size_t i = 1; i < ops.size(); ++i) result = compose(result, ops[i]);
    if (format == "json") {
        std::printf("%s\n", result.json().c_str());
    } else {
        for (const auto& [k, c] : result.terms())
            std::printf("shift %+d: %s\n", k, c.text().c_str());
        if (result.is_zero()) std::printf("0\n");
    }
    return 0;
}

int cmd_op_equal(const std::string& lhs, const std::string& rhs, const std::string& params) {
    const auto assign = parse_assignments(params);
    const bool eq = op_equal(load_operand(lhs, assign), load_operand(rhs, assign));
    std::printf("%s\n", eq ? "true" : "false");
    return 0;
}

// -------------------------------------------------------------------- aw --

int cmd_aw_eval(int n, int base, const std::string& params) {
    catalog::AWParams p = catalog::AWParams::generic(base);
    if (params != "generic") {
        const auto assign = parse_assignments(params);
        auto pick = [&](const char* name, RatF fallback) {
            auto it = assign.find(Sym::intern(name));
            return it == assign.end() ? fallback : it->second;
        };
        p.a = pick("a", p.a);
        p.b = pick("b", p.b);
        p.c = pick("c", p.c);
        p.d = pick("d", p.d);
    }
    std::printf("%s\n", aw_polynomial(n, p).text().c_str());
    return 0;
}

// ------------------------------------------------------------------- rep --

int cmd_rep(int N, bool skip_trunc) {
    const RatF q = qpow(1), qi = qpow(-1);
    const RatF kq = q - qi;
    const RatF t = skip_trunc ? RatF::sym(Core::t()) : spow(N - 1);
    const QOp A = catalog::A(t), B = catalog::B(t), C = catalog::C(), D = catalog::D(t);
    const char* names[4] = {"A", "B", "C", "D"};
    const QOp* ops[4] = {&A, &B, &C, &D};
    RepMatrix m[4] = {RepMatrix(N), RepMatrix(N), RepMatrix(N), RepMatrix(N)};
    for (int i = 0; i < 4; ++i) {
        try {
            m[i] = matrix_rep(*ops[i], N);
        } catch (const NotInvariant& e) {
            std::printf("%s: span of chi_0..chi_%d is not invariant: %s\n", names[i], N - 1,
                        e.what());
            std::printf("leak at basis degree %d: %s\n", e.basis_degree,
                        e.leak_coefficient.c_str());
            return 1;
        }
        std::printf("%s =\n%s\n\n", names[i], m[i].text().c_str());
    }
    const RepMatrix &mA = m[0], &mB = m[1], &mC = m[2], &mD = m[3];
    const RatF om1 = (q * t.pow(2) + qi * t.pow(-2)) / kq.pow(2);
    struct Check {
        const char* label;
        RepMatrix lhs, rhs;
    };
    const std::vector<Check> checks = {
        {"dc-exchange", mD * mC, (mC * mD).scaled(q)},
        {"ca-exchange", mC * mA, (mA * mC).scaled(q)},
        {"ad-commutator", mA * mD - mD * mA, (mC * mC).scaled(kq.pow(3) / 4)},
        {"bc-commutator", mB * mC - mC * mB, (mA * mA - mD * mD).scaled(kq.inv())},
        {"ab-mixed", mA * mB - (mB * mA).scaled(q),
         (mD * mC - mC * mA).scaled(-(q.pow(2) - qi.pow(2)) / 4)},
        {"db-mixed", (mD * mB).scaled(q) - mB * mD,
         (mD * mC - mC * mA).scaled(-(q.pow(2) - qi.pow(2)) / 4)},
        {"casimir-0", mA * mD + (mC * mC).scaled(kq.pow(2) / (4 * q)), RepMatrix::identity(N)},
        {"casimir-1",
         (mA * mA).scaled(qi / kq.pow(2)) + (mD * mD).scaled(q / kq.pow(2)) + mB * mC +
             (mC * mC).scaled((q + qi) / 4),
         RepMatrix::scalar(N, om1)},
    };
    bool ok = true;
    for (const Check& c : checks) {
        const bool pass = c.lhs == c.rhs;
        ok = ok && pass;
        std::printf("%-14s %s\n", c.label, pass ? "ok" : "FAIL");
    }
    return ok ? 0 : 1;
}

// ----------------------------------------------------------------- sheun --

int cmd_sheun_derive() {
    const sheun::RaisingSolution sol = sheun::solve_raising(sheun::SHeunParams::symbolic());
    std::printf("A1: %s\n", sol.A1.text().c_str());
    return 0;
}

// ------------------------------------------------------------------ heun --

int cmd_heun_build(const std::string& alphas, const std::string& betas) {
    static const char* const alpha_names[6] = {"alpha1", "alpha2", "alpha3",
                                               "alpha4", "alpha5", "alpha6"};
    static const char* const beta_names[3] = {"beta1", "beta2", "beta3"};
    const std::vector<RatF> av = parse_value_list(alphas, 6, "--alphas", alpha_names);
    const std::vector<RatF> bv = parse_value_list(betas, 3, "--betas", beta_names);
    const sheun::QHawParams p{av[0], av[1], av[2], av[3], av[4], av[5], bv[0], bv[1], bv[2]};
    const QOp op = sheun::build_qhaw(p);
    const sheun::HeunData hd = sheun::extract_heun_data(op);
    for (int k = 0; k < 7; ++k)
        std::printf("r%d: %s\n", k, hd.r[static_cast<size_t>(k)].text().c_str());
    std::printf("p1_const: %s\n", hd.p1_const.text().c_str());
    std::printf("p1_x: %s\n", hd.p1_x.text().c_str());
    std::printf("%s\n", op.json().c_str());
    return 0;
}

int cmd_heun_reduce(const std::string& word) {
    const sheun::Coordinates c = sheun::reduce_quadratic(sheun::word_parse(word));
    std::printf("%s\n", c.text().c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-difference operator engine"};
    app.require_subcommand(1);

    VerifyArgs va;
    std::uint64_t seed = 0;
    CLI::App* verify = app.add_subcommand("verify", "run identity suites and print a report");
    verify->add_option("--suite", va.suites, "identity ids (comma separable) or 'all'");
    verify->add_option("--seed", seed, "probe seed")->envname("QSKA_SEED");
    verify->add_option("--jobs", va.opt.jobs, "parallel workers")->check(CLI::PositiveNumber);
    verify->add_flag("--fast", va.opt.fast, "probe specializations before the symbolic run");
    verify->add_flag("--timings", va.opt.timings, "record wall time per identity");
    verify->add_option("--format", va.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--out", va.out_path, "write the report to a file instead of stdout");

    CLI::App* op = app.add_subcommand("op", "evaluate and compare catalog operators");
    op->require_subcommand(1);
    CLI::App* op_list = op->add_subcommand("list", "print all catalog operator names");
    std::string op_name, op_to, op_params, op_names_csv, op_format = "json";
    std::string eq_lhs, eq_rhs;
    CLI::App* op_apply = op->add_subcommand("apply", "apply an operator to chi:N");
    op_apply->add_option("--name", op_name, "catalog operator name")->required();
    op_apply->add_option("--to", op_to, "chi:N")->required();
    op_apply->add_option("--params", op_params, "name=value,... substitutions");
    CLI::App* op_compose = op->add_subcommand("compose", "compose operators left to right");
    op_compose->add_option("--names", op_names_csv, "comma-separated catalog names")->required();
    op_compose->add_option("--params", op_params, "name=value,... substitutions");
    op_compose->add_option("--format", op_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    CLI::App* op_equal = op->add_subcommand("equal", "decide exact equality of two operators");
    op_equal->add_option("--lhs", eq_lhs, "catalog name or file:PATH")->required();
    op_equal->add_option("--rhs", eq_rhs, "catalog name or file:PATH")->required();
    op_equal->add_option("--params", op_params, "name=value,... substitutions");

    int aw_n = 0, aw_base = 2;
    std::string aw_params = "generic";
    CLI::App* aw = app.add_subcommand("aw", "grid polynomial family");
    aw->require_subcommand(1);
    CLI::App* aw_eval = aw->add_subcommand("eval", "print the chi-expansion of p_n");
    aw_eval->add_option("--n", aw_n, "degree")->required()->check(CLI::NonNegativeNumber);
    aw_eval->add_option("--base", aw_base, "base exponent r (operator lives in base q^r)");
    aw_eval->add_option("--params", aw_params, "a=..,b=..,c=..,d=.. or 'generic'");

    int rep_N = 0;
    bool rep_skip_trunc = false;
    CLI::App* rep = app.add_subcommand("rep", "finite-dimensional matrices and their checks");
    rep->add_option("--N", rep_N, "dimension (N >= 1)")->required();
    rep->add_flag("--skip-trunc", rep_skip_trunc,
                  "keep t generic instead of the truncation value");

    CLI::App* sheun_cmd = app.add_subcommand("sheun", "first-order degree-preserving family");
    sheun_cmd->require_subcommand(1);
    CLI::App* sheun_derive =
        sheun_cmd->add_subcommand("derive", "solve the raising conditions symbolically");

    std::string heun_alphas = "generic", heun_betas = "generic", heun_word;
    CLI::App* heun = app.add_subcommand("heun", "three-shift quadratic combinations");
    heun->require_subcommand(1);
    CLI::App* heun_build = heun->add_subcommand("build", "build the nine-term combination");
    heun_build->add_option("--alphas", heun_alphas, "6 values or 'generic'");
    heun_build->add_option("--betas", heun_betas, "3 values or 'generic'");
    CLI::App* heun_reduce =
        heun->add_subcommand("reduce", "normalize a quadratic word to basis coordinates");
    heun_reduce->add_option("--word", heun_word, "s-expression over L,M1,M2,R1,R2")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (verify->parsed()) {
            va.opt.seed = seed;
            return cmd_verify(va);
        }
        if (op->parsed()) {
            if (op_list->parsed()) return cmd_op_list();
            if (op_apply->parsed()) return cmd_op_apply(op_name, op_to, op_params);
            if (op_compose->parsed()) return cmd_op_compose(op_names_csv, op_params, op_format);
            if (op_equal->parsed()) return cmd_op_equal(eq_lhs, eq_rhs, op_params);
        }
        if (aw->parsed() && aw_eval->parsed()) return cmd_aw_eval(aw_n, aw_base, aw_params);
        if (rep->parsed()) {
            if (rep_N < 1) {
                std::fprintf(stderr, "--N must be at least 1\n");
                return kUsageError;
            }
            return cmd_rep(rep_N, rep_skip_trunc);
        }
        if (sheun_cmd->parsed() && sheun_derive->parsed()) return cmd_sheun_derive();
        if (heun->parsed()) {
            if (heun_build->parsed()) return cmd_heun_build(heun_alphas, heun_betas);
            if (heun_reduce->parsed()) return cmd_heun_reduce(heun_word);
        }
    } catch (const ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kUsageError;
    } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    }
    return kUsageError;
}
