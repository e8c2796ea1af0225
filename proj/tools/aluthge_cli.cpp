// aluthge: polar decompositions, Aluthge transforms, commutants and the
// verification suites from the command line.
//
// Exit status: 0 pass, 1 verification failure, 2 usage or input error.

#include "aluthge/aluthge.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace aluthge;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

class UsageError : public Error {
public:
    using Error::Error;
};

double parse_p(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "Inf") return kInf;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("--p must be a number or 'inf', got " + s);
    }
    if (used != s.size()) throw UsageError("--p must be a number or 'inf', got " + s);
    return v;
}

const ComplexMatrix& need(const MatrixBundle& b, const std::string& name) {
    auto it = b.find(name);
    if (it == b.end()) throw UsageError("input document has no matrix \"" + name + "\"");
    return it->second;
}

ComplexMatrix b_or_a(const MatrixBundle& b) {
    auto it = b.find("B");
    return it == b.end() ? need(b, "A") : it->second;
}

Json report_json(const FpReport& r) {
    Json j = {{"holds", r.holds}, {"max_residual", r.max_residual}, {"threshold", r.threshold}, {"com_dim", r.com_dim}};
    j["witness"] = r.witness ? matrix_to_json(*r.witness) : Json(nullptr);
    return j;
}

Json report_json(const InequalityReport& r) {
    Json j = {{"lhs", r.lhs},     {"rhs", r.rhs},     {"slack", r.slack}, {"hypotheses_ok", r.hypotheses_ok},
              {"a_value", r.a_value}, {"p", json_number(r.p)}, {"scale", r.scale}, {"threshold", r.threshold},
              {"holds", r.holds}};
    if (r.block_lhs) j["block_lhs"] = *r.block_lhs;
    if (r.block_rhs) j["block_rhs"] = *r.block_rhs;
    if (r.psi) j["psi"] = *r.psi;
    return j;
}

struct Options {
    std::string input = "-";
    std::string out;
    std::optional<double> tol;
};

Tolerances effective_tolerances(const Options& o) {
    Tolerances t = Tolerances::from_env();
    if (o.tol) t.residual_rel = *o.tol;
    t.validate();
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polar decompositions, Aluthge transforms, commutants and verification suites"};
    app.require_subcommand(1);
    Options opt;

    auto add_io = [&](CLI::App* sub) {
        sub->add_option("-i,--input", opt.input, "Matrix or bundle document ('-' for stdin)");
        sub->add_option("-o,--out", opt.out, "Write the result here instead of stdout");
        sub->add_option("--tol", opt.tol, "Override residual_rel (also ALUTHGE_TOL)");
    };

    std::string polar_mode = "unitary_extension";
    auto* polar = app.add_subcommand("polar", "Polar decomposition A = U|A|");
    add_io(polar);
    polar->add_option("--mode", polar_mode, "unitary_extension or partial_isometry")
        ->check(CLI::IsMember({"unitary_extension", "partial_isometry"}));

    std::optional<double> st_s, st_t;
    std::optional<int> iterate;
    auto* alu = app.add_subcommand("aluthge", "Aluthge transform |A|^s U |A|^t (default s = t = 1/2)");
    add_io(alu);
    alu->add_option("--s", st_s, "Left exponent (> 0)");
    alu->add_option("--t", st_t, "Right exponent (> 0)");
    alu->add_option("--iterate", iterate, "Iterate the plain transform N times")->check(CLI::PositiveNumber);

    auto* com = app.add_subcommand("commutant", "Basis of Com(A,B) = {X : AX = XB} (B defaults to A)");
    add_io(com);

    auto* fp = app.add_subcommand("fp-check", "FP-property Com(A,B) in Com(A*,B*) (B defaults to A)");
    add_io(fp);

    std::string p_text = "2";
    auto* sch = app.add_subcommand("schatten", "Schatten p-norm of A");
    add_io(sch);
    sch->add_option("--p", p_text, "p >= 1 or 'inf'")->required();

    std::string which;
    double delta = -1.0;
    auto* ineq = app.add_subcommand("inequality", "Commutator inequalities: lemma41, thm42 or moore");
    add_io(ineq);
    ineq->add_option("which", which, "lemma41 | thm42 | moore")
        ->required()
        ->check(CLI::IsMember({"lemma41", "thm42", "moore"}));
    ineq->add_option("--p", p_text, "p >= 1 or 'inf' (lemma41, thm42)");
    ineq->add_option("--delta", delta, "delta (moore); defaults to the smallest admissible value");

    std::string suite_id;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    auto* suite = app.add_subcommand("suite", "Run a registered verification suite");
    suite->add_option("id", suite_id, "Suite id (see `aluthge suites`)")->required();
    suite->add_option("--trials", trials, "Number of cases");
    suite->add_option("--seed", seed, "64-bit seed");
    suite->add_option("--tol", opt.tol, "Override residual_rel (also ALUTHGE_TOL)");
    suite->add_option("-o,--out", opt.out, "Write the report here instead of stdout");

    app.add_subcommand("suites", "List registered suites");

    std::string kind_name;
    int gen_n = 3;
    double gen_a = 1.0;
    auto* gen = app.add_subcommand("generate", "Emit a seeded instance of the given kind");
    gen->add_option("kind", kind_name, "Instance kind")->required();
    gen->add_option("-n,--size", gen_n, "Matrix size")->check(CLI::PositiveNumber);
    gen->add_option("--seed", seed, "64-bit seed");
    gen->add_option("--a", gen_a, "Lower bound a for pd_pair_min_eig_a");
    gen->add_option("-o,--out", opt.out, "Write the bundle here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const Tolerances tol = effective_tolerances(opt);

        if (app.got_subcommand("suites")) {
            for (const auto& s : suite_registry()) std::cout << s.id << "\t" << s.claim << "\n";
            return kExitPass;
        }
        if (app.got_subcommand(suite)) {
            if (find_suite(suite_id) == nullptr) throw UsageError("unknown suite id: " + suite_id);
            const SuiteReport rep = run_suite(suite_id, seed, trials, tol);
            write_document(suite_report_to_json(rep), opt.out);
            return rep.passed() ? kExitPass : kExitFail;
        }
        if (app.got_subcommand(gen)) {
            const auto kind = parse_instance_kind(kind_name);
            if (!kind) throw UsageError("unknown instance kind: " + kind_name);
            GenerateOptions go;
            go.a = gen_a;
            go.tol = tol;
            write_document(bundle_to_json(generate(*kind, gen_n, seed, go)), opt.out);
            return kExitPass;
        }

        const MatrixBundle in = bundle_from_json(read_document(opt.input));

        if (app.got_subcommand(polar)) {
            const auto mode =
                polar_mode == "partial_isometry" ? PolarMode::partial_isometry : PolarMode::unitary_extension;
            const PolarParts p = polar_decompose(need(in, "A"), mode, tol);
            write_document({{"angular", matrix_to_json(p.angular)},
                            {"positive", matrix_to_json(p.positive)},
                            {"mode", to_string(p.mode)},
                            {"rank", p.rank}},
                           opt.out);
            return kExitPass;
        }
        if (app.got_subcommand(alu)) {
            const ComplexMatrix& a = need(in, "A");
            if (iterate) {
                if (st_s || st_t) throw UsageError("--iterate cannot be combined with --s/--t");
                const auto traj = aluthge_iterate(a, *iterate, tol);
                Json iterates = Json::array();
                for (const auto& m : traj.iterates) iterates.push_back(matrix_to_json(m));
                write_document({{"iterates", iterates}, {"norms", traj.norms}, {"radius", traj.radius}}, opt.out);
                return kExitPass;
            }
            const ComplexMatrix t = aluthge_st(a, st_s.value_or(0.5), st_t.value_or(0.5), tol);
            write_document({{"transform", matrix_to_json(t)}}, opt.out);
            return kExitPass;
        }
        if (app.got_subcommand(com)) {
            const CommutantBasis cb = commutant_basis(need(in, "A"), b_or_a(in), tol);
            Json basis = Json::array();
            for (const auto& x : cb.basis) basis.push_back(matrix_to_json(x));
            write_document({{"nullity", cb.nullity},
                            {"rows", cb.rows},
                            {"cols", cb.cols},
                            {"basis", basis},
                            {"residuals", cb.residuals}},
                           opt.out);
            return kExitPass;
        }
        if (app.got_subcommand(fp)) {
            const FpReport r = fp_property(need(in, "A"), b_or_a(in), tol);
            write_document(report_json(r), opt.out);
            return r.holds ? kExitPass : kExitFail;
        }
        if (app.got_subcommand(sch)) {
            const double p = parse_p(p_text);
            write_document({{"p", json_number(p)}, {"norm", schatten_norm(need(in, "A"), p)}}, opt.out);
            return kExitPass;
        }
        if (app.got_subcommand(ineq)) {
            InequalityReport r;
            if (which == "moore") {
                const ComplexMatrix& a = need(in, "A");
                const ComplexMatrix& x = need(in, "X");
                double d = delta;
                if (d < 0.0) {
                    const PolarParts pp = polar_decompose(a, PolarMode::unitary_extension, tol);
                    const ComplexMatrix half = pp.positive_power(0.5);
                    d = std::max(operator_norm(half * x - x * half),
                                 operator_norm(pp.angular.adjoint() * x - x * pp.angular));
                }
                r = moore_bound_check(a, x, d, tol);
            } else if (which == "lemma41") {
                r = commutator_lower_bound_check(need(in, "A"), need(in, "X"), parse_p(p_text), tol);
            } else {
                r = intertwiner_lower_bound_check(need(in, "A"), b_or_a(in), need(in, "X"), parse_p(p_text), tol);
            }
            write_document(report_json(r), opt.out);
            return r.hypotheses_ok && r.holds ? kExitPass : kExitFail;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
