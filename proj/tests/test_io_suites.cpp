#include "aluthge/aluthge.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace aluthge;

namespace {

struct CliRun {
    int status = -1;
    std::string out;
};

CliRun cli(const std::string& args) {
    const std::string cmd = std::string(ALUTHGE_CLI) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int st = ::pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string temp_file(const std::string& name, const std::string& contents) {
    const std::string path = ::testing::TempDir() + name;
    std::ofstream(path) << contents;
    return path;
}

Json strip_timing(Json j) {
    j.erase("elapsed_seconds");
    return j;
}

}  // namespace

TEST(MatrixIo, RoundTripIsBitExact) {
    Rng rng(1);
    for (int k = 0; k < 20; ++k) {
        const ComplexMatrix m = rng.gaussian(rng.integer(1, 5), rng.integer(1, 5)) * std::pow(10.0, rng.integer(-8, 8));
        std::stringstream s;
        write_matrix(s, m);
        const ComplexMatrix back = read_matrix(s);
        ASSERT_EQ(back.rows(), m.rows());
        ASSERT_EQ(back.cols(), m.cols());
        EXPECT_TRUE((back.array() == m.array()).all());
    }
}

TEST(MatrixIo, RowMajorLayout) {
    const ComplexMatrix m = matrix_from_json(Json::parse(R"({"rows":2,"cols":2,"data":[[1,0],[2,0],[3,0],[4,-1]]})"));
    EXPECT_EQ(m(0, 1), Complex(2, 0));
    EXPECT_EQ(m(1, 1), Complex(4, -1));
}

TEST(MatrixIo, MalformedDocumentsAreRejected) {
    const char* bad[] = {
        R"([1,2])",
        R"({"cols":2,"data":[]})",
        R"({"rows":0,"cols":1,"data":[]})",
        R"({"rows":1.5,"cols":1,"data":[[1,0]]})",
        R"({"rows":1,"cols":2,"data":[[1,0]]})",
        R"({"rows":1,"cols":1,"data":[[1]]})",
        R"({"rows":1,"cols":1,"data":[["a",0]]})",
        R"({"rows":1,"cols":1,"data":{"x":1}})",
    };
    for (const char* doc : bad) EXPECT_THROW(matrix_from_json(Json::parse(doc)), FormatError) << doc;
    std::stringstream garbage("{not json");
    EXPECT_THROW(read_matrix(garbage), FormatError);
    EXPECT_THROW(matrix_to_json(ComplexMatrix::Constant(1, 1, std::nan(""))), FormatError);
}

TEST(MatrixIo, ErrorNamesTheField) {
    try {
        bundle_from_json(Json::parse(R"({"A":{"rows":1,"cols":1,"data":[[1,0]]},"X":{"rows":1,"cols":1}})"));
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("X"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("data"), std::string::npos);
    }
}

TEST(Rng, SeedDeterminism) {
    Rng a(42), b(42), c(43);
    const ComplexMatrix ma = a.gaussian(3, 3);
    EXPECT_EQ(ma, b.gaussian(3, 3));
    EXPECT_NE(ma, c.gaussian(3, 3));
    EXPECT_NE(case_seed(1, 0), case_seed(1, 1));
    EXPECT_EQ(case_seed(1, 5), case_seed(1, 5));
}

TEST(Rng, HaarUnitaryIsUnitary) {
    Rng rng(2);
    for (int n = 1; n <= 6; ++n) {
        const ComplexMatrix q = rng.haar_unitary(n);
        EXPECT_LT((q.adjoint() * q - identity(n)).norm(), 1e-13);
    }
}

TEST(Generators, NamesRoundTrip) {
    for (const auto& [kind, name] : kInstanceKindNames) EXPECT_EQ(parse_instance_kind(name), kind);
    EXPECT_FALSE(parse_instance_kind("nope").has_value());
}

TEST(Generators, EveryKindSatisfiesItsHypothesis) {
    GenerateOptions opt;
    for (const auto& [kind, name] : kInstanceKindNames) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const int n = 2 + static_cast<int>(seed % 3);
            const Instance in = generate(kind, n, seed, opt);
            EXPECT_TRUE(gen::satisfies(kind, in, opt)) << name << " seed " << seed;
            EXPECT_EQ(in.at("A").rows(), n) << name;
        }
    }
}

TEST(Generators, Deterministic) {
    const Instance a = generate(InstanceKind::invertible_fp_pair, 4, 99);
    const Instance b = generate(InstanceKind::invertible_fp_pair, 4, 99);
    EXPECT_EQ(a.at("A"), b.at("A"));
    EXPECT_EQ(a.at("B"), b.at("B"));
}

TEST(Generators, SpecificHypotheses) {
    Rng rng(3);
    GenerateOptions opt;
    opt.a = 2.0;
    const Instance pd = generate(InstanceKind::pd_pair_min_eig_a, 3, rng, opt);
    EXPECT_GE(min_hermitian_eigenvalue(pd.at("A")), 2.0 * (1 - 1e-12));
    const Instance inv = generate(InstanceKind::involution, 3, rng);
    EXPECT_LT(operator_norm(inv.at("A") * inv.at("A") - identity(3)), 1e-10 * std::max(1.0, inv.at("A").squaredNorm()));
    const Instance sc = generate(InstanceKind::unitary_semicircle, 3, rng);
    EXPECT_TRUE(semicircle_check(polar_decompose(sc.at("A")).angular));
    const Instance fp = generate(InstanceKind::normal_pair_shared_spectrum, 4, rng);
    EXPECT_GT(commutant_basis(fp.at("A"), fp.at("B")).nullity, 0);
}

TEST(Suites, RegistryHasEveryId) {
    const char* ids[] = {"fuglede_putnam", "lemma21", "remark22", "lemma23", "thm24", "cor25", "cor26",
                         "cor27", "rem28", "prop29", "example_a3", "example_fp_fail", "thm31", "thm33",
                         "cor36", "lemma41", "thm42", "cor44", "moore", "block_identity", "product_polar"};
    EXPECT_EQ(suite_registry().size(), std::size(ids));
    for (const char* id : ids) EXPECT_NE(find_suite(id), nullptr) << id;
    EXPECT_THROW(run_suite("nope", 0, 1), PreconditionError);
}

TEST(Suites, EverySuitePassesAShortRun) {
    for (const auto& s : suite_registry()) {
        const SuiteReport rep = run_suite(s.id, 2024, 10);
        EXPECT_EQ(rep.cases_run, 10u) << s.id;
        EXPECT_TRUE(rep.passed()) << s.id << ": " << (rep.failures.empty() ? "" : rep.failures[0].note);
    }
}

TEST(Suites, ReportIsDeterministicApartFromTiming) {
    const Json a = strip_timing(suite_report_to_json(run_suite("thm33", 5, 8)));
    const Json b = strip_timing(suite_report_to_json(run_suite("thm33", 5, 8)));
    EXPECT_EQ(a.dump(), b.dump());
    for (const char* key : {"suite_id", "claim", "seed", "tolerances", "cases_run", "cases_passed", "failures"})
        EXPECT_TRUE(a.contains(key)) << key;
}

TEST(Suites, ImpossibleToleranceRecordsFailures) {
    Tolerances tight;
    tight.residual_rel = 0.0;
    const SuiteReport rep = run_suite("product_polar", 1, 6, tight);
    EXPECT_FALSE(rep.passed());
    const Json j = suite_report_to_json(rep);
    ASSERT_FALSE(j["failures"].empty());
    const Json& f = j["failures"][0];
    for (const char* key : {"case_id", "inputs", "residual", "expected_threshold", "note"})
        EXPECT_TRUE(f.contains(key)) << key;
    EXPECT_NO_THROW(bundle_from_json(f["inputs"]));
}

TEST(Cli, PolarOfExample) {
    const std::string in = temp_file("a.json", R"({"rows":2,"cols":2,"data":[[0,0],[1,0],[-1,0],[-1,0]]})");
    const CliRun r = cli("polar -i " + in);
    ASSERT_EQ(r.status, 0);
    const Json j = Json::parse(r.out);
    const ComplexMatrix u = matrix_from_json(j["angular"]);
    EXPECT_NEAR(u(0, 1).real(), 2.0 / std::sqrt(5.0), 1e-12);
}

TEST(Cli, ExitCodes) {
    const std::string inv = temp_file("inv.json", R"({"rows":2,"cols":2,"data":[[2,0],[-3,0],[1,0],[-2,0]]})");
    const std::string id = temp_file("id.json", R"({"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[2,0]]})");
    const std::string bad = temp_file("bad.json", R"({"rows":2,"cols":2,"data":[[1,0]]})");
    EXPECT_EQ(cli("fp-check -i " + id).status, 0);
    EXPECT_EQ(cli("fp-check -i " + inv).status, 1);
    EXPECT_EQ(cli("fp-check -i " + bad).status, 2);
    EXPECT_EQ(cli("schatten --p 0.5 -i " + id).status, 2);
    EXPECT_EQ(cli("schatten --p banana -i " + id).status, 2);
    EXPECT_EQ(cli("suite nope").status, 2);
    EXPECT_EQ(cli("frobnicate").status, 2);
    EXPECT_EQ(cli("suite example_a3 --trials 1 --tol 2").status, 2);
}

TEST(Cli, SchattenAndSuites) {
    const std::string id = temp_file("d.json", R"({"rows":2,"cols":2,"data":[[3,0],[0,0],[0,0],[0,4]]})");
    const CliRun r = cli("schatten --p 1 -i " + id);
    ASSERT_EQ(r.status, 0);
    EXPECT_NEAR(Json::parse(r.out)["norm"].get<double>(), 7.0, 1e-14);
    const CliRun inf = cli("schatten --p inf -i " + id);
    EXPECT_NEAR(Json::parse(inf.out)["norm"].get<double>(), 4.0, 1e-14);

    const CliRun s1 = cli("suite block_identity --trials 5 --seed 3");
    const CliRun s2 = cli("suite block_identity --trials 5 --seed 3");
    ASSERT_EQ(s1.status, 0);
    EXPECT_EQ(strip_timing(Json::parse(s1.out)), strip_timing(Json::parse(s2.out)));
}

TEST(Cli, GenerateFeedsCommands) {
    const CliRun g = cli("generate invertible_fp_pair -n 3 --seed 4");
    ASSERT_EQ(g.status, 0);
    const std::string path = temp_file("pair.json", g.out);
    EXPECT_EQ(cli("fp-check -i " + path).status, 0);
    const CliRun c = cli("commutant -i " + path);
    ASSERT_EQ(c.status, 0);
    EXPECT_GT(Json::parse(c.out)["nullity"].get<int>(), 0);
    EXPECT_EQ(cli("generate nope").status, 2);
}

TEST(Cli, EnvironmentToleranceAndFlagPrecedence) {
    ::setenv("ALUTHGE_TOL", "0", 1);
    EXPECT_EQ(cli("suite product_polar --trials 3").status, 1);
    EXPECT_EQ(cli("suite product_polar --trials 3 --tol 1e-8").status, 0);
    ::unsetenv("ALUTHGE_TOL");
    EXPECT_EQ(cli("suite product_polar --trials 3").status, 0);
}
