#ifndef ALUTHGE_SUITES_HPP
#define ALUTHGE_SUITES_HPP

// Registered verification suites. Each suite draws `trials` seeded cases,
// runs one claim through its checker and collects failures.

#include "aluthge/commutant.hpp"
#include "aluthge/generators.hpp"
#include "aluthge/matrix_io.hpp"
#include "aluthge/polar_aluthge.hpp"
#include "aluthge/schatten.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace aluthge {

struct CaseOutcome {
    bool passed = false;
    double residual = 0.0;
    double threshold = 0.0;
    MatrixBundle inputs;
    std::string note;
};

struct CaseFailure {
    std::size_t case_id = 0;
    MatrixBundle inputs;
    double residual = 0.0;
    double expected_threshold = 0.0;
    std::string note;
};

struct SuiteReport {
    std::string suite_id;
    std::uint64_t seed = 0;
    std::size_t cases_run = 0;
    std::size_t cases_passed = 0;
    std::vector<CaseFailure> failures;
    Tolerances tol;
    double elapsed_seconds = 0.0;

    bool passed() const { return failures.empty(); }
};

using CaseFn = std::function<CaseOutcome(Rng&, std::size_t, const Tolerances&)>;

struct SuiteEntry {
    std::string_view id;
    std::string_view claim;
    CaseFn run;
};

namespace suites {

inline ComplexMatrix cube_root_example() {
    ComplexMatrix a(2, 2);
    a << 0.0, 1.0, -1.0, -1.0;
    return a;
}

inline ComplexMatrix involution_example() {
    ComplexMatrix a(2, 2);
    a << 2.0, -3.0, 1.0, -2.0;
    return a;
}

inline ComplexMatrix involution_example_intertwiner() {
    ComplexMatrix x(2, 2);
    x << 0.0, -3.0, 1.0, -4.0;
    return x;
}

/// Random complex combination of a commutant basis, unit Frobenius norm.
inline ComplexMatrix random_element(Rng& rng, const CommutantBasis& com) {
    ComplexMatrix x = ComplexMatrix::Zero(com.rows, com.cols);
    for (const auto& e : com.basis) x += rng.complex_normal() * e;
    const double n = x.norm();
    return n > 0.0 ? ComplexMatrix(x / n) : x;
}

/// Frobenius distance from x to span(com.basis).
inline double distance_to_span(const ComplexMatrix& x, const CommutantBasis& com) {
    // Orthonormal basis: subtract <e, x> e with <e, x> = tr(e^* x).
    ComplexMatrix r = x;
    for (const auto& e : com.basis) r -= (e.adjoint() * x).trace() * e;
    return r.norm();
}

inline CaseOutcome verdict(bool ok, double residual, double threshold, MatrixBundle inputs,
                           std::string note = {}) {
    return {ok, residual, threshold, std::move(inputs), std::move(note)};
}

inline double p_cycle(std::size_t k) {
    constexpr double ps[] = {1.0, 2.0, 3.0, kInf};
    return ps[k % 4];
}

inline CaseOutcome fuglede_putnam(Rng& rng, std::size_t, const Tolerances& tol) {
    GenerateOptions opt;
    opt.tol = tol;
    const int n = rng.integer(1, 6);
    const Instance in = generate(InstanceKind::normal_pair_shared_spectrum, n, rng, opt);
    const FpReport fp = fp_property(in.at("A"), in.at("B"), tol);
    return verdict(fp.holds && fp.com_dim >= 1, fp.max_residual, fp.threshold, in,
                   fp.com_dim >= 1 ? "" : "empty commutant");
}

inline CaseOutcome lemma21(Rng& rng, std::size_t k, const Tolerances& tol) {
    GenerateOptions opt;
    opt.tol = tol;
    const int n = rng.integer(2, 5);
    if (k % 2 == 0) {
        // FP pair: X ∈ Com ∩ Com*, and a perturbed X outside Com.
        const Instance in = generate(InstanceKind::invertible_fp_pair, n, rng, opt);
        const auto& a = in.at("A");
        const auto& b = in.at("B");
        const CommutantBasis com = commutant_basis(a, b, tol);
        const ComplexMatrix x = random_element(rng, com);
        const auto good = polar_intertwining_check(a, b, x, tol);
        const ComplexMatrix xp = x + 0.5 * rng.gaussian(n, n);
        const auto bad = polar_intertwining_check(a, b, xp, tol);
        // When Com(A,B) is everything the perturbed X stays inside.
        const bool whole = com.nullity == static_cast<Index>(n) * n;
        const bool ok = good.consistent && good.in_com && good.in_adjoint_com && good.modulus_matches_angular &&
                        good.angular_fixes_x && bad.consistent && (whole || !bad.in_com);
        return verdict(ok, good.modulus_residual, good.modulus_threshold, {{"A", a}, {"B", b}, {"X", x}});
    }
    // Non-normal A = B: X = A intertwines (A, A) but not (A*, A*).
    const ComplexMatrix a = rng.conditioned(n, 0.5, 2.0);
    const auto rep = polar_intertwining_check(a, a, a, tol);
    const bool ok = rep.consistent && rep.in_com && rep.modulus_matches_angular && !rep.in_adjoint_com;
    return verdict(ok, rep.modulus_residual, rep.modulus_threshold, {{"A", a}, {"B", a}, {"X", a}});
}

inline CaseOutcome remark22(Rng& rng, std::size_t, const Tolerances& tol) {
    GenerateOptions opt;
    opt.tol = tol;
    const Instance in = generate(InstanceKind::invertible_fp_pair, rng.integer(2, 5), rng, opt);
    const auto& a = in.at("A");
    const auto& b = in.at("B");
    const ComplexMatrix x = random_element(rng, commutant_basis(a, b, tol));
    const double p = rng.uniform(0.1, 3.0);
    const Verdict v = power_intertwining_check(a, b, x, p, tol);
    return verdict(v.holds, v.max_residual, v.threshold, {{"A", a}, {"B", b}, {"X", x}},
                   "p = " + std::to_string(p));
}

inline CaseOutcome lemma23(Rng& rng, std::size_t k, const Tolerances& tol) {
    GenerateOptions opt;
    opt.tol = tol;
    const int n = rng.integer(2, 5);
    ComplexMatrix a, b;
    const bool fp_case = k % 2 == 0;
    if (fp_case) {
        const Instance in = generate(InstanceKind::invertible_fp_pair, n, rng, opt);
        a = in.at("A");
        b = in.at("B");
    } else {
        a = rng.conditioned(n, 0.5, 2.0);
        b = a;
    }
    const ComplexMatrix x = random_element(rng, commutant_basis(a, b, tol));
    const ComplexMatrix at = aluthge(a, tol);
    const ComplexMatrix bt = aluthge(b, tol);
    const ComplexMatrix fwd = aluthge_intertwiner_map(a, b, x, MapDirection::forward, tol);
    const ComplexMatrix back = aluthge_intertwiner_map(a, b, fwd, MapDirection::inverse, tol);
    double residual = commutator_residual(at, bt, fwd);
    double threshold = intertwining_threshold(at, bt, fwd, tol);
    bool ok = residual <= threshold;
    ok = ok && (back - x).norm() <= tol.residual_rel * x.norm();
    if (fp_case) {
        // X ∈ Com(A*,B*) carries over to Com(Ã*, B̃*) through the inverse map.
        const ComplexMatrix inv = aluthge_intertwiner_map(a, b, x, MapDirection::inverse, tol);
        const double r2 = commutator_residual(at.adjoint(), bt.adjoint(), inv);
        ok = ok && r2 <= intertwining_threshold(at, bt, inv, tol);
        residual = std::max(residual, r2);
    }
    return verdict(ok, residual, threshold, {{"A", a}, {"B", b}, {"X", x}});
}

inline CaseOutcome thm24(Rng& rng, std::size_t k, const Tolerances& tol) {
    GenerateOptions opt;
    opt.tol = tol;
    const int n = rng.integer(2, 4);
    Instance in;
    switch (k % 3) {
        case 0: in = generate(InstanceKind::invertible_fp_pair, n, rng, opt); break;
        case 1: in = generate(InstanceKind::involution, n, rng, opt); in["B"] = in.at("A"); break;
        default: {
            const ComplexMatrix a = rng.conditioned(n, 0.5, 2.0);
            in = {{"A", a}, {"B", a}};
        }
    }
    const auto rep = aluthge_fp_criterion_check(in.at("A"), in.at("B"), tol);
    return verdict(rep.consistent, rep.squares_residual, rep.squares_threshold, in,
                   std::string("transform FP: ") + (rep.transform_has_fp ? "yes" : "no") +
                       ", U^2 X = X V^2: " + (rep.squares_intertwine ? "yes" : "no"));
}

inline CaseOutcome cor25(Rng& rng, std::size_t, const Tolerances& tol) {
    GenerateOptions opt;
    opt.tol = tol;
    const Instance in = generate(InstanceKind::invertible_fp_pair, rng.integer(2, 6), rng, opt);
    const FpReport fp = fp_property(aluthge(in.at("A"), tol), aluthge(in.at("B"), tol), tol);
    return verdict(fp.holds, fp.max_residual, fp.threshold, in);
}

inline CaseOutcome cor26(Rng& rng, std::size_t, const Tolerances& tol) {
    GenerateOptions opt;
    opt.tol = tol;
    const Instance in = generate(InstanceKind::invertible_fp_pair, rng.integer(2, 5), rng, opt);
    const auto ta = aluthge_iterate(in.at("A"), 3, tol);
    const auto tb = aluthge_iterate(in.at("B"), 3, tol);
    bool ok = true;
    double worst = 0.0, thr = 0.0;
    for (std::size_t j = 1; j <= 3; ++j) {
        const FpReport fp = fp_property(ta.iterates[j], tb.iterates[j], tol);
        ok = ok && fp.holds;
        if (fp.max_residual >= worst) {
            worst = fp.max_residual;
            thr = fp.threshold;
        }
    }
    return verdict(ok, worst, thr, in);
}

inline CaseOutcome cor27(Rng& rng, std::size_t, const Tolerances& tol) {
    GenerateOptions opt;
    opt.tol = tol;
    const Instance in = generate(InstanceKind::unitary_semicircle, rng.integer(2, 4), rng, opt);
    const auto& a = in.at("A");
    const auto& b = in.at("B");
    const FpReport fp = fp_property(a, b, tol);
    const FpReport fpt = fp_property(aluthge(a, tol), aluthge(b, tol), tol);
    return verdict(fp.holds == fpt.holds, fpt.max_residual, fpt.threshold, in,
                   std::string("FP: ") + (fp.holds ? "yes" : "no"));
}

inline CaseOutcome rem28(Rng& rng, std::size_t k, const Tolerances& tol) {
    GenerateOptions opt;
    opt.tol = tol;
    opt.n0 = k % 2 == 0 ? 1 : 2;
    const Instance in = generate(InstanceKind::odd_root_angular, rng.integer(2, 4), rng, opt);
    const auto& a = in.at("A");
    const auto& b = in.at("B");
    const FpReport fp = fp_property(a, b, tol);
    const FpReport fpt = fp_property(aluthge(a, tol), aluthge(b, tol), tol);
    return verdict(fp.holds == fpt.holds, fpt.max_residual, fpt.threshold, in,
                   "n0 = " + std::to_string(opt.n0) + std::string(", FP: ") + (fp.holds ? "yes" : "no"));
}

inline CaseOutcome prop29(Rng& rng, std::size_t, const Tolerances& tol) {
    GenerateOptions opt;
    opt.tol = tol;
    const Instance in = generate(InstanceKind::involution, rng.integer(1, 6), rng, opt);
    const Verdict v = involution_angular_check(in.at("A"), tol);
    return verdict(v.holds, v.max_residual, v.threshold, in);
}

inline CaseOutcome example_a3(Rng&, std::size_t, const Tolerances& tol) {
    const ComplexMatrix a = cube_root_example();
    const double r5 = std::sqrt(5.0);
    ComplexMatrix mod(2, 2), ang(2, 2), cube(2, 2);
    mod << 2.0, 1.0, 1.0, 3.0;
    ang << -1.0, 2.0, -2.0, -1.0;
    // U^2 = (1/5)[[-3,-4],[4,-3]], so U^3 = (sqrt5/25)[[11,-2],[2,11]].
    cube << 11.0, -2.0, 2.0, 11.0;
    mod *= r5 / 5.0;
    ang *= r5 / 5.0;
    cube *= r5 / 25.0;
    const PolarParts p = polar_decompose(a, PolarMode::unitary_extension, tol);
    const ComplexMatrix u3 = matrix_power(p.angular, 3);
    const double err = std::max({(p.positive - mod).cwiseAbs().maxCoeff(), (p.angular - ang).cwiseAbs().maxCoeff(),
                                 (u3 - cube).cwiseAbs().maxCoeff()});
    const double a3 = operator_norm(matrix_power(a, 3) - identity(2));
    const double u3_gap = operator_norm(u3 - identity(2));
    const bool ok = err <= 1e-9 && a3 <= 1e-12 && u3_gap > 0.1;
    return verdict(ok, err, 1e-9, {{"A", a}}, "||U^3 - I|| = " + std::to_string(u3_gap));
}

inline CaseOutcome example_fp_fail(Rng&, std::size_t, const Tolerances& tol) {
    const ComplexMatrix a = involution_example();
    const ComplexMatrix x = involution_example_intertwiner();
    const CommutantBasis com = commutant_basis(a, a, tol);
    const FpReport fp = fp_property(a, a, tol);
    const FpReport fpt = fp_property(aluthge(a, tol), aluthge(a, tol), tol);
    const double span_gap = distance_to_span(x / x.norm(), com);
    const bool x_in_com = commutator_residual(a, a, x) <= intertwining_threshold(a, a, x, tol);
    const bool x_not_adj = commutator_residual(a.adjoint(), a.adjoint(), x) > 1.0;
    const bool invol = operator_norm(a * a - identity(2)) <= 1e-12 && involution_angular_check(a, tol).holds;
    const bool ok = !fp.holds && fp.witness.has_value() && span_gap <= tol.residual_rel && x_in_com &&
                    x_not_adj && invol && fpt.holds;
    return verdict(ok, fp.max_residual, fp.threshold, {{"A", a}, {"X", x}},
                   "witness residual " + std::to_string(fp.max_residual));
}

inline CaseOutcome thm31(Rng& rng, std::size_t, const Tolerances& tol) {
    GenerateOptions opt;
    opt.tol = tol;
    const Instance in = generate(InstanceKind::fp_pair, rng.integer(2, 5), rng, opt);
    const auto& a = in.at("A");
    const auto& b = in.at("B");
    const FpReport inc = com_inclusion(a, b, aluthge(a, tol), aluthge(b, tol), tol);
    const double s = rng.uniform(0.05, 2.0);
    const double t = rng.uniform(0.05, 2.0);
    const FpReport inc_st = com_inclusion(a, b, aluthge_st(a, s, t, tol), aluthge_st(b, s, t, tol), tol);
    const bool ok = inc.holds && inc_st.holds;
    return verdict(ok, std::max(inc.max_residual, inc_st.max_residual), std::min(inc.threshold, inc_st.threshold),
                   in, "s = " + std::to_string(s) + ", t = " + std::to_string(t));
}

inline CaseOutcome thm33(Rng& rng, std::size_t k, const Tolerances& tol) {
    GenerateOptions opt;
    opt.tol = tol;
    opt.b_singular = k % 2 == 1;
    const Instance in = generate(InstanceKind::invertible_fp_pair, rng.integer(2, 5), rng, opt);
    const auto& a = in.at("A");
    const auto& b = in.at("B");
    const ComplexMatrix at = aluthge(a, tol);
    const ComplexMatrix bt = aluthge(b, tol);
    const FpReport fwd = com_inclusion(a, b, at, bt, tol);
    const FpReport rev = com_inclusion(at, bt, a, b, tol);
    return verdict(fwd.holds && rev.holds && fwd.com_dim == rev.com_dim, std::max(fwd.max_residual, rev.max_residual),
                   std::min(fwd.threshold, rev.threshold), in);
}

inline CaseOutcome cor36(Rng& rng, std::size_t, const Tolerances& tol) {
    GenerateOptions opt;
    opt.tol = tol;
    const Instance in = generate(InstanceKind::invertible_fp_pair, rng.integer(2, 4), rng, opt);
    const auto ta = aluthge_iterate(in.at("A"), 3, tol);
    const auto tb = aluthge_iterate(in.at("B"), 3, tol);
    bool ok = true;
    double worst = 0.0, thr = kInf;
    for (std::size_t j = 1; j <= 3; ++j) {
        const FpReport f = com_inclusion(ta.iterates[0], tb.iterates[0], ta.iterates[j], tb.iterates[j], tol);
        const FpReport r = com_inclusion(ta.iterates[j], tb.iterates[j], ta.iterates[0], tb.iterates[0], tol);
        ok = ok && f.holds && r.holds;
        worst = std::max({worst, f.max_residual, r.max_residual});
        thr = std::min({thr, f.threshold, r.threshold});
    }
    return verdict(ok, worst, thr, in);
}

inline CaseOutcome lemma41(Rng& rng, std::size_t k, const Tolerances& tol) {
    GenerateOptions opt;
    opt.tol = tol;
    const int n = rng.integer(2, 5);
    const double p = p_cycle(k);
    Instance in;
    if ((k / 4) % 2 == 0) {
        opt.a = rng.uniform(0.5, 1.5);
        in = generate(InstanceKind::pd_pair_min_eig_a, n, rng, opt);
        in.erase("B");
        in["X"] = rng.hermitian(n);
    } else {
        in = generate(InstanceKind::angular_self_adjoint, n, rng, opt);
    }
    const auto rep = commutator_lower_bound_check(in.at("A"), in.at("X"), p, tol);
    return verdict(rep.hypotheses_ok && rep.holds, -rep.slack, rep.threshold, in,
                   "p = " + std::to_string(p) + ", a = " + std::to_string(rep.a_value));
}

inline CaseOutcome thm42(Rng& rng, std::size_t k, const Tolerances& tol) {
    GenerateOptions opt;
    opt.tol = tol;
    const int n = rng.integer(2, 5);
    const double p = p_cycle(k);
    Instance in;
    if ((k / 4) % 2 == 0) {
        opt.a = rng.uniform(0.5, 1.5);
        in = generate(InstanceKind::pd_pair_min_eig_a, n, rng, opt);
    } else {
        in = generate(InstanceKind::angular_intertwiner_pair, n, rng, opt);
    }
    const auto rep = intertwiner_lower_bound_check(in.at("A"), in.at("B"), in.at("X"), p, tol);
    const double cross = std::max(std::abs(*rep.block_lhs - rep.lhs), std::abs(*rep.block_rhs - rep.rhs));
    const bool ok = rep.hypotheses_ok && rep.holds && cross <= rep.threshold;
    return verdict(ok, std::max(-rep.slack, cross), rep.threshold, in,
                   "p = " + std::to_string(p) + ", a = " + std::to_string(rep.a_value));
}

inline CaseOutcome cor44(Rng& rng, std::size_t, const Tolerances& tol) {
    // PD A, B with a shared eigenvalue and X mapping between matching eigenvectors.
    const int n = rng.integer(2, 5);
    auto pool = gen::separated_pool(rng, n, 1.0, 3.0, 0.3);
    std::vector<Complex> da(static_cast<std::size_t>(n)), db(static_cast<std::size_t>(n));
    for (auto& z : da) z = std::abs(pool[static_cast<std::size_t>(rng.integer(0, n - 1))]);
    for (auto& z : db) z = std::abs(pool[static_cast<std::size_t>(rng.integer(0, n - 1))]);
    db[0] = da[0];
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (da[static_cast<std::size_t>(i)] == db[static_cast<std::size_t>(j)]) m(i, j) = rng.complex_normal();
    const ComplexMatrix q1 = rng.haar_unitary(n);
    const ComplexMatrix q2 = rng.haar_unitary(n);
    const ComplexMatrix a = gen::conjugate_by(q1, gen::diag(da));
    const ComplexMatrix b = gen::conjugate_by(q2, gen::diag(db));
    const ComplexMatrix x = q1 * m * q2.adjoint();
    const auto rep = aluthge_adjoint_intertwining_check(a, b, x, tol);
    return verdict(rep.holds, std::max(rep.modulus_residual, rep.adjoint_residual), rep.threshold,
                   {{"A", a}, {"B", b}, {"X", x}});
}

inline CaseOutcome moore(Rng& rng, std::size_t, const Tolerances& tol) {
    const int n = rng.integer(2, 6);
    const ComplexMatrix a = rng.gaussian(n, n);
    const ComplexMatrix x = rng.gaussian(n, n);
    const PolarParts p = polar_decompose(a, PolarMode::unitary_extension, tol);
    const ComplexMatrix half = p.positive_power(0.5);
    const double delta = std::max(operator_norm(half * x - x * half),
                                  operator_norm(p.angular.adjoint() * x - x * p.angular));
    const auto rep = moore_bound_check(a, x, delta, tol);
    return verdict(rep.holds, rep.slack, rep.threshold, {{"A", a}, {"X", x}});
}

inline CaseOutcome block_identity(Rng& rng, std::size_t k, const Tolerances& tol) {
    constexpr double ps[] = {0.5, 1.0, 1.5, 2.0, 3.0, 4.0, kInf};
    const double p = ps[k % 7];
    const int m = rng.integer(1, 4);
    const int c = rng.integer(1, 4);
    const ComplexMatrix a = rng.gaussian(m, c);
    const ComplexMatrix b = rng.gaussian(c, m);
    const auto rep = block_identity_check(a, b, p, tol);
    return verdict(rep.holds, rep.relative_error, rep.threshold, {{"A", a}, {"B", b}},
                   "p = " + std::to_string(p));
}

inline CaseOutcome product_polar(Rng& rng, std::size_t k, const Tolerances& tol) {
    const int n = rng.integer(1, 5);
    ComplexMatrix t, s;
    if (k % 3 == 0) {
        t = rng.haar_unitary(n);
        s = rng.haar_unitary(n);
    } else {
        t = rng.conditioned(n, 0.5, 2.0);
        s = rng.conditioned(n, 0.5, 2.0);
    }
    const auto rep = product_polar_check(t, s, tol);
    return verdict(rep.holds,
                   std::max({rep.reconstruction_residual, rep.modulus_residual, rep.angular_residual}),
                   rep.threshold, {{"T", t}, {"S", s}});
}

}  // namespace suites

inline const std::vector<SuiteEntry>& suite_registry() {
    static const std::vector<SuiteEntry> registry = {
        {"fuglede_putnam", "normal pairs have the FP-property", suites::fuglede_putnam},
        {"lemma21", "X in Com(A,B) iff |A| X |B|^-1 = U* X V; adding Com(A*,B*) iff both equal X",
         suites::lemma21},
        {"remark22", "X in Com(A,B) and Com(A*,B*) gives |A|^p X = X |B|^p", suites::remark22},
        {"lemma23", "|A|^1/2 X |B|^-1/2 carries Com(A,B) into Com(Ã,B̃)", suites::lemma23},
        {"thm24", "(Ã,B̃) has the FP-property iff U^2 X = X V^2 on Com(A,B)", suites::thm24},
        {"cor25", "invertible FP pairs keep the FP-property under the Aluthge transform", suites::cor25},
        {"cor26", "invertible FP pairs keep the FP-property under iterated Aluthge transforms", suites::cor26},
        {"cor27", "angular spectra in an open semicircle: FP(A,B) iff FP(Ã,B̃)", suites::cor27},
        {"rem28", "U^(2n0+1) = V^(2n0+1) = I: FP(A,B) iff FP(Ã,B̃)", suites::rem28},
        {"prop29", "A^2 = I implies U^2 = I", suites::prop29},
        {"example_a3", "A^3 = I does not force U^3 = I", suites::example_a3},
        {"example_fp_fail", "an involution without the FP-property whose Aluthge transform has it",
         suites::example_fp_fail},
        {"thm31", "FP pairs satisfy Com(A,B) in Com(Ã,B̃), also for (s,t) transforms", suites::thm31},
        {"thm33", "FP pairs with invertible A satisfy Com(A,B) = Com(Ã,B̃)", suites::thm33},
        {"cor36", "invertible FP pairs satisfy Com(Δn(A),Δn(B)) = Com(A,B)", suites::cor36},
        {"lemma41", "||Ã* X - X Ã||_p >= 2a || |A|^1/2 X - X |A|^1/2 ||_p", suites::lemma41},
        {"thm42", "||Ã* X - X B̃||_p >= 2a || |A|^1/2 X - X |B|^1/2 ||_p", suites::thm42},
        {"cor44", "Ã* X = X B̃ gives |A| X = X |B| and A* (|A| X) = (|A| X) B", suites::cor44},
        {"moore", "||Ã* X - X Ã|| <= (2||A||^1/2 + ||A||) delta", suites::moore},
        {"block_identity", "||[[0,A],[B,0]]||_p^p = ||A||_p^p + ||B||_p^p", suites::block_identity},
        {"product_polar", "the angular part of TS is U W V", suites::product_polar},
    };
    return registry;
}

inline const SuiteEntry* find_suite(std::string_view id) {
    for (const auto& s : suite_registry())
        if (s.id == id) return &s;
    return nullptr;
}

inline SuiteReport run_suite(std::string_view id, std::uint64_t seed, std::size_t trials, const Tolerances& tol = {}) {
    const SuiteEntry* entry = find_suite(id);
    if (entry == nullptr) throw PreconditionError("unknown suite id: " + std::string(id));
    tol.validate();
    SuiteReport rep;
    rep.suite_id = std::string(entry->id);
    rep.seed = seed;
    rep.tol = tol;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < trials; ++k) {
        Rng rng(case_seed(seed, k));
        CaseOutcome out;
        try {
            out = entry->run(rng, k, tol);
        } catch (const Error& e) {
            out.passed = false;
            out.residual = kInf;
            out.note = e.what();
        }
        ++rep.cases_run;
        if (out.passed) {
            ++rep.cases_passed;
        } else {
            rep.failures.push_back({k, std::move(out.inputs), out.residual, out.threshold, std::move(out.note)});
        }
    }
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

inline Json json_number(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

/// Report as a JSON document; `elapsed_seconds` is the only non-deterministic field.
inline Json suite_report_to_json(const SuiteReport& r) {
    Json failures = Json::array();
    for (const auto& f : r.failures) {
        Json entry = {{"case_id", f.case_id},
                      {"inputs", bundle_to_json(f.inputs)},
                      {"residual", json_number(f.residual)},
                      {"expected_threshold", json_number(f.expected_threshold)}};
        entry["note"] = f.note;
        failures.push_back(std::move(entry));
    }
    const SuiteEntry* entry = find_suite(r.suite_id);
    return Json{{"suite_id", r.suite_id},
                {"claim", entry ? std::string(entry->claim) : std::string()},
                {"seed", r.seed},
                {"tolerances",
                 {{"rank_rel", r.tol.rank_rel}, {"residual_rel", r.tol.residual_rel}, {"angle_abs", r.tol.angle_abs}}},
                {"cases_run", r.cases_run},
                {"cases_passed", r.cases_passed},
                {"failures", std::move(failures)},
                {"elapsed_seconds", r.elapsed_seconds}};
}

}  // namespace aluthge

#endif  // ALUTHGE_SUITES_HPP
