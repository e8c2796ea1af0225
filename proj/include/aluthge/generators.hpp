#ifndef ALUTHGE_GENERATORS_HPP
#define ALUTHGE_GENERATORS_HPP

// Seeded instance generators. Each kind realizes one hypothesis and checks it
// on the produced instance before returning; a failed check triggers a retry
// with the next draw, never a relaxed hypothesis.

#include "aluthge/commutant.hpp"
#include "aluthge/random.hpp"
#include "aluthge/schatten.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aluthge {

class GenerationError : public Error {
public:
    using Error::Error;
};

enum class InstanceKind {
    normal_pair_shared_spectrum,
    invertible_fp_pair,
    pd_pair_min_eig_a,
    unitary_semicircle,
    involution,
    hyponormal,
    // Extra kinds used by the verification suites.
    fp_pair,                  // FP pair that may be singular
    odd_root_angular,         // angular parts satisfy U^{2n0+1} = I
    angular_intertwiner_pair, // U* X = X V with Re(U|A|^{1/2}), Re(V|B|^{1/2}) > 0
    angular_self_adjoint,     // self-adjoint X with U* X = X U, Re(U|A|^{1/2}) > 0
};

inline constexpr std::pair<InstanceKind, std::string_view> kInstanceKindNames[] = {
    {InstanceKind::normal_pair_shared_spectrum, "normal_pair_shared_spectrum"},
    {InstanceKind::invertible_fp_pair, "invertible_fp_pair"},
    {InstanceKind::pd_pair_min_eig_a, "pd_pair_min_eig_a"},
    {InstanceKind::unitary_semicircle, "unitary_semicircle"},
    {InstanceKind::involution, "involution"},
    {InstanceKind::hyponormal, "hyponormal"},
    {InstanceKind::fp_pair, "fp_pair"},
    {InstanceKind::odd_root_angular, "odd_root_angular"},
    {InstanceKind::angular_intertwiner_pair, "angular_intertwiner_pair"},
    {InstanceKind::angular_self_adjoint, "angular_self_adjoint"},
};

inline std::string_view to_string(InstanceKind k) {
    for (const auto& [kind, name] : kInstanceKindNames)
        if (kind == k) return name;
    return "unknown";
}

inline std::optional<InstanceKind> parse_instance_kind(std::string_view name) {
    for (const auto& [kind, n] : kInstanceKindNames)
        if (n == name) return kind;
    return std::nullopt;
}

struct GenerateOptions {
    double a = 1.0;          // pd_pair_min_eig_a lower bound
    double p = 1.0;          // hyponormal exponent
    unsigned n0 = 1;         // odd_root_angular order 2*n0+1
    bool b_singular = false; // fp_pair: make B singular, keep A invertible
    bool normal_only = false;
    int max_attempts = 64;
    Tolerances tol{};
};

/// Named matrices of one instance ("A", "B", "X", ...).
using Instance = std::map<std::string, ComplexMatrix>;

namespace gen {

inline bool is_normal(const ComplexMatrix& m, double rel) {
    const double n2 = std::max(m.squaredNorm(), 1e-300);
    return (m * m.adjoint() - m.adjoint() * m).norm() <= rel * n2;
}

// k complex values with pairwise distance >= sep, modulus in [rmin, rmax].
inline std::vector<Complex> separated_pool(Rng& rng, int k, double rmin, double rmax, double sep) {
    std::vector<Complex> pool;
    int guard = 0;
    while (static_cast<int>(pool.size()) < k && guard++ < 10000) {
        const Complex z = std::polar(rng.uniform(rmin, rmax), rng.uniform(-std::numbers::pi, std::numbers::pi));
        bool ok = true;
        for (const auto& w : pool) ok = ok && std::abs(z - w) >= sep;
        if (ok) pool.push_back(z);
    }
    return pool;
}

inline ComplexMatrix diag(const std::vector<Complex>& d) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = d[i];
    return m;
}

inline ComplexMatrix conjugate_by(const ComplexMatrix& q, const ComplexMatrix& m) {
    return q * m * q.adjoint();
}

// Two spectra drawn from one pool, sharing at least the first value.
inline std::pair<std::vector<Complex>, std::vector<Complex>> shared_spectra(Rng& rng, int n, double rmin,
                                                                            double rmax) {
    const int k = rng.integer(1, std::max(1, n - 1));
    const auto pool = separated_pool(rng, k, rmin, rmax, 0.5);
    const int kk = static_cast<int>(pool.size());
    std::vector<Complex> da(static_cast<std::size_t>(n)), db(static_cast<std::size_t>(n));
    for (auto& z : da) z = pool[static_cast<std::size_t>(rng.integer(0, kk - 1))];
    for (auto& z : db) z = pool[static_cast<std::size_t>(rng.integer(0, kk - 1))];
    db[0] = da[0];
    return {da, db};
}

inline Instance normal_pair(Rng& rng, int n) {
    auto [da, db] = shared_spectra(rng, n, 0.5, 2.0);
    return {{"A", conjugate_by(rng.haar_unitary(n), diag(da))},
            {"B", conjugate_by(rng.haar_unitary(n), diag(db))}};
}

// Upper triangular block with the given diagonal and a random strict upper part.
inline ComplexMatrix triangular_block(Rng& rng, const std::vector<Complex>& d) {
    ComplexMatrix m = diag(d);
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < j; ++i) m(i, j) = rng.complex_normal();
    return m;
}

// A = Q1 (N ⊕ S) Q1*, B = Q2 (M ⊕ T) Q2*: N, M normal with shared spectrum,
// S, T non-normal with spectra disjoint from each other and from N, M.
inline Instance fp_pair(Rng& rng, int n, bool invertible, bool b_singular, bool normal_only) {
    if (n < 2 || normal_only || rng.uniform() < 0.4) return normal_pair(rng, n);
    const int m = rng.integer(1, n - 1);
    const int r = n - m;
    auto [dn, dm] = shared_spectra(rng, m, 0.5, 2.0);
    // Normal part lives in |z| <= 2; the triangular blocks sit well outside.
    std::vector<Complex> ds(static_cast<std::size_t>(r)), dt(static_cast<std::size_t>(r));
    for (auto& z : ds) z = invertible ? Complex(rng.uniform(-4.0, -3.0), rng.uniform(2.0, 3.0)) : Complex(0.0);
    for (auto& z : dt) z = b_singular ? Complex(0.0) : Complex(rng.uniform(-4.0, -3.0), rng.uniform(-3.0, -2.0));
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    ComplexMatrix b = ComplexMatrix::Zero(n, n);
    a.topLeftCorner(m, m) = conjugate_by(rng.haar_unitary(m), diag(dn));
    b.topLeftCorner(m, m) = conjugate_by(rng.haar_unitary(m), diag(dm));
    a.bottomRightCorner(r, r) = triangular_block(rng, ds);
    b.bottomRightCorner(r, r) = triangular_block(rng, dt);
    return {{"A", conjugate_by(rng.haar_unitary(n), a)}, {"B", conjugate_by(rng.haar_unitary(n), b)}};
}

inline ComplexMatrix unitary_with_phases(Rng& rng, int n, double center, double half_width) {
    std::vector<Complex> d(static_cast<std::size_t>(n));
    for (auto& z : d) z = rng.unit_phase(center - half_width, center + half_width);
    return conjugate_by(rng.haar_unitary(n), diag(d));
}

inline Instance semicircle_pair(Rng& rng, int n) {
    const double half = std::numbers::pi / 2.0 - 0.2;
    const double ca = rng.uniform(-std::numbers::pi, std::numbers::pi);
    if (rng.uniform() < 0.5) {
        // Normal pair: eigenvalues r e^{i phi}, phases inside the half-plane.
        std::vector<Complex> da(static_cast<std::size_t>(n));
        for (auto& z : da) z = std::polar(rng.uniform(0.5, 2.0), rng.uniform(ca - half, ca + half));
        std::vector<Complex> db = da;
        for (std::size_t i = db.size(); i > 1; --i)
            std::swap(db[i - 1], db[static_cast<std::size_t>(rng.integer(0, static_cast<int>(i) - 1))]);
        return {{"A", conjugate_by(rng.haar_unitary(n), diag(da))},
                {"B", conjugate_by(rng.haar_unitary(n), diag(db))}};
    }
    const ComplexMatrix a = unitary_with_phases(rng, n, ca, half) * rng.positive_definite(n, 0.5, 2.0);
    return {{"A", a}, {"B", a}};
}

inline Instance odd_root_pair(Rng& rng, int n, unsigned n0) {
    const double step = 2.0 * std::numbers::pi / static_cast<double>(2 * n0 + 1);
    std::vector<Complex> d(static_cast<std::size_t>(n));
    for (auto& z : d) z = std::polar(1.0, step * rng.integer(0, static_cast<int>(2 * n0)));
    const ComplexMatrix q = rng.haar_unitary(n);
    const ComplexMatrix u = conjugate_by(q, diag(d));
    ComplexMatrix p;
    if (rng.uniform() < 0.5) {
        // Commuting modulus: A normal.
        std::vector<Complex> r(static_cast<std::size_t>(n));
        for (auto& z : r) z = rng.uniform(0.5, 2.0);
        p = conjugate_by(q, diag(r));
    } else {
        p = rng.positive_definite(n, 0.5, 2.0);
    }
    const ComplexMatrix a = u * p;
    return {{"A", a}, {"B", a}};
}

inline Instance angular_intertwiner(Rng& rng, int n) {
    std::vector<Complex> du(static_cast<std::size_t>(n)), dv(static_cast<std::size_t>(n)),
        dx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        du[static_cast<std::size_t>(i)] = rng.unit_phase(-0.3, 0.3);
        dv[static_cast<std::size_t>(i)] = std::conj(du[static_cast<std::size_t>(i)]);
        dx[static_cast<std::size_t>(i)] = rng.complex_normal();
    }
    const ComplexMatrix q1 = rng.haar_unitary(n);
    const ComplexMatrix q2 = rng.haar_unitary(n);
    const ComplexMatrix u = conjugate_by(q1, diag(du));
    const ComplexMatrix v = conjugate_by(q2, diag(dv));
    return {{"A", u * rng.positive_definite(n, 1.0, 2.0)},
            {"B", v * rng.positive_definite(n, 1.0, 2.0)},
            {"X", q1 * diag(dx) * q2.adjoint()}};
}

// U = Q diag(e^{i t1}, e^{-i t1}, ..., [1]) Q*, X Hermitian coupling conjugate pairs.
inline Instance angular_self_adjoint(Rng& rng, int n) {
    std::vector<Complex> d(static_cast<std::size_t>(n), Complex(1.0));
    ComplexMatrix y = ComplexMatrix::Zero(n, n);
    int i = 0;
    for (; i + 1 < n; i += 2) {
        const Complex e = rng.unit_phase(0.05, 0.3);
        d[static_cast<std::size_t>(i)] = e;
        d[static_cast<std::size_t>(i + 1)] = std::conj(e);
        const Complex c = rng.complex_normal();
        y(i, i + 1) = c;
        y(i + 1, i) = std::conj(c);
    }
    if (i < n) y(i, i) = rng.normal();
    const ComplexMatrix q = rng.haar_unitary(n);
    return {{"A", conjugate_by(q, diag(d)) * rng.positive_definite(n, 1.0, 2.0)},
            {"X", conjugate_by(q, y)}};
}

inline Instance involution(Rng& rng, int n) {
    const ComplexMatrix s = rng.conditioned(n, 0.5, 2.0);
    std::vector<Complex> d(static_cast<std::size_t>(n));
    for (auto& z : d) z = rng.uniform() < 0.5 ? 1.0 : -1.0;
    if (n >= 2) {
        d[0] = 1.0;
        d[1] = -1.0;
    }
    return {{"A", s * diag(d) * s.inverse()}};
}

inline Instance pd_pair(Rng& rng, int n, double a) {
    const double a2 = a * a;
    return {{"A", rng.positive_definite(n, 0.0, 3.0) + a2 * identity(n)},
            {"B", rng.positive_definite(n, 0.0, 3.0) + a2 * identity(n)},
            {"X", rng.gaussian(n, n)}};
}

inline Instance hyponormal(Rng& rng, int n) {
    // Finite-dimensional p-hyponormal matrices are normal.
    std::vector<Complex> d(static_cast<std::size_t>(n));
    for (auto& z : d) z = std::polar(rng.uniform(0.5, 2.0), rng.uniform(-std::numbers::pi, std::numbers::pi));
    return {{"A", conjugate_by(rng.haar_unitary(n), diag(d))}};
}

inline double re_angular_bound(const ComplexMatrix& m, const Tolerances& tol) {
    const PolarParts p = polar_decompose(m, PolarMode::unitary_extension, tol);
    return min_hermitian_eigenvalue(p.angular * p.positive_power(0.5));
}

inline Instance draw(InstanceKind kind, Rng& rng, int n, const GenerateOptions& opt) {
    switch (kind) {
        case InstanceKind::normal_pair_shared_spectrum: return normal_pair(rng, n);
        case InstanceKind::invertible_fp_pair: return fp_pair(rng, n, true, false, opt.normal_only);
        case InstanceKind::fp_pair: return fp_pair(rng, n, rng.uniform() < 0.5, opt.b_singular, opt.normal_only);
        case InstanceKind::pd_pair_min_eig_a: return pd_pair(rng, n, opt.a);
        case InstanceKind::unitary_semicircle: return semicircle_pair(rng, n);
        case InstanceKind::involution: return involution(rng, n);
        case InstanceKind::hyponormal: return hyponormal(rng, n);
        case InstanceKind::odd_root_angular: return odd_root_pair(rng, n, opt.n0);
        case InstanceKind::angular_intertwiner_pair: return angular_intertwiner(rng, n);
        case InstanceKind::angular_self_adjoint: return angular_self_adjoint(rng, n);
    }
    throw GenerationError("unknown instance kind");
}

// Whether an instance satisfies the hypothesis its kind advertises.
inline bool satisfies(InstanceKind kind, const Instance& in, const GenerateOptions& opt) {
    const Tolerances& tol = opt.tol;
    const auto& a = in.at("A");
    switch (kind) {
        case InstanceKind::normal_pair_shared_spectrum: {
            const auto& b = in.at("B");
            return is_normal(a, 1e-12) && is_normal(b, 1e-12) && commutant_basis(a, b, tol).nullity >= 1;
        }
        case InstanceKind::invertible_fp_pair: {
            const auto& b = in.at("B");
            const FpReport fp = fp_property(a, b, tol);
            return is_invertible(a, tol) && (opt.b_singular || is_invertible(b, tol)) && fp.holds &&
                   fp.com_dim >= 1;
        }
        case InstanceKind::fp_pair: {
            const FpReport fp = fp_property(a, in.at("B"), tol);
            return fp.holds && fp.com_dim >= 1;
        }
        case InstanceKind::pd_pair_min_eig_a:
            return re_angular_bound(a, tol) >= opt.a * (1.0 - 1e-12) &&
                   re_angular_bound(in.at("B"), tol) >= opt.a * (1.0 - 1e-12);
        case InstanceKind::unitary_semicircle: {
            const auto& b = in.at("B");
            return is_invertible(a, tol) && is_invertible(b, tol) &&
                   semicircle_check(polar_decompose(a).angular, tol) &&
                   semicircle_check(polar_decompose(b).angular, tol);
        }
        case InstanceKind::involution:
            return operator_norm(a * a - identity(a.rows())) <= 1e-12;
        case InstanceKind::hyponormal:
            return is_invertible(a, tol) && is_p_hyponormal(a, opt.p, tol);
        case InstanceKind::odd_root_angular: {
            const auto u = polar_decompose(a).angular;
            return is_invertible(a, tol) && odd_root_unity_check(u, u, opt.n0, tol);
        }
        case InstanceKind::angular_intertwiner_pair: {
            const auto& b = in.at("B");
            const auto& x = in.at("X");
            const auto pa = polar_decompose(a);
            const auto pb = polar_decompose(b);
            return re_angular_bound(a, tol) > 0.0 && re_angular_bound(b, tol) > 0.0 &&
                   commutator_residual(pa.angular.adjoint(), pb.angular, x) <= 1e-12 * x.norm();
        }
        case InstanceKind::angular_self_adjoint: {
            const auto& x = in.at("X");
            const auto u = polar_decompose(a).angular;
            return re_angular_bound(a, tol) > 0.0 && is_hermitian(x, 1e-12) &&
                   commutator_residual(u.adjoint(), u, x) <= 1e-12 * x.norm();
        }
    }
    return false;
}

}  // namespace gen

/// Draws an instance of `kind` from `rng` that has been checked against its
/// hypothesis; throws GenerationError when the retry budget runs out.
inline Instance generate(InstanceKind kind, int n, Rng& rng, const GenerateOptions& opt = {}) {
    if (n < 1) throw PreconditionError("generate: n must be >= 1");
    for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
        Instance in = gen::draw(kind, rng, n, opt);
        if (gen::satisfies(kind, in, opt)) return in;
    }
    throw GenerationError("no " + std::string(to_string(kind)) + " instance of size " + std::to_string(n) +
                          " found within " + std::to_string(opt.max_attempts) + " attempts");
}

inline Instance generate(InstanceKind kind, int n, std::uint64_t seed, const GenerateOptions& opt = {}) {
    Rng rng(seed);
    return generate(kind, n, rng, opt);
}

}  // namespace aluthge

#endif  // ALUTHGE_GENERATORS_HPP
