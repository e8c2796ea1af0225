#ifndef ALUTHGE_COMMUTANT_HPP
#define ALUTHGE_COMMUTANT_HPP

// Intertwiner spaces Com(A,B) = {X : AX = XB}, the FP-property
// Com(A,B) ⊆ Com(A*,B*), and the checks built on top of them.

#include "aluthge/linalg_core.hpp"
#include "aluthge/polar_aluthge.hpp"

#include <algorithm>
#include <numbers>
#include <optional>
#include <vector>

namespace aluthge {

/// L with L vec(X) = vec(AX - XB) for column-major vec, i.e. I⊗A - Bᵀ⊗I.
inline ComplexMatrix sylvester_matrix(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(a, "A");
    require_square(b, "B");
    const Index n1 = a.rows();
    const Index n2 = b.rows();
    ComplexMatrix l = ComplexMatrix::Zero(n1 * n2, n1 * n2);
    for (Index k = 0; k < n2; ++k) l.block(k * n1, k * n1, n1, n1) = a;
    for (Index k = 0; k < n2; ++k)
        for (Index m = 0; m < n2; ++m)
            if (b(m, k) != Complex(0.0))
                l.block(k * n1, m * n1, n1, n1).diagonal().array() -= b(m, k);
    return l;
}

inline double commutator_residual(const ComplexMatrix& a, const ComplexMatrix& b,
                                  const ComplexMatrix& x) {
    return (a * x - x * b).norm();
}

/// residual_rel * (||A|| + ||B||) * ||X||_F.
inline double intertwining_threshold(const ComplexMatrix& a, const ComplexMatrix& b,
                                     const ComplexMatrix& x, const Tolerances& tol) {
    return tol.residual_rel * (operator_norm(a) + operator_norm(b)) * x.norm();
}

inline bool intertwines(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& x,
                        const Tolerances& tol = {}) {
    return commutator_residual(a, b, x) <= intertwining_threshold(a, b, x, tol);
}

/// Frobenius-orthonormal basis of Com(A,B). Elements are rows x cols = n1 x n2.
struct CommutantBasis {
    Index rows = 0;
    Index cols = 0;
    std::vector<ComplexMatrix> basis;
    std::vector<double> residuals;
    Index nullity = 0;
};

inline CommutantBasis commutant_basis(const ComplexMatrix& a, const ComplexMatrix& b,
                                      const Tolerances& tol = {}) {
    const ComplexMatrix l = sylvester_matrix(a, b);
    const Svd svd = full_svd(l);
    // ||L|| <= ||A|| + ||B||; anchoring the cutoff there keeps A = B = cI exact.
    const Index rank = numerical_rank(svd.values, tol.rank_rel, operator_norm(a) + operator_norm(b));
    CommutantBasis out;
    out.rows = a.rows();
    out.cols = b.rows();
    for (Index j = rank; j < l.cols(); ++j) {
        ComplexMatrix x = unvec(svd.right.col(j), out.rows, out.cols);
        out.residuals.push_back(commutator_residual(a, b, x));
        out.basis.push_back(std::move(x));
    }
    out.nullity = static_cast<Index>(out.basis.size());
    return out;
}

/// Verdict of a subspace inclusion Com(A1,B1) ⊆ Com(A2,B2).
struct FpReport {
    bool holds = true;
    std::optional<ComplexMatrix> witness;
    double max_residual = 0.0;
    double threshold = 0.0;
    Index com_dim = 0;
};

namespace detail {

inline FpReport inclusion_over_basis(const CommutantBasis& com, const ComplexMatrix& a2,
                                     const ComplexMatrix& b2, const Tolerances& tol) {
    FpReport rep;
    rep.com_dim = com.nullity;
    // Basis elements are unit Frobenius norm.
    rep.threshold = tol.residual_rel * (operator_norm(a2) + operator_norm(b2));
    std::size_t worst = 0;
    for (std::size_t i = 0; i < com.basis.size(); ++i) {
        const double r = commutator_residual(a2, b2, com.basis[i]);
        if (i == 0 || r > rep.max_residual) {
            rep.max_residual = r;
            worst = i;
        }
    }
    rep.holds = rep.max_residual <= rep.threshold;
    if (!rep.holds) rep.witness = com.basis[worst];
    return rep;
}

}  // namespace detail

/// Does every X with AX = XB also satisfy A*X = XB*?
inline FpReport fp_property(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol = {}) {
    const CommutantBasis com = commutant_basis(a, b, tol);
    return detail::inclusion_over_basis(com, a.adjoint(), b.adjoint(), tol);
}

/// Com(A1,B1) ⊆ Com(A2,B2), tested on a basis of the left-hand space.
inline FpReport com_inclusion(const ComplexMatrix& a1, const ComplexMatrix& b1,
                              const ComplexMatrix& a2, const ComplexMatrix& b2,
                              const Tolerances& tol = {}) {
    require_square(a2, "A2");
    require_square(b2, "B2");
    if (a1.rows() != a2.rows() || b1.rows() != b2.rows())
        throw ShapeError("com_inclusion: (A1,B1) and (A2,B2) act on different spaces");
    return detail::inclusion_over_basis(commutant_basis(a1, b1, tol), a2, b2, tol);
}

namespace detail {

inline void require_invertible(const PolarParts& p, const char* what) {
    if (p.rank < p.singular_values.size())
        throw PreconditionError(std::string(what) + " must be invertible");
}

inline void require_conformable(const ComplexMatrix& a, const ComplexMatrix& b,
                                const ComplexMatrix& x) {
    require_square(a, "A");
    require_square(b, "B");
    if (x.rows() != a.rows() || x.cols() != b.rows())
        throw ShapeError("X must be " + std::to_string(a.rows()) + "x" + std::to_string(b.rows()) +
                         ", got " + shape_str(x));
}

}  // namespace detail

/// For invertible A = U|A|, B = V|B| compares |A| X |B|^{-1}, U* X V and X.
///
/// `consistent` records whether both equivalences
///   X ∈ Com(A,B)            ⟺ |A| X |B|^{-1} = U* X V
///   X ∈ Com(A,B)∩Com(A*,B*) ⟺ |A| X |B|^{-1} = U* X V = X
/// were observed to hold for this X.
struct PolarIntertwiningReport {
    bool in_com = false;
    bool in_adjoint_com = false;
    bool modulus_matches_angular = false;  // |A| X |B|^{-1} = U* X V
    bool angular_fixes_x = false;          // U* X V = X
    double modulus_residual = 0.0;
    double angular_residual = 0.0;
    double modulus_threshold = 0.0;
    double angular_threshold = 0.0;
    bool consistent = false;
};

inline PolarIntertwiningReport polar_intertwining_check(const ComplexMatrix& a, const ComplexMatrix& b,
                                                        const ComplexMatrix& x,
                                                        const Tolerances& tol = {}) {
    detail::require_conformable(a, b, x);
    const PolarParts pa = polar_decompose(a, PolarMode::unitary_extension, tol);
    const PolarParts pb = polar_decompose(b, PolarMode::unitary_extension, tol);
    detail::require_invertible(pa, "A");
    detail::require_invertible(pb, "B");

    const ComplexMatrix lhs = pa.positive * x * pb.positive_power(-1.0);
    const ComplexMatrix mid = pa.angular.adjoint() * x * pb.angular;
    const double xn = x.norm();
    const double inv_b = 1.0 / pb.singular_values(pb.singular_values.size() - 1);

    PolarIntertwiningReport rep;
    rep.in_com = intertwines(a, b, x, tol);
    rep.in_adjoint_com = intertwines(a.adjoint(), b.adjoint(), x, tol);
    rep.modulus_residual = (lhs - mid).norm();
    rep.modulus_threshold = tol.residual_rel * (operator_norm(a) * inv_b + 1.0) * xn;
    rep.angular_residual = (mid - x).norm();
    rep.angular_threshold = tol.residual_rel * 2.0 * xn;
    rep.modulus_matches_angular = rep.modulus_residual <= rep.modulus_threshold;
    rep.angular_fixes_x = rep.angular_residual <= rep.angular_threshold;
    const bool first = rep.in_com == rep.modulus_matches_angular;
    const bool second = (rep.in_com && rep.in_adjoint_com) ==
                        (rep.modulus_matches_angular && rep.angular_fixes_x);
    rep.consistent = first && second;
    return rep;
}

/// If X intertwines both (A,B) and (A*,B*), then |A|^p X = X |B|^p for p > 0.
inline Verdict power_intertwining_check(const ComplexMatrix& a, const ComplexMatrix& b,
                                        const ComplexMatrix& x, double p, const Tolerances& tol = {}) {
    detail::require_conformable(a, b, x);
    if (!(p > 0.0) || !std::isfinite(p)) throw PreconditionError("exponent p must be finite and > 0");
    const PolarParts pa = polar_decompose(a, PolarMode::unitary_extension, tol);
    const PolarParts pb = polar_decompose(b, PolarMode::unitary_extension, tol);
    detail::require_invertible(pa, "A");
    detail::require_invertible(pb, "B");
    if (!intertwines(a, b, x, tol) || !intertwines(a.adjoint(), b.adjoint(), x, tol))
        throw PreconditionError("X must lie in Com(A,B) and Com(A*,B*)");

    Verdict v;
    v.max_residual = (pa.positive_power(p) * x - x * pb.positive_power(p)).norm();
    v.threshold = tol.residual_rel *
                  (std::pow(pa.singular_values(0), p) + std::pow(pb.singular_values(0), p)) * x.norm();
    v.holds = v.max_residual <= v.threshold;
    return v;
}

enum class MapDirection { forward, inverse };

/// forward: |A|^{1/2} X |B|^{-1/2}, carrying Com(A,B) onto Com(Ã,B̃).
/// inverse: |A|^{-1/2} X |B|^{1/2}.
inline ComplexMatrix aluthge_intertwiner_map(const ComplexMatrix& a, const ComplexMatrix& b,
                                             const ComplexMatrix& x, MapDirection direction,
                                             const Tolerances& tol = {}) {
    detail::require_conformable(a, b, x);
    const PolarParts pa = polar_decompose(a, PolarMode::unitary_extension, tol);
    const PolarParts pb = polar_decompose(b, PolarMode::unitary_extension, tol);
    detail::require_invertible(pa, "A");
    detail::require_invertible(pb, "B");
    const double s = direction == MapDirection::forward ? 0.5 : -0.5;
    return pa.positive_power(s) * x * pb.positive_power(-s);
}

/// FP-property of (Ã,B̃) against "U² X = X V² on Com(A,B)".
struct AluthgeFpCriterion {
    bool transform_has_fp = false;
    bool squares_intertwine = false;
    double squares_residual = 0.0;
    double squares_threshold = 0.0;
    Index com_dim = 0;
    bool consistent = false;
};

inline AluthgeFpCriterion aluthge_fp_criterion_check(const ComplexMatrix& a, const ComplexMatrix& b,
                                                     const Tolerances& tol = {}) {
    const PolarParts pa = polar_decompose(a, PolarMode::unitary_extension, tol);
    const PolarParts pb = polar_decompose(b, PolarMode::unitary_extension, tol);
    detail::require_invertible(pa, "A");
    detail::require_invertible(pb, "B");

    AluthgeFpCriterion rep;
    rep.transform_has_fp = fp_property(aluthge(a, tol), aluthge(b, tol), tol).holds;
    const ComplexMatrix u2 = pa.angular * pa.angular;
    const ComplexMatrix v2 = pb.angular * pb.angular;
    const CommutantBasis com = commutant_basis(a, b, tol);
    rep.com_dim = com.nullity;
    for (const auto& x : com.basis)
        rep.squares_residual = std::max(rep.squares_residual, commutator_residual(u2, v2, x));
    rep.squares_threshold = tol.residual_rel * 2.0;
    rep.squares_intertwine = rep.squares_residual <= rep.squares_threshold;
    rep.consistent = rep.transform_has_fp == rep.squares_intertwine;
    return rep;
}

namespace detail {

inline void require_unitary(const ComplexMatrix& u, const Tolerances& tol, const char* what) {
    require_square(u, what);
    if (operator_norm(u.adjoint() * u - identity(u.rows())) > tol.residual_rel)
        throw PreconditionError(std::string(what) + " is not unitary");
}

}  // namespace detail

/// True when the spectrum of unitary U lies in some open half-plane through 0.
inline bool semicircle_check(const ComplexMatrix& u, const Tolerances& tol = {}) {
    detail::require_unitary(u, tol, "semicircle_check input");
    const ComplexVector ev = eigenvalues(u);
    std::vector<double> phase(static_cast<std::size_t>(ev.size()));
    for (Index i = 0; i < ev.size(); ++i) phase[static_cast<std::size_t>(i)] = std::arg(ev(i));
    std::sort(phase.begin(), phase.end());
    double gap = phase.front() + 2.0 * std::numbers::pi - phase.back();
    for (std::size_t i = 1; i < phase.size(); ++i) gap = std::max(gap, phase[i] - phase[i - 1]);
    return gap > std::numbers::pi + tol.angle_abs;
}

/// U^{2n0+1} = V^{2n0+1} = I.
inline bool odd_root_unity_check(const ComplexMatrix& u, const ComplexMatrix& v, unsigned n0,
                                 const Tolerances& tol = {}) {
    if (n0 < 1) throw PreconditionError("n0 must be a positive integer");
    detail::require_unitary(u, tol, "U");
    detail::require_unitary(v, tol, "V");
    const unsigned k = 2 * n0 + 1;
    const double thr = tol.residual_rel * k;
    return operator_norm(matrix_power(u, k) - identity(u.rows())) <= thr &&
           operator_norm(matrix_power(v, k) - identity(v.rows())) <= thr;
}

enum class HyponormalClass { p_hyponormal, log_hyponormal, both, neither };

inline const char* to_string(HyponormalClass c) {
    switch (c) {
        case HyponormalClass::p_hyponormal: return "p_hyponormal";
        case HyponormalClass::log_hyponormal: return "log_hyponormal";
        case HyponormalClass::both: return "both";
        case HyponormalClass::neither: return "neither";
    }
    return "neither";
}

/// (A*A)^p >= (AA*)^p.
inline bool is_p_hyponormal(const ComplexMatrix& a, double p, const Tolerances& tol = {}) {
    require_square(a, "A");
    if (!(p > 0.0)) throw PreconditionError("p must be > 0");
    const ComplexMatrix diff = psd_power(a.adjoint() * a, p, tol) - psd_power(a * a.adjoint(), p, tol);
    const double scale = std::pow(operator_norm(a), 2.0 * p);
    return min_hermitian_eigenvalue(diff) >= -tol.residual_rel * std::max(scale, 1e-300);
}

inline bool is_invertible(const ComplexMatrix& a, const Tolerances& tol = {}) {
    const RealVector sv = singular_values(a);
    return numerical_rank(sv, tol.rank_rel) == sv.size();
}

/// log(A*A) >= log(AA*); A must be invertible.
inline bool is_log_hyponormal(const ComplexMatrix& a, const Tolerances& tol = {}) {
    require_square(a, "A");
    if (!is_invertible(a, tol)) throw PreconditionError("log-hyponormality needs invertible A");
    const ComplexMatrix diff = pd_log(a.adjoint() * a, tol) - pd_log(a * a.adjoint(), tol);
    const RealVector sv = singular_values(a);
    const double scale =
        std::max({1.0, std::abs(2.0 * std::log(sv(0))), std::abs(2.0 * std::log(sv(sv.size() - 1)))});
    return min_hermitian_eigenvalue(diff) >= -tol.residual_rel * scale;
}

/// The log test only runs for invertible A; singular A can be at most p-hyponormal.
inline HyponormalClass hyponormal_class(const ComplexMatrix& a, double p, const Tolerances& tol = {}) {
    const bool ph = is_p_hyponormal(a, p, tol);
    const bool lh = is_invertible(a, tol) && is_log_hyponormal(a, tol);
    if (ph && lh) return HyponormalClass::both;
    if (ph) return HyponormalClass::p_hyponormal;
    if (lh) return HyponormalClass::log_hyponormal;
    return HyponormalClass::neither;
}

enum class SubspaceSide { range, kernel_complement };

struct ReductionReport {
    bool reduces = false;
    bool restriction_normal = false;
    Index dim = 0;
    double invariance_residual = 0.0;
    double normality_residual = 0.0;
    double threshold = 0.0;
    ComplexMatrix subspace;           // orthonormal columns
    ComplexVector restriction_spectrum;
};

/// Is closure(range X), or (ker X)^⊥, invariant under A and A*? Also reports
/// whether the compression of A to that subspace is normal.
inline ReductionReport reduces_check(const ComplexMatrix& a, const ComplexMatrix& x, SubspaceSide side,
                                     const Tolerances& tol = {}) {
    require_square(a, "A");
    const Index expect = side == SubspaceSide::range ? x.rows() : x.cols();
    if (expect != a.rows()) throw ShapeError("X is not conformable with A on the requested side");

    const Svd svd = full_svd(x);
    const Index r = numerical_rank(svd.values, tol.rank_rel);
    ReductionReport rep;
    rep.dim = r;
    rep.subspace = side == SubspaceSide::range ? ComplexMatrix(svd.left.leftCols(r))
                                               : ComplexMatrix(svd.right.leftCols(r));
    const double an = operator_norm(a);
    rep.threshold = tol.residual_rel * std::max(an, 1e-300);
    if (r == 0) {
        rep.reduces = true;
        rep.restriction_normal = true;
        return rep;
    }
    const ComplexMatrix& q = rep.subspace;
    const ComplexMatrix proj_out = identity(a.rows()) - q * q.adjoint();
    rep.invariance_residual =
        std::max(operator_norm(proj_out * a * q), operator_norm(proj_out * a.adjoint() * q));
    rep.reduces = rep.invariance_residual <= rep.threshold;
    const ComplexMatrix c = q.adjoint() * a * q;
    rep.normality_residual = operator_norm(c * c.adjoint() - c.adjoint() * c);
    rep.restriction_normal = rep.normality_residual <= tol.residual_rel * std::max(an * an, 1e-300);
    rep.restriction_spectrum = eigenvalues(c);
    return rep;
}

namespace detail {

// Greedy multiset match of two small spectra.
inline bool spectra_match(const ComplexVector& s1, const ComplexVector& s2, double eps) {
    if (s1.size() != s2.size()) return false;
    std::vector<bool> used(static_cast<std::size_t>(s2.size()), false);
    for (Index i = 0; i < s1.size(); ++i) {
        Index best = -1;
        double best_d = kInf;
        for (Index j = 0; j < s2.size(); ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            const double d = std::abs(s1(i) - s2(j));
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        if (best < 0 || best_d > eps) return false;
        used[static_cast<std::size_t>(best)] = true;
    }
    return true;
}

}  // namespace detail

/// For X ∈ Com(A,B): closure(range X) reduces A, (ker X)^⊥ reduces B, both
/// restrictions are normal and have equal spectra.
struct RestrictionReport {
    ReductionReport range_side;
    ReductionReport kernel_side;
    bool spectra_equal = false;
    bool holds = false;
};

inline RestrictionReport fp_restriction_check(const ComplexMatrix& a, const ComplexMatrix& b,
                                              const ComplexMatrix& x, const Tolerances& tol = {}) {
    detail::require_conformable(a, b, x);
    RestrictionReport rep;
    rep.range_side = reduces_check(a, x, SubspaceSide::range, tol);
    rep.kernel_side = reduces_check(b, x, SubspaceSide::kernel_complement, tol);
    const double eps = std::sqrt(tol.residual_rel) * std::max({operator_norm(a), operator_norm(b), 1.0});
    rep.spectra_equal = rep.range_side.dim == rep.kernel_side.dim &&
                        (rep.range_side.dim == 0 ||
                         detail::spectra_match(rep.range_side.restriction_spectrum,
                                               rep.kernel_side.restriction_spectrum, eps));
    rep.holds = rep.range_side.reduces && rep.kernel_side.reduces &&
                rep.range_side.restriction_normal && rep.kernel_side.restriction_normal &&
                rep.spectra_equal;
    return rep;
}

/// ||AX - XB|| <= delta in operator norm.
inline bool com_delta_membership(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& x,
                                 double delta) {
    detail::require_conformable(a, b, x);
    if (!(delta >= 0.0)) throw PreconditionError("delta must be >= 0");
    // Allow for the rounding of AX - XB itself.
    const double eps = std::numeric_limits<double>::epsilon();
    const double roundoff = 16.0 * eps * (operator_norm(a) + operator_norm(b)) * operator_norm(x);
    return operator_norm(a * x - x * b) <= delta + roundoff;
}

}  // namespace aluthge

#endif  // ALUTHGE_COMMUTANT_HPP
