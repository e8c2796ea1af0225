#ifndef ALUTHGE_SCHATTEN_HPP
#define ALUTHGE_SCHATTEN_HPP

// Schatten p-norms and commutator inequalities for Aluthge transforms.

#include "aluthge/commutant.hpp"
#include "aluthge/linalg_core.hpp"
#include "aluthge/polar_aluthge.hpp"

#include <optional>

namespace aluthge {

namespace detail {

// sum s_i^p computed as s_max^p * sum (s_i/s_max)^p; p may be in (0, 1).
inline double schatten_power_sum(const RealVector& sv, double p) {
    if (sv.size() == 0 || sv(0) == 0.0) return 0.0;
    const double smax = sv(0);
    double acc = 0.0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > 0.0) acc += std::pow(sv(i) / smax, p);
    return std::pow(smax, p) * acc;
}

}  // namespace detail

/// (sum s_i^p)^{1/p}; the largest singular value for p = infinity.
inline double schatten_norm(const ComplexMatrix& m, double p) {
    if (!(p >= 1.0)) throw PreconditionError("Schatten norm needs p >= 1 (or infinity)");
    const RealVector sv = singular_values(m);
    if (sv.size() == 0) return 0.0;
    if (std::isinf(p)) return sv(0);
    const double smax = sv(0);
    if (smax == 0.0) return 0.0;
    double acc = 0.0;
    for (Index i = 0; i < sv.size(); ++i) acc += std::pow(sv(i) / smax, p);
    return smax * std::pow(acc, 1.0 / p);
}

inline ComplexMatrix off_diagonal_block(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.cols() || a.cols() != b.rows())
        throw ShapeError("[[0,A],[B,0]] needs A m x k and B k x m");
    const Index m = a.rows();
    const Index k = a.cols();
    ComplexMatrix t = ComplexMatrix::Zero(m + k, m + k);
    t.block(0, m, m, k) = a;
    t.block(m, 0, k, m) = b;
    return t;
}

struct BlockIdentityReport {
    bool holds = false;
    double block_value = 0.0;  // ||T||_p^p, or ||T||_inf
    double parts_value = 0.0;  // ||A||_p^p + ||B||_p^p, or max
    double relative_error = 0.0;
    double threshold = 0.0;
};

/// ||[[0,A],[B,0]]||_p^p = ||A||_p^p + ||B||_p^p, and the max form at p = infinity.
/// p in (0, 1) is accepted as a quasi-norm power sum.
inline BlockIdentityReport block_identity_check(const ComplexMatrix& a, const ComplexMatrix& b, double p,
                                                const Tolerances& tol = {}) {
    if (!(p > 0.0)) throw PreconditionError("block identity needs p > 0");
    const ComplexMatrix t = off_diagonal_block(a, b);
    BlockIdentityReport rep;
    if (std::isinf(p)) {
        rep.block_value = operator_norm(t);
        rep.parts_value = std::max(operator_norm(a), operator_norm(b));
    } else {
        rep.block_value = detail::schatten_power_sum(singular_values(t), p);
        rep.parts_value =
            detail::schatten_power_sum(singular_values(a), p) + detail::schatten_power_sum(singular_values(b), p);
    }
    const double denom = std::max(rep.parts_value, std::numeric_limits<double>::min());
    rep.relative_error = rep.parts_value == 0.0 && rep.block_value == 0.0
                             ? 0.0
                             : std::abs(rep.block_value - rep.parts_value) / denom;
    rep.threshold = tol.residual_rel;
    rep.holds = rep.relative_error <= rep.threshold;
    return rep;
}

/// lhs >= rhs style report. `holds` is only meaningful with hypotheses_ok.
struct InequalityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool hypotheses_ok = false;
    double a_value = 0.0;
    double p = 2.0;
    double scale = 0.0;      // natural magnitude of the compared quantities
    double threshold = 0.0;  // accepted negative slack
    bool holds = false;

    // Block-embedding route, filled by intertwiner_lower_bound_check.
    std::optional<double> block_lhs;
    std::optional<double> block_rhs;
    // psi(delta) = bound / (2a), filled by moore_bound_check when a > 0.
    std::optional<double> psi;
};

namespace detail {

struct AluthgeData {
    PolarParts polar;
    ComplexMatrix half;        // |A|^{1/2}
    ComplexMatrix transform;   // Ã
    double a = 0.0;            // min eig Re(U|A|^{1/2})
};

inline AluthgeData aluthge_data(const ComplexMatrix& m, const Tolerances& tol) {
    AluthgeData d;
    d.polar = polar_decompose(m, PolarMode::unitary_extension, tol);
    d.half = d.polar.positive_power(0.5);
    d.transform = d.half * d.polar.angular * d.half;
    d.a = min_hermitian_eigenvalue(d.polar.angular * d.half);
    return d;
}

inline void finish(InequalityReport& rep, const Tolerances& tol) {
    rep.slack = rep.lhs - rep.rhs;
    rep.threshold = tol.residual_rel * rep.scale;
    rep.holds = !rep.hypotheses_ok || rep.slack >= -rep.threshold;
}

// Factor relating the p-norm of [[0,M],[-M^*,0]] to that of M.
inline double block_factor(double p) { return std::isinf(p) ? 1.0 : std::pow(2.0, 1.0 / p); }

}  // namespace detail

/// ||Ã* X - X Ã||_p >= 2a || |A|^{1/2} X - X |A|^{1/2} ||_p for self-adjoint X
/// with U* X = X U and Re(U|A|^{1/2}) >= a > 0.
inline InequalityReport commutator_lower_bound_check(const ComplexMatrix& a, const ComplexMatrix& x, double p,
                                                     const Tolerances& tol = {}) {
    require_square(a, "A");
    if (x.rows() != a.rows() || x.cols() != a.cols()) throw ShapeError("X must have the shape of A");
    if (!is_hermitian(x, tol.residual_rel)) throw PreconditionError("X must be self-adjoint");
    const auto d = detail::aluthge_data(a, tol);
    const ComplexMatrix& u = d.polar.angular;

    InequalityReport rep;
    rep.p = p;
    rep.a_value = d.a;
    const bool u_commutes = commutator_residual(u.adjoint(), u, x) <= tol.residual_rel * 2.0 * x.norm();
    rep.hypotheses_ok = d.a > 0.0 && u_commutes;
    rep.lhs = schatten_norm(d.transform.adjoint() * x - x * d.transform, p);
    rep.rhs = 2.0 * d.a * schatten_norm(d.half * x - x * d.half, p);
    rep.scale = operator_norm(a) * schatten_norm(x, p);
    detail::finish(rep, tol);
    return rep;
}

/// ||Ã* X - X B̃||_p >= 2a || |A|^{1/2} X - X |B|^{1/2} ||_p when U* X = X V and
/// a = min of the two Re(U|A|^{1/2}), Re(V|B|^{1/2}) bounds is positive.
///
/// Also evaluates the same quantities on T = diag(A,B), Y = [[0,X],[X*,0]]
/// and scales them back through the off-diagonal block identity.
inline InequalityReport intertwiner_lower_bound_check(const ComplexMatrix& a, const ComplexMatrix& b,
                                                      const ComplexMatrix& x, double p,
                                                      const Tolerances& tol = {}) {
    detail::require_conformable(a, b, x);
    if (!(p >= 1.0)) throw PreconditionError("p must be >= 1 (or infinity)");
    const auto da = detail::aluthge_data(a, tol);
    const auto db = detail::aluthge_data(b, tol);

    InequalityReport rep;
    rep.p = p;
    rep.a_value = std::min(da.a, db.a);
    const double angular_residual =
        commutator_residual(da.polar.angular.adjoint(), db.polar.angular, x);
    rep.hypotheses_ok = rep.a_value > 0.0 && angular_residual <= tol.residual_rel * 2.0 * x.norm();
    rep.lhs = schatten_norm(da.transform.adjoint() * x - x * db.transform, p);
    rep.rhs = 2.0 * rep.a_value * schatten_norm(da.half * x - x * db.half, p);
    rep.scale = std::max(operator_norm(a), operator_norm(b)) * schatten_norm(x, p);
    detail::finish(rep, tol);

    const Index n1 = a.rows();
    const Index n2 = b.rows();
    ComplexMatrix t = ComplexMatrix::Zero(n1 + n2, n1 + n2);
    t.topLeftCorner(n1, n1) = a;
    t.bottomRightCorner(n2, n2) = b;
    ComplexMatrix y = ComplexMatrix::Zero(n1 + n2, n1 + n2);
    y.topRightCorner(n1, n2) = x;
    y.bottomLeftCorner(n2, n1) = x.adjoint();
    const auto dt = detail::aluthge_data(t, tol);
    const double f = detail::block_factor(p);
    rep.block_lhs = schatten_norm(dt.transform.adjoint() * y - y * dt.transform, p) / f;
    rep.block_rhs = 2.0 * rep.a_value * schatten_norm(dt.half * y - y * dt.half, p) / f;
    return rep;
}

/// If additionally Ã* X = X B̃, then |A| X = X |B| and Y = |A| X satisfies A* Y = Y B.
struct ModulusIntertwiningReport {
    bool holds = false;
    double modulus_residual = 0.0;  // || |A| X - X |B| ||_F
    double adjoint_residual = 0.0;  // || A* Y - Y B ||_F
    double threshold = 0.0;
};

inline ModulusIntertwiningReport aluthge_adjoint_intertwining_check(const ComplexMatrix& a,
                                                                    const ComplexMatrix& b,
                                                                    const ComplexMatrix& x,
                                                                    const Tolerances& tol = {}) {
    detail::require_conformable(a, b, x);
    const auto da = detail::aluthge_data(a, tol);
    const auto db = detail::aluthge_data(b, tol);
    const double an = operator_norm(a);
    const double bn = operator_norm(b);
    const double xn = x.norm();
    if (std::min(da.a, db.a) <= 0.0) throw PreconditionError("Re(U|A|^{1/2}) or Re(V|B|^{1/2}) is not positive");
    if (commutator_residual(da.polar.angular.adjoint(), db.polar.angular, x) > tol.residual_rel * 2.0 * xn)
        throw PreconditionError("U* X != X V");
    if (commutator_residual(da.transform.adjoint(), db.transform, x) >
        tol.residual_rel * (an + bn) * xn)
        throw PreconditionError("Ã* X != X B̃");

    ModulusIntertwiningReport rep;
    rep.modulus_residual = commutator_residual(da.polar.positive, db.polar.positive, x);
    const ComplexMatrix y = da.polar.positive * x;
    rep.adjoint_residual = commutator_residual(a.adjoint(), b, y);
    rep.threshold = tol.residual_rel * std::max(an + bn, 1.0) * std::max(an, 1.0) * xn;
    rep.holds = rep.modulus_residual <= rep.threshold && rep.adjoint_residual <= rep.threshold;
    return rep;
}

/// ||Ã* X - X Ã|| <= (2||A||^{1/2} + ||A||) delta whenever X is a delta-approximate
/// intertwiner of (|A|^{1/2}, |A|^{1/2}) and of (U*, U).
inline InequalityReport moore_bound_check(const ComplexMatrix& a, const ComplexMatrix& x, double delta,
                                          const Tolerances& tol = {}) {
    require_square(a, "A");
    if (x.rows() != a.rows() || x.cols() != a.cols()) throw ShapeError("X must have the shape of A");
    const auto d = detail::aluthge_data(a, tol);
    if (!com_delta_membership(d.half, d.half, x, delta))
        throw PreconditionError("X is not a delta-commutant of |A|^{1/2}");
    if (!com_delta_membership(d.polar.angular.adjoint(), d.polar.angular, x, delta))
        throw PreconditionError("X is not a delta-intertwiner of (U*, U)");

    const double an = operator_norm(a);
    InequalityReport rep;
    rep.p = kInf;
    rep.hypotheses_ok = true;
    rep.a_value = d.a;
    rep.lhs = operator_norm(d.transform.adjoint() * x - x * d.transform);
    rep.rhs = (2.0 * std::sqrt(an) + an) * delta;
    rep.slack = rep.lhs - rep.rhs;
    rep.scale = std::max(an, 1.0) * std::max(operator_norm(x), delta);
    rep.threshold = tol.residual_rel * rep.scale;
    // Upper bound: the claim is lhs <= rhs.
    rep.holds = rep.slack <= rep.threshold;
    if (d.a > 0.0) rep.psi = rep.rhs / (2.0 * d.a);
    return rep;
}

}  // namespace aluthge

#endif  // ALUTHGE_SCHATTEN_HPP
