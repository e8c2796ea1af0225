#ifndef ALUTHGE_POLAR_ALUTHGE_HPP
#define ALUTHGE_POLAR_ALUTHGE_HPP

// Polar decompositions and Aluthge transforms (plain, (s,t) and iterated).

#include "aluthge/linalg_core.hpp"

#include <vector>

namespace aluthge {

enum class PolarMode { unitary_extension, partial_isometry };

inline const char* to_string(PolarMode m) {
    return m == PolarMode::unitary_extension ? "unitary_extension" : "partial_isometry";
}

/// A = angular * positive.
///
/// For singular A the unitary extension is fixed by the computed SVD factors
/// and is therefore not unique; only its restriction to range(positive) is
/// meaningful.
struct PolarParts {
    ComplexMatrix angular;
    ComplexMatrix positive;
    PolarMode mode = PolarMode::unitary_extension;
    Index rank = 0;

    // Eigenbasis of `positive` and its eigenvalues (the singular values).
    ComplexMatrix basis;
    RealVector singular_values;

    /// positive^s. s > 0 always works; s < 0 needs full rank.
    ComplexMatrix positive_power(double s) const {
        if (s == 0.0) throw PreconditionError("positive_power: s = 0 has no canonical value here");
        if (s < 0.0 && rank < singular_values.size())
            throw PreconditionError("positive_power: negative exponent of a singular |A|");
        const RealVector f = singular_values.array().pow(s).matrix();
        return basis * f.cast<Complex>().asDiagonal() * basis.adjoint();
    }
};

inline PolarParts polar_decompose(const ComplexMatrix& a,
                                  PolarMode mode = PolarMode::unitary_extension,
                                  const Tolerances& tol = {}) {
    require_square(a, "polar_decompose input");
    require_finite(a, "polar_decompose input");
    const Svd svd = full_svd(a);
    PolarParts parts;
    parts.mode = mode;
    parts.basis = svd.right;
    parts.singular_values = svd.values;
    parts.rank = numerical_rank(svd.values, tol.rank_rel);
    parts.positive =
        svd.right * svd.values.cast<Complex>().asDiagonal() * svd.right.adjoint();
    if (mode == PolarMode::unitary_extension) {
        parts.angular = svd.left * svd.right.adjoint();
    } else {
        const Index r = parts.rank;
        parts.angular = svd.left.leftCols(r) * svd.right.leftCols(r).adjoint();
    }
    return parts;
}

/// |A|^{1/2} U |A|^{1/2}.
inline ComplexMatrix aluthge(const ComplexMatrix& a, const Tolerances& tol = {}) {
    const PolarParts p = polar_decompose(a, PolarMode::unitary_extension, tol);
    const ComplexMatrix half = p.positive_power(0.5);
    return half * p.angular * half;
}

/// |A|^s U |A|^t for s, t > 0.
inline ComplexMatrix aluthge_st(const ComplexMatrix& a, double s, double t, const Tolerances& tol = {}) {
    if (!(s > 0.0) || !(t > 0.0) || !std::isfinite(s) || !std::isfinite(t))
        throw PreconditionError("aluthge_st requires finite s > 0 and t > 0");
    const PolarParts p = polar_decompose(a, PolarMode::unitary_extension, tol);
    if (s == 0.5 && t == 0.5) {
        const ComplexMatrix half = p.positive_power(0.5);
        return half * p.angular * half;
    }
    return p.positive_power(s) * p.angular * p.positive_power(t);
}

/// iterates[0] = A, iterates[k] = k-fold Aluthge transform.
struct AluthgeTrajectory {
    std::vector<ComplexMatrix> iterates;
    std::vector<double> norms;
    double radius = 0.0;

    /// Largest increase norms[k+1] - norms[k] (<= 0 when nonincreasing).
    double max_norm_increase() const {
        double worst = -kInf;
        for (std::size_t k = 0; k + 1 < norms.size(); ++k)
            worst = std::max(worst, norms[k + 1] - norms[k]);
        return norms.size() < 2 ? 0.0 : worst;
    }
};

inline AluthgeTrajectory aluthge_iterate(const ComplexMatrix& a, int n, const Tolerances& tol = {}) {
    require_square(a, "aluthge_iterate input");
    if (n < 1) throw PreconditionError("aluthge_iterate requires n >= 1");
    AluthgeTrajectory traj;
    traj.iterates.reserve(static_cast<std::size_t>(n) + 1);
    traj.iterates.push_back(a);
    for (int k = 0; k < n; ++k) traj.iterates.push_back(aluthge(traj.iterates.back(), tol));
    for (const auto& m : traj.iterates) traj.norms.push_back(operator_norm(m));
    traj.radius = spectral_radius(a);
    return traj;
}

/// Outcome of a numerical identity check.
struct Verdict {
    bool holds = false;
    double max_residual = 0.0;
    double threshold = 0.0;
};

struct ProductPolarReport {
    bool holds = false;
    double reconstruction_residual = 0.0;  // ||UWV |TS| - TS||_F / ||TS||
    double modulus_residual = 0.0;         // ||(UWV)^* TS - |TS|||_F / ||TS||
    double angular_residual = 0.0;         // vs direct polar of TS on range|TS|
    double threshold = 0.0;
    ComplexMatrix composed_angular;        // UWV
};

/// Polar decomposition of a product: with T = U|T|, S = V|S| and
/// |T||S^*| = W ||T||S^*||, the angular part of TS is UWV.
inline ProductPolarReport product_polar_check(const ComplexMatrix& t, const ComplexMatrix& s,
                                              const Tolerances& tol = {}) {
    require_square(t, "T");
    require_square(s, "S");
    if (t.rows() != s.rows()) throw ShapeError("T and S must have the same size");
    constexpr auto mode = PolarMode::partial_isometry;
    const PolarParts pt = polar_decompose(t, mode, tol);
    const PolarParts ps = polar_decompose(s, mode, tol);
    const PolarParts ps_adj = polar_decompose(s.adjoint(), mode, tol);
    const PolarParts pw = polar_decompose(pt.positive * ps_adj.positive, mode, tol);
    const ComplexMatrix ts = t * s;
    const PolarParts direct = polar_decompose(ts, mode, tol);

    ProductPolarReport rep;
    rep.composed_angular = pt.angular * pw.angular * ps.angular;
    const double scale = std::max(ts.norm(), std::numeric_limits<double>::min());
    rep.reconstruction_residual = (rep.composed_angular * direct.positive - ts).norm() / scale;
    rep.modulus_residual = (rep.composed_angular.adjoint() * ts - direct.positive).norm() / scale;
    rep.angular_residual = (rep.composed_angular - direct.angular).norm() /
                           std::max(1.0, direct.angular.norm());
    rep.threshold = tol.residual_rel;
    rep.holds = rep.reconstruction_residual <= rep.threshold &&
                rep.modulus_residual <= rep.threshold && rep.angular_residual <= rep.threshold;
    return rep;
}

/// For an involution A (A^2 = I) the unitary angular part also squares to I.
inline Verdict involution_angular_check(const ComplexMatrix& a, const Tolerances& tol = {}) {
    require_square(a, "involution_angular_check input");
    const ComplexMatrix id = identity(a.rows());
    const double pre = operator_norm(a * a - id);
    if (pre > tol.residual_rel * std::max(1.0, a.squaredNorm()))
        throw PreconditionError("involution_angular_check: A^2 != I (residual " +
                                std::to_string(pre) + ")");
    const PolarParts p = polar_decompose(a, PolarMode::unitary_extension, tol);
    Verdict v;
    v.max_residual = operator_norm(p.angular * p.angular - id);
    v.threshold = tol.residual_rel;
    v.holds = v.max_residual <= v.threshold;
    return v;
}

}  // namespace aluthge

#endif  // ALUTHGE_POLAR_ALUTHGE_HPP
