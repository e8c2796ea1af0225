#ifndef ALUTHGE_LINALG_CORE_HPP
#define ALUTHGE_LINALG_CORE_HPP

// Dense complex matrix primitives: adjoints, Hermitian parts, spectral
// decompositions and functions of positive matrices.
//
// Every routine here is a pure function of its arguments. Matrices are
// Eigen::MatrixXcd; the SVD / eigen backends are Eigen's two-sided Jacobi SVD,
// SelfAdjointEigenSolver and ComplexEigenSolver.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace aluthge {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes are incompatible with the requested operation.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A documented precondition (positivity, invertibility, ...) does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Numerical acceptance thresholds.
///
/// rank_rel     relative singular-value cutoff for rank / nullspace decisions
/// residual_rel relative acceptance for equation residuals
/// angle_abs    absolute slack on angles, in radians
struct Tolerances {
    double rank_rel = 1e-10;
    double residual_rel = 1e-8;
    double angle_abs = 1e-9;

    void validate() const {
        auto check = [](double v, const char* name) {
            if (!(v >= 0.0 && v < 1.0))
                throw PreconditionError(std::string("tolerance ") + name + " must lie in [0, 1)");
        };
        check(rank_rel, "rank_rel");
        check(residual_rel, "residual_rel");
        check(angle_abs, "angle_abs");
    }

    /// Defaults, with residual_rel taken from ALUTHGE_TOL when it is set.
    static Tolerances from_env() {
        Tolerances tol;
        if (const char* env = std::getenv("ALUTHGE_TOL"); env != nullptr && *env != '\0') {
            char* end = nullptr;
            const double v = std::strtod(env, &end);
            if (end == env || *end != '\0')
                throw PreconditionError(std::string("ALUTHGE_TOL is not a decimal number: ") + env);
            tol.residual_rel = v;
        }
        tol.validate();
        return tol;
    }
};

namespace detail {

inline std::string shape_str(const ComplexMatrix& m) {
    std::ostringstream os;
    os << m.rows() << "x" << m.cols();
    return os.str();
}

}  // namespace detail

inline void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw ShapeError(std::string(what) + " must be a non-empty square matrix, got " +
                         detail::shape_str(m));
}

inline void require_finite(const ComplexMatrix& m, const char* what) {
    if (!m.allFinite()) throw PreconditionError(std::string(what) + " has non-finite entries");
}

inline ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

inline ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

inline ComplexMatrix hermitian_part(const ComplexMatrix& m) {
    require_square(m, "hermitian_part input");
    return (m + m.adjoint()) / 2.0;
}

inline double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

/// Thin SVD, M = left * diag(values) * right^*, values decreasing.
struct Svd {
    ComplexMatrix left;
    RealVector values;
    ComplexMatrix right;
};

inline Svd full_svd(const ComplexMatrix& m) {
    // BDCSVD in Eigen 3.4 can return NaN singular vectors for exactly
    // repeated zero singular values; Jacobi does not.
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (!svd.matrixU().allFinite() || !svd.matrixV().allFinite()) throw Error("SVD produced non-finite factors");
    return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

inline RealVector singular_values(const ComplexMatrix& m) {
    if (m.size() == 0) return RealVector();
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues();
}

/// Largest singular value (the operator norm); 0 for empty input.
inline double operator_norm(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return singular_values(m)(0);
}

/// Number of singular values above rank_rel * max(sigma_max, reference).
///
/// `reference` is an a-priori bound on the scale of the operator; it keeps a
/// numerically zero matrix from being reported as full rank.
inline Index numerical_rank(const RealVector& sv, double rank_rel, double reference = 0.0) {
    if (sv.size() == 0) return 0;
    const double top = std::max(sv(0), reference);
    if (top == 0.0) return 0;
    const double cut = rank_rel * top;
    Index r = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cut) ++r;
    return r;
}

/// Eigendecomposition of the Hermitian part, eigenvalues ascending.
struct HermitianEigen {
    RealVector values;
    ComplexMatrix vectors;
};

inline HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m));
    if (es.info() != Eigen::Success) throw Error("Hermitian eigensolver failed to converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

inline double min_hermitian_eigenvalue(const ComplexMatrix& m) {
    return hermitian_eigen(m).values(0);
}

inline bool is_hermitian(const ComplexMatrix& m, double rel) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).norm() <= rel * std::max(m.norm(), std::numeric_limits<double>::min());
}

inline ComplexVector eigenvalues(const ComplexMatrix& m) {
    require_square(m, "eigenvalues input");
    Eigen::ComplexEigenSolver<ComplexMatrix> es(m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw Error("complex eigensolver failed to converge");
    return es.eigenvalues();
}

inline double spectral_radius(const ComplexMatrix& m) {
    return eigenvalues(m).cwiseAbs().maxCoeff();
}

namespace detail {

// Hermitian PSD eigendecomposition with negative dust clamped to zero.
inline HermitianEigen psd_eigen(const ComplexMatrix& p, const Tolerances& tol, const char* what) {
    require_square(p, what);
    require_finite(p, what);
    if (!is_hermitian(p, tol.residual_rel))
        throw PreconditionError(std::string(what) + " is not Hermitian");
    HermitianEigen eig = hermitian_eigen(p);
    const double scale = eig.values.cwiseAbs().maxCoeff();
    if (eig.values(0) < -tol.residual_rel * scale)
        throw PreconditionError(std::string(what) + " is indefinite (min eigenvalue " +
                                std::to_string(eig.values(0)) + ")");
    eig.values = eig.values.cwiseMax(0.0);
    return eig;
}

inline ComplexMatrix spectral_apply(const HermitianEigen& eig, const RealVector& f) {
    return eig.vectors * f.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

}  // namespace detail

/// P^s for Hermitian PSD P and s >= 0.
///
/// s = 0 yields the orthogonal projection onto range(P), which is the
/// identity when P is definite.
inline ComplexMatrix psd_power(const ComplexMatrix& p, double s, const Tolerances& tol = {}) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw PreconditionError("psd_power exponent must be finite and >= 0");
    const HermitianEigen eig = detail::psd_eigen(p, tol, "psd_power input");
    if (s == 1.0) return p;
    const double cut = tol.rank_rel * eig.values.maxCoeff();
    RealVector f(eig.values.size());
    for (Index i = 0; i < f.size(); ++i) {
        const double lam = eig.values(i);
        if (s == 0.0)
            f(i) = lam > cut ? 1.0 : 0.0;
        else
            f(i) = std::pow(lam, s);
    }
    return detail::spectral_apply(eig, f);
}

/// P^s for Hermitian positive definite P and any real s.
inline ComplexMatrix pd_power(const ComplexMatrix& p, double s, const Tolerances& tol = {}) {
    const HermitianEigen eig = detail::psd_eigen(p, tol, "pd_power input");
    if (eig.values(0) <= tol.rank_rel * eig.values.maxCoeff())
        throw PreconditionError("pd_power input is singular");
    return detail::spectral_apply(eig, eig.values.array().pow(s).matrix());
}

/// Principal logarithm of a Hermitian positive definite matrix.
inline ComplexMatrix pd_log(const ComplexMatrix& p, const Tolerances& tol = {}) {
    const HermitianEigen eig = detail::psd_eigen(p, tol, "pd_log input");
    if (eig.values(0) <= tol.rank_rel * eig.values.maxCoeff())
        throw PreconditionError("pd_log input is singular");
    return detail::spectral_apply(eig, eig.values.array().log().matrix());
}

/// Integer power by repeated squaring.
inline ComplexMatrix matrix_power(const ComplexMatrix& m, unsigned k) {
    require_square(m, "matrix_power input");
    ComplexMatrix result = identity(m.rows());
    ComplexMatrix base = m;
    while (k > 0) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k > 0) base = base * base;
    }
    return result;
}

/// Column-major vec(X).
inline ComplexVector vec(const ComplexMatrix& x) {
    return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

inline ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols) {
    if (v.size() != rows * cols) throw ShapeError("unvec: length does not match shape");
    return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

}  // namespace aluthge

#endif  // ALUTHGE_LINALG_CORE_HPP
