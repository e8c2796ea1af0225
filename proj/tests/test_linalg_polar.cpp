#include "aluthge/linalg_core.hpp"
#include "aluthge/polar_aluthge.hpp"
#include "aluthge/random.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace aluthge;

namespace {

// (A*A)^{1/2} from the Hermitian eigendecomposition of A*A, independent of the SVD path.
ComplexMatrix modulus_oracle(const ComplexMatrix& a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.adjoint() * a);
    const RealVector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * root.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

double max_entry(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Tolerances, DefaultsAndValidation) {
    Tolerances t;
    EXPECT_EQ(t.rank_rel, 1e-10);
    EXPECT_EQ(t.residual_rel, 1e-8);
    EXPECT_EQ(t.angle_abs, 1e-9);
    EXPECT_NO_THROW(t.validate());
    t.residual_rel = -1.0;
    EXPECT_THROW(t.validate(), PreconditionError);
    t.residual_rel = 1.0;
    EXPECT_THROW(t.validate(), PreconditionError);
}

TEST(Tolerances, EnvironmentOverride) {
    ::setenv("ALUTHGE_TOL", "1e-6", 1);
    EXPECT_EQ(Tolerances::from_env().residual_rel, 1e-6);
    ::setenv("ALUTHGE_TOL", "abc", 1);
    EXPECT_THROW(Tolerances::from_env(), PreconditionError);
    ::unsetenv("ALUTHGE_TOL");
    EXPECT_EQ(Tolerances::from_env().residual_rel, 1e-8);
}

TEST(LinalgCore, AdjointIsInvolutive) {
    Rng rng(1);
    for (int k = 0; k < 20; ++k) {
        const ComplexMatrix m = rng.gaussian(rng.integer(1, 5), rng.integer(1, 5));
        EXPECT_EQ(adjoint(adjoint(m)), m);
    }
}

TEST(LinalgCore, HermitianPart) {
    const ComplexMatrix m = mat2({1, 2}, {3, 0}, {0, 1}, {4, -1});
    const ComplexMatrix h = hermitian_part(m);
    EXPECT_EQ(h, h.adjoint());
    EXPECT_EQ(h(0, 0), Complex(1, 0));
    EXPECT_EQ(h(0, 1), Complex(1.5, -0.5));
    EXPECT_THROW(hermitian_part(ComplexMatrix::Zero(2, 3)), ShapeError);
}

TEST(LinalgCore, SingularValuesOfDiagonal) {
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(0, 0) = Complex(0, -2);
    m(1, 1) = 5.0;
    m(2, 2) = -1.0;
    const RealVector sv = singular_values(m);
    EXPECT_NEAR(sv(0), 5.0, 1e-14);
    EXPECT_NEAR(sv(1), 2.0, 1e-14);
    EXPECT_NEAR(sv(2), 1.0, 1e-14);
    EXPECT_NEAR(operator_norm(m), 5.0, 1e-14);
}

TEST(LinalgCore, FullSvdReconstructs) {
    Rng rng(2);
    for (int k = 0; k < 20; ++k) {
        const ComplexMatrix m = rng.gaussian(rng.integer(1, 5), rng.integer(1, 5));
        const Svd s = full_svd(m);
        ComplexMatrix sig = ComplexMatrix::Zero(m.rows(), m.cols());
        for (Index i = 0; i < s.values.size(); ++i) sig(i, i) = s.values(i);
        EXPECT_LT((s.left * sig * s.right.adjoint() - m).norm(), 1e-12 * m.norm());
    }
}

TEST(LinalgCore, NumericalRank) {
    RealVector sv(3);
    sv << 1.0, 1e-5, 1e-12;
    EXPECT_EQ(numerical_rank(sv, 1e-10), 2);
    EXPECT_EQ(numerical_rank(RealVector::Zero(3), 1e-10), 0);
    RealVector dust(2);
    dust << 1e-16, 1e-17;
    EXPECT_EQ(numerical_rank(dust, 1e-10, 1.0), 0);
}

TEST(LinalgCore, HermitianEigenAscending) {
    ComplexMatrix m(2, 2);
    m << 2.0, 1.0, 1.0, 2.0;
    const HermitianEigen e = hermitian_eigen(m);
    EXPECT_NEAR(e.values(0), 1.0, 1e-14);
    EXPECT_NEAR(e.values(1), 3.0, 1e-14);
    EXPECT_NEAR(min_hermitian_eigenvalue(m), 1.0, 1e-14);
}

TEST(LinalgCore, SpectralRadiusOfNilpotentIsZero) {
    const ComplexMatrix j = mat2(0, 1, 0, 0);
    EXPECT_NEAR(spectral_radius(j), 0.0, 1e-14);
    EXPECT_NEAR(operator_norm(j), 1.0, 1e-14);
}

TEST(LinalgCore, PsdPowerAgreesWithEigenSqrt) {
    Rng rng(3);
    for (int k = 0; k < 20; ++k) {
        const ComplexMatrix p = rng.positive_definite(rng.integer(1, 5), 0.1, 4.0);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(p);
        EXPECT_LT((psd_power(p, 0.5) - es.operatorSqrt()).norm(), 1e-12 * p.norm());
        EXPECT_LT((psd_power(p, 0.5) * psd_power(p, 0.5) - p).norm(), 1e-12 * p.norm());
        EXPECT_LT((pd_power(p, -0.5) - es.operatorInverseSqrt()).norm(), 1e-10 * p.norm());
    }
}

TEST(LinalgCore, PsdPowerEdgeCases) {
    ComplexMatrix p = ComplexMatrix::Zero(2, 2);
    p(0, 0) = 4.0;
    EXPECT_EQ(psd_power(p, 1.0), p);
    ComplexMatrix proj = ComplexMatrix::Zero(2, 2);
    proj(0, 0) = 1.0;
    EXPECT_LT(max_entry(psd_power(p, 0.0) - proj), 1e-14);
    EXPECT_LT(max_entry(psd_power(identity(3), 0.0) - identity(3)), 1e-14);
    EXPECT_THROW(psd_power(p, -1.0), PreconditionError);
    EXPECT_THROW(psd_power(mat2(1, 0, 0, -1), 0.5), PreconditionError);
    EXPECT_THROW(psd_power(mat2(1, 1, 0, 1), 0.5), PreconditionError);
    EXPECT_THROW(pd_power(p, -1.0), PreconditionError);
}

TEST(LinalgCore, PdLogOfDiagonal) {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = std::exp(1.0);
    d(1, 1) = 1.0;
    const ComplexMatrix l = pd_log(d);
    EXPECT_NEAR(l(0, 0).real(), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(l(1, 1)), 0.0, 1e-14);
}

TEST(LinalgCore, MatrixPowerAndVec) {
    const ComplexMatrix a = mat2(1, 1, 0, 1);
    EXPECT_EQ(matrix_power(a, 5), mat2(1, 5, 0, 1));
    EXPECT_EQ(matrix_power(a, 0), identity(2));
    const ComplexMatrix m = mat2(1, 2, 3, 4);
    const ComplexVector v = vec(m);
    EXPECT_EQ(v(1), Complex(3));
    EXPECT_EQ(unvec(v, 2, 2), m);
    EXPECT_THROW(unvec(v, 3, 2), ShapeError);
}

TEST(Polar, ExampleCubeRootOfIdentity) {
    const ComplexMatrix a = mat2(0, 1, -1, -1);
    const PolarParts p = polar_decompose(a);
    const double r5 = std::sqrt(5.0);
    EXPECT_LT(max_entry(p.positive - (r5 / 5.0) * mat2(2, 1, 1, 3)), 1e-12);
    EXPECT_LT(max_entry(p.angular - (r5 / 5.0) * mat2(-1, 2, -2, -1)), 1e-12);
    // U^2 = (1/5)[[-3,-4],[4,-3]] by hand, so U^3 = (sqrt5/25)[[11,-2],[2,11]].
    EXPECT_LT(max_entry(matrix_power(p.angular, 3) - (r5 / 25.0) * mat2(11, -2, 2, 11)), 1e-12);
    EXPECT_LT(operator_norm(matrix_power(a, 3) - identity(2)), 1e-12);
    EXPECT_GT(operator_norm(matrix_power(p.angular, 3) - identity(2)), 0.1);
}

TEST(Polar, DiagonalAndNilpotent) {
    const ComplexMatrix d = mat2(-2, 0, 0, Complex(0, 3));
    const PolarParts pd = polar_decompose(d);
    EXPECT_LT(max_entry(pd.positive - mat2(2, 0, 0, 3)), 1e-14);
    EXPECT_LT(max_entry(pd.angular - mat2(-1, 0, 0, Complex(0, 1))), 1e-14);

    const ComplexMatrix j = mat2(0, 1, 0, 0);
    const PolarParts pj = polar_decompose(j, PolarMode::partial_isometry);
    EXPECT_LT(max_entry(pj.positive - mat2(0, 0, 0, 1)), 1e-14);
    EXPECT_LT(max_entry(pj.angular - j), 1e-14);
    EXPECT_EQ(pj.rank, 1);
    const PolarParts pu = polar_decompose(j, PolarMode::unitary_extension);
    EXPECT_LT(operator_norm(pu.angular.adjoint() * pu.angular - identity(2)), 1e-14);
    EXPECT_LT(max_entry(pu.angular * pu.positive - j), 1e-14);
}

TEST(Polar, InvariantsOnRandomMatrices) {
    Rng rng(4);
    for (int k = 0; k < 40; ++k) {
        const int n = rng.integer(1, 6);
        ComplexMatrix a = rng.gaussian(n, n);
        if (k % 4 == 3 && n > 1) a.col(0) = a.col(1);  // singular
        const double scale = std::max(a.norm(), 1.0);
        for (PolarMode mode : {PolarMode::unitary_extension, PolarMode::partial_isometry}) {
            const PolarParts p = polar_decompose(a, mode);
            EXPECT_LT((p.angular * p.positive - a).norm(), 1e-12 * scale);
            EXPECT_LT((p.positive - p.positive.adjoint()).norm(), 1e-12 * scale);
            EXPECT_GE(min_hermitian_eigenvalue(p.positive), -1e-12 * scale);
            EXPECT_LT((p.positive - modulus_oracle(a)).norm(), 1e-8 * scale);
            const ComplexMatrix uu = p.angular.adjoint() * p.angular;
            if (mode == PolarMode::unitary_extension) {
                EXPECT_LT((uu - identity(n)).norm(), 1e-12);
            } else {
                // U*U is the projection onto range |A|.
                EXPECT_LT((uu * uu - uu).norm(), 1e-12);
                EXPECT_LT((uu * p.positive - p.positive).norm(), 1e-12 * scale);
            }
        }
    }
}

TEST(Polar, RejectsBadInput) {
    EXPECT_THROW(polar_decompose(ComplexMatrix::Zero(2, 3)), ShapeError);
    ComplexMatrix nan = identity(2);
    nan(0, 1) = std::nan("");
    EXPECT_THROW(polar_decompose(nan), PreconditionError);
}

TEST(Polar, PositivePower) {
    Rng rng(5);
    const ComplexMatrix a = rng.conditioned(4, 0.5, 2.0);
    const PolarParts p = polar_decompose(a);
    EXPECT_LT((p.positive_power(0.5) * p.positive_power(0.5) - p.positive).norm(), 1e-12);
    EXPECT_LT((p.positive_power(-1.0) * p.positive - identity(4)).norm(), 1e-12);
    EXPECT_THROW(p.positive_power(0.0), PreconditionError);
}

TEST(Aluthge, NormalMatricesAreFixed) {
    Rng rng(6);
    for (int k = 0; k < 10; ++k) {
        const int n = rng.integer(1, 5);
        const ComplexMatrix q = rng.haar_unitary(n);
        ComplexMatrix d = ComplexMatrix::Zero(n, n);
        for (int i = 0; i < n; ++i) d(i, i) = rng.complex_normal();
        const ComplexMatrix a = q * d * q.adjoint();
        EXPECT_LT((aluthge::aluthge(a) - a).norm(), 1e-10 * a.norm());
    }
}

TEST(Aluthge, NilpotentJordanBlockVanishes) {
    EXPECT_LT(aluthge::aluthge(mat2(0, 1, 0, 0)).norm(), 1e-14);
}

TEST(Aluthge, SimilarityOracleForInvertible) {
    // Ã = |A|^{1/2} A |A|^{-1/2} for invertible A.
    Rng rng(7);
    for (int k = 0; k < 20; ++k) {
        const int n = rng.integer(1, 5);
        const ComplexMatrix a = rng.conditioned(n, 0.3, 3.0);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(modulus_oracle(a));
        const ComplexMatrix oracle = es.operatorSqrt() * a * es.operatorInverseSqrt();
        const ComplexMatrix t = aluthge::aluthge(a);
        EXPECT_LT((t - oracle).norm(), 1e-9 * a.norm());
        EXPECT_LE(operator_norm(t), operator_norm(a) * (1 + 1e-12));
        EXPECT_NEAR(t.trace().real(), a.trace().real(), 1e-10 * a.norm());
        EXPECT_NEAR(t.trace().imag(), a.trace().imag(), 1e-10 * a.norm());
    }
}

TEST(Aluthge, StVariant) {
    Rng rng(8);
    const ComplexMatrix a = rng.gaussian(4, 4);
    EXPECT_EQ(aluthge_st(a, 0.5, 0.5), aluthge::aluthge(a));
    const PolarParts p = polar_decompose(a);
    EXPECT_LT((aluthge_st(a, 1.0, 1.0) - p.positive * p.angular * p.positive).norm(), 1e-10 * a.norm() * a.norm());
    EXPECT_THROW(aluthge_st(a, 0.0, 1.0), PreconditionError);
    EXPECT_THROW(aluthge_st(a, 1.0, -1.0), PreconditionError);
}

TEST(Aluthge, IterationNormsNonincreasing) {
    Rng rng(9);
    for (int k = 0; k < 10; ++k) {
        const ComplexMatrix a = rng.gaussian(4, 4);
        const AluthgeTrajectory tr = aluthge_iterate(a, 20);
        ASSERT_EQ(tr.iterates.size(), 21u);
        EXPECT_EQ(tr.iterates[0], a);
        EXPECT_LE(tr.max_norm_increase(), 1e-9 * tr.norms[0]);
        EXPECT_GE(tr.norms.back(), tr.radius * (1 - 1e-9));
    }
    EXPECT_THROW(aluthge_iterate(identity(2), 0), PreconditionError);
}

TEST(ProductPolar, RandomInvertibleAndUnitaryPairs) {
    Rng rng(10);
    for (int k = 0; k < 30; ++k) {
        const int n = rng.integer(1, 5);
        const ComplexMatrix t = k % 2 ? rng.haar_unitary(n) : rng.conditioned(n, 0.5, 2.0);
        const ComplexMatrix s = rng.conditioned(n, 0.5, 2.0);
        const auto rep = product_polar_check(t, s);
        EXPECT_TRUE(rep.holds) << rep.reconstruction_residual << " " << rep.modulus_residual << " "
                               << rep.angular_residual;
    }
}

TEST(Involution, AngularPartSquaresToIdentity) {
    const ComplexMatrix a = mat2(2, -3, 1, -2);
    const Verdict v = involution_angular_check(a);
    EXPECT_TRUE(v.holds);
    EXPECT_LE(v.max_residual, 1e-10);
    EXPECT_THROW(involution_angular_check(mat2(2, 0, 0, 1)), PreconditionError);
}
