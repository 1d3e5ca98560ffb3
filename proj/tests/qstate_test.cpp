#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "catnoise/cat_states.hpp"
#include "catnoise/qstate.hpp"

namespace catnoise {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PureState plus() { return PureState::normalized(1, ComplexVector::Constant(2, 1.0)); }

PureState bell() {
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = kInvSqrt2;
    v(3) = kInvSqrt2;
    return PureState(2, v);
}

// Random mixed state from a Ginibre matrix, for property checks.
DensityMatrix random_density(int n, std::mt19937& rng) {
    std::normal_distribution<double> g;
    const auto dim = Eigen::Index{1} << n;
    ComplexMatrix a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            a(i, j) = Complex(g(rng), g(rng));
        }
    }
    ComplexMatrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    rho = (0.5 * (rho + rho.adjoint())).eval();
    return DensityMatrix(n, rho);
}

TEST(PureStateTest, RejectsWrongLengthAndNorm) {
    EXPECT_THROW(PureState(2, ComplexVector::Zero(3)), std::invalid_argument);
    EXPECT_THROW(PureState(1, ComplexVector::Constant(2, 1.0)), std::invalid_argument);
    EXPECT_THROW(PureState::normalized(1, ComplexVector::Zero(2)), std::invalid_argument);
}

TEST(PureStateTest, CapacityGuardRejectsBeforeAllocating) {
    EXPECT_THROW(PureState::basis(13, 0), capacity_error);
    EXPECT_THROW(w_cat(40), capacity_error);
    ScopedDenseCap cap(13);
    EXPECT_NO_THROW(PureState::basis(13, 0));
}

TEST(DensityMatrixTest, RejectsNonHermitianAndBadTrace) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix(1, m), std::invalid_argument);
    m(0, 1) = 0.0;
    m(1, 1) = 0.5;
    EXPECT_THROW(DensityMatrix(1, m), std::invalid_argument);
}

TEST(DensityMatrixTest, PositivityCheck) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    const DensityMatrix bad(1, m);
    EXPECT_THROW(bad.check_positivity(), std::domain_error);
    EXPECT_NO_THROW(DensityMatrix::maximally_mixed(3).check_positivity());
}

TEST(TensorTest, BasisStatesCompose) {
    const PureState s = tensor(PureState::basis(1, 0), PureState::basis(1, 1));
    EXPECT_EQ(s.n_qubits(), 2);
    EXPECT_EQ(s.amplitude(1), Complex(1.0, 0.0));
    EXPECT_EQ(s.support_size(), 1U);
}

TEST(TensorTest, MixedIdentities) {
    const DensityMatrix r = tensor(DensityMatrix::maximally_mixed(1), DensityMatrix::maximally_mixed(1));
    EXPECT_LT(max_abs_difference(r, DensityMatrix::maximally_mixed(2)), 1e-15);
}

TEST(TensorTest, PlusPlusIsUniform) {
    const PureState s = tensor(plus(), plus());
    for (BasisIndex i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(s.amplitude(i) - Complex(0.5, 0.0)), 0.0, 1e-15);
    }
}

TEST(ToDensityTest, SimpleProjectors) {
    const DensityMatrix zero = to_density(PureState::basis(1, 0));
    EXPECT_EQ(zero(0, 0), Complex(1.0, 0.0));
    EXPECT_EQ(zero(1, 1), Complex(0.0, 0.0));
    const DensityMatrix p = to_density(plus());
    EXPECT_NEAR(p.elements().cwiseAbs().minCoeff(), 0.5, 1e-15);
    EXPECT_NEAR(p.elements().cwiseAbs().maxCoeff(), 0.5, 1e-15);
}

TEST(ToDensityTest, WCatTwoMatchesHandExpansion) {
    // (|0>|W2> + |1>|00>)/sqrt2 with |W2> = (|10> + |01>)/sqrt2: entries 1/4 inside the
    // W block, 1/(2 sqrt2) between W and |100>, 1/2 on |100><100|.
    const DensityMatrix rho = to_density(w_cat(2));
    ComplexMatrix expected = ComplexMatrix::Zero(8, 8);
    for (int i : {1, 2}) {
        for (int j : {1, 2}) expected(i, j) = 0.25;
        expected(i, 4) = 0.5 * kInvSqrt2;
        expected(4, i) = 0.5 * kInvSqrt2;
    }
    expected(4, 4) = 0.5;
    EXPECT_LT(max_abs_difference(rho.elements(), expected), 1e-15);
}

TEST(PartialTraceTest, BellMarginalIsMaximallyMixed) {
    const DensityMatrix r = partial_trace(to_density(bell()), {1});
    EXPECT_LT(max_abs_difference(r, DensityMatrix::maximally_mixed(1)), 1e-15);
}

TEST(PartialTraceTest, EmptyDropAndErrors) {
    const DensityMatrix rho = to_density(w_cat(3));
    EXPECT_LT(max_abs_difference(partial_trace(rho, std::vector<int>{}), rho), 1e-16);
    EXPECT_THROW(partial_trace(rho, {4}), std::out_of_range);
    EXPECT_THROW(partial_trace(rho, {1, 1}), std::invalid_argument);
    EXPECT_THROW(partial_trace(rho, {0, 1, 2, 3}), std::invalid_argument);
}

TEST(PartialTraceTest, KeepsRelativeOrderOfSurvivors) {
    // |0 1 1> -> dropping qubit 1 leaves |0 1>.
    const DensityMatrix rho = to_density(PureState::basis(3, 0b011));
    const DensityMatrix r = partial_trace(rho, {1});
    EXPECT_EQ(r(1, 1), Complex(1.0, 0.0));
}

TEST(PartialTraceTest, RecoversFactorsOfRandomProducts) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        const DensityMatrix a = random_density(2, rng);
        const DensityMatrix b = random_density(2, rng);
        const DensityMatrix ab = tensor(a, b);
        EXPECT_LT(max_abs_difference(partial_trace(ab, {2, 3}), a), 1e-12);
        EXPECT_LT(max_abs_difference(partial_trace(ab, {0, 1}), b), 1e-12);
    }
}

TEST(PartialTransposeTest, ProductStateUnchangedSpectrally) {
    std::mt19937 rng(11);
    const DensityMatrix prod = tensor(to_density(plus()), to_density(PureState::basis(1, 1)));
    const Spectrum s = hermitian_spectrum(partial_transpose(prod, {0}));
    EXPECT_GE(s.min(), -1e-15);
    const DensityMatrix mixed = tensor(random_density(1, rng), random_density(2, rng));
    EXPECT_GE(hermitian_spectrum(partial_transpose(mixed, {0})).min(), -1e-12);
}

TEST(PartialTransposeTest, BellProjectorIsHalfSwap) {
    const Spectrum s = hermitian_spectrum(partial_transpose(to_density(bell()), {1}));
    ASSERT_EQ(s.size(), 4U);
    EXPECT_NEAR(s[0], -0.5, 1e-14);
    for (std::size_t i = 1; i < 4; ++i) {
        EXPECT_NEAR(s[i], 0.5, 1e-14);
    }
}

TEST(PartialTransposeTest, InvolutionAndSideIndependence) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        const DensityMatrix rho = random_density(3, rng);
        const std::vector<int> a{0};
        const std::vector<int> b{1, 2};
        const HermitianOperator pa = partial_transpose(rho, a);
        EXPECT_LT(max_abs_difference(partial_transpose(pa, a).elements(), rho.elements()), 1e-14);
        EXPECT_NEAR(std::abs(pa.trace() - Complex(1.0, 0.0)), 0.0, 1e-12);
        const Spectrum sa = hermitian_spectrum(pa);
        const Spectrum sb = hermitian_spectrum(partial_transpose(rho, b));
        for (std::size_t i = 0; i < sa.size(); ++i) {
            EXPECT_NEAR(sa[i], sb[i], 1e-10);
        }
        EXPECT_NEAR(sa.sum(), 1.0, 1e-10);
    }
}

TEST(PartialTransposeTest, ReducedWCatMinimumEigenvalue) {
    // N = 3 with one lost particle: -(1/2)(1 - 1/3).
    const DensityMatrix rho = partial_trace(to_density(w_cat(3)), {3});
    EXPECT_NEAR(hermitian_spectrum(partial_transpose(rho, {0})).min(), -1.0 / 3.0, 1e-12);
}

TEST(HermitianSpectrumTest, SortedRealEigenvalues) {
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    const Spectrum s = hermitian_spectrum(d);
    EXPECT_EQ(s.eigenvalues(), (std::vector<double>{1.0, 2.0, 3.0}));

    ComplexMatrix x = ComplexMatrix::Zero(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    const Spectrum sx = hermitian_spectrum(x);
    EXPECT_NEAR(sx[0], -1.0, 1e-15);
    EXPECT_NEAR(sx[1], 1.0, 1e-15);
}

TEST(HermitianSpectrumTest, RejectsNonHermitian) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    EXPECT_THROW(hermitian_spectrum(m), std::invalid_argument);
}

TEST(HermitianSpectrumTest, EigenvaluesAreRootsAndDeterministic) {
    std::mt19937 rng(5);
    const DensityMatrix rho = random_density(3, rng);
    const HermitianOperator pt = partial_transpose(rho, {0, 2});
    const Spectrum s = hermitian_spectrum(pt);
    EXPECT_EQ(s.eigenvalues(), hermitian_spectrum(pt).eigenvalues());
    // Each eigenvalue must make M - lambda I singular: smallest singular value ~ residual.
    for (double lambda : s.eigenvalues()) {
        ComplexMatrix shifted = pt.elements();
        shifted.diagonal().array() -= lambda;
        Eigen::JacobiSVD<ComplexMatrix> svd(shifted);
        EXPECT_LE(svd.singularValues().minCoeff(), 1e-9);
    }
}

TEST(HermitianSpectrumTest, BlockDecompositionMatchesDenseSolver) {
    // A permuted block-diagonal matrix with complex couplings.
    std::mt19937 rng(9);
    const DensityMatrix rho = tensor(random_density(1, rng), to_density(bell()));
    const HermitianOperator pt = partial_transpose(rho, {2});
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> dense(pt.elements(), Eigen::EigenvaluesOnly);
    const Spectrum s = hermitian_spectrum(pt);
    for (Eigen::Index i = 0; i < dense.eigenvalues().size(); ++i) {
        EXPECT_NEAR(s[static_cast<std::size_t>(i)], dense.eigenvalues()(i), 1e-12);
    }
}

TEST(BipartitionTest, Validation) {
    EXPECT_THROW(Bipartition(3, {}), std::invalid_argument);
    EXPECT_THROW(Bipartition(3, {0, 1, 2}), std::invalid_argument);
    EXPECT_THROW(Bipartition(3, {3}), std::out_of_range);
    EXPECT_THROW(Bipartition(1, {0}), std::invalid_argument);
    const Bipartition cut(4, {2, 0});
    EXPECT_EQ(cut.side_a(), (std::vector<int>{0, 2}));
    EXPECT_EQ(cut.side_b(), (std::vector<int>{1, 3}));
}

}  // namespace
}  // namespace catnoise
