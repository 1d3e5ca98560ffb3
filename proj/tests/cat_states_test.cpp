#include <gtest/gtest.h>

#include <cmath>

#include "catnoise/cat_states.hpp"
#include "catnoise/entanglement.hpp"

namespace catnoise {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void expect_amplitudes(const PureState& psi, const std::vector<std::pair<BasisIndex, double>>& expected) {
    ComplexVector v = ComplexVector::Zero(psi.amplitudes().size());
    for (auto [i, a] : expected) {
        v(static_cast<Eigen::Index>(i)) = a;
    }
    EXPECT_LT((psi.amplitudes() - v).cwiseAbs().maxCoeff(), 1e-15);
}

double micro_log_negativity(const PureState& psi, int micro = 1) {
    const DensityMatrix rho = to_density(psi);
    return log_negativity(rho, Bipartition::leading(rho.n_qubits(), micro));
}

TEST(WStateTest, Definitions) {
    expect_amplitudes(w_state(1), {{1, 1.0}});
    expect_amplitudes(w_state(2), {{2, kInvSqrt2}, {1, kInvSqrt2}});
    const double a = 1.0 / std::sqrt(3.0);
    expect_amplitudes(w_state(3), {{4, a}, {2, a}, {1, a}});
    EXPECT_THROW(w_state(0), std::invalid_argument);
}

TEST(WTildeTest, BitFlippedW) {
    expect_amplitudes(w_tilde(2), {{1, kInvSqrt2}, {2, kInvSqrt2}});
    const double a = 1.0 / std::sqrt(3.0);
    expect_amplitudes(w_tilde(3), {{3, a}, {5, a}, {6, a}});
    for (int n = 3; n <= 8; ++n) {
        EXPECT_EQ(w_tilde(n).amplitudes().dot(w_state(n).amplitudes()), Complex(0.0, 0.0));
    }
}

TEST(WTildeTest, IsExactComplementPermutation) {
    for (int n = 1; n <= 9; ++n) {
        const PureState w = w_state(n);
        const PureState wt = w_tilde(n);
        for (BasisIndex x = 0; x < w.dim(); ++x) {
            EXPECT_EQ(wt.amplitude(x), w.amplitude((w.dim() - 1) ^ x));
        }
    }
}

TEST(WCatTest, SmallCases) {
    expect_amplitudes(w_cat(1), {{1, kInvSqrt2}, {2, kInvSqrt2}});
    // |0 10>, |0 01> at 1/2 and |1 00> at 1/sqrt2.
    expect_amplitudes(w_cat(2), {{2, 0.5}, {1, 0.5}, {4, kInvSqrt2}});
    EXPECT_THROW(w_cat(0), std::invalid_argument);
}

TEST(WCatTest, DensityMatchesFourTermProjector) {
    // (1/2)[|0W><0W| + |0W><1 0..0| + |1 0..0><0W| + |1 0..0><1 0..0|] built term by term.
    for (int n = 1; n <= 4; ++n) {
        const auto half = Eigen::Index{1} << n;
        ComplexVector zero_w = ComplexVector::Zero(2 * half);
        zero_w.head(half) = w_state(n).amplitudes();
        ComplexVector one_zero = ComplexVector::Zero(2 * half);
        one_zero(half) = 1.0;
        const ComplexMatrix expected =
            0.5 * (zero_w * zero_w.adjoint() + zero_w * one_zero.adjoint() + one_zero * zero_w.adjoint() +
                   one_zero * one_zero.adjoint());
        EXPECT_LT(max_abs_difference(to_density(w_cat(n)).elements(), expected), 1e-15);
    }
}

TEST(GhzCatTest, Definitions) {
    expect_amplitudes(ghz_cat(1), {{0, kInvSqrt2}, {3, kInvSqrt2}});
    expect_amplitudes(ghz_cat(2), {{0, kInvSqrt2}, {7, kInvSqrt2}});
    for (int n = 1; n <= 10; ++n) {
        EXPECT_NEAR(micro_log_negativity(ghz_cat(n)), 1.0, 1e-12) << "N=" << n;
    }
    ScopedDenseCap cap(12);
    EXPECT_NEAR(micro_log_negativity(ghz_cat(11)), 1.0, 1e-12);
}

TEST(Psi1Test, DegenerateAndGenericCases) {
    // W~_2 = W_2, so the micro qubit factors out.
    const PureState g2 = psi1_g_state(2);
    EXPECT_LT(max_abs_difference(to_density(g2), tensor(to_density(PureState::normalized(1, ComplexVector::Constant(2, 1.0))),
                                                        to_density(w_state(2)))),
              1e-15);
    EXPECT_NEAR(negativity(to_density(g2), Bipartition::micro_macro(3)), 0.0, 1e-12);
    EXPECT_NEAR(micro_log_negativity(psi1_g_state(3)), 1.0, 1e-12);
}

TEST(Psi2Test, DegenerateAndGenericCases) {
    // W~_1 = |0>, so psi2(1) = |+>|0>.
    expect_amplitudes(psi2(1), {{0, kInvSqrt2}, {2, kInvSqrt2}});
    EXPECT_NEAR(micro_log_negativity(psi2(3)), 1.0, 1e-12);
}

TEST(Psi3Test, SingleQubitBlocksGiveBell) {
    expect_amplitudes(psi3_concat_ghz(1, 2), {{0, kInvSqrt2}, {3, kInvSqrt2}});
}

TEST(Psi3Test, FirstLogicalQubitIsMaximallyEntangled) {
    EXPECT_NEAR(micro_log_negativity(psi3_concat_ghz(2, 2), 2), 1.0, 1e-12);
    EXPECT_NEAR(micro_log_negativity(psi3_concat_ghz(2, 3), 2), 1.0, 1e-12);
}

TEST(Psi3Test, CapacityAndArguments) {
    EXPECT_THROW(psi3_concat_ghz(4, 4), capacity_error);
    EXPECT_THROW(psi3_concat_ghz(0, 2), std::invalid_argument);
    EXPECT_THROW(CatStateKind(CatFamily::WCat, 3, 2), std::invalid_argument);
    EXPECT_EQ(CatStateKind(CatFamily::Psi3Concat, 2, 3).total_qubits(), 9);
}

TEST(CatStatesProperty, NormsAndSupports) {
    for (int n = 1; n <= 10; ++n) {
        for (const PureState& psi : {w_cat(n), ghz_cat(n), psi1_g_state(n), psi2(n)}) {
            EXPECT_NEAR(psi.amplitudes().norm(), 1.0, 1e-12);
        }
        EXPECT_EQ(w_cat(n).support_size(), static_cast<std::size_t>(n + 1));
        EXPECT_EQ(ghz_cat(n).support_size(), 2U);
    }
    for (int l = 1; l <= 3; ++l) {
        for (int k = 1; k * l <= 9; ++k) {
            EXPECT_NEAR(psi3_concat_ghz(l, k).amplitudes().norm(), 1.0, 1e-12);
        }
    }
}

TEST(CatStatesProperty, MacroPermutationSymmetryIsExact) {
    for (int n = 2; n <= 6; ++n) {
        for (const PureState& psi : {w_cat(n), ghz_cat(n), psi1_g_state(n), psi2(n)}) {
            for (int i = 1; i <= n; ++i) {
                for (int j = i + 1; j <= n; ++j) {
                    EXPECT_EQ((swap_qubits(psi, i, j).amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff(), 0.0);
                }
            }
        }
    }
}

TEST(CatFamilyTest, NamesRoundTrip) {
    for (auto f : {CatFamily::GhzCat, CatFamily::WCat, CatFamily::Psi1GState, CatFamily::Psi2, CatFamily::Psi3Concat}) {
        EXPECT_EQ(parse_family(family_name(f)), f);
    }
    EXPECT_FALSE(parse_family("Dicke").has_value());
}

}  // namespace
}  // namespace catnoise
