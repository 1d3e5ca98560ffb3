// noise.hpp
// Local depolarizing channels and particle loss.

#pragma once

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "catnoise/cat_states.hpp"
#include "catnoise/qstate.hpp"

namespace catnoise {

/// Depolarizing probability p in [0, 1].
class DepolarizingParam {
public:
    explicit DepolarizingParam(double p) : p_(p) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("depolarizing probability must lie in [0, 1], got " + std::to_string(p));
        }
    }
    double value() const { return p_; }

private:
    double p_;
};

/// Number of macroscopic qubits lost. The highest-indexed qubits are the ones removed.
struct LossSpec {
    int lost = 0;

    explicit LossSpec(int m) : lost(m) {
        if (m < 0) {
            throw std::invalid_argument("cannot lose a negative number of particles");
        }
    }
};

/// rho -> (1-p) rho + p tr_q(rho) (x) I/2 on qubit q. Kraus form:
/// {sqrt(1-3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}.
inline DensityMatrix depolarize_qubit(const DensityMatrix& rho, int q, DepolarizingParam param) {
    const int n = rho.n_qubits();
    detail::check_qubit(n, q);
    const double p = param.value();
    if (p == 0.0) {
        return rho;
    }
    const BasisIndex bit = detail::qubit_mask(n, q);
    const double keep = 1.0 - p;
    const double half = 0.5 * p;
    ComplexMatrix m = rho.elements();
    for (BasisIndex x = 0; x < rho.dim(); ++x) {
        if (x & bit) continue;
        const auto x0 = static_cast<Eigen::Index>(x);
        const auto x1 = static_cast<Eigen::Index>(x | bit);
        for (BasisIndex y = 0; y < rho.dim(); ++y) {
            if (y & bit) continue;
            const auto y0 = static_cast<Eigen::Index>(y);
            const auto y1 = static_cast<Eigen::Index>(y | bit);
            const Complex diag_sum = m(x0, y0) + m(x1, y1);
            m(x0, y0) = keep * m(x0, y0) + half * diag_sum;
            m(x1, y1) = keep * m(x1, y1) + half * diag_sum;
            m(x0, y1) *= keep;
            m(x1, y0) *= keep;
        }
    }
    return DensityMatrix(n, std::move(m));
}

/// Same channel on every qubit. Channels on distinct qubits commute.
inline DensityMatrix depolarize_all(const DensityMatrix& rho, DepolarizingParam p) {
    DensityMatrix out = rho;
    for (int q = 0; q < rho.n_qubits(); ++q) {
        out = depolarize_qubit(out, q, p);
    }
    return out;
}

/// Traces out the last `spec.lost` qubits, which must all lie outside the first
/// `micro_qubits` (the microscopic side).
inline DensityMatrix lose_particles(const DensityMatrix& rho, LossSpec spec, int micro_qubits = 1) {
    const int macro = rho.n_qubits() - micro_qubits;
    if (spec.lost > macro) {
        throw std::invalid_argument("cannot lose " + std::to_string(spec.lost) + " particles from a macro part of " +
                                    std::to_string(macro));
    }
    std::vector<int> drop(static_cast<std::size_t>(spec.lost));
    std::iota(drop.begin(), drop.end(), rho.n_qubits() - spec.lost);
    return partial_trace(rho, drop);
}

/// The W-cat after losing m of its N macro qubits, built directly from its five-term
/// closed form (valid when only the N-m+1 surviving qubits fit the dense cap):
///   (1/2)[ (N-m)/N |0><0| (x) |W><W| + m/N |0><0| (x) |0..0><0..0|
///        + sqrt((N-m)/N) (|0><1| (x) |W><0..0| + h.c.) + |1><1| (x) |0..0><0..0| ].
inline DensityMatrix reduced_w_cat(int n, int lost) {
    if (n < 1 || lost < 0 || lost > n) {
        throw std::invalid_argument("reduced W-cat requires 0 <= m <= N and N >= 1");
    }
    const int survivors = n - lost;
    const int qubits = survivors + 1;
    const auto dim = static_cast<Eigen::Index>(detail::checked_dimension(qubits));
    const Eigen::Index half_dim = dim / 2;
    const double kept_fraction = static_cast<double>(survivors) / n;
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);

    // Unnormalized |W_{N-m}> amplitudes are 1/sqrt(N) each; W sits in the micro=0 half.
    std::vector<Eigen::Index> w_support;
    for (int q = 0; q < survivors; ++q) {
        w_support.push_back(static_cast<Eigen::Index>(detail::qubit_mask(survivors, q)));
    }
    const double w_amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto i : w_support) {
        for (auto j : w_support) {
            m(i, j) = 0.5 * w_amp * w_amp;
        }
        m(i, half_dim) = 0.5 * w_amp;
        m(half_dim, i) = 0.5 * w_amp;
    }
    m(0, 0) = 0.5 * (1.0 - kept_fraction);
    m(half_dim, half_dim) = 0.5;
    return DensityMatrix(qubits, std::move(m));
}

/// Loss of m macro qubits followed by depolarizing noise on every survivor.
inline DensityMatrix noisy_wcat(int n, int lost, DepolarizingParam p) {
    if (lost > n) {
        throw std::invalid_argument("cannot lose more particles than the macro part holds");
    }
    require_dense_capacity(n - lost + 1);
    return depolarize_all(reduced_w_cat(n, lost), p);
}

/// Loss then depolarization for any cat family; losses come off the highest indices.
inline DensityMatrix noisy_cat(const CatStateKind& kind, int lost, DepolarizingParam p) {
    if (kind.family == CatFamily::WCat) {
        return noisy_wcat(kind.macro, lost, p);
    }
    const DensityMatrix rho = to_density(make_cat_state(kind));
    return depolarize_all(lose_particles(rho, LossSpec(lost), kind.micro_qubits()), p);
}

}  // namespace catnoise
