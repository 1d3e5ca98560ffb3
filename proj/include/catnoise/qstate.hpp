// qstate.hpp
// Dense multi-qubit linear algebra: pure states, density matrices, partial trace,
// partial transpose and Hermitian spectra. Serves as the exact reference engine.
//
// Basis convention: lexicographic ordering with qubit 0 as the most significant bit,
// so in an n-qubit index x the bit of qubit q is (x >> (n - 1 - q)) & 1.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <iterator>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "catnoise/config.hpp"

namespace catnoise {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using BasisIndex = std::uint64_t;

namespace detail {

inline BasisIndex checked_dimension(int n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("a register needs at least one qubit");
    }
    require_dense_capacity(n_qubits);
    return BasisIndex{1} << n_qubits;
}

inline BasisIndex qubit_mask(int n_qubits, int q) { return BasisIndex{1} << (n_qubits - 1 - q); }

inline void check_qubit(int n_qubits, int q) {
    if (q < 0 || q >= n_qubits) {
        throw std::out_of_range("qubit index " + std::to_string(q) + " outside register of " +
                                std::to_string(n_qubits) + " qubits");
    }
}

inline BasisIndex mask_of(int n_qubits, std::span<const int> qubits) {
    BasisIndex mask = 0;
    for (int q : qubits) {
        check_qubit(n_qubits, q);
        const BasisIndex bit = qubit_mask(n_qubits, q);
        if (mask & bit) {
            throw std::invalid_argument("qubit index " + std::to_string(q) + " listed twice");
        }
        mask |= bit;
    }
    return mask;
}

inline double hermiticity_defect(const ComplexMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Scatters the bits of `compact` (a k-bit value) onto the single-bit masks in `positions`,
// most significant first.
inline BasisIndex deposit_bits(BasisIndex compact, const std::vector<BasisIndex>& positions) {
    BasisIndex out = 0;
    const std::size_t k = positions.size();
    for (std::size_t i = 0; i < k; ++i) {
        if ((compact >> (k - 1 - i)) & 1U) {
            out |= positions[i];
        }
    }
    return out;
}

inline std::vector<BasisIndex> positions_of(int n_qubits, const std::vector<int>& qubits) {
    std::vector<BasisIndex> out;
    out.reserve(qubits.size());
    for (int q : qubits) {
        out.push_back(qubit_mask(n_qubits, q));
    }
    return out;
}

}  // namespace detail

/// Normalized state vector over n qubits.
class PureState {
public:
    PureState(int n_qubits, ComplexVector amplitudes) : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
        const BasisIndex dim = detail::checked_dimension(n_qubits_);
        if (static_cast<BasisIndex>(amplitudes_.size()) != dim) {
            throw std::invalid_argument("amplitude vector length does not match 2^n_qubits");
        }
        if (std::abs(amplitudes_.norm() - 1.0) > Tolerances::norm) {
            throw std::invalid_argument("pure state is not normalized");
        }
    }

    static PureState basis(int n_qubits, BasisIndex index) {
        const BasisIndex dim = detail::checked_dimension(n_qubits);
        if (index >= dim) {
            throw std::out_of_range("basis index outside register");
        }
        ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return PureState(n_qubits, std::move(v));
    }

    /// Builds a state from unnormalized amplitudes; rejects the zero vector.
    static PureState normalized(int n_qubits, ComplexVector amplitudes) {
        const double norm = amplitudes.norm();
        if (norm == 0.0) {
            throw std::invalid_argument("cannot normalize the zero vector");
        }
        amplitudes /= norm;
        return PureState(n_qubits, std::move(amplitudes));
    }

    int n_qubits() const { return n_qubits_; }
    BasisIndex dim() const { return static_cast<BasisIndex>(amplitudes_.size()); }
    const ComplexVector& amplitudes() const { return amplitudes_; }
    Complex amplitude(BasisIndex i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

    std::size_t support_size(double cutoff = 0.0) const {
        std::size_t count = 0;
        for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
            if (std::abs(amplitudes_(i)) > cutoff) {
                ++count;
            }
        }
        return count;
    }

private:
    int n_qubits_;
    ComplexVector amplitudes_;
};

/// Hermitian, unit-trace matrix over n qubits. Hermiticity and trace are checked on
/// construction; positivity is checked on demand by check_positivity().
class DensityMatrix {
public:
    DensityMatrix(int n_qubits, ComplexMatrix elements) : n_qubits_(n_qubits), elements_(std::move(elements)) {
        const BasisIndex dim = detail::checked_dimension(n_qubits_);
        if (static_cast<BasisIndex>(elements_.rows()) != dim || elements_.rows() != elements_.cols()) {
            throw std::invalid_argument("density matrix must be square with side 2^n_qubits");
        }
        if (detail::hermiticity_defect(elements_) > Tolerances::hermitian) {
            throw std::invalid_argument("density matrix is not Hermitian");
        }
        if (std::abs(elements_.trace() - Complex{1.0, 0.0}) > Tolerances::trace) {
            throw std::invalid_argument("density matrix does not have unit trace");
        }
    }

    static DensityMatrix maximally_mixed(int n_qubits) {
        const auto dim = static_cast<Eigen::Index>(detail::checked_dimension(n_qubits));
        ComplexMatrix m = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
        return DensityMatrix(n_qubits, std::move(m));
    }

    int n_qubits() const { return n_qubits_; }
    BasisIndex dim() const { return static_cast<BasisIndex>(elements_.rows()); }
    const ComplexMatrix& elements() const { return elements_; }
    Complex operator()(BasisIndex row, BasisIndex col) const {
        return elements_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    /// Smallest eigenvalue; see hermitian_spectrum.
    double min_eigenvalue() const;

    /// Throws std::domain_error when the minimum eigenvalue is below -Tolerances::positivity.
    void check_positivity() const {
        const double lowest = min_eigenvalue();
        if (lowest < -Tolerances::positivity) {
            throw std::domain_error("density matrix is not positive semidefinite (min eigenvalue " +
                                    std::to_string(lowest) + ")");
        }
    }

private:
    int n_qubits_;
    ComplexMatrix elements_;
};

/// A Hermitian operator that need not be positive, e.g. a partial transpose.
class HermitianOperator {
public:
    HermitianOperator(int n_qubits, ComplexMatrix elements) : n_qubits_(n_qubits), elements_(std::move(elements)) {}

    int n_qubits() const { return n_qubits_; }
    const ComplexMatrix& elements() const { return elements_; }
    Complex trace() const { return elements_.trace(); }

private:
    int n_qubits_;
    ComplexMatrix elements_;
};

/// Split of the qubit indices 0..n-1 into two disjoint non-empty groups.
class Bipartition {
public:
    Bipartition(int n_qubits, std::vector<int> side_a) : n_qubits_(n_qubits), side_a_(std::move(side_a)) {
        if (n_qubits_ < 2) {
            throw std::invalid_argument("a bipartition needs at least two qubits");
        }
        std::sort(side_a_.begin(), side_a_.end());
        detail::mask_of(n_qubits_, side_a_);  // range and duplicate check
        if (side_a_.empty() || static_cast<int>(side_a_.size()) == n_qubits_) {
            throw std::invalid_argument("both sides of a bipartition must be non-empty");
        }
        for (int q = 0; q < n_qubits_; ++q) {
            if (!std::binary_search(side_a_.begin(), side_a_.end(), q)) {
                side_b_.push_back(q);
            }
        }
    }

    /// Qubit 0 against the rest.
    static Bipartition micro_macro(int n_qubits) { return Bipartition(n_qubits, {0}); }

    /// The first `k` qubits against the rest.
    static Bipartition leading(int n_qubits, int k) {
        std::vector<int> a(static_cast<std::size_t>(std::max(k, 0)));
        std::iota(a.begin(), a.end(), 0);
        return Bipartition(n_qubits, std::move(a));
    }

    int n_qubits() const { return n_qubits_; }
    const std::vector<int>& side_a() const { return side_a_; }
    const std::vector<int>& side_b() const { return side_b_; }

private:
    int n_qubits_;
    std::vector<int> side_a_;
    std::vector<int> side_b_;
};

/// Real eigenvalues in ascending order.
class Spectrum {
public:
    explicit Spectrum(std::vector<double> eigenvalues) : eigenvalues_(std::move(eigenvalues)) {
        std::sort(eigenvalues_.begin(), eigenvalues_.end());
    }

    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    std::size_t size() const { return eigenvalues_.size(); }
    double operator[](std::size_t i) const { return eigenvalues_[i]; }
    double min() const { return eigenvalues_.front(); }
    double max() const { return eigenvalues_.back(); }
    double sum() const { return std::accumulate(eigenvalues_.begin(), eigenvalues_.end(), 0.0); }

    /// Sum of |lambda| over eigenvalues below -clamp.
    double negative_mass(double clamp = Tolerances::negative_clamp) const {
        double total = 0.0;
        for (double v : eigenvalues_) {
            if (v >= -clamp) {
                break;
            }
            total -= v;
        }
        return total;
    }

    /// Distance from `value` to the nearest eigenvalue.
    double distance_to(double value) const {
        auto it = std::lower_bound(eigenvalues_.begin(), eigenvalues_.end(), value);
        double best = std::numeric_limits<double>::infinity();
        if (it != eigenvalues_.end()) {
            best = std::abs(*it - value);
        }
        if (it != eigenvalues_.begin()) {
            best = std::min(best, std::abs(*std::prev(it) - value));
        }
        return best;
    }

    std::size_t multiplicity(double value, double tol) const {
        return static_cast<std::size_t>(std::count_if(eigenvalues_.begin(), eigenvalues_.end(),
                                                      [&](double v) { return std::abs(v - value) <= tol; }));
    }

private:
    std::vector<double> eigenvalues_;
};

// ---------------------------------------------------------------------------
// Operations

/// Kronecker product; `a` occupies the high-order qubits.
inline PureState tensor(const PureState& a, const PureState& b) {
    const int n = a.n_qubits() + b.n_qubits();
    const auto dim = static_cast<Eigen::Index>(detail::checked_dimension(n));
    ComplexVector out(dim);
    const Eigen::Index db = b.amplitudes().size();
    for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
        out.segment(i * db, db) = a.amplitudes()(i) * b.amplitudes();
    }
    return PureState(n, std::move(out));
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    const int n = a.n_qubits() + b.n_qubits();
    const auto dim = static_cast<Eigen::Index>(detail::checked_dimension(n));
    ComplexMatrix out(dim, dim);
    const Eigen::Index db = b.elements().rows();
    for (Eigen::Index i = 0; i < a.elements().rows(); ++i) {
        for (Eigen::Index j = 0; j < a.elements().cols(); ++j) {
            out.block(i * db, j * db, db, db) = a.elements()(i, j) * b.elements();
        }
    }
    return DensityMatrix(n, std::move(out));
}

void tensor(const PureState&, const DensityMatrix&) = delete;
void tensor(const DensityMatrix&, const PureState&) = delete;

inline DensityMatrix to_density(const PureState& psi) {
    ComplexMatrix rho = psi.amplitudes() * psi.amplitudes().adjoint();
    // Exact Hermiticity: the outer product is Hermitian up to rounding only.
    rho = (0.5 * (rho + rho.adjoint())).eval();
    return DensityMatrix(psi.n_qubits(), std::move(rho));
}

/// Traces out the qubits in `drop`; the survivors keep their relative order.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> drop) {
    const int n = rho.n_qubits();
    const BasisIndex drop_mask = detail::mask_of(n, drop);
    if (drop.empty()) {
        return rho;
    }
    if (static_cast<int>(drop.size()) == n) {
        throw std::invalid_argument("cannot trace out every qubit");
    }
    std::vector<int> kept;
    std::vector<int> traced;
    for (int q = 0; q < n; ++q) {
        ((drop_mask & detail::qubit_mask(n, q)) ? traced : kept).push_back(q);
    }
    const auto kept_pos = detail::positions_of(n, kept);
    const auto traced_pos = detail::positions_of(n, traced);
    const BasisIndex dk = BasisIndex{1} << kept.size();
    const BasisIndex dt = BasisIndex{1} << traced.size();

    std::vector<BasisIndex> kept_full(dk);
    for (BasisIndex a = 0; a < dk; ++a) {
        kept_full[a] = detail::deposit_bits(a, kept_pos);
    }
    std::vector<BasisIndex> traced_full(dt);
    for (BasisIndex t = 0; t < dt; ++t) {
        traced_full[t] = detail::deposit_bits(t, traced_pos);
    }

    const auto& m = rho.elements();
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (BasisIndex a = 0; a < dk; ++a) {
        for (BasisIndex b = 0; b < dk; ++b) {
            Complex acc{0.0, 0.0};
            for (BasisIndex t = 0; t < dt; ++t) {
                acc += m(static_cast<Eigen::Index>(kept_full[a] | traced_full[t]),
                         static_cast<Eigen::Index>(kept_full[b] | traced_full[t]));
            }
            out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
        }
    }
    return DensityMatrix(static_cast<int>(kept.size()), std::move(out));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> drop) {
    return partial_trace(rho, std::span<const int>(drop.begin(), drop.size()));
}

/// Transposes the tensor factor belonging to `side`.
inline HermitianOperator partial_transpose(const ComplexMatrix& m, int n_qubits, std::span<const int> side) {
    const BasisIndex mask = detail::mask_of(n_qubits, side);
    const BasisIndex dim = BasisIndex{1} << n_qubits;
    ComplexMatrix out(m.rows(), m.cols());
    for (BasisIndex x = 0; x < dim; ++x) {
        for (BasisIndex y = 0; y < dim; ++y) {
            const BasisIndex xs = (x & ~mask) | (y & mask);
            const BasisIndex ys = (y & ~mask) | (x & mask);
            out(static_cast<Eigen::Index>(xs), static_cast<Eigen::Index>(ys)) =
                m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
        }
    }
    return HermitianOperator(n_qubits, std::move(out));
}

inline HermitianOperator partial_transpose(const DensityMatrix& rho, std::span<const int> side) {
    return partial_transpose(rho.elements(), rho.n_qubits(), side);
}

inline HermitianOperator partial_transpose(const HermitianOperator& op, std::span<const int> side) {
    return partial_transpose(op.elements(), op.n_qubits(), side);
}

inline HermitianOperator partial_transpose(const DensityMatrix& rho, std::initializer_list<int> side) {
    return partial_transpose(rho, std::span<const int>(side.begin(), side.size()));
}

inline HermitianOperator partial_transpose(const DensityMatrix& rho, const Bipartition& cut) {
    if (cut.n_qubits() != rho.n_qubits()) {
        throw std::invalid_argument("bipartition does not match the register size");
    }
    return partial_transpose(rho, std::span<const int>(cut.side_a()));
}

namespace detail {

// Groups indices into the connected components of the nonzero pattern of `m`.
// Permuting to this block-diagonal form leaves the spectrum unchanged, and the
// cat-state operators decompose into many small blocks.
inline std::vector<std::vector<Eigen::Index>> coupled_blocks(const ComplexMatrix& m) {
    const Eigen::Index dim = m.rows();
    std::vector<Eigen::Index> parent(static_cast<std::size_t>(dim));
    std::iota(parent.begin(), parent.end(), Eigen::Index{0});
    auto find = [&](Eigen::Index i) {
        while (parent[static_cast<std::size_t>(i)] != i) {
            auto& p = parent[static_cast<std::size_t>(i)];
            p = parent[static_cast<std::size_t>(p)];
            i = p;
        }
        return i;
    };
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < j; ++i) {
            if (m(i, j) != Complex{0.0, 0.0} || m(j, i) != Complex{0.0, 0.0}) {
                const Eigen::Index ri = find(i);
                const Eigen::Index rj = find(j);
                if (ri != rj) {
                    parent[static_cast<std::size_t>(std::max(ri, rj))] = std::min(ri, rj);
                }
            }
        }
    }
    std::vector<std::vector<Eigen::Index>> blocks;
    std::vector<Eigen::Index> slot(static_cast<std::size_t>(dim), -1);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const Eigen::Index root = find(i);
        auto& s = slot[static_cast<std::size_t>(root)];
        if (s < 0) {
            s = static_cast<Eigen::Index>(blocks.size());
            blocks.emplace_back();
        }
        blocks[static_cast<std::size_t>(s)].push_back(i);
    }
    return blocks;
}

inline void append_block_eigenvalues(const ComplexMatrix& m, const std::vector<Eigen::Index>& idx,
                                     std::vector<double>& out) {
    const auto k = static_cast<Eigen::Index>(idx.size());
    if (k == 1) {
        out.push_back(m(idx[0], idx[0]).real());
        return;
    }
    bool real = true;
    for (Eigen::Index a = 0; a < k && real; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) {
            if (m(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]).imag() != 0.0) {
                real = false;
                break;
            }
        }
    }
    if (real) {
        Eigen::MatrixXd sub(k, k);
        for (Eigen::Index a = 0; a < k; ++a) {
            for (Eigen::Index b = 0; b < k; ++b) {
                sub(a, b) = m(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]).real();
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sub, Eigen::EigenvaluesOnly);
        for (Eigen::Index a = 0; a < k; ++a) {
            out.push_back(solver.eigenvalues()(a));
        }
    } else {
        ComplexMatrix sub(k, k);
        for (Eigen::Index a = 0; a < k; ++a) {
            for (Eigen::Index b = 0; b < k; ++b) {
                sub(a, b) = m(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
            }
        }
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sub, Eigen::EigenvaluesOnly);
        for (Eigen::Index a = 0; a < k; ++a) {
            out.push_back(solver.eigenvalues()(a));
        }
    }
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix, ascending. Rejects inputs whose Hermiticity
/// defect exceeds Tolerances::spectrum_input.
inline Spectrum hermitian_spectrum(const ComplexMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("spectrum requires a non-empty square matrix");
    }
    if (detail::hermiticity_defect(m) > Tolerances::spectrum_input) {
        throw std::invalid_argument("spectrum requires a Hermitian matrix");
    }
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(m.rows()));
    for (const auto& block : detail::coupled_blocks(m)) {
        detail::append_block_eigenvalues(m, block, values);
    }
    return Spectrum(std::move(values));
}

inline Spectrum hermitian_spectrum(const HermitianOperator& op) { return hermitian_spectrum(op.elements()); }
inline Spectrum hermitian_spectrum(const DensityMatrix& rho) { return hermitian_spectrum(rho.elements()); }

inline double DensityMatrix::min_eigenvalue() const { return hermitian_spectrum(elements_).min(); }

/// Exchanges qubits i and j.
inline PureState swap_qubits(const PureState& psi, int i, int j) {
    const int n = psi.n_qubits();
    detail::check_qubit(n, i);
    detail::check_qubit(n, j);
    const BasisIndex bi = detail::qubit_mask(n, i);
    const BasisIndex bj = detail::qubit_mask(n, j);
    ComplexVector out(psi.amplitudes().size());
    for (BasisIndex x = 0; x < psi.dim(); ++x) {
        BasisIndex y = x & ~(bi | bj);
        if (x & bi) y |= bj;
        if (x & bj) y |= bi;
        out(static_cast<Eigen::Index>(y)) = psi.amplitude(x);
    }
    return PureState(n, std::move(out));
}

inline DensityMatrix swap_qubits(const DensityMatrix& rho, int i, int j) {
    const int n = rho.n_qubits();
    detail::check_qubit(n, i);
    detail::check_qubit(n, j);
    const BasisIndex bi = detail::qubit_mask(n, i);
    const BasisIndex bj = detail::qubit_mask(n, j);
    auto swap_bits = [&](BasisIndex x) {
        BasisIndex y = x & ~(bi | bj);
        if (x & bi) y |= bj;
        if (x & bj) y |= bi;
        return static_cast<Eigen::Index>(y);
    };
    ComplexMatrix out(rho.elements().rows(), rho.elements().cols());
    for (BasisIndex x = 0; x < rho.dim(); ++x) {
        for (BasisIndex y = 0; y < rho.dim(); ++y) {
            out(swap_bits(x), swap_bits(y)) = rho(x, y);
        }
    }
    return DensityMatrix(n, std::move(out));
}

inline double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("shape mismatch");
    }
    return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs_difference(const DensityMatrix& a, const DensityMatrix& b) {
    return max_abs_difference(a.elements(), b.elements());
}

}  // namespace catnoise
