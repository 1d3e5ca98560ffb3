// config.hpp
// Shared tolerances, the dense-engine capacity guard and the library error types.

#pragma once

#include <atomic>
#include <stdexcept>
#include <string>

namespace catnoise {

/// Numerical tolerances used across every module.
struct Tolerances {
    static constexpr double norm = 1e-12;          // unit norm of pure states
    static constexpr double hermitian = 1e-12;     // max |M - M^dagger| of density matrices
    static constexpr double trace = 1e-12;         // |tr rho - 1|
    static constexpr double positivity = 1e-10;    // min eigenvalue >= -positivity
    static constexpr double spectrum_input = 1e-10;  // Hermiticity accepted by the eigensolver
    static constexpr double spectrum_sum = 1e-10;  // PT spectra sum to one
    static constexpr double negative_clamp = 1e-10;  // PT eigenvalues in (-clamp, 0) count as zero
    static constexpr double zero_negativity = 1e-9;  // entangled iff negativity exceeds this
    static constexpr double formula_clamp = 1e-15;   // analytic eigenvalues >= -clamp count as zero
    static constexpr double bisection = 1e-4;        // resolution of threshold searches in p
};

/// Thrown when a dense object would exceed the configured qubit cap.
class capacity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int default_dense_cap = 12;
inline constexpr int hard_dense_limit = 15;

namespace detail {
inline std::atomic<int>& dense_cap_storage() {
    static std::atomic<int> cap{default_dense_cap};
    return cap;
}
}  // namespace detail

inline int dense_cap() { return detail::dense_cap_storage().load(std::memory_order_relaxed); }

/// Changes the qubit cap of the dense engine. Values above hard_dense_limit are refused.
inline void set_dense_cap(int qubits) {
    if (qubits < 1 || qubits > hard_dense_limit) {
        throw std::invalid_argument("dense cap must lie in [1, " + std::to_string(hard_dense_limit) + "]");
    }
    detail::dense_cap_storage().store(qubits, std::memory_order_relaxed);
}

inline void require_dense_capacity(int n_qubits) {
    if (n_qubits > dense_cap()) {
        throw capacity_error("dense engine capacity exceeded: " + std::to_string(n_qubits) +
                             " qubits requested, cap is " + std::to_string(dense_cap()));
    }
}

/// Restores the previous cap when it goes out of scope.
class ScopedDenseCap {
public:
    explicit ScopedDenseCap(int qubits) : previous_(dense_cap()) { set_dense_cap(qubits); }
    ~ScopedDenseCap() { detail::dense_cap_storage().store(previous_); }
    ScopedDenseCap(const ScopedDenseCap&) = delete;
    ScopedDenseCap& operator=(const ScopedDenseCap&) = delete;

private:
    int previous_;
};

}  // namespace catnoise
