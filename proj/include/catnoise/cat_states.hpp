// cat_states.hpp
// Constructors for the cat states: W-cat, GHZ-cat, the G state, the flipped-W cat and
// the concatenated GHZ state. The microscopic qubit always sits at index 0.

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "catnoise/qstate.hpp"

namespace catnoise {

enum class CatFamily { GhzCat, WCat, Psi1GState, Psi2, Psi3Concat };

inline std::string_view family_name(CatFamily f) {
    switch (f) {
        case CatFamily::GhzCat: return "GhzCat";
        case CatFamily::WCat: return "WCat";
        case CatFamily::Psi1GState: return "Psi1GState";
        case CatFamily::Psi2: return "Psi2";
        case CatFamily::Psi3Concat: return "Psi3Concat";
    }
    return "?";
}

inline std::optional<CatFamily> parse_family(std::string_view name) {
    for (auto f : {CatFamily::GhzCat, CatFamily::WCat, CatFamily::Psi1GState, CatFamily::Psi2,
                   CatFamily::Psi3Concat}) {
        if (family_name(f) == name) {
            return f;
        }
    }
    return std::nullopt;
}

/// A cat-state family with its size. For Psi3Concat, `block` is the number of
/// physical qubits per logical qubit and the state has block*(macro+1) qubits.
struct CatStateKind {
    CatFamily family;
    int macro;
    int block = 1;

    CatStateKind(CatFamily f, int n, int l = 1) : family(f), macro(n), block(l) {
        if (macro < 1) {
            throw std::invalid_argument("cat states need at least one macroscopic qubit");
        }
        if (block < 1) {
            throw std::invalid_argument("logical blocks need at least one physical qubit");
        }
        if (family != CatFamily::Psi3Concat && block != 1) {
            throw std::invalid_argument("block size only applies to the concatenated GHZ state");
        }
    }

    int total_qubits() const { return block * (macro + 1); }
    /// Qubits on the microscopic side of the cut.
    int micro_qubits() const { return block; }
};

namespace detail {

inline ComplexVector zero_vector(int n_qubits) {
    return ComplexVector::Zero(static_cast<Eigen::Index>(checked_dimension(n_qubits)));
}

inline void require_macro(int n) {
    if (n < 1) {
        throw std::invalid_argument("macroscopic register needs N >= 1");
    }
}

// Joins a micro qubit (high bit) to two macro branches: (|0>|lo> + |1>|hi>)/sqrt2.
inline PureState micro_superposition(const PureState& lo, const PureState& hi) {
    const int n = lo.n_qubits() + 1;
    ComplexVector v = zero_vector(n);
    const auto d = static_cast<Eigen::Index>(lo.dim());
    v.head(d) = lo.amplitudes();
    v.tail(d) = hi.amplitudes();
    return PureState::normalized(n, std::move(v));
}

}  // namespace detail

/// Equal superposition of the N weight-one strings.
inline PureState w_state(int n) {
    detail::require_macro(n);
    ComplexVector v = detail::zero_vector(n);
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (int q = 0; q < n; ++q) {
        v(static_cast<Eigen::Index>(detail::qubit_mask(n, q))) = amp;
    }
    return PureState(n, std::move(v));
}

/// Bitwise complement of w_state(n): every string with exactly one zero.
inline PureState w_tilde(int n) {
    const PureState w = w_state(n);
    ComplexVector v(w.amplitudes().size());
    const BasisIndex all = w.dim() - 1;
    for (BasisIndex x = 0; x < w.dim(); ++x) {
        v(static_cast<Eigen::Index>(all ^ x)) = w.amplitude(x);
    }
    return PureState(n, std::move(v));
}

/// (|0>|W_N> + |1>|0...0>)/sqrt2.
inline PureState w_cat(int n) {
    detail::require_macro(n);
    detail::checked_dimension(n + 1);
    return detail::micro_superposition(w_state(n), PureState::basis(n, 0));
}

/// (|0>|0...0> + |1>|1...1>)/sqrt2.
inline PureState ghz_cat(int n) {
    detail::require_macro(n);
    ComplexVector v = detail::zero_vector(n + 1);
    v(0) = 1.0;
    v(v.size() - 1) = 1.0;
    return PureState::normalized(n + 1, std::move(v));
}

/// The G state (|0>|W_N> + |1>|W~_N>)/sqrt2.
inline PureState psi1_g_state(int n) {
    detail::require_macro(n);
    detail::checked_dimension(n + 1);
    return detail::micro_superposition(w_state(n), w_tilde(n));
}

/// (|0>|W~_N> + |1>|0...0>)/sqrt2.
inline PureState psi2(int n) {
    detail::require_macro(n);
    detail::checked_dimension(n + 1);
    return detail::micro_superposition(w_tilde(n), PureState::basis(n, 0));
}

/// (|GHZ_l^+>^{(x)k} + |GHZ_l^->^{(x)k})/sqrt2 with |GHZ_l^+-> = (|0..0> +- |1..1>)/sqrt2,
/// over k = n_logical blocks of l physical qubits each.
inline PureState psi3_concat_ghz(int l, int n_logical) {
    if (l < 1 || n_logical < 1) {
        throw std::invalid_argument("concatenated GHZ needs l >= 1 and at least one logical qubit");
    }
    if (l * n_logical > dense_cap()) {
        throw capacity_error("concatenated GHZ with " + std::to_string(l * n_logical) +
                             " physical qubits exceeds the dense cap of " + std::to_string(dense_cap()));
    }
    const int n = l * n_logical;
    ComplexVector v = detail::zero_vector(n);
    const BasisIndex block_ones = (BasisIndex{1} << l) - 1;
    // Only strings made of uniform blocks contribute: amplitude 2^{-k/2}(1 + (-1)^{#ones blocks})/sqrt2.
    const double base = std::pow(2.0, -0.5 * n_logical) / std::sqrt(2.0);
    for (BasisIndex pattern = 0; pattern < (BasisIndex{1} << n_logical); ++pattern) {
        BasisIndex x = 0;
        int ones = 0;
        for (int b = 0; b < n_logical; ++b) {
            x <<= l;
            if ((pattern >> (n_logical - 1 - b)) & 1U) {
                x |= block_ones;
                ++ones;
            }
        }
        v(static_cast<Eigen::Index>(x)) = (ones % 2 == 0) ? 2.0 * base : 0.0;
    }
    return PureState(n, std::move(v));
}

inline PureState make_cat_state(const CatStateKind& kind) {
    switch (kind.family) {
        case CatFamily::GhzCat: return ghz_cat(kind.macro);
        case CatFamily::WCat: return w_cat(kind.macro);
        case CatFamily::Psi1GState: return psi1_g_state(kind.macro);
        case CatFamily::Psi2: return psi2(kind.macro);
        case CatFamily::Psi3Concat: return psi3_concat_ghz(kind.block, kind.macro + 1);
    }
    throw std::invalid_argument("unknown cat family");
}

}  // namespace catnoise
