// entanglement.hpp
// Negativity, logarithmic negativity, critical visibility and noise-threshold search.

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "catnoise/cat_states.hpp"
#include "catnoise/noise.hpp"
#include "catnoise/qstate.hpp"

namespace catnoise {

/// Entanglement across a cut, with log_negativity = log2(2 * negativity + 1) in ebits.
struct EntanglementValue {
    double negativity = 0.0;
    double log_negativity = 0.0;

    static EntanglementValue from_negativity(double n) { return {n, std::log2(2.0 * n + 1.0)}; }
    bool entangled() const { return negativity > Tolerances::zero_negativity; }
};

inline Spectrum partial_transpose_spectrum(const DensityMatrix& rho, const Bipartition& cut) {
    return hermitian_spectrum(partial_transpose(rho, cut));
}

/// Sum of |lambda| over the negative eigenvalues of the partial transpose; eigenvalues
/// in (-1e-10, 0) are treated as zero.
inline double negativity(const DensityMatrix& rho, const Bipartition& cut) {
    return partial_transpose_spectrum(rho, cut).negative_mass();
}

inline double log_negativity(const DensityMatrix& rho, const Bipartition& cut) {
    return std::log2(2.0 * negativity(rho, cut) + 1.0);
}

inline EntanglementValue entanglement(const DensityMatrix& rho, const Bipartition& cut) {
    return EntanglementValue::from_negativity(negativity(rho, cut));
}

/// N / ((sqrt2 - 1) 2^{N-1} + N): visibility above which |W_N> violates local realism.
inline double critical_visibility(int n) {
    if (n < 1) {
        throw std::invalid_argument("critical visibility needs N >= 1");
    }
    const double nn = static_cast<double>(n);
    return nn / ((std::sqrt(2.0) - 1.0) * std::ldexp(1.0, n - 1) + nn);
}

enum class Engine { Oracle, Analytic };

inline std::string_view engine_name(Engine e) { return e == Engine::Oracle ? "oracle" : "analytic"; }

/// Cut between the microscopic side of a (possibly reduced) cat state and the rest.
inline Bipartition micro_cut(const CatStateKind& kind, int surviving_qubits) {
    return Bipartition::leading(surviving_qubits, kind.micro_qubits());
}

/// Negativity of a cat state after losing `lost` qubits and depolarizing the survivors.
inline double oracle_negativity(const CatStateKind& kind, int lost, double p) {
    const DensityMatrix rho = noisy_cat(kind, lost, DepolarizingParam(p));
    return negativity(rho, micro_cut(kind, rho.n_qubits()));
}

/// Largest p in [0, 1] at which `negativity_at(p)` still exceeds the zero threshold.
/// The function is sampled on `grid_points` evenly spaced values first; a rise of more
/// than `monotone_slack` between consecutive samples aborts the search. The bracketing
/// samples are then bisected down to `resolution`.
inline double bisect_vanishing_point(const std::function<double(double)>& negativity_at,
                                     double resolution = Tolerances::bisection, int grid_points = 21,
                                     double monotone_slack = 1e-12) {
    const auto entangled = [&](double v) { return v > Tolerances::zero_negativity; };
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i) {
        const double p = static_cast<double>(i) / (grid_points - 1);
        samples.push_back(negativity_at(p));
        if (i > 0 && samples[i] > samples[i - 1] + monotone_slack) {
            throw std::runtime_error("negativity is not monotone in p near p = " + std::to_string(p) +
                                     "; bisection would be unreliable");
        }
    }
    if (!entangled(samples.front())) {
        return 0.0;
    }
    if (entangled(samples.back())) {
        return 1.0;
    }
    int last = 0;
    while (entangled(samples[static_cast<std::size_t>(last) + 1])) {
        ++last;
    }
    double lo = static_cast<double>(last) / (grid_points - 1);
    double hi = static_cast<double>(last + 1) / (grid_points - 1);
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        (entangled(negativity_at(mid)) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace catnoise
