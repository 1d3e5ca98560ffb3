// analytic_wcat.hpp
// Closed-form entanglement of the W-cat state under particle loss and local
// depolarizing noise. Nothing here scales with 2^N, so N = 10^3 and beyond is cheap.
//
// With r = N - m surviving macro qubits, h = p/2 and t = 1 - p/2, the partial
// transpose over the micro qubit has a non-degenerate eigenvalue lambda1 and an
// (r - 1)-fold degenerate eigenvalue lambda2 that together carry almost all of
// the negativity:
//
//   lambda1 = (1/4) { c + (r-1) d + a - sqrt(4 r b^2 + (c + (r-1) d - a)^2) }
//   lambda2 = (1/4) { a1 - b1 + f + Nt g - sqrt(4 (Nt+2) e^2 + (-a1 + b1 + f + Nt g)^2) },  Nt = r - 4

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "catnoise/config.hpp"
#include "catnoise/entanglement.hpp"

namespace catnoise {

/// Coordinates (N, m, p) of a noisy W-cat: N macro qubits, m of them lost, depolarizing p.
class WCatParams {
public:
    WCatParams(int n, int lost, double p) : n_(n), lost_(lost), p_(p) {
        if (n < 1) {
            throw std::invalid_argument("W-cat needs N >= 1");
        }
        if (lost < 0 || lost > n) {
            throw std::invalid_argument("lost count must satisfy 0 <= m <= N");
        }
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("depolarizing probability must lie in [0, 1]");
        }
    }

    int macro() const { return n_; }
    int lost() const { return lost_; }
    double p() const { return p_; }
    int survivors() const { return n_ - lost_; }
    double p_tilde() const { return 1.0 - 0.5 * p_; }
    int n_tilde() const { return n_ - lost_ - 4; }

private:
    int n_;
    int lost_;
    double p_;
};

struct CoefficientSet {
    double a = 0, b = 0, c = 0, d = 0;
    double a1 = 0, b1 = 0, e = 0, f = 0, g = 0;
    double alpha1 = 0, alpha2 = 0, gamma1 = 0, gamma2 = 0;
};

/// The two dominant partial-transpose eigenvalues. `lambda1`/`lambda2` are clamped to
/// zero when the formula leaves no negativity and ordered so |lambda1| >= |lambda2|;
/// `raw1`/`raw2` keep the unclamped formula values.
struct DominantPair {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double raw1 = 0.0;
    double raw2 = 0.0;
    int lambda2_multiplicity = 0;
    bool reordered = false;

    /// Negativity carried by lambda1 and the degenerate lambda2 family.
    double negativity() const {
        auto part = [](double v) { return v >= -Tolerances::formula_clamp ? 0.0 : -v; };
        return part(raw1) + lambda2_multiplicity * part(raw2);
    }
};

inline constexpr int log_domain_threshold = 64;

inline double power_by_multiplication(double base, int exponent) {
    double out = 1.0;
    for (int i = 0; i < std::abs(exponent); ++i) {
        out *= base;
    }
    return exponent < 0 ? 1.0 / out : out;
}

inline double power_by_logarithm(double base, int exponent) {
    return std::exp(static_cast<double>(exponent) * std::log(base));
}

namespace detail {

inline double tilde_power(double base, int exponent, int n) {
    return n > log_domain_threshold ? power_by_logarithm(base, exponent) : power_by_multiplication(base, exponent);
}

inline void require_analytic_range(const WCatParams& params) {
    if (params.survivors() < 2) {
        throw std::domain_error("closed-form W-cat eigenvalues need N - m >= 2 (got N = " +
                                std::to_string(params.macro()) + ", m = " + std::to_string(params.lost()) +
                                "); use the oracle engine");
    }
}

}  // namespace detail

inline CoefficientSet coefficients(const WCatParams& params) {
    detail::require_analytic_range(params);
    const int n = params.macro();
    const int r = params.survivors();
    const double nn = static_cast<double>(n);
    const double lost_fraction = static_cast<double>(params.lost()) / nn;
    const double h = 0.5 * params.p();
    const double keep2 = (1.0 - params.p()) * (1.0 - params.p());
    const double t = params.p_tilde();
    auto tp = [&](int k) { return detail::tilde_power(t, k, n); };

    CoefficientSet s;
    s.alpha1 = (tp(r) + (r - 1) * h * h * tp(r - 2)) / nn;
    s.gamma1 = (static_cast<double>(r) / nn) * h * tp(r - 1);
    s.alpha2 = (2.0 * tp(r - 1) * h + (r - 2) * h * h * h * tp(r - 3)) / nn;
    s.gamma2 = (tp(r) + (r - 1) * h * h * tp(r - 2)) / nn;

    s.a = s.gamma1 * t + lost_fraction * tp(r + 1) + h * tp(r);
    s.b = keep2 * tp(r - 1) / std::sqrt(nn);
    s.c = s.alpha1 * h + lost_fraction * h * h * tp(r - 1) + h * tp(r);
    s.d = h * keep2 * tp(r - 2) / nn;

    s.a1 = h * h * tp(r - 1) + lost_fraction * h * tp(r) + s.gamma2 * t;
    s.b1 = keep2 * tp(r - 1) / nn;
    s.e = keep2 * h * tp(r - 2) / std::sqrt(nn);
    s.g = keep2 * h * h * tp(r - 3) / nn;
    s.f = h * h * tp(r - 1) + lost_fraction * h * h * h * tp(r - 2) + s.alpha2 * h;
    return s;
}

/// Evaluates the eigenvalue formulas on a given coefficient set.
inline DominantPair dominant_eigenvalues(const CoefficientSet& s, const WCatParams& params) {
    detail::require_analytic_range(params);
    const double r = static_cast<double>(params.survivors());
    const double nt = static_cast<double>(params.n_tilde());

    const double diag1 = s.c + (r - 1.0) * s.d;
    const double raw1 = 0.25 * (diag1 + s.a - std::sqrt(4.0 * r * s.b * s.b + (diag1 - s.a) * (diag1 - s.a)));

    const double fg = s.f + nt * s.g;
    const double raw2 =
        0.25 * ((s.a1 - s.b1 + fg) - std::sqrt(4.0 * (nt + 2.0) * s.e * s.e + (-s.a1 + s.b1 + fg) * (-s.a1 + s.b1 + fg)));

    auto clamp = [](double v) { return v >= -Tolerances::formula_clamp ? 0.0 : v; };
    DominantPair out;
    out.raw1 = raw1;
    out.raw2 = raw2;
    out.lambda1 = clamp(raw1);
    out.lambda2 = clamp(raw2);
    out.lambda2_multiplicity = params.survivors() - 1;
    if (std::abs(out.lambda2) > std::abs(out.lambda1)) {
        std::swap(out.lambda1, out.lambda2);
        out.reordered = true;
    }
    return out;
}

inline DominantPair dominant_eigenvalues(const WCatParams& params) {
    return dominant_eigenvalues(coefficients(params), params);
}

/// log2(2 - m/N): entanglement after pure particle loss.
inline double loss_only_entanglement(int n, int lost) {
    if (n < 1 || lost < 0 || lost > n) {
        throw std::invalid_argument("loss-only entanglement needs N >= 1 and 0 <= m <= N");
    }
    return std::log2(2.0 - static_cast<double>(lost) / n);
}

/// -(1/2)(1 - m/N): the single negative eigenvalue after pure particle loss.
inline double loss_only_eigenvalue(int n, int lost) {
    if (n < 1 || lost < 0 || lost > n) {
        throw std::invalid_argument("loss-only eigenvalue needs N >= 1 and 0 <= m <= N");
    }
    return -0.5 * (1.0 - static_cast<double>(lost) / n);
}

/// Logarithmic negativity kept by lambda1 and the (N-m-1)-fold lambda2.
inline double approx_log_negativity(const WCatParams& params) {
    return std::log2(2.0 * dominant_eigenvalues(params).negativity() + 1.0);
}

inline double approx_negativity(const WCatParams& params) { return dominant_eigenvalues(params).negativity(); }

/// Largest p at which the closed-form negativity stays above the zero threshold.
inline double large_n_threshold(int n, int lost) {
    detail::require_analytic_range(WCatParams(n, lost, 0.0));
    return bisect_vanishing_point([&](double p) { return approx_negativity(WCatParams(n, lost, p)); });
}

/// Threshold search for any cat family. The analytic engine covers the W-cat only.
inline double vanishing_noise_threshold(const CatStateKind& kind, int lost, Engine engine) {
    if (engine == Engine::Analytic) {
        if (kind.family != CatFamily::WCat) {
            throw std::invalid_argument("the analytic engine only covers the W-cat state");
        }
        return large_n_threshold(kind.macro, lost);
    }
    return bisect_vanishing_point([&](double p) { return oracle_negativity(kind, lost, p); });
}

}  // namespace catnoise
