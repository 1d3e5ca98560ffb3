// validation.hpp
// Oracle-vs-analytic invariant grid and the library-wide property checks run by the
// `validate` subcommand.

#pragma once

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "catnoise/analytic_wcat.hpp"
#include "catnoise/experiments.hpp"

namespace catnoise {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationOptions {
    /// Added to every closed-form coefficient before evaluating the eigenvalues. Zero
    /// in normal runs; a small value must make the oracle comparison fail.
    double coefficient_perturbation = 0.0;
    unsigned threads = 1;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;  // logged observations that are not asserted
    double truncation_gap_8_1_01 = 0.0;

    bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
    }

    std::string table() const {
        std::ostringstream out;
        for (const auto& c : checks) {
            out << (c.passed ? "PASS  " : "FAIL  ") << c.name;
            if (!c.detail.empty()) {
                out << "  (" << c.detail << ")";
            }
            out << '\n';
        }
        for (const auto& n : notes) {
            out << "note  " << n << '\n';
        }
        return out.str();
    }
};

namespace detail {

inline CoefficientSet perturbed(CoefficientSet s, double eps) {
    for (double* v : {&s.a, &s.b, &s.c, &s.d, &s.a1, &s.b1, &s.e, &s.f, &s.g}) {
        *v += eps;
    }
    return s;
}

inline bool density_invariants_hold(const DensityMatrix& rho, double& worst_min_eig) {
    const double herm = hermiticity_defect(rho.elements());
    const double tr = std::abs(rho.elements().trace() - Complex{1.0, 0.0});
    const double lowest = rho.min_eigenvalue();
    worst_min_eig = std::min(worst_min_eig, lowest);
    return herm <= Tolerances::hermitian && tr <= Tolerances::trace && lowest >= -Tolerances::positivity;
}

inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

}  // namespace detail

inline std::vector<double> validation_p_grid() {
    std::vector<double> ps;
    for (int k = 0; k <= 10; ++k) {
        ps.push_back(0.05 * k);
    }
    return ps;
}

/// Closed-form eigenvalues against the oracle spectrum on every (N, m, p) with
/// N + 1 - m <= 9 and N - m >= 2. Also records the truncation gap per point.
inline CheckResult check_oracle_equivalence(const ValidationOptions& opt, ValidationReport& report) {
    struct Point {
        int n;
        int m;
        double p;
    };
    std::vector<Point> points;
    for (int n = 2; n <= 8; ++n) {
        for (int m = 0; n - m >= 2; ++m) {
            for (double p : validation_p_grid()) {
                points.push_back({n, m, p});
            }
        }
    }
    std::vector<double> gaps(points.size());
    std::vector<double> truncation(points.size(), 0.0);
    std::vector<int> raw2_off_spectrum(points.size(), 0);
    std::vector<int> reordered(points.size(), 0);
    parallel_for(points.size(), opt.threads, [&](std::size_t i) {
        const auto [n, m, p] = points[i];
        const WCatParams params(n, m, p);
        const DominantPair pair =
            dominant_eigenvalues(detail::perturbed(coefficients(params), opt.coefficient_perturbation), params);
        const Spectrum s = oracle_wcat_spectrum(n, m, p);
        gaps[i] = dominant_pair_discrepancy(pair, s);
        const double exact = std::log2(2.0 * s.negative_mass() + 1.0);
        const double approx = std::log2(2.0 * pair.negativity() + 1.0);
        if (exact > 0.0 && approx > 0.0) {
            truncation[i] = std::abs(exact - approx);
        }
        if (s.distance_to(pair.raw2) > 1e-9) {
            raw2_off_spectrum[i] = n - m == 2 ? 1 : 2;
        }
        reordered[i] = pair.reordered ? 1 : 0;
    });
    double worst = 0.0;
    std::size_t failures = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        worst = std::max(worst, gaps[i]);
        if (gaps[i] > 1e-9) ++failures;
        const auto [n, m, p] = points[i];
        if (n == 8 && m == 1 && std::abs(p - 0.1) < 1e-12) {
            report.truncation_gap_8_1_01 = truncation[i];
        }
        if (truncation[i] >= 1e-2) {
            report.notes.push_back("truncation gap " + detail::sci(truncation[i]) + " at N=" + std::to_string(n) +
                                   " m=" + std::to_string(m) + " p=" + format_real(p));
        }
        if (reordered[i]) {
            report.notes.push_back("|lambda2| > |lambda1| at N=" + std::to_string(n) + " m=" + std::to_string(m) +
                                   " p=" + format_real(p));
        }
    }
    const auto off_pair = std::count(raw2_off_spectrum.begin(), raw2_off_spectrum.end(), 1);
    const auto off_other = std::count(raw2_off_spectrum.begin(), raw2_off_spectrum.end(), 2);
    if (off_pair + off_other > 0) {
        report.notes.push_back("lambda2 formula value outside the spectrum at " + std::to_string(off_pair) +
                               " points with N - m = 2 and " + std::to_string(off_other) + " other points");
    }
    return {"analytic eigenvalues match oracle PT spectrum (N+1-m <= 9, N-m >= 2, p in 0..0.5)", failures == 0,
            std::to_string(points.size()) + " points, worst " + detail::sci(worst)};
}

inline ValidationReport run_validation(const ValidationOptions& opt = {}) {
    ValidationReport report;
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        report.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    report.checks.push_back(check_oracle_equivalence(opt, report));
    add("truncation gap at (N=8, m=1, p=0.1) below 1e-2", report.truncation_gap_8_1_01 < 1e-2,
        "gap " + detail::sci(report.truncation_gap_8_1_01));

    {
        double worst = 0.0;
        for (int n = 2; n <= 60; ++n) {
            for (int m = 0; n - m >= 2; ++m) {
                worst = std::max(worst, std::abs(approx_log_negativity(WCatParams(n, m, 0.0)) -
                                                 loss_only_entanglement(n, m)));
            }
        }
        add("p = 0 reduction to log2(2 - m/N)", worst <= 1e-12, "worst " + detail::sci(worst));
    }

    {
        // m = 0 through the full pure state, a different route from the reduced form.
        double worst = 0.0;
        for (int n = 2; n <= 8; ++n) {
            for (int k = 0; k <= 20; ++k) {
                const double p = 0.05 * k;
                const DensityMatrix rho = depolarize_all(to_density(w_cat(n)), DepolarizingParam(p));
                const Spectrum s = partial_transpose_spectrum(rho, Bipartition::micro_macro(n + 1));
                const WCatParams params(n, 0, p);
                worst = std::max(worst, dominant_pair_discrepancy(
                                            dominant_eigenvalues(detail::perturbed(coefficients(params),
                                                                                   opt.coefficient_perturbation),
                                                                 params),
                                            s));
            }
        }
        add("m = 0 formulas reproduce the pure-decoherence oracle (N <= 8, p in 0..1)", worst <= 1e-9,
            "worst " + detail::sci(worst));
    }

    {
        bool ok = true;
        int raw_dips = 0;
        for (int n : {4, 10, 100, 1000}) {
            for (int m : {0, 1, n / 10, n - 3}) {
                if (n - m < 2) continue;
                double prev = -1.0;
                double prev_raw = -1.0;
                for (int k = 0; k <= 200; ++k) {
                    const DominantPair pair = dominant_eigenvalues(WCatParams(n, m, 0.005 * k));
                    const double l1 = std::min(pair.raw1, 0.0);
                    if (l1 < prev - 1e-15) ok = false;
                    if (pair.raw1 < prev_raw - 1e-15) ++raw_dips;
                    prev = l1;
                    prev_raw = pair.raw1;
                }
            }
        }
        add("negative lambda1 non-decreasing in p", ok);
        if (raw_dips > 0) {
            report.notes.push_back("unclamped lambda1 dips " + std::to_string(raw_dips) +
                                   " times on the p grid, all after it has turned positive (PPT region)");
        }
    }

    {
        double worst_min = 0.0;
        bool ok = true;
        for (auto kind : {CatStateKind(CatFamily::WCat, 5), CatStateKind(CatFamily::GhzCat, 5),
                          CatStateKind(CatFamily::Psi1GState, 5), CatStateKind(CatFamily::Psi2, 5),
                          CatStateKind(CatFamily::Psi3Concat, 2, 2)}) {
            for (int m : {0, 1, 2}) {
                for (double p : {0.0, 0.1, 0.37, 1.0}) {
                    ok = detail::density_invariants_hold(noisy_cat(kind, m, DepolarizingParam(p)), worst_min) && ok;
                }
            }
        }
        add("density matrices Hermitian, unit trace, positive", ok, "lowest eigenvalue " + detail::sci(worst_min));
    }

    {
        double worst = 0.0;
        for (auto kind : {CatStateKind(CatFamily::WCat, 5), CatStateKind(CatFamily::GhzCat, 4),
                          CatStateKind(CatFamily::Psi1GState, 4)}) {
            const DensityMatrix rho = to_density(make_cat_state(kind));
            for (int m : {1, 2}) {
                for (double p : {0.1, 0.45}) {
                    const DepolarizingParam dp(p);
                    const auto a = lose_particles(depolarize_all(rho, dp), LossSpec(m));
                    const auto b = depolarize_all(lose_particles(rho, LossSpec(m)), dp);
                    worst = std::max(worst, max_abs_difference(a, b));
                }
            }
        }
        add("loss and depolarization commute", worst <= 1e-12, "worst " + detail::sci(worst));
    }

    {
        double worst = 0.0;
        const DensityMatrix rho = to_density(psi1_g_state(4));
        for (double p1 : {0.1, 0.3}) {
            for (double p2 : {0.2, 0.7}) {
                for (int q = 0; q < rho.n_qubits(); ++q) {
                    const auto twice =
                        depolarize_qubit(depolarize_qubit(rho, q, DepolarizingParam(p1)), q, DepolarizingParam(p2));
                    const auto once = depolarize_qubit(rho, q, DepolarizingParam(p1 + p2 - p1 * p2));
                    worst = std::max(worst, max_abs_difference(twice, once));
                }
            }
        }
        add("depolarizing composition p1 + p2 - p1 p2", worst <= 1e-12, "worst " + detail::sci(worst));
    }

    {
        double worst_pure = 0.0;
        for (auto make : {w_cat, ghz_cat, psi1_g_state, psi2}) {
            const PureState psi = make(5);
            for (int i = 1; i <= 5; ++i) {
                for (int j = i + 1; j <= 5; ++j) {
                    worst_pure = std::max(
                        worst_pure, (swap_qubits(psi, i, j).amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff());
                }
            }
        }
        double worst_mixed = 0.0;
        for (int m : {0, 1, 2}) {
            const DensityMatrix rho = noisy_wcat(6, m, DepolarizingParam(0.23));
            for (int i = 1; i < rho.n_qubits(); ++i) {
                for (int j = i + 1; j < rho.n_qubits(); ++j) {
                    worst_mixed = std::max(worst_mixed, max_abs_difference(swap_qubits(rho, i, j), rho));
                }
            }
        }
        add("macro permutation symmetry (pure exact, noisy W-cat 1e-12)", worst_pure == 0.0 && worst_mixed <= 1e-12,
            "pure " + detail::sci(worst_pure) + ", noisy " + detail::sci(worst_mixed));
    }

    {
        double worst_sum = 0.0;
        double worst_double = 0.0;
        double worst_trace = 0.0;
        for (auto kind : {CatStateKind(CatFamily::WCat, 4), CatStateKind(CatFamily::GhzCat, 4),
                          CatStateKind(CatFamily::Psi2, 4)}) {
            for (double p : {0.0, 0.2}) {
                const DensityMatrix rho = noisy_cat(kind, 1, DepolarizingParam(p));
                const std::vector<int> side{0};
                const auto pt = partial_transpose(rho, side);
                worst_sum = std::max(worst_sum, std::abs(hermitian_spectrum(pt).sum() - 1.0));
                worst_double = std::max(worst_double,
                                        max_abs_difference(partial_transpose(pt, side).elements(), rho.elements()));
                const DensityMatrix other = DensityMatrix::maximally_mixed(2);
                const std::vector<int> drop{rho.n_qubits(), rho.n_qubits() + 1};
                worst_trace = std::max(worst_trace, max_abs_difference(partial_trace(tensor(rho, other), drop), rho));
            }
        }
        add("PT spectrum sums to 1", worst_sum <= 1e-10, detail::sci(worst_sum));
        add("double partial transpose is the identity", worst_double <= 1e-14, detail::sci(worst_double));
        add("partial trace undoes tensor", worst_trace <= 1e-12, detail::sci(worst_trace));
    }

    {
        double worst = 0.0;
        bool decreasing = true;
        for (int n = 3; n <= 10; ++n) {
            double prev = 2.0;
            for (int m = 0; m < n; ++m) {
                const DensityMatrix rho = reduced_w_cat(n, m);
                const double e = log_negativity(rho, Bipartition::micro_macro(rho.n_qubits()));
                worst = std::max(worst, std::abs(e - std::log2(2.0 - static_cast<double>(m) / n)));
                decreasing = decreasing && e < prev;
                prev = e;
            }
        }
        add("loss law log2(2 - m/N), strictly decreasing in m (N = 3..10)", worst <= 1e-10 && decreasing,
            "worst " + detail::sci(worst));
    }

    {
        bool ok = true;
        double highest = 0.0;
        for (auto kind : {CatStateKind(CatFamily::WCat, 6), CatStateKind(CatFamily::GhzCat, 6)}) {
            for (int m : {0, 1}) {
                double prev = 2.0;
                for (int k = 0; k <= 20; ++k) {
                    const double e = std::log2(2.0 * oracle_negativity(kind, m, 0.05 * k) + 1.0);
                    highest = std::max(highest, e);
                    ok = ok && e <= prev + 1e-12 && e >= 0.0;
                    prev = e;
                }
            }
        }
        add("log-negativity in [0, 1] and non-increasing in p", ok && highest <= 1.0 + 1e-10);
    }

    {
        bool ok = true;
        double prev = 2.0;
        for (int n = 1; n <= 30; ++n) {
            const double v = critical_visibility(n);
            // N = 1 and N = 2 coincide at 1/sqrt2.
            ok = ok && (n == 2 ? v <= prev : v < prev) && v > 0.0 && v <= 1.0;
            prev = v;
        }
        add("critical visibility in (0, 1], strictly decreasing from N = 2 (N = 1..30)", ok);
    }

    {
        const std::vector<int> ns{3, 5, 8};
        const RunConfig single{1, OutputFormat::Csv};
        const RunConfig multi{4, OutputFormat::Csv};
        const auto a = run_fig1(ns, single);
        const auto b = run_fig1(ns, multi);
        const auto ps = Grid(0.0, 0.2, 0.05).values();
        const auto c = run_fig2({3}, ps, single);
        const auto d = run_fig2({3}, ps, multi);
        const bool ok = to_csv(a) == to_csv(b) && to_json(a) == to_json(b) && to_csv(c) == to_csv(d) &&
                        to_json(c) == to_json(d);
        add("output files byte-identical across thread counts", ok);
    }

    return report;
}

}  // namespace catnoise
