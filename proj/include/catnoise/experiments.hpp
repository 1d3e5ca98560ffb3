// experiments.hpp
// Parameter sweeps behind the figure data, the competitor-cat loss table, and the
// CSV / JSON writers. Output is byte-deterministic: rows are sorted before writing
// and reals are printed with 12 significant digits.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "catnoise/analytic_wcat.hpp"
#include "catnoise/entanglement.hpp"
#include "catnoise/parallel.hpp"

namespace catnoise {

/// One output row.
struct SweepRecord {
    std::string state;
    int n = 0;
    int m = 0;
    double p = 0.0;
    double entanglement = 0.0;
    Engine engine = Engine::Oracle;
    std::optional<double> lambda1;
    std::optional<double> lambda2;
};

/// One row of the competitor-cat loss table.
struct LossVerdict {
    std::string state;
    int n = 0;
    int block = 1;
    std::string pattern;  // which qubits were lost
    double negativity = 0.0;
    double log_negativity = 0.0;

    bool entangled() const { return negativity > Tolerances::zero_negativity; }
    std::string verdict() const { return entangled() ? "entangled" : "ppt"; }
};

struct ThresholdRow {
    int n = 0;
    int m = 0;
    double p_star = 0.0;
};

enum class OutputFormat { Csv, Json };

/// Evenly spaced values min, min+step, ..., up to max (inclusive within step/1e6).
struct Grid {
    double min = 0.0;
    double max = 0.0;
    double step = 0.0;

    Grid(double lo, double hi, double dp) : min(lo), max(hi), step(dp) {
        if (!(dp > 0.0)) {
            throw std::invalid_argument("grid step must be positive");
        }
        if (hi < lo) {
            throw std::invalid_argument("grid maximum lies below its minimum");
        }
    }

    std::vector<double> values() const {
        const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-6)) + 1;
        std::vector<double> out(count);
        for (std::size_t i = 0; i < count; ++i) {
            out[i] = std::min(max, min + static_cast<double>(i) * step);
        }
        return out;
    }
};

/// Common run options.
struct RunConfig {
    unsigned threads = 1;
    OutputFormat format = OutputFormat::Csv;
};

/// Raised when an analytic value disagrees with the dense oracle.
class cross_check_error : public std::runtime_error {
public:
    cross_check_error(const std::string& what, std::vector<SweepRecord> rows)
        : std::runtime_error(what), rows_(std::move(rows)) {}
    const std::vector<SweepRecord>& rows() const { return rows_; }

private:
    std::vector<SweepRecord> rows_;
};

// ---------------------------------------------------------------------------
// Formatting

inline std::string format_real(double v) {
    if (v == 0.0) {
        v = 0.0;  // drop the sign of negative zero
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline double rounded_real(double v) { return std::stod(format_real(v)); }

inline void sort_records(std::vector<SweepRecord>& rows) {
    std::sort(rows.begin(), rows.end(), [](const SweepRecord& a, const SweepRecord& b) {
        return std::tie(a.state, a.n, a.m, a.p, a.engine) < std::tie(b.state, b.n, b.m, b.p, b.engine);
    });
}

inline const char* csv_header = "state,N,m,p,entanglement,engine,lambda1,lambda2";

inline std::string to_csv(const std::vector<SweepRecord>& rows) {
    std::ostringstream out;
    out << csv_header << '\n';
    for (const auto& r : rows) {
        out << r.state << ',' << r.n << ',' << r.m << ',' << format_real(r.p) << ',' << format_real(r.entanglement)
            << ',' << engine_name(r.engine) << ',' << (r.lambda1 ? format_real(*r.lambda1) : "") << ','
            << (r.lambda2 ? format_real(*r.lambda2) : "") << '\n';
    }
    return out.str();
}

inline std::string to_json(const std::vector<SweepRecord>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["state"] = r.state;
        o["N"] = r.n;
        o["m"] = r.m;
        o["p"] = rounded_real(r.p);
        o["entanglement"] = rounded_real(r.entanglement);
        o["engine"] = std::string(engine_name(r.engine));
        o["lambda1"] = r.lambda1 ? nlohmann::ordered_json(rounded_real(*r.lambda1)) : nlohmann::ordered_json();
        o["lambda2"] = r.lambda2 ? nlohmann::ordered_json(rounded_real(*r.lambda2)) : nlohmann::ordered_json();
        arr.push_back(std::move(o));
    }
    return arr.dump(1) + "\n";
}

inline std::string render(const std::vector<SweepRecord>& rows, OutputFormat format) {
    return format == OutputFormat::Csv ? to_csv(rows) : to_json(rows);
}

inline std::string render(const std::vector<LossVerdict>& rows, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "state,N,l,lost,negativity,log_negativity,verdict\n";
        for (const auto& r : rows) {
            out << r.state << ',' << r.n << ',' << r.block << ',' << r.pattern << ',' << format_real(r.negativity) << ','
                << format_real(r.log_negativity) << ',' << r.verdict() << '\n';
        }
        return out.str();
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["state"] = r.state;
        o["N"] = r.n;
        o["l"] = r.block;
        o["lost"] = r.pattern;
        o["negativity"] = rounded_real(r.negativity);
        o["log_negativity"] = rounded_real(r.log_negativity);
        o["verdict"] = r.verdict();
        arr.push_back(std::move(o));
    }
    return arr.dump(1) + "\n";
}

inline std::string render(const std::vector<ThresholdRow>& rows, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "N,m,p_star\n";
        for (const auto& r : rows) {
            out << r.n << ',' << r.m << ',' << format_real(r.p_star) << '\n';
        }
        return out.str();
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        arr.push_back({{"N", r.n}, {"m", r.m}, {"p_star", rounded_real(r.p_star)}});
    }
    return arr.dump(1) + "\n";
}

// ---------------------------------------------------------------------------
// Record builders

inline SweepRecord analytic_record(int n, int lost, double p) {
    const WCatParams params(n, lost, p);
    const DominantPair pair = dominant_eigenvalues(params);
    SweepRecord r{std::string(family_name(CatFamily::WCat)), n, lost, p,
                  std::log2(2.0 * pair.negativity() + 1.0), Engine::Analytic, pair.lambda1, pair.lambda2};
    return r;
}

inline SweepRecord oracle_record(const CatStateKind& kind, int lost, double p) {
    const double neg = oracle_negativity(kind, lost, p);
    return SweepRecord{std::string(family_name(kind.family)), kind.macro, lost, p, std::log2(2.0 * neg + 1.0),
                       Engine::Oracle, std::nullopt, std::nullopt};
}

/// Checks the closed-form eigenvalues against the partial-transpose spectrum of the
/// dense state. A negative formula value must be the matching oracle eigenvalue
/// (lambda1 the smallest, lambda2 the second smallest); a clamped one must find no
/// negative oracle eigenvalue at that rank. Returns the worst discrepancy.
inline double dominant_pair_discrepancy(const DominantPair& pair, const Spectrum& spectrum) {
    auto rank_gap = [&](double raw, std::size_t rank) {
        if (rank >= spectrum.size()) {
            return raw < -Tolerances::formula_clamp ? std::abs(raw) : 0.0;
        }
        if (raw < -Tolerances::formula_clamp) {
            return std::abs(raw - spectrum[rank]);
        }
        return std::max(0.0, -spectrum[rank]);
    };
    return std::max(rank_gap(pair.raw1, 0), rank_gap(pair.raw2, 1));
}

inline Spectrum oracle_wcat_spectrum(int n, int lost, double p) {
    const DensityMatrix rho = noisy_wcat(n, lost, DepolarizingParam(p));
    return partial_transpose_spectrum(rho, Bipartition::micro_macro(rho.n_qubits()));
}

// ---------------------------------------------------------------------------
// Figure runners

/// Loss-only entanglement of the W-cat for m = 0..N-1. Rows with N <= 10 are
/// checked against the oracle to 1e-10 before they are returned.
inline std::vector<SweepRecord> run_fig1(const std::vector<int>& ns, const RunConfig& cfg) {
    struct Point {
        int n;
        int m;
    };
    std::vector<Point> points;
    for (int n : ns) {
        if (n < 1) {
            throw std::invalid_argument("fig1 needs N >= 1");
        }
        for (int m = 0; m < n; ++m) {
            points.push_back({n, m});
        }
    }
    std::vector<SweepRecord> rows(points.size());
    std::vector<std::optional<double>> oracle(points.size());
    parallel_for(points.size(), cfg.threads, [&](std::size_t i) {
        const auto [n, m] = points[i];
        rows[i] = SweepRecord{std::string(family_name(CatFamily::WCat)), n, m, 0.0, loss_only_entanglement(n, m),
                              Engine::Analytic, loss_only_eigenvalue(n, m), std::nullopt};
        if (n <= 10) {
            const DensityMatrix rho = reduced_w_cat(n, m);
            oracle[i] = log_negativity(rho, Bipartition::micro_macro(rho.n_qubits()));
        }
    });
    std::vector<SweepRecord> failures;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (oracle[i] && std::abs(*oracle[i] - rows[i].entanglement) > 1e-10) {
            failures.push_back(rows[i]);
            failures.push_back(SweepRecord{rows[i].state, rows[i].n, rows[i].m, 0.0, *oracle[i], Engine::Oracle,
                                           std::nullopt, std::nullopt});
        }
    }
    if (!failures.empty()) {
        throw cross_check_error("fig1: closed-form loss law disagrees with the oracle", failures);
    }
    sort_records(rows);
    return rows;
}

/// W-cat and GHZ-cat under local depolarization (no loss). W-cat rows come from
/// both engines so the truncation gap can be read off.
inline std::vector<SweepRecord> run_fig2(const std::vector<int>& ns, const std::vector<double>& ps,
                                         const RunConfig& cfg) {
    struct Point {
        CatFamily family;
        int n;
        double p;
        Engine engine;
    };
    std::vector<Point> points;
    for (int n : ns) {
        require_dense_capacity(n + 1);
        for (double p : ps) {
            points.push_back({CatFamily::WCat, n, p, Engine::Oracle});
            points.push_back({CatFamily::GhzCat, n, p, Engine::Oracle});
            if (n >= 2) {
                points.push_back({CatFamily::WCat, n, p, Engine::Analytic});
            }
        }
    }
    std::vector<SweepRecord> rows(points.size());
    parallel_for(points.size(), cfg.threads, [&](std::size_t i) {
        const auto& pt = points[i];
        rows[i] = pt.engine == Engine::Analytic ? analytic_record(pt.n, 0, pt.p)
                                                : oracle_record(CatStateKind(pt.family, pt.n), 0, pt.p);
    });
    sort_records(rows);
    return rows;
}

/// Loss and depolarization surface for the W-cat with N macro qubits. Every analytic
/// point is cross-checked against the oracle spectrum to 1e-9.
inline std::vector<SweepRecord> run_fig3(int n, const std::vector<int>& ms, const std::vector<double>& ps,
                                         const RunConfig& cfg) {
    struct Point {
        int m;
        double p;
    };
    std::vector<Point> points;
    for (int m : ms) {
        for (double p : ps) {
            points.push_back({m, p});
        }
    }
    std::vector<SweepRecord> rows(2 * points.size());
    std::vector<double> gaps(points.size());
    parallel_for(points.size(), cfg.threads, [&](std::size_t i) {
        const auto [m, p] = points[i];
        rows[2 * i] = analytic_record(n, m, p);
        const DensityMatrix rho = noisy_wcat(n, m, DepolarizingParam(p));
        const Spectrum s = partial_transpose_spectrum(rho, Bipartition::micro_macro(rho.n_qubits()));
        rows[2 * i + 1] = SweepRecord{std::string(family_name(CatFamily::WCat)), n, m, p,
                                      std::log2(2.0 * s.negative_mass() + 1.0), Engine::Oracle, std::nullopt,
                                      std::nullopt};
        gaps[i] = dominant_pair_discrepancy(dominant_eigenvalues(WCatParams(n, m, p)), s);
    });
    std::vector<SweepRecord> failures;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (gaps[i] > 1e-9) {
            failures.push_back(rows[2 * i]);
            failures.push_back(rows[2 * i + 1]);
        }
    }
    if (!failures.empty()) {
        throw cross_check_error("fig3: closed-form eigenvalues disagree with the oracle spectrum", failures);
    }
    sort_records(rows);
    return rows;
}

struct Fig4Result {
    std::vector<SweepRecord> rows;
    std::vector<ThresholdRow> thresholds;
};

/// Analytic-only surface for a large W-cat, plus the vanishing-noise threshold per m.
inline Fig4Result run_fig4(int n, const std::vector<int>& ms, const std::vector<double>& ps, const RunConfig& cfg) {
    Fig4Result out;
    out.rows.resize(ms.size() * ps.size());
    out.thresholds.resize(ms.size());
    parallel_for(ms.size(), cfg.threads, [&](std::size_t i) {
        for (std::size_t j = 0; j < ps.size(); ++j) {
            out.rows[i * ps.size() + j] = analytic_record(n, ms[i], ps[j]);
        }
        out.thresholds[i] = ThresholdRow{n, ms[i], large_n_threshold(n, ms[i])};
    });
    sort_records(out.rows);
    return out;
}

/// Negativity of the competitor cats after the loss patterns they are claimed to
/// tolerate or not. Psi3 uses l = 2 with two and three logical qubits.
inline std::vector<LossVerdict> run_thresholds(const RunConfig& cfg) {
    struct Job {
        CatStateKind kind;
        std::string pattern;
        std::vector<int> drop;
    };
    std::vector<Job> jobs;
    auto last = [](int total, int k) {
        std::vector<int> d(static_cast<std::size_t>(k));
        std::iota(d.begin(), d.end(), total - k);
        return d;
    };
    for (int n = 4; n <= 7; ++n) {
        for (int k = 1; k <= 3; ++k) {
            jobs.push_back({CatStateKind(CatFamily::Psi1GState, n), "last" + std::to_string(k), last(n + 1, k)});
        }
        for (int k = 1; k <= 2; ++k) {
            jobs.push_back({CatStateKind(CatFamily::Psi2, n), "last" + std::to_string(k), last(n + 1, k)});
        }
        jobs.push_back({CatStateKind(CatFamily::GhzCat, n), "last1", last(n + 1, 1)});
    }
    for (int logical : {2, 3}) {
        const CatStateKind kind(CatFamily::Psi3Concat, logical - 1, 2);
        const int total = kind.total_qubits();
        jobs.push_back({kind, "block" + std::to_string(logical - 1), last(total, 2)});
        // the last physical qubit of each of the final two blocks
        jobs.push_back({kind, "qubits" + std::to_string(total - 3) + "+" + std::to_string(total - 1),
                        {total - 3, total - 1}});
    }
    std::vector<LossVerdict> rows(jobs.size());
    parallel_for(jobs.size(), cfg.threads, [&](std::size_t i) {
        const auto& job = jobs[i];
        const DensityMatrix rho = partial_trace(to_density(make_cat_state(job.kind)), job.drop);
        // micro side: whatever survives of the first logical block
        int micro = 0;
        for (int q = 0; q < job.kind.micro_qubits(); ++q) {
            if (std::find(job.drop.begin(), job.drop.end(), q) == job.drop.end()) {
                ++micro;
            }
        }
        // nothing left on one side of the cut means nothing to be entangled with
        const double neg = micro == 0 || micro == rho.n_qubits()
                               ? 0.0
                               : negativity(rho, Bipartition::leading(rho.n_qubits(), micro));
        rows[i] = LossVerdict{std::string(family_name(job.kind.family)), job.kind.macro, job.kind.block, job.pattern,
                              neg, std::log2(2.0 * neg + 1.0)};
    });
    return rows;
}

/// Generic sweep over p for one state family.
inline std::vector<SweepRecord> run_sweep(const CatStateKind& kind, int lost, const std::vector<double>& ps,
                                          bool oracle, bool analytic, const RunConfig& cfg) {
    if (analytic && kind.family != CatFamily::WCat) {
        throw std::invalid_argument("the analytic engine only covers the W-cat state");
    }
    if (oracle) {
        require_dense_capacity(kind.family == CatFamily::WCat ? kind.macro - lost + 1 : kind.total_qubits());
    }
    if (analytic) {
        detail::require_analytic_range(WCatParams(kind.macro, lost, 0.0));
    }
    struct Point {
        double p;
        Engine engine;
    };
    std::vector<Point> points;
    for (double p : ps) {
        if (oracle) points.push_back({p, Engine::Oracle});
        if (analytic) points.push_back({p, Engine::Analytic});
    }
    std::vector<SweepRecord> rows(points.size());
    parallel_for(points.size(), cfg.threads, [&](std::size_t i) {
        rows[i] = points[i].engine == Engine::Analytic ? analytic_record(kind.macro, lost, points[i].p)
                                                       : oracle_record(kind, lost, points[i].p);
    });
    sort_records(rows);
    return rows;
}

}  // namespace catnoise
