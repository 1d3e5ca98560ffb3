// catnoise command-line front end: figure data, loss tables, sweeps and validation.
//
// Exit codes: 0 success, 1 validation or cross-check failure, 2 bad arguments,
// 3 capacity error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "catnoise/catnoise.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitArguments = 2;
constexpr int kExitCapacity = 3;

struct CommonOptions {
    std::string out = "-";
    std::string format = "csv";
    unsigned threads = 1;
    int dense_cap = catnoise::default_dense_cap;
};

struct GridOptions {
    double p_min = 0.0;
    double p_max = 0.5;
    double p_step = 0.005;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--out", opt.out, "Output path, '-' for stdout")->capture_default_str();
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--threads", opt.threads, "Worker threads")->check(CLI::Range(1U, 256U))->capture_default_str();
    cmd->add_option("--dense-cap", opt.dense_cap, "Largest qubit count for the dense engine")
        ->check(CLI::Range(1, catnoise::hard_dense_limit))
        ->capture_default_str();
}

void add_grid(CLI::App* cmd, GridOptions& grid) {
    cmd->add_option("--p-min", grid.p_min, "Smallest depolarizing probability")->capture_default_str();
    cmd->add_option("--p-max", grid.p_max, "Largest depolarizing probability")->capture_default_str();
    cmd->add_option("--p-step", grid.p_step, "Step of the p grid")->capture_default_str();
}

catnoise::RunConfig config_of(const CommonOptions& opt) {
    return {opt.threads, opt.format == "json" ? catnoise::OutputFormat::Json : catnoise::OutputFormat::Csv};
}

std::vector<double> p_values(const GridOptions& g) {
    if (g.p_min < 0.0 || g.p_max > 1.0) {
        throw std::invalid_argument("p grid must lie inside [0, 1]");
    }
    return catnoise::Grid(g.p_min, g.p_max, g.p_step).values();
}

std::vector<int> range_inclusive(int lo, int hi) {
    if (hi < lo) {
        throw std::invalid_argument("empty m range");
    }
    std::vector<int> out(static_cast<std::size_t>(hi - lo + 1));
    std::iota(out.begin(), out.end(), lo);
    return out;
}

void emit(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    file << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cat-state entanglement under particle loss and local depolarizing noise"};
    app.require_subcommand(1);

    CommonOptions common;
    GridOptions grid;

    auto* fig1 = app.add_subcommand("fig1", "W-cat entanglement after losing m particles");
    std::vector<int> fig1_ns{10, 20, 50, 100};
    fig1->add_option("--n", fig1_ns, "Macro qubit counts")->capture_default_str();
    add_common(fig1, common);

    auto* fig2 = app.add_subcommand("fig2", "W-cat vs GHZ-cat under local depolarization");
    std::vector<int> fig2_ns{4, 6, 8, 10};
    fig2->add_option("--n", fig2_ns, "Macro qubit counts")->capture_default_str();
    add_common(fig2, common);
    add_grid(fig2, grid);

    auto* fig3 = app.add_subcommand("fig3", "W-cat under loss and depolarization (oracle cross-checked)");
    int fig3_n = 10;
    int fig3_m_max = 8;
    fig3->add_option("--n", fig3_n, "Macro qubit count")->capture_default_str();
    fig3->add_option("--m-max", fig3_m_max, "Largest number of lost qubits")->capture_default_str();
    add_common(fig3, common);
    add_grid(fig3, grid);

    auto* fig4 = app.add_subcommand("fig4", "Large W-cat under loss and depolarization (closed form)");
    int fig4_n = 1000;
    int fig4_m_max = 100;
    GridOptions fig4_grid{0.0, 0.05, 0.0005};
    std::string thresholds_out;
    fig4->add_option("--n", fig4_n, "Macro qubit count")->capture_default_str();
    fig4->add_option("--m-max", fig4_m_max, "Largest number of lost qubits")->capture_default_str();
    fig4->add_option("--thresholds-out", thresholds_out,
                     "Where to write p* per m (default: <out>.thresholds, or stderr when writing to stdout)");
    add_common(fig4, common);
    add_grid(fig4, fig4_grid);

    auto* thresholds = app.add_subcommand("thresholds", "Competitor cat states after particle loss");
    add_common(thresholds, common);

    auto* sweep = app.add_subcommand("sweep", "Entanglement versus p for one state");
    std::string sweep_state = "WCat";
    int sweep_n = 6;
    int sweep_m = 0;
    int sweep_l = 2;
    std::string sweep_engine = "both";
    sweep->add_option("--state", sweep_state, "GhzCat | WCat | Psi1GState | Psi2 | Psi3Concat")
        ->capture_default_str();
    sweep->add_option("--n", sweep_n, "Macro qubits (logical qubits minus one for Psi3Concat)")->capture_default_str();
    sweep->add_option("--m", sweep_m, "Lost qubits")->capture_default_str();
    sweep->add_option("--l", sweep_l, "Physical qubits per logical qubit (Psi3Concat)")->capture_default_str();
    sweep->add_option("--engine", sweep_engine, "oracle | analytic | both")
        ->check(CLI::IsMember({"oracle", "analytic", "both"}))
        ->capture_default_str();
    add_common(sweep, common);
    add_grid(sweep, grid);

    auto* validate = app.add_subcommand("validate", "Run the oracle-vs-analytic invariant suite");
    double perturb = 0.0;
    validate->add_option("--perturb", perturb, "Offset added to every closed-form coefficient (fault injection)")
        ->group("");
    add_common(validate, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitArguments;
    }

    try {
        catnoise::set_dense_cap(common.dense_cap);
        const auto cfg = config_of(common);

        if (*fig1) {
            emit(common.out, catnoise::render(catnoise::run_fig1(fig1_ns, cfg), cfg.format));
        } else if (*fig2) {
            emit(common.out, catnoise::render(catnoise::run_fig2(fig2_ns, p_values(grid), cfg), cfg.format));
        } else if (*fig3) {
            emit(common.out,
                 catnoise::render(catnoise::run_fig3(fig3_n, range_inclusive(0, fig3_m_max), p_values(grid), cfg),
                                  cfg.format));
        } else if (*fig4) {
            const auto result = catnoise::run_fig4(fig4_n, range_inclusive(0, fig4_m_max), p_values(fig4_grid), cfg);
            emit(common.out, catnoise::render(result.rows, cfg.format));
            const std::string table = catnoise::render(result.thresholds, cfg.format);
            if (!thresholds_out.empty()) {
                emit(thresholds_out, table);
            } else if (common.out == "-") {
                std::cerr << table;
            } else {
                emit(common.out + ".thresholds", table);
            }
        } else if (*thresholds) {
            emit(common.out, catnoise::render(catnoise::run_thresholds(cfg), cfg.format));
        } else if (*sweep) {
            const auto family = catnoise::parse_family(sweep_state);
            if (!family) {
                throw std::invalid_argument("unknown state " + sweep_state);
            }
            const catnoise::CatStateKind kind(*family, sweep_n,
                                              *family == catnoise::CatFamily::Psi3Concat ? sweep_l : 1);
            const bool oracle = sweep_engine != "analytic";
            const bool analytic = sweep_engine != "oracle";
            emit(common.out,
                 catnoise::render(catnoise::run_sweep(kind, sweep_m, p_values(grid), oracle, analytic, cfg),
                                  cfg.format));
        } else if (*validate) {
            catnoise::ValidationOptions opt;
            opt.coefficient_perturbation = perturb;
            opt.threads = common.threads;
            const auto report = catnoise::run_validation(opt);
            emit(common.out, report.table() + "truncation gap at (N=8, m=1, p=0.1): " +
                                 catnoise::format_real(report.truncation_gap_8_1_01) + "\n" +
                                 (report.all_passed() ? "validate: all checks passed\n" : "validate: FAILED\n"));
            return report.all_passed() ? 0 : kExitValidation;
        }
    } catch (const catnoise::capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const catnoise::cross_check_error& e) {
        std::cerr << "cross-check failed: " << e.what() << '\n' << catnoise::to_csv(e.rows());
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad arguments: " << e.what() << '\n';
        return kExitArguments;
    } catch (const std::domain_error& e) {
        std::cerr << "bad arguments: " << e.what() << '\n';
        return kExitArguments;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
