#include "qwit/run.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "qwit/detection.hpp"
#include "qwit/kernels.hpp"
#include "qwit/mdiew.hpp"
#include "qwit/table_io.hpp"
#include "qwit/tomography.hpp"

namespace qwit {

namespace {

struct GridPoint {
    std::optional<double> theta_deg;
    double v;
};

std::vector<GridPoint> resolve_grid(const RunConfig& cfg, std::vector<double> default_v) {
    if (!cfg.v_list.empty() && !cfg.theta_list.empty()) {
        throw std::invalid_argument("--v and --theta are mutually exclusive");
    }
    std::vector<GridPoint> grid;
    if (!cfg.theta_list.empty()) {
        for (double t : cfg.theta_list) {
            grid.push_back({t, v_from_theta(t)});
        }
        return grid;
    }
    const std::vector<double>& vs = cfg.v_list.empty() ? default_v : cfg.v_list;
    for (double v : vs) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("v values must lie in [0, 1]");
        }
        grid.push_back({std::nullopt, v});
    }
    return grid;
}

std::vector<double> uniform_grid_21() {
    std::vector<double> v(21);
    for (int i = 0; i <= 20; ++i) {
        v[static_cast<std::size_t>(i)] = static_cast<double>(i) / 20.0;
    }
    return v;
}

void append_theta_column(OutputTable& table, bool with_theta) {
    if (with_theta) {
        table.columns.insert(table.columns.begin(), "theta_deg");
    }
}

std::vector<Cell> row_prefix(const GridPoint& p, bool with_theta) {
    std::vector<Cell> row;
    if (with_theta) {
        row.emplace_back(*p.theta_deg);
    }
    row.emplace_back(p.v);
    return row;
}

OutputTable cmd_attack_demo(const RunConfig& cfg, std::uint64_t trials) {
    const double delta_t = cfg.delta_t_ns.value_or(kDemoDeltaTNs);
    const double sigma = cfg.jitter_sigma_ns.value_or(fitted_jitter_sigma());
    const DetectorModel model{delta_t, sigma, cfg.window_ns, DetectorMode::time_shift};
    const SuppressionProfile profile = suppression_profile(model);

    const auto grid = resolve_grid(cfg, {1.0});
    const bool with_theta = !cfg.theta_list.empty();

    OutputTable table;
    table.columns = {"v", "suppression_factor", "witness_honest", "witness_attacked"};
    if (trials > 0) {
        table.columns.push_back("witness_mc");
        table.columns.push_back("witness_mc_se");
    }
    append_theta_column(table, with_theta);

    std::uint64_t row_index = 0;
    for (const GridPoint& p : grid) {
        const TwoQubitState state = rho_v_flipped(p.v);
        std::vector<Cell> row = row_prefix(p, with_theta);
        row.emplace_back(profile.pp);
        row.emplace_back(witness_value_exact(state));
        row.emplace_back(attacked_witness_value(state, profile));
        if (trials > 0) {
            const AttackEstimate est = simulate_attacked_witness(
                state, profile, trials, derive_stream_seed(cfg.seed, row_index));
            row.emplace_back(est.witness);
            row.emplace_back(est.std_error);
        }
        table.add_row(std::move(row));
        ++row_index;
    }
    table.add_meta("delta_t_ns", format_double(delta_t));
    table.add_meta("jitter_sigma_ns", format_double(sigma));
    table.add_meta("window_ns", format_double(cfg.window_ns));
    return table;
}

OutputTable cmd_efficiency_curve(const RunConfig& cfg) {
    const double half_range = cfg.delta_t_ns.value_or(10.0);
    const double sigma = cfg.jitter_sigma_ns.value_or(fitted_jitter_sigma());
    if (!(half_range > 0.0)) {
        throw std::invalid_argument("sweep half-range must be positive");
    }
    OutputTable table;
    table.columns = {"delta_t_ns", "efficiency"};
    const int steps = static_cast<int>(std::lround(half_range / 0.1));
    for (int i = -steps; i <= steps; ++i) {
        const double dt = static_cast<double>(i) * 0.1;
        table.add_row({Cell{dt}, Cell{coincidence_efficiency(dt, sigma, cfg.window_ns)}});
    }
    table.add_meta("jitter_sigma_ns", format_double(sigma));
    table.add_meta("window_ns", format_double(cfg.window_ns));
    return table;
}

OutputTable cmd_mdiew_curve(const RunConfig& cfg, std::uint64_t trials) {
    const auto grid = resolve_grid(cfg, uniform_grid_21());
    const bool with_theta = !cfg.theta_list.empty();
    const MdiewTables& tables = MdiewTables::standard();

    OutputTable table;
    table.columns = {"v", "j_exact", "j_pp", "j_mm", "j_pm", "j_mp"};
    if (trials > 0) {
        table.columns.push_back("j_mc");
        table.columns.push_back("j_mc_se");
    }
    append_theta_column(table, with_theta);

    std::uint64_t row_index = 0;
    for (const GridPoint& p : grid) {
        const TwoQubitState state = rho_v(p.v);
        std::vector<Cell> row = row_prefix(p, with_theta);
        row.emplace_back(j_value_combined(state, tables).j_value);
        for (OutcomeClass cls : kOutcomeClasses) {
            row.emplace_back(j_value_exact(state, tables, cls).j_value);
        }
        if (trials > 0) {
            const auto records =
                simulate_mdiew_counts(state, trials, derive_stream_seed(cfg.seed, row_index));
            const MdiewResult mc = j_value_from_counts(records, tables);
            row.emplace_back(mc.j_value);
            row.emplace_back(mc.std_error.value_or(0.0));
        }
        table.add_row(std::move(row));
        ++row_index;
    }
    return table;
}

OutputTable cmd_mdiew_adversary(const RunConfig& cfg, std::uint64_t draws) {
    if (draws == 0) {
        throw std::invalid_argument("mdiew-adversary needs at least one draw");
    }
    const AdversarySweep sweep = adversary_sweep(draws, cfg.seed, MdiewTables::standard());
    OutputTable table;
    table.columns = {"draw", "j_combined", "j_pp", "j_mm", "j_pm", "j_mp"};
    for (const AdversaryDraw& d : sweep.draws) {
        table.add_row({Cell{static_cast<std::int64_t>(d.index)}, Cell{d.j_combined},
                       Cell{d.j_single[0]}, Cell{d.j_single[1]}, Cell{d.j_single[2]},
                       Cell{d.j_single[3]}});
    }
    table.add_meta("min_j_combined", format_double(sweep.min_combined));
    table.add_meta("min_j_single", format_double(sweep.min_single));
    return table;
}

OutputTable cmd_tomography(const RunConfig& cfg, std::uint64_t shots) {
    std::vector<GridPoint> grid;
    if (cfg.v_list.empty() && cfg.theta_list.empty()) {
        for (double t : {45.0, 30.0, 22.5, 15.0, 0.0}) {
            grid.push_back({t, v_from_theta(t)});
        }
    } else {
        grid = resolve_grid(cfg, {});
    }
    const bool with_theta = grid.empty() || grid.front().theta_deg.has_value();

    OutputTable table;
    table.columns = {"v_true",  "v_r11",  "v_r22",    "v_r33",     "v_r44",   "v_r23",
                     "v_mean",  "v_spread", "v_mean_se", "trace_dist", "physical"};
    append_theta_column(table, with_theta);

    std::uint64_t row_index = 0;
    for (const GridPoint& p : grid) {
        const TwoQubitState truth = rho_v(p.v);
        const TomographyRecord record =
            shots > 0
                ? sample_expectations(truth, shots, derive_stream_seed(cfg.seed, row_index))
                : exact_expectations(truth);
        const Reconstruction recon = reconstruct(record);
        const VFit fit = fit_v(recon.state);

        std::vector<Cell> row;
        if (with_theta) {
            row.emplace_back(p.theta_deg.value_or(0.0));
        }
        row.emplace_back(p.v);
        row.emplace_back(fit.v_r11);
        row.emplace_back(fit.v_r22);
        row.emplace_back(fit.v_r33);
        row.emplace_back(fit.v_r44);
        row.emplace_back(fit.v_r23);
        row.emplace_back(fit.mean);
        row.emplace_back(fit.spread);
        row.emplace_back(fit.spread / std::sqrt(5.0));
        row.emplace_back(trace_distance(recon.state.matrix(), truth.matrix()));
        row.emplace_back(static_cast<std::int64_t>(recon.physical ? 1 : 0));
        table.add_row(std::move(row));
        ++row_index;
    }
    table.add_meta("shots_per_basis", std::to_string(shots));
    return table;
}

OutputTable cmd_tangle_curve(const RunConfig& cfg) {
    const auto grid = resolve_grid(cfg, uniform_grid_21());
    const bool with_theta = !cfg.theta_list.empty();

    OutputTable table;
    table.columns = {"v",       "lambda1", "lambda2", "lambda3",
                     "lambda4", "concurrence", "tangle", "tangle_closed_form"};
    append_theta_column(table, with_theta);

    for (const GridPoint& p : grid) {
        const TangleReport report = tangle(rho_v(p.v));
        std::vector<Cell> row = row_prefix(p, with_theta);
        for (double l : report.lambdas) {
            row.emplace_back(l);
        }
        row.emplace_back(report.concurrence);
        row.emplace_back(report.tangle);
        const double c = std::max(0.0, 1.0 - 2.0 * p.v);
        row.emplace_back(c * c);
        table.add_row(std::move(row));
    }
    return table;
}

OutputTable cmd_tables() {
    OutputTable table;
    table.columns = {"class", "s", "t", "beta"};
    for (OutcomeClass cls : kOutcomeClasses) {
        const CoefficientTable& ct = MdiewTables::standard().for_class(cls);
        for (const BetaEntry& e : ct.entries) {
            table.add_row({Cell{outcome_class_label(cls)}, Cell{ancilla_label(e.s)},
                           Cell{ancilla_label(e.t)}, Cell{e.beta}});
        }
    }
    return table;
}

std::uint64_t default_trials(const std::string& command) {
    if (command == "tomography") {
        return 250000;
    }
    if (command == "mdiew-adversary") {
        return 1000;
    }
    return 1000000;
}

} // namespace

int run_command(const RunConfig& cfg, std::ostream& err) {
    OutputTable table;
    try {
        if (cfg.format != "csv" && cfg.format != "json") {
            throw std::invalid_argument("format must be csv or json");
        }
        const std::uint64_t trials = cfg.trials.value_or(default_trials(cfg.command));
        if (cfg.command == "attack-demo") {
            table = cmd_attack_demo(cfg, trials);
        } else if (cfg.command == "efficiency-curve") {
            table = cmd_efficiency_curve(cfg);
        } else if (cfg.command == "mdiew-curve") {
            table = cmd_mdiew_curve(cfg, trials);
        } else if (cfg.command == "mdiew-adversary") {
            table = cmd_mdiew_adversary(cfg, trials);
        } else if (cfg.command == "tomography") {
            table = cmd_tomography(cfg, trials);
        } else if (cfg.command == "tangle-curve") {
            table = cmd_tangle_curve(cfg);
        } else if (cfg.command == "tables") {
            table = cmd_tables();
        } else {
            err << "unknown command: " << cfg.command << "\n";
            return 2;
        }
        table.add_meta("command", cfg.command);
        table.add_meta("seed", std::to_string(cfg.seed));
        table.add_meta("seed_source", cfg.seed_source);
        table.add_meta("trials", std::to_string(trials));
        table.add_meta("version", kLibraryVersion);
        table.add_meta("kernels", std::string(kernels::active_name()));
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    const auto emit = [&](std::ostream& os) {
        if (cfg.format == "json") {
            write_json(os, table);
        } else {
            write_csv(os, table);
        }
    };
    if (cfg.out == "-") {
        emit(std::cout);
        return std::cout ? 0 : 1;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
        err << "error: cannot open output path: " << cfg.out << "\n";
        return 1;
    }
    emit(file);
    file.flush();
    if (!file) {
        err << "error: write failed: " << cfg.out << "\n";
        return 1;
    }
    return 0;
}

} // namespace qwit
