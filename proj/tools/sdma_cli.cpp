// Command-line front end: run experiments from a JSON spec, or build the
// individual artifacts (codebook, transition matrix, index mapping, rate
// table) for offline inspection.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdma/codebook.hpp"
#include "sdma/config.hpp"
#include "sdma/csv.hpp"
#include "sdma/experiments.hpp"
#include "sdma/feedback_channel.hpp"
#include "sdma/index_assignment.hpp"
#include "sdma/sim_engine.hpp"
#include "sdma/types.hpp"

namespace fs = std::filesystem;

namespace {

// Relative output paths are anchored at $SDMA_OUT_ROOT when it is set, so
// batch drivers can redirect every run without touching spec files.
fs::path resolve_out(const fs::path& p) {
    if (p.empty() || p.is_absolute()) return p;
    if (const char* root = std::getenv("SDMA_OUT_ROOT")) {
        if (root[0] != '\0') return fs::path(root) / p;
    }
    return p;
}

void require_fresh(const fs::path& p) {
    std::error_code ec;
    if (fs::exists(p, ec)) {
        throw sdma::config_error("refusing to overwrite existing file: " + p.string());
    }
}

struct RunArgs {
    std::string spec_path;
    uint64_t seed = 0;
    int trials = 0;
    int threads = 0;
    std::string out;
    bool has_seed = false, has_trials = false, has_threads = false;
};

int cmd_run(const RunArgs& a) {
    sdma::ExperimentSpec spec = sdma::load_spec(a.spec_path);
    if (a.has_seed) spec.config.master_seed = a.seed;
    if (a.has_trials) spec.config.trials = a.trials;
    if (a.has_threads) spec.config.threads = a.threads;
    if (!a.out.empty()) spec.output_dir = a.out;
    spec.output_dir = resolve_out(spec.output_dir);
    spec.config.validate();
    for (const fs::path& p : sdma::run_experiment(spec)) {
        std::cout << "wrote " << p.string() << "\n";
    }
    return 0;
}

struct DumpRateTableArgs {
    std::string config_path;
    std::string out;
};

int cmd_dump_rate_table(const DumpRateTableArgs& a) {
    sdma::ExperimentSpec spec;
    if (!a.config_path.empty()) spec = sdma::load_spec(a.config_path);
    spec.experiment = "rate-table-dump";
    spec.output_dir = a.out.empty() ? fs::path() : resolve_out(a.out);
    const sdma::RateTableDumpResult res = sdma::run_rate_table_dump(spec);
    std::cout << sdma::render_csv(res.table);
    for (const fs::path& p : res.outputs) {
        std::cout << "wrote " << p.string() << "\n";
    }
    return 0;
}

struct BuildCodebookArgs {
    int n_t = 4;
    int c_fb = 4;
    uint64_t seed = 1234;
    std::string out;
};

int cmd_build_codebook(const BuildCodebookArgs& a) {
    const sdma::Codebook cb = sdma::build_codebook(a.seed, a.n_t, a.c_fb);
    const fs::path out = resolve_out(a.out);
    require_fresh(out);
    if (out.has_parent_path()) sdma::ensure_output_dir(out.parent_path());
    sdma::save_codebook(cb, out);
    std::cout << "wrote " << out.string() << " (" << cb.num_entries() << " entries, "
              << cb.num_sets() << " orthonormal sets)\n";
    return 0;
}

struct DumpTransitionArgs {
    std::string model = "nearest-neighbor";
    int points = 0;
    double ser = 0.2;
    double snr_db = 10.0;
    int symbols = 1;
    std::string out;
};

int cmd_dump_transition(const DumpTransitionArgs& a) {
    const sdma::ChannelModel model = sdma::parse_channel_model(a.model);
    sdma::TransitionMatrix per_symbol =
        model == sdma::ChannelModel::nearest_neighbor
            ? sdma::nn_transition_matrix(a.points, a.ser)
            : sdma::psk_transition_matrix(a.points, a.snr_db);
    const sdma::TransitionMatrix m = a.symbols == 1
                                         ? std::move(per_symbol)
                                         : sdma::kron_power(per_symbol, a.symbols);

    sdma::CsvTable table;
    table.comments.push_back("model: " + a.model);
    table.comments.push_back(model == sdma::ChannelModel::nearest_neighbor
                                 ? "ser: " + sdma::format_double(a.ser)
                                 : "snr_db: " + sdma::format_double(a.snr_db));
    table.comments.push_back("points_per_symbol: " + std::to_string(a.points));
    table.comments.push_back("symbols: " + std::to_string(a.symbols));
    table.columns.push_back("sent");
    for (int j = 0; j < m.size(); ++j) table.columns.push_back("r" + std::to_string(j));
    for (int i = 0; i < m.size(); ++i) {
        std::vector<std::string> row{std::to_string(i)};
        for (int j = 0; j < m.size(); ++j) row.push_back(sdma::format_double(m.at(i, j)));
        table.add_row(std::move(row));
    }

    if (a.out.empty()) {
        std::cout << sdma::render_csv(table);
    } else {
        const fs::path out = resolve_out(a.out);
        if (out.has_parent_path()) sdma::ensure_output_dir(out.parent_path());
        sdma::write_csv(table, out);
        std::cout << "wrote " << out.string() << "\n";
    }
    return 0;
}

struct SolveMappingArgs {
    int n_t = 4;
    int c_fb = 4;
    std::string solver = "two-opt";
    std::string model = "nearest-neighbor";
    double ser = 0.2;
    double snr_db = 10.0;
    int symbols = 1;
    double delta = 0.1;
    uint64_t codebook_seed = 1234;
    uint64_t master_seed = 2026;
    int prior_samples = 200000;
    uint64_t prior_seed = 7;
    std::string out;
};

int cmd_solve_mapping(const SolveMappingArgs& a) {
    sdma::SimConfig cfg;
    cfg.n_t = a.n_t;
    cfg.c_fb = a.c_fb;
    cfg.scheme = sdma::Scheme::robust;
    cfg.solver = sdma::parse_solver(a.solver);
    cfg.channel = sdma::parse_channel_model(a.model);
    cfg.ser = a.ser;
    cfg.feedback_snr_db = a.snr_db;
    cfg.feedback_symbols = a.symbols;
    cfg.delta = a.delta;
    cfg.codebook_seed = a.codebook_seed;
    cfg.master_seed = a.master_seed;
    cfg.prior_samples = a.prior_samples;
    cfg.prior_seed = a.prior_seed;
    cfg.validate();

    const sdma::SchemeArtifacts art = sdma::prepare_scheme(cfg);
    const double solved =
        sdma::expected_distortion(art.xi, art.priors, art.p_ch, art.cb);
    const double ident = sdma::expected_distortion(sdma::identity_mapping(art.cb.num_entries()),
                                                   art.priors, art.p_ch, art.cb);

    sdma::CsvTable table;
    table.comments.push_back("config: " + sdma::config_echo(cfg));
    table.comments.push_back("expected_distortion: " + sdma::format_double(solved));
    table.comments.push_back("identity_distortion: " + sdma::format_double(ident));
    table.columns = {"codeword", "symbol"};
    for (int i = 0; i < art.xi.size(); ++i) {
        table.add_row({std::to_string(i), std::to_string(art.xi.to_symbol[i])});
    }

    if (a.out.empty()) {
        std::cout << sdma::render_csv(table);
    } else {
        const fs::path out = resolve_out(a.out);
        if (out.has_parent_path()) sdma::ensure_output_dir(out.parent_path());
        sdma::write_csv(table, out);
        std::cout << "wrote " << out.string() << "\n";
    }
    std::cout << "solver=" << a.solver << " expected_distortion=" << sdma::format_double(solved)
              << " identity_distortion=" << sdma::format_double(ident) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"robust limited-feedback SDMA downlink simulator"};
    app.set_version_flag("--version", std::string(sdma::kSdmaVersion));
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "run an experiment described by a JSON spec file");
    run->add_option("spec", run_args.spec_path, "path to the JSON experiment spec")->required();
    CLI::Option* seed_opt = run->add_option("--seed", run_args.seed, "override master_seed");
    CLI::Option* trials_opt = run->add_option("--trials", run_args.trials, "override trial count");
    CLI::Option* threads_opt =
        run->add_option("--threads", run_args.threads, "override worker thread count");
    run->add_option("--out", run_args.out, "override output directory");

    DumpRateTableArgs drt_args;
    CLI::App* drt = app.add_subcommand(
        "dump-rate-table", "print the rate adaptation fixtures (and optionally write CSV)");
    drt->add_option("--config", drt_args.config_path, "JSON spec supplying config overrides");
    drt->add_option("--out", drt_args.out, "directory for CSV + manifest output");

    BuildCodebookArgs bc_args;
    CLI::App* bc = app.add_subcommand("build-codebook", "generate a codebook file");
    bc->add_option("--n-t", bc_args.n_t, "transmit antennas");
    bc->add_option("--c-fb", bc_args.c_fb, "feedback bits (codebook size 2^c_fb)");
    bc->add_option("--seed", bc_args.seed, "codebook seed");
    bc->add_option("--out", bc_args.out, "output file")->required();

    DumpTransitionArgs dt_args;
    CLI::App* dt = app.add_subcommand("dump-transition",
                                      "export a feedback symbol transition matrix as CSV");
    dt->add_option("--model", dt_args.model, "nearest-neighbor | psk-awgn");
    dt->add_option("--points", dt_args.points, "constellation points per symbol")->required();
    dt->add_option("--ser", dt_args.ser, "nearest-neighbor symbol error rate");
    dt->add_option("--snr-db", dt_args.snr_db, "PSK Es/N0 in dB");
    dt->add_option("--symbols", dt_args.symbols, "independent symbols per feedback use");
    dt->add_option("--out", dt_args.out, "output file (stdout when omitted)");

    SolveMappingArgs sm_args;
    CLI::App* sm = app.add_subcommand("solve-mapping",
                                      "solve a robust index assignment and export the permutation");
    sm->add_option("--n-t", sm_args.n_t, "transmit antennas");
    sm->add_option("--c-fb", sm_args.c_fb, "feedback bits (codebook size 2^c_fb)");
    sm->add_option("--solver", sm_args.solver, "cnna | two-opt | exhaustive | identity | random");
    sm->add_option("--model", sm_args.model, "nearest-neighbor | psk-awgn");
    sm->add_option("--ser", sm_args.ser, "nearest-neighbor symbol error rate");
    sm->add_option("--snr-db", sm_args.snr_db, "PSK Es/N0 in dB");
    sm->add_option("--symbols", sm_args.symbols, "independent symbols per feedback use");
    sm->add_option("--delta", sm_args.delta, "distortion gate (shapes the codeword priors)");
    sm->add_option("--codebook-seed", sm_args.codebook_seed, "codebook seed");
    sm->add_option("--master-seed", sm_args.master_seed, "seed for the random solver");
    sm->add_option("--prior-samples", sm_args.prior_samples, "Monte Carlo prior sample count");
    sm->add_option("--prior-seed", sm_args.prior_seed, "prior sampling seed");
    sm->add_option("--out", sm_args.out, "output file (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    run_args.has_seed = seed_opt->count() > 0;
    run_args.has_trials = trials_opt->count() > 0;
    run_args.has_threads = threads_opt->count() > 0;

    try {
        if (*run) return cmd_run(run_args);
        if (*drt) return cmd_dump_rate_table(drt_args);
        if (*bc) return cmd_build_codebook(bc_args);
        if (*dt) return cmd_dump_transition(dt_args);
        if (*sm) return cmd_solve_mapping(sm_args);
    } catch (const sdma::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
