#pragma once

#include <filesystem>
#include <vector>

#include "sdma/config.hpp"
#include "sdma/csv.hpp"
#include "sdma/sim_engine.hpp"

namespace sdma {

// One sweep row with all three schemes run against paired trial seeds.
struct SchemeSweepPoint {
    double x = 0.0;  // sweep variable for this row
    GoodputSummary robust, naive_uncoded, naive_coded;
};

struct SchemeSweepResult {
    std::vector<SchemeSweepPoint> points;
    CsvTable table;
    std::vector<std::filesystem::path> outputs;
};

struct Fig4Point {
    int c_fb = 0;
    GoodputSummary robust, naive_uncoded, naive_coded;
    // Robust-minus-baseline mean goodput in units of the paired per-trial
    // difference's standard error (clamped to +-1e9).
    double dom_sigma_uncoded = 0.0;
    double dom_sigma_coded = 0.0;
};

struct Fig4Result {
    std::vector<Fig4Point> points;
    double robust_slope = 0.0;  // least-squares d(goodput)/d(c_fb), robust scheme
    CsvTable table;
    std::vector<std::filesystem::path> outputs;
};

struct Fig5Point {
    double eps = 0.0;
    int bits_per_symbol = 0;  // c_fb = bits_per_symbol * feedback_symbols
    GoodputSummary robust, naive_uncoded, naive_coded;
};

struct Fig5Result {
    std::vector<Fig5Point> points;
    CsvTable table;
    std::vector<std::filesystem::path> outputs;
};

struct ForwardSnrPoint {
    double forward_snr_db = 0.0;
    GoodputSummary summary;
};

struct ForwardSnrResult {
    std::vector<ForwardSnrPoint> points;
    double slope_vs_log2_power = 0.0;  // least-squares goodput slope vs log2(P)
    CsvTable table;
    std::vector<std::filesystem::path> outputs;
};

struct Fig1Point {
    double snr_db = 0.0;
    int kept = 0;                 // samples past the interference filter
    double median_abs_err = 0.0;  // median |exact - high-SNR approximation|
};

struct Fig1Result {
    std::vector<Fig1Point> points;
    CsvTable table;
    std::vector<std::filesystem::path> outputs;
};

struct Lemma4Result {
    int n = 0;               // codebook size
    int n_n = 0;             // neighbor set size of the feedback channel
    double bound = 0.0;      // (n_n / n)^{1 / (2 (n_t - 1))}
    double empirical = 0.0;  // stationary mean sin misalignment, averaged over codebook draws
    double std_err = 0.0;    // standard error of the mean across codebook draws
    double ratio = 0.0;      // empirical / bound
    int replicates = 0;      // codebook draws averaged
    bool skipped = false;    // n_n == 1: channel effectively noiseless, bound vacuous
    CsvTable table;
    std::vector<std::filesystem::path> outputs;
};

struct TspBenchRow {
    int n = 0;
    int instance = 0;
    double cnna_cost = 0.0;
    double two_opt_cost = 0.0;
    double exhaustive_cost = 0.0;
};

struct TspBenchResult {
    std::vector<TspBenchRow> rows;
    CsvTable table;
    std::vector<std::filesystem::path> outputs;
};

struct RateTableDumpResult {
    CsvTable table;
    std::vector<std::filesystem::path> outputs;
    // Worked four-codeword fixture, row for received index 1 (1-based):
    std::vector<int> worked_ns;      // candidate set, 1-based
    double worked_eps_res = 0.0;
    double worked_rate = 0.0;        // smallest-index anchor rule
    double worked_rate_paper = 0.0;  // highest-index anchor rule
    double identity_rate = 0.0;      // error-free single-candidate fixture
};

// Each runner computes its result and, when spec.output_dir is non-empty,
// writes "<experiment>.csv" plus "<experiment>.manifest.json" there (refusing
// to overwrite). An empty output_dir skips all filesystem writes.
Fig1Result run_fig1(const ExperimentSpec& spec);
Lemma4Result run_lemma4(const ExperimentSpec& spec);
Fig4Result run_fig4(const ExperimentSpec& spec);
Fig5Result run_fig5(const ExperimentSpec& spec);
SchemeSweepResult run_fig6(const ExperimentSpec& spec);
SchemeSweepResult run_fig7(const ExperimentSpec& spec);
TspBenchResult run_tsp_bench(const ExperimentSpec& spec);
RateTableDumpResult run_rate_table_dump(const ExperimentSpec& spec);

// Forward-power sweep for the single scheme in `base` (library-level helper
// for noise-limited regime studies; not one of the CLI experiment ids).
ForwardSnrResult run_forward_snr_sweep(const SimConfig& base,
                                       const std::vector<double>& snr_db_list,
                                       const std::filesystem::path& output_dir = {});

// Dispatch on spec.experiment; returns the list of files written.
std::vector<std::filesystem::path> run_experiment(const ExperimentSpec& spec);

}  // namespace sdma
