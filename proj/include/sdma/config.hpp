#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "sdma/sim_engine.hpp"

namespace sdma {

// A fully resolved experiment request: which experiment, where its outputs go,
// the simulation config shared by every cell, and the sweep grids. Defaults
// reproduce the reference runs; a JSON file overrides individual keys.
struct ExperimentSpec {
    std::string experiment;
    std::filesystem::path output_dir;  // default "out/<experiment>"
    SimConfig config;

    std::vector<int> c_fb_list{4, 5, 6, 8};           // fig4-cfb-ser
    std::vector<int> levels{2, 3, 4, 5, 6};           // fig5-cfb-snr: bits per symbol
    std::vector<double> eps_list{0.05, 0.1};          // fig5-cfb-snr
    std::vector<double> ser_list{0.01, 0.05, 0.1, 0.2, 0.3, 0.4};     // fig6-ser-sweep
    std::vector<double> fbsnr_list{0, 2, 4, 6, 8, 10, 12};            // fig7-fbsnr-sweep
    std::vector<double> fig1_snr_list{20, 30, 40};    // fig1-approx
    int fig1_samples = 20000;                         // fig1-approx draws per SNR
    std::vector<int> bench_sizes{6, 8, 10};           // tsp-bench city counts
    int bench_instances = 20;                         // tsp-bench instances per size
    int lemma4_replicates = 8;                        // fig3-lemma4 codebook draws
};

const std::vector<std::string>& experiment_ids();
bool is_known_experiment(const std::string& id);

// Parse a spec from JSON text / file. Layout:
//   { "experiment": "<id>", "output_dir": "...", "config": { <key>: <value> } }
// "config" holds both SimConfig scalars and sweep grids. Unknown keys and
// wrong value types are errors; the resulting SimConfig is validated before
// returning so a bad value fails here, not mid-experiment.
ExperimentSpec parse_spec_text(const std::string& json_text);
ExperimentSpec load_spec(const std::filesystem::path& path);

// Flat key=value views used for CSV comments and run manifests.
std::vector<std::pair<std::string, std::string>> config_items(const SimConfig& cfg);
std::vector<std::pair<std::string, std::string>> spec_items(const ExperimentSpec& spec);
std::string config_echo(const SimConfig& cfg);  // single "k=v k=v ..." line

}  // namespace sdma
